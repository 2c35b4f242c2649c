// SPDX-License-Identifier: Apache-2.0

//! Bridges, cut vertices, 2-edge-connected and biconnected components,
//! pendant worlds `W_H(u)` and the graph-class recognizers built on them.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{reachable_from, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} is not in the component")]
    NotInComponent(usize),
    #[error("graph is not a cactus")]
    NotCactus,
}

/// A biconnected component, kept as its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: VertexSet,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_clique(&self) -> bool {
        let k = self.vertices.len();
        self.edges.len() == k * (k - 1) / 2
    }

    /// A single edge or a simple cycle.
    pub fn is_edge_or_cycle(&self) -> bool {
        self.edges.len() == 1 || self.is_cycle()
    }

    /// A biconnected block with as many edges as vertices is a simple cycle.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub bridges: Vec<(usize, usize)>,
    pub cut_vertices: VertexSet,
    /// Every 2-edge-connected component, singletons included, ordered by smallest vertex.
    pub teccs: Vec<VertexSet>,
    pub blocks: Vec<Block>,
}

impl Decomposition {
    /// The 2-edge-connected components that contain at least one edge.
    pub fn nontrivial_teccs(&self) -> Vec<VertexSet> {
        self.teccs.iter().copied().filter(|h| h.len() > 1).collect()
    }

    pub fn is_bridge(&self, u: usize, v: usize) -> bool {
        self.bridges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }
}

struct LowLink<'a> {
    graph: &'a Graph,
    order: Vec<usize>,
    low: Vec<usize>,
    clock: usize,
    edge_stack: Vec<(usize, usize)>,
    bridges: Vec<(usize, usize)>,
    cut_vertices: VertexSet,
    blocks: Vec<Block>,
}

const UNSEEN: usize = usize::MAX;

impl LowLink<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.order[u] = self.clock;
        self.low[u] = self.clock;
        self.clock += 1;
        let mut children = 0;
        for v in self.graph.neighbors(u) {
            if self.order[v] == UNSEEN {
                children += 1;
                self.edge_stack.push((u, v));
                self.visit(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] > self.order[u] {
                    self.bridges.push((u.min(v), u.max(v)));
                }
                if self.low[v] >= self.order[u] {
                    if parent.is_some() || children > 1 {
                        self.cut_vertices.insert(u);
                    }
                    self.pop_block((u, v));
                }
            } else if Some(v) != parent && self.order[v] < self.order[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.order[v]);
            }
        }
    }

    fn pop_block(&mut self, until: (usize, usize)) {
        let mut edges = Vec::new();
        let mut vertices = VertexSet::EMPTY;
        while let Some((a, b)) = self.edge_stack.pop() {
            vertices.insert(a);
            vertices.insert(b);
            edges.push((a.min(b), a.max(b)));
            if (a, b) == until {
                break;
            }
        }
        edges.sort_unstable();
        self.blocks.push(Block { vertices, edges });
    }
}

/// One lowpoint DFS for bridges, cut vertices and blocks; the
/// 2-edge-connected components are the components left after deleting bridges.
pub fn decompose(g: &Graph) -> Result<Decomposition, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let n = g.n();
    let mut state = LowLink {
        graph: g,
        order: vec![UNSEEN; n],
        low: vec![UNSEEN; n],
        clock: 0,
        edge_stack: Vec::new(),
        bridges: Vec::new(),
        cut_vertices: VertexSet::EMPTY,
        blocks: Vec::new(),
    };
    state.visit(0, None);
    let LowLink { mut bridges, cut_vertices, mut blocks, .. } = state;
    bridges.sort_unstable();
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));

    let mut rows = g.rows().to_vec();
    for &(u, v) in &bridges {
        rows[u] &= !(1 << v);
        rows[v] &= !(1 << u);
    }
    let mut teccs = Vec::new();
    let mut unassigned = g.vertices();
    while let Some(start) = unassigned.first() {
        let comp = VertexSet::from_bits(reachable_from(&rows, start));
        unassigned = unassigned.difference(comp);
        teccs.push(comp);
    }

    Ok(Decomposition { bridges, cut_vertices, teccs, blocks })
}

/// `W_H(u)` together with its anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantWorld {
    pub anchor: usize,
    pub members: VertexSet,
}

/// The component of `u` in the subgraph induced by `(V(G) \ H) ∪ {u}`.
pub fn pendant_world(g: &Graph, component: VertexSet, u: usize) -> Result<PendantWorld, StructureError> {
    if !component.contains(u) {
        return Err(StructureError::NotInComponent(u));
    }
    let keep = g.vertices().difference(component).union(VertexSet::singleton(u));
    let rows = g.induced_rows(keep);
    Ok(PendantWorld { anchor: u, members: VertexSet::from_bits(reachable_from(&rows, u)) })
}

/// Pendant worlds for every anchor of `component`, in anchor order.
pub fn pendant_worlds(g: &Graph, component: VertexSet) -> Vec<PendantWorld> {
    component.iter().map(|u| pendant_world(g, component, u).expect("anchor taken from component")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// `side[v]` is the colour of `v`; vertex 0 of every connected piece gets `false`.
    Bipartite { side: Vec<bool> },
    /// A closed walk of odd length, first vertex repeated at the end.
    OddClosedWalk(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.n();
    let mut side = vec![None::<bool>; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let colour = side[a].unwrap();
            for b in g.neighbors(a) {
                match side[b] {
                    None => {
                        side[b] = Some(!colour);
                        parent[b] = a;
                        queue.push_back(b);
                    }
                    Some(c) if c == colour => return Bipartiteness::OddClosedWalk(odd_walk(&parent, root, a, b)),
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite { side: side.into_iter().map(Option::unwrap).collect() }
}

/// root → a, edge a-b, b → root. Both tree paths have the same parity, so the walk is odd.
fn odd_walk(parent: &[usize], root: usize, a: usize, b: usize) -> Vec<usize> {
    let to_root = |mut x: usize| {
        let mut path = vec![x];
        while x != root {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let mut walk = to_root(a);
    walk.reverse();
    walk.extend(to_root(b));
    walk
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub tree: bool,
    pub star: bool,
    pub bipartite: bool,
    /// `(r, s)` with `r <= s` when the graph is `K_{r,s}`.
    pub complete_bipartite: Option<(usize, usize)>,
    pub block_graph: bool,
    pub cactus: bool,
}

impl GraphClass {
    /// Classifies a connected graph given its decomposition.
    pub fn of(g: &Graph, decomposition: &Decomposition) -> GraphClass {
        let tree = g.edge_count() + 1 == g.n();
        let star = tree && g.diameter().value().is_some_and(|d| d <= 2);
        let colouring = is_bipartite(g);
        let complete_bipartite = match &colouring {
            Bipartiteness::Bipartite { side } => complete_bipartite_sides(g, side),
            Bipartiteness::OddClosedWalk(_) => None,
        };
        GraphClass {
            tree,
            star,
            bipartite: colouring.is_bipartite(),
            complete_bipartite,
            block_graph: decomposition.blocks.iter().all(Block::is_clique),
            cactus: decomposition.blocks.iter().all(Block::is_edge_or_cycle),
        }
    }
}

fn complete_bipartite_sides(g: &Graph, side: &[bool]) -> Option<(usize, usize)> {
    let a = side.iter().filter(|&&s| !s).count();
    let b = side.len() - a;
    if a == 0 || b == 0 || a * b != g.edge_count() {
        return None;
    }
    let degrees_ok = (0..g.n()).all(|v| g.degree(v) == if side[v] { a } else { b });
    degrees_ok.then_some((a.min(b), a.max(b)))
}

pub fn classify(g: &Graph) -> Result<GraphClass, StructureError> {
    Ok(GraphClass::of(g, &decompose(g)?))
}

/// Lengths of the cycle blocks of a cactus, ascending.
pub fn cycle_lengths(g: &Graph) -> Result<Vec<usize>, StructureError> {
    cycle_lengths_of(&decompose(g)?)
}

pub(crate) fn cycle_lengths_of(decomposition: &Decomposition) -> Result<Vec<usize>, StructureError> {
    if !decomposition.blocks.iter().all(Block::is_edge_or_cycle) {
        return Err(StructureError::NotCactus);
    }
    let mut lengths: Vec<usize> = decomposition.blocks.iter().filter(|b| b.is_cycle()).map(|b| b.edges.len()).collect();
    lengths.sort_unstable();
    Ok(lengths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn c4_pendant() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap()
    }

    fn paw() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    #[test]
    fn decompose_path() {
        let d = decompose(&Graph::path(4)).unwrap();
        assert_eq!(d.bridges, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(d.cut_vertices, set(&[1, 2]));
        assert!(d.nontrivial_teccs().is_empty());
        assert_eq!(d.blocks.len(), 3);
    }

    #[test]
    fn decompose_cycle_with_pendant() {
        let d = decompose(&c4_pendant()).unwrap();
        assert_eq!(d.bridges, vec![(0, 4)]);
        assert_eq!(d.cut_vertices, set(&[0]));
        assert_eq!(d.teccs, vec![set(&[0, 1, 2, 3]), set(&[4])]);
        assert_eq!(d.nontrivial_teccs(), vec![set(&[0, 1, 2, 3])]);
        assert_eq!(d.blocks.len(), 2);
    }

    #[test]
    fn decompose_complete() {
        let d = decompose(&Graph::complete(4)).unwrap();
        assert!(d.bridges.is_empty());
        assert!(d.cut_vertices.is_empty());
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].edges.len(), 6);
    }

    #[test]
    fn decompose_rejects_disconnected() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(decompose(&g), Err(StructureError::Disconnected));
    }

    #[test]
    fn bowtie_blocks_share_the_cut_vertex() {
        let d = decompose(&bowtie()).unwrap();
        assert_eq!(d.cut_vertices, set(&[2]));
        assert_eq!(d.teccs, vec![set(&[0, 1, 2, 3, 4])]);
        let verts: Vec<_> = d.blocks.iter().map(|b| b.vertices).collect();
        assert_eq!(verts, vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
    }

    #[test]
    fn pendant_worlds_examples() {
        let g = c4_pendant();
        let h = set(&[0, 1, 2, 3]);
        assert_eq!(pendant_world(&g, h, 0).unwrap().members, set(&[0, 4]));
        assert_eq!(pendant_world(&g, h, 2).unwrap().members, set(&[2]));
        assert_eq!(pendant_world(&g, h, 4), Err(StructureError::NotInComponent(4)));
        let c4 = Graph::cycle(4);
        for w in pendant_worlds(&c4, c4.vertices()) {
            assert_eq!(w.members, VertexSet::singleton(w.anchor));
        }
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(is_bipartite(&Graph::cycle(4)), Bipartiteness::Bipartite { side: vec![false, true, false, true] });
        match is_bipartite(&Graph::cycle(5)) {
            Bipartiteness::OddClosedWalk(walk) => {
                assert_eq!(walk.first(), walk.last());
                assert_eq!((walk.len() - 1) % 2, 1);
                let c5 = Graph::cycle(5);
                assert!(walk.windows(2).all(|e| c5.has_edge(e[0], e[1])));
            }
            other => panic!("C5 reported {other:?}"),
        }
        assert!(is_bipartite(&Graph::complete_bipartite(2, 3)).is_bipartite());
    }

    #[test]
    fn classify_examples() {
        let paw = classify(&paw()).unwrap();
        assert!(paw.block_graph && paw.cactus && !paw.tree && !paw.bipartite);

        let c4 = classify(&Graph::cycle(4)).unwrap();
        assert!(!c4.block_graph && c4.cactus);
        assert_eq!(c4.complete_bipartite, Some((2, 2)));

        assert!(classify(&bowtie()).unwrap().cactus);

        let star = classify(&Graph::star(4)).unwrap();
        assert!(star.tree && star.star && star.block_graph);
        assert_eq!(star.complete_bipartite, Some((1, 4)));

        let p4 = classify(&Graph::path(4)).unwrap();
        assert!(p4.tree && !p4.star && p4.complete_bipartite.is_none());

        let k4 = classify(&Graph::complete(4)).unwrap();
        assert!(k4.block_graph && !k4.cactus);

        let k1 = classify(&Graph::new(1, &[]).unwrap()).unwrap();
        assert!(k1.tree && k1.star && k1.complete_bipartite.is_none());
    }

    #[test]
    fn cycle_length_examples() {
        let c5_pendant = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        assert_eq!(cycle_lengths(&c5_pendant).unwrap(), vec![5]);
        assert_eq!(cycle_lengths(&bowtie()).unwrap(), vec![3, 3]);
        assert!(cycle_lengths(&Graph::star(3)).unwrap().is_empty());
        assert_eq!(cycle_lengths(&Graph::complete(4)), Err(StructureError::NotCactus));
    }
}
