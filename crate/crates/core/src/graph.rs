// SPDX-License-Identifier: Apache-2.0

//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is kept as one `u64` bit row per vertex, so neighbourhood
//! intersections and BFS frontiers are single word operations.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph has {0} vertices, at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A set of vertex ids, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Hop count, or [`Distance::INF`] when unreachable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distance(u64);

impl Distance {
    pub const INF: Distance = Distance(u64::MAX);
    pub const ZERO: Distance = Distance(0);

    pub const fn finite(value: u64) -> Self {
        Distance(value)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INF
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match self.0.checked_add(rhs.0) {
            Some(sum) if self.is_finite() && rhs.is_finite() && sum != u64::MAX => Distance(sum),
            _ => Distance::INF,
        }
    }
}

impl std::iter::Sum for Distance {
    fn sum<I: Iterator<Item = Distance>>(iter: I) -> Distance {
        iter.fold(Distance::ZERO, Add::add)
    }
}

impl fmt::Debug for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(d) => write!(f, "{d}"),
            None => f.write_str("inf"),
        }
    }
}

impl serde::Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(d) => serializer.serialize_u64(d),
            None => serializer.serialize_str("inf"),
        }
    }
}

/// Distances from one source to every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: usize,
    pub dist: Vec<Distance>,
}

impl DistanceVector {
    pub fn get(&self, v: usize) -> Distance {
        self.dist[v]
    }

    /// Finite hop count to `v`; panics if `v` is unreachable.
    pub fn hops(&self, v: usize) -> u64 {
        self.dist[v].value().expect("vertex unreachable from source")
    }
}

/// An immutable simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range ids.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut rows = vec![0u64; n];
        for &(u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if rows[u] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(Graph { rows })
    }

    /// Builds a graph directly from symmetric, loop-free adjacency rows.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_VERTICES);
        debug_assert!((0..rows.len()).all(
            |u| rows[u] >> u & 1 == 0 && VertexSet(rows[u]).iter().all(|v| v < rows.len() && rows[v] >> u & 1 == 1)
        ));
        Graph { rows }
    }

    pub fn complete(n: usize) -> Self {
        let full = VertexSet::full(n).bits();
        Graph::from_rows((0..n).map(|u| full & !(1 << u)).collect())
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges).expect("valid cycle")
    }

    /// `K_{r,s}` with parts `0..r` and `r..r+s`.
    pub fn complete_bipartite(r: usize, s: usize) -> Self {
        let edges: Vec<_> = (0..r).flat_map(|a| (r..r + s).map(move |b| (a, b))).collect();
        Graph::new(r + s, &edges).expect("valid complete bipartite graph")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.rows[u])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.rows[u] >> v & 1 == 1
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n()).flat_map(|u| self.neighbors(u).iter().filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    /// A new graph with `{u, drop}` replaced by `{u, add}`.
    ///
    /// When `{u, add}` is already present the result is `G - {u, drop}`.
    pub(crate) fn swapped(&self, u: usize, drop: usize, add: usize) -> Graph {
        let mut rows = self.rows.clone();
        rows[u] &= !(1 << drop);
        rows[drop] &= !(1 << u);
        rows[u] |= 1 << add;
        rows[add] |= 1 << u;
        Graph { rows }
    }

    pub fn is_connected(&self) -> bool {
        reachable_from(&self.rows, 0) == self.vertices().bits()
    }

    /// Sub-graph induced by `keep`, with vertex ids preserved (others isolated).
    pub(crate) fn induced_rows(&self, keep: VertexSet) -> Vec<u64> {
        (0..self.n()).map(|u| if keep.contains(u) { self.rows[u] & keep.bits() } else { 0 }).collect()
    }

    pub fn bfs_distances(&self, source: usize) -> DistanceVector {
        let mut dist = vec![Distance::INF; self.n()];
        bfs_layers(&self.rows, source, |v, d| dist[v] = Distance(d));
        DistanceVector { source, dist }
    }

    /// `D(u)`: sum of distances from `u` to every other vertex, `INF` if some is unreachable.
    pub fn sum_distances(&self, u: usize) -> Distance {
        bfs_sum(&self.rows, u)
    }

    /// Sum of `d(u, v)` over `v` in `targets`.
    pub fn sum_distances_restricted(&self, u: usize, targets: VertexSet) -> Distance {
        let dv = self.bfs_distances(u);
        targets.iter().map(|v| dv.dist[v]).sum()
    }

    /// Largest pairwise distance; `INF` when disconnected. A single vertex has diameter 0.
    pub fn diameter(&self) -> Distance {
        (0..self.n()).map(|u| self.eccentricity(u)).max().unwrap_or(Distance::ZERO)
    }

    pub fn eccentricity(&self, u: usize) -> Distance {
        let mut seen = 0u64;
        let mut depth = 0;
        bfs_layers(&self.rows, u, |v, d| {
            seen |= 1 << v;
            depth = d;
        });
        if seen == self.vertices().bits() {
            Distance(depth)
        } else {
            Distance::INF
        }
    }

    /// `Γ_{i,H}(u)`: members of `within` at distance exactly `i` from `u`, measured in this graph.
    pub fn distance_layer(&self, within: VertexSet, u: usize, i: u64) -> VertexSet {
        let mut layer = VertexSet::EMPTY;
        bfs_layers(&self.rows, u, |v, d| {
            if d == i && within.contains(v) {
                layer.insert(v);
            }
        });
        layer
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Visits every vertex reachable from `source` in BFS order, reporting its depth.
pub(crate) fn bfs_layers(rows: &[u64], source: usize, mut visit: impl FnMut(usize, u64)) {
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    let mut depth = 0;
    while frontier != 0 {
        for v in VertexSet(frontier) {
            visit(v, depth);
        }
        let mut next = 0u64;
        for v in VertexSet(frontier) {
            next |= rows[v];
        }
        frontier = next & !seen;
        seen |= frontier;
        depth += 1;
    }
}

pub(crate) fn reachable_from(rows: &[u64], source: usize) -> u64 {
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for v in VertexSet(frontier) {
            next |= rows[v];
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen
}

pub(crate) fn bfs_sum(rows: &[u64], source: usize) -> Distance {
    let all = VertexSet::full(rows.len()).bits();
    let mut seen = 1u64 << source;
    let mut frontier = seen;
    let mut depth = 0u64;
    let mut total = 0u64;
    while frontier != 0 {
        total += depth * frontier.count_ones() as u64;
        let mut next = 0u64;
        for v in VertexSet(frontier) {
            next |= rows[v];
        }
        frontier = next & !seen;
        seen |= frontier;
        depth += 1;
    }
    if seen == all {
        Distance(total)
    } else {
        Distance::INF
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: u64) -> Distance {
        Distance::finite(v)
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(Graph::new(3, &[(0, 1), (0, 1)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::new(0, &[]), Err(GraphError::Empty));
        assert_eq!(Graph::new(65, &[]), Err(GraphError::TooLarge(65)));
    }

    #[test]
    fn build_small_graphs() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, Graph::cycle(4));
        assert_eq!(c4.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!(k1.n(), 1);
        assert_eq!(k1.edge_count(), 0);
        assert!(k1.is_connected());
        assert_eq!(k1.diameter(), d(0));
    }

    #[test]
    fn bfs_examples() {
        assert_eq!(Graph::cycle(5).bfs_distances(0).dist, vec![d(0), d(1), d(2), d(2), d(1)]);
        assert_eq!(Graph::path(4).bfs_distances(0).dist, vec![d(0), d(1), d(2), d(3)]);
        let split = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(split.bfs_distances(0).dist, vec![d(0), d(1), Distance::INF]);
    }

    #[test]
    fn distance_sums() {
        assert_eq!(Graph::star(3).sum_distances(0), d(3));
        assert_eq!(Graph::path(4).sum_distances(0), d(6));
        assert_eq!(Graph::new(3, &[(0, 1)]).unwrap().sum_distances(0), Distance::INF);

        let p4 = Graph::path(4);
        assert_eq!(p4.sum_distances_restricted(0, [2, 3].into_iter().collect()), d(5));
        assert_eq!(p4.sum_distances_restricted(1, VertexSet::EMPTY), d(0));
        assert_eq!(p4.sum_distances_restricted(2, VertexSet::singleton(2)), d(0));
    }

    #[test]
    fn diameters() {
        assert_eq!(Graph::complete_bipartite(2, 3).diameter(), d(2));
        assert_eq!(Graph::cycle(6).diameter(), d(3));
        assert_eq!(Graph::path(4).diameter(), d(3));
        assert_eq!(Graph::new(3, &[(0, 1)]).unwrap().diameter(), Distance::INF);
    }

    #[test]
    fn layers() {
        let c4 = Graph::cycle(4);
        let all = c4.vertices();
        assert_eq!(c4.distance_layer(all, 0, 1).to_vec(), vec![1, 3]);
        assert_eq!(c4.distance_layer(all, 0, 2).to_vec(), vec![2]);
        assert_eq!(c4.distance_layer([1, 2].into_iter().collect(), 0, 1).to_vec(), vec![1]);
    }

    #[test]
    fn infinite_distance_arithmetic() {
        assert_eq!(Distance::INF + d(3), Distance::INF);
        assert_eq!(d(3) + Distance::INF, Distance::INF);
        assert!(Distance::INF > d(u64::MAX - 1));
        assert_eq!(d(2) + d(5), d(7));
    }

    #[test]
    fn swapped_keeps_edge_count() {
        let p4 = Graph::path(4);
        let g = p4.swapped(0, 1, 2);
        assert_eq!(g.edges(), vec![(0, 2), (1, 2), (2, 3)]);
        assert_eq!(g.swapped(0, 2, 1), p4);
    }

    #[test]
    fn vertex_set_ops() {
        let s: VertexSet = [1, 3, 63].into_iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(63));
        assert_eq!(s.first(), Some(1));
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(s.difference(VertexSet::singleton(3)).to_vec(), vec![1, 63]);
    }
}
