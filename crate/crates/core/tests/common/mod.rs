// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference implementations, deliberately independent of the
//! bit-row code paths in the library: adjacency matrices, Floyd-Warshall,
//! deletion-and-recount for bridges and cut vertices.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use sumeq::Graph;

pub const INF: u64 = u64::MAX / 4;

#[derive(Clone, Debug)]
pub struct Matrix {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Matrix { n, adj }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Matrix {
        let mut m = self.clone();
        m.adj[u][v] = false;
        m.adj[v][u] = false;
        m
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Matrix {
        let mut m = self.clone();
        m.adj[u][v] = true;
        m.adj[v][u] = true;
        m
    }

    pub fn floyd(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let mut d = vec![vec![INF; n]; n];
        for u in 0..n {
            d[u][u] = 0;
            for v in 0..n {
                if self.adj[u][v] {
                    d[u][v] = 1;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    /// Sum of distances from `u`, `None` when something is unreachable.
    pub fn cost(&self, u: usize) -> Option<u64> {
        let d = self.floyd();
        d[u].iter().try_fold(0, |acc, &x| (x < INF).then_some(acc + x))
    }

    /// Number of connected components among `alive` vertices.
    pub fn components(&self, alive: &[bool]) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if !alive[s] || seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for y in 0..self.n {
                    if alive[y] && self.adj[x][y] && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components(&vec![true; self.n]) == 1
    }

    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let all = vec![true; self.n];
        let base = self.components(&all);
        self.edges().into_iter().filter(|&(u, v)| self.without_edge(u, v).components(&all) > base).collect()
    }

    pub fn cut_vertices(&self) -> Vec<usize> {
        let all = vec![true; self.n];
        let base = self.components(&all);
        (0..self.n)
            .filter(|&v| {
                let mut alive = all.clone();
                alive[v] = false;
                self.components(&alive) > base
            })
            .collect()
    }

    /// Some strictly improving swap, trying every target including current neighbours.
    pub fn improving_swap(&self) -> Option<(usize, usize, usize, i64)> {
        for u in 0..self.n {
            let before = self.cost(u)? as i64;
            for v in 0..self.n {
                if !self.adj[u][v] {
                    continue;
                }
                for t in 0..self.n {
                    if t == u || t == v {
                        continue;
                    }
                    let deviated = self.without_edge(u, v).with_edge(u, t);
                    if let Some(after) = deviated.cost(u) {
                        if (after as i64) < before {
                            return Some((u, v, t, after as i64 - before));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Labelled connected graphs on `n` vertices via union-find over an
/// independently ordered edge list (row-major upper triangle).
pub fn connected_graphs_oracle(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut comps = n;
        for &(u, v) in &edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        if comps == 1 {
            out.push(Graph::new(n, &edges).unwrap());
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.n(), &edges).unwrap()
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && permutations(a.n()).iter().any(|p| relabel(a, p) == *b)
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges).unwrap()
}
