// SPDX-License-Identifier: Apache-2.0

//! Aggregated swap-cost analysis of a 2-edge-connected component `H`, and
//! the structural conditions every sum basic equilibrium must satisfy.
//!
//! For an observer `w` and an arc `(u, v)` inside `H`, consider every swap of
//! `uv` for `uv'` with `v'` another `H`-neighbour of `v`. `Δ_w(u, v)` is the
//! average change of `d(u, w)` over that family, `Δ_w` sums it over all arcs
//! of `H`, and `S = Σ_w Δ_w` is the averaged total cost change. On bipartite
//! graphs `Δ_w ≤ 0` for every observer, and `Δ_w < 0` for some observer as
//! soon as `H` has diameter above 2.
//!
//! Two independent routes are kept apart on purpose: [`Component::brute_delta`]
//! and [`Component::aggregate`] simulate every swap, while
//! [`Component::lemma1_delta`] and [`Component::check_inequalities`] evaluate
//! the closed forms from layer sets only.

use serde::Serialize;
use thiserror::Error;

use crate::equilibrium::{self, EquilibriumError};
use crate::graph::{Graph, VertexSet};
use crate::scalar::Scalar;
use crate::structure::{self, pendant_worlds, Decomposition, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("vertex set {0:?} is not a 2-edge-connected component with an edge")]
    NotComponent(VertexSet),
    #[error("vertex {0} is not in the component")]
    NotInComponent(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("{v} is not a neighbour of {u} inside the component")]
    NotNeighbor { u: usize, v: usize },
    #[error("vertex {vertex} has degree {degree} inside the component, at least 2 is required")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error("vertex {u} has {count} closer neighbours towards {observer}, exactly one is required")]
    NoUniqueCloserNeighbor { u: usize, observer: usize, count: usize },
    #[error("graph is a tree")]
    TreeInput,
    #[error("graph is not a cactus")]
    NotCactus,
    #[error(transparent)]
    Equilibrium(#[from] EquilibriumError),
}

impl From<StructureError> for TheoryError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Disconnected => TheoryError::Disconnected,
            StructureError::NotInComponent(u) => TheoryError::NotInComponent(u),
            StructureError::NotCactus => TheoryError::NotCactus,
        }
    }
}

/// Layer sets of `H` as seen from one observer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub component: VertexSet,
    pub observer: usize,
    /// Indexed by vertex; empty outside the component.
    pub delta_minus: Vec<VertexSet>,
    pub delta_plus: Vec<VertexSet>,
    /// `t_w`: the anchor whose pendant world holds the observer.
    pub entry: usize,
    /// `Z_w`: members with both a closer and a farther neighbour in `H`.
    pub z_set: VertexSet,
}

impl LayerProfile {
    /// Members with exactly one closer neighbour in `H`.
    pub fn single_closer(&self) -> VertexSet {
        self.component.iter().filter(|&u| self.delta_minus[u].len() == 1).collect()
    }

    /// Members with no closer neighbour in `H`.
    pub fn without_closer(&self) -> VertexSet {
        self.component.iter().filter(|&u| self.delta_minus[u].is_empty()).collect()
    }
}

/// Contributions of one arc `(u, v)` of `H`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcContribution<S> {
    pub u: usize,
    pub v: usize,
    /// `Δ_w(u, v)` for every observer `w`, indexed by vertex.
    pub per_observer: Vec<S>,
    /// `S(u, v)`, from the full cost differences of the swaps.
    pub swap_cost: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapAggregate<S> {
    pub component: VertexSet,
    pub arcs: Vec<ArcContribution<S>>,
    /// `Δ_w`, indexed by observer.
    pub per_observer: Vec<S>,
    /// `S = Σ_{(u,v)} S(u, v)`.
    pub total: S,
}

impl<S: Scalar> SwapAggregate<S> {
    pub fn delta_w(&self, w: usize) -> &S {
        &self.per_observer[w]
    }

    /// `Σ_w Δ_w`, which must equal [`SwapAggregate::total`].
    pub fn observer_total(&self) -> S {
        self.per_observer.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    pub fn identity_holds(&self) -> bool {
        self.observer_total() == self.total
    }

    pub fn arc(&self, u: usize, v: usize) -> Option<&ArcContribution<S>> {
        self.arcs.iter().find(|a| a.u == u && a.v == v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eq2Case<S> {
    pub u: usize,
    pub closer: usize,
    /// `(|δ⁺(u⁻)| - 1) / (deg_H(u⁻) - 1)`.
    pub ratio: S,
    pub holds: bool,
    pub tight: bool,
    /// Tightness is expected exactly when `u⁻` has no closer neighbour.
    pub tight_predicted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport<S> {
    pub observer: usize,
    pub entry: usize,
    pub z_size: usize,
    pub single_closer_size: usize,
    /// `Σ_v |δ⁻(v)||δ⁺(v)| / (deg_H(v) - 1)`.
    pub eq1_lhs: S,
    /// `|Z_w|`.
    pub eq1_rhs: S,
    pub eq1_holds: bool,
    pub eq1_tight: bool,
    pub eq2_cases: Vec<Eq2Case<S>>,
    pub eq2_holds: bool,
    pub eq3_lhs: S,
    pub eq3_rhs: S,
    pub eq3_holds: bool,
    pub eq3_tight: bool,
    /// Expected tightness: `Γ_{1,H}(t_w)` is the whole single-closer set.
    pub eq3_tight_predicted: bool,
    /// Single-closer members all lie in `Z_w`.
    pub containment_holds: bool,
    /// `Δ_w` rebuilt from the two sums, `eq3_lhs - eq1_lhs`.
    pub delta_w_closed_form: S,
    /// `Δ_w` from direct swap simulation.
    pub delta_w: S,
    /// `-|Z_w| + |{u : |δ⁻(u)| = 1}|`.
    pub bound: S,
    pub final_bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrictWitness<S> {
    /// First three vertices `x1, x2, x3` of a shortest path realising the diameter of `H`.
    pub path_start: [usize; 3],
    pub far_end: usize,
    pub diameter: u64,
    /// Observer picked from `W_H(x1)`.
    pub observer: usize,
    pub delta_w: S,
    pub total: S,
}

impl<S: Scalar> StrictWitness<S> {
    pub fn verified(&self) -> bool {
        self.delta_w < S::zero() && self.total < S::zero()
    }
}

/// A nontrivial 2-edge-connected component of a connected graph, with the
/// all-pairs distances of the host graph precomputed.
#[derive(Debug, Clone)]
pub struct Component<'g> {
    graph: &'g Graph,
    members: VertexSet,
    dist: Vec<Vec<u64>>,
    worlds: Vec<VertexSet>,
}

impl<'g> Component<'g> {
    pub fn new(g: &'g Graph, members: VertexSet) -> Result<Self, TheoryError> {
        let decomposition = structure::decompose(g)?;
        if !decomposition.nontrivial_teccs().contains(&members) {
            return Err(TheoryError::NotComponent(members));
        }
        Ok(Self::unchecked(g, members))
    }

    /// Every nontrivial 2-edge-connected component of `g`.
    pub fn all(g: &'g Graph) -> Result<Vec<Self>, TheoryError> {
        let decomposition = structure::decompose(g)?;
        Ok(Self::from_decomposition(g, &decomposition))
    }

    pub(crate) fn from_decomposition(g: &'g Graph, decomposition: &Decomposition) -> Vec<Self> {
        decomposition.nontrivial_teccs().into_iter().map(|h| Self::unchecked(g, h)).collect()
    }

    fn unchecked(g: &'g Graph, members: VertexSet) -> Self {
        let dist = (0..g.n())
            .map(|s| {
                let dv = g.bfs_distances(s);
                (0..g.n()).map(|v| dv.hops(v)).collect()
            })
            .collect();
        let mut worlds = vec![VertexSet::EMPTY; g.n()];
        for w in pendant_worlds(g, members) {
            worlds[w.anchor] = w.members;
        }
        Component { graph: g, members, dist, worlds }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn neighbors(&self, u: usize) -> VertexSet {
        self.graph.neighbors(u).intersection(self.members)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    pub fn distance(&self, a: usize, b: usize) -> u64 {
        self.dist[a][b]
    }

    pub fn world(&self, u: usize) -> VertexSet {
        self.worlds[u]
    }

    /// Largest `d_G` distance between two members.
    pub fn diameter(&self) -> u64 {
        self.members
            .iter()
            .flat_map(|a| self.members.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.dist[a][b])
            .max()
            .unwrap_or(0)
    }

    fn check_vertex(&self, v: usize) -> Result<(), TheoryError> {
        if v >= self.graph.n() {
            Err(TheoryError::VertexOutOfRange(v))
        } else {
            Ok(())
        }
    }

    fn check_member(&self, u: usize) -> Result<(), TheoryError> {
        self.check_vertex(u)?;
        if self.members.contains(u) {
            Ok(())
        } else {
            Err(TheoryError::NotInComponent(u))
        }
    }

    fn check_arc(&self, u: usize, v: usize) -> Result<(), TheoryError> {
        self.check_member(u)?;
        self.check_vertex(v)?;
        if !self.neighbors(u).contains(v) {
            return Err(TheoryError::NotNeighbor { u, v });
        }
        let degree = self.degree(v);
        if degree < 2 {
            return Err(TheoryError::DegreeTooSmall { vertex: v, degree });
        }
        Ok(())
    }

    fn require_bipartite(&self) -> Result<(), TheoryError> {
        if structure::is_bipartite(self.graph).is_bipartite() {
            Ok(())
        } else {
            Err(TheoryError::NotBipartite)
        }
    }

    pub fn layer_profile(&self, w: usize) -> Result<LayerProfile, TheoryError> {
        self.check_vertex(w)?;
        let n = self.graph.n();
        let dw = &self.dist[w];
        let mut delta_minus = vec![VertexSet::EMPTY; n];
        let mut delta_plus = vec![VertexSet::EMPTY; n];
        for u in self.members {
            for v in self.neighbors(u) {
                if dw[v] + 1 == dw[u] {
                    delta_minus[u].insert(v);
                } else if dw[v] == dw[u] + 1 {
                    delta_plus[u].insert(v);
                }
            }
        }
        let entry =
            self.members.iter().find(|&u| self.worlds[u].contains(w)).expect("pendant worlds partition the vertex set");
        let z_set = self.members.iter().filter(|&z| !delta_minus[z].is_empty() && !delta_plus[z].is_empty()).collect();
        Ok(LayerProfile { component: self.members, observer: w, delta_minus, delta_plus, entry, z_set })
    }

    /// `u_w⁻`: the unique neighbour of `u` in `H` closer to `w`.
    pub fn closer_neighbor(&self, w: usize, u: usize) -> Result<usize, TheoryError> {
        self.check_member(u)?;
        let profile = self.layer_profile(w)?;
        let closer = profile.delta_minus[u];
        match closer.len() {
            1 => Ok(closer.first().unwrap()),
            count => Err(TheoryError::NoUniqueCloserNeighbor { u, observer: w, count }),
        }
    }

    /// Closed form for `Δ_w(u, v)` on bipartite graphs.
    pub fn lemma1_delta<S: Scalar>(&self, w: usize, u: usize, v: usize) -> Result<S, TheoryError> {
        self.require_bipartite()?;
        self.check_arc(u, v)?;
        let profile = self.layer_profile(w)?;
        Ok(lemma1_from_profile(&profile, self, u, v))
    }

    /// `Δ_w(u, v)` by building each deviated graph and measuring `d(u, w)` in it.
    pub fn brute_delta<S: Scalar>(&self, w: usize, u: usize, v: usize) -> Result<S, TheoryError> {
        self.check_vertex(w)?;
        self.check_arc(u, v)?;
        let before = self.dist[u][w] as i64;
        let change: i64 = self
            .neighbors(v)
            .difference(VertexSet::singleton(u))
            .iter()
            .map(|target| {
                let after = self.graph.swapped(u, v, target).bfs_distances(u).get(w);
                after.value().expect("swap inside a 2-edge-connected component keeps the graph connected") as i64
                    - before
            })
            .sum();
        Ok(S::ratio(change, self.degree(v) as i64 - 1))
    }

    /// `Δ_w(u, v)` for every observer and arc, `Δ_w`, `S(u, v)` and `S`, all by simulation.
    ///
    /// `S(u, v)` is taken from full cost differences `D'(u) - D(u)`, so the
    /// identity `S = Σ_w Δ_w` compares two separate sums.
    pub fn aggregate<S: Scalar>(&self) -> SwapAggregate<S> {
        let n = self.graph.n();
        let mut arcs = Vec::new();
        let mut per_observer = vec![S::zero(); n];
        let mut total = S::zero();
        for u in self.members {
            let before_sum = self.graph.sum_distances(u).value().expect("connected host graph") as i64;
            for v in self.neighbors(u) {
                let denominator = self.degree(v) as i64 - 1;
                assert!(denominator >= 1, "members of a nontrivial component have degree at least 2");
                let mut change = vec![0i64; n];
                let mut cost_change = 0i64;
                for target in self.neighbors(v).difference(VertexSet::singleton(u)) {
                    let deviated = self.graph.swapped(u, v, target);
                    let after = deviated.bfs_distances(u);
                    for (w, slot) in change.iter_mut().enumerate() {
                        *slot += after.hops(w) as i64 - self.dist[u][w] as i64;
                    }
                    cost_change += deviated.sum_distances(u).value().expect("swap stays connected") as i64 - before_sum;
                }
                let contribution: Vec<S> = change.iter().map(|&c| S::ratio(c, denominator)).collect();
                for (acc, c) in per_observer.iter_mut().zip(&contribution) {
                    *acc = acc.clone() + c.clone();
                }
                let swap_cost = S::ratio(cost_change, denominator);
                total = total + swap_cost.clone();
                arcs.push(ArcContribution { u, v, per_observer: contribution, swap_cost });
            }
        }
        SwapAggregate { component: self.members, arcs, per_observer, total }
    }

    pub fn check_inequalities<S: Scalar>(&self, w: usize) -> Result<InequalityReport<S>, TheoryError> {
        let aggregate = self.aggregate::<S>();
        self.check_inequalities_with(w, &aggregate)
    }

    /// Evaluates both sides of the three inequalities for observer `w`,
    /// reusing a precomputed aggregate for the simulated `Δ_w`.
    pub fn check_inequalities_with<S: Scalar>(
        &self,
        w: usize,
        aggregate: &SwapAggregate<S>,
    ) -> Result<InequalityReport<S>, TheoryError> {
        self.require_bipartite()?;
        let p = self.layer_profile(w)?;
        let excess = |v: usize| self.degree(v) as i64 - 1;

        let eq1_lhs = self.members.iter().fold(S::zero(), |acc, v| {
            let product = (p.delta_minus[v].len() * p.delta_plus[v].len()) as i64;
            acc + S::ratio(product, excess(v))
        });
        let eq1_rhs = S::from_count(p.z_set.len() as i64);

        let single = p.single_closer();
        let mut eq2_cases = Vec::new();
        for u in single {
            let closer = p.delta_minus[u].first().unwrap();
            let ratio = S::ratio(p.delta_plus[closer].len() as i64 - 1, excess(closer));
            eq2_cases.push(Eq2Case {
                u,
                closer,
                holds: ratio <= S::one(),
                tight: ratio == S::one(),
                tight_predicted: p.delta_minus[closer].is_empty(),
                ratio,
            });
        }
        let eq3_lhs = eq2_cases.iter().fold(S::zero(), |acc, c| acc + c.ratio.clone());
        let eq3_rhs = S::from_count(single.len() as i64);
        let entry_neighbors = self.neighbors(p.entry);

        let bound = S::from_count(single.len() as i64 - p.z_set.len() as i64);
        let delta_w = aggregate.delta_w(w).clone();
        Ok(InequalityReport {
            observer: w,
            entry: p.entry,
            z_size: p.z_set.len(),
            single_closer_size: single.len(),
            eq1_holds: eq1_lhs >= eq1_rhs,
            eq1_tight: eq1_lhs == eq1_rhs,
            eq2_holds: eq2_cases.iter().all(|c| c.holds),
            eq3_holds: eq3_lhs <= eq3_rhs,
            eq3_tight: eq3_lhs == eq3_rhs,
            eq3_tight_predicted: entry_neighbors == single,
            containment_holds: single.is_subset(p.z_set),
            delta_w_closed_form: eq3_lhs.clone() - eq1_lhs.clone(),
            final_bound_holds: delta_w <= bound && bound <= S::zero(),
            delta_w,
            bound,
            eq1_lhs,
            eq1_rhs,
            eq2_cases,
            eq3_lhs,
            eq3_rhs,
        })
    }

    /// Observer with `Δ_w < 0` built from a diameter-realising path of `H`,
    /// or `None` when `diam(H) <= 2`.
    pub fn strict_witness<S: Scalar>(&self) -> Result<Option<StrictWitness<S>>, TheoryError> {
        self.require_bipartite()?;
        let diameter = self.diameter();
        if diameter <= 2 {
            return Ok(None);
        }
        let (x1, far_end) = self
            .members
            .iter()
            .flat_map(|a| self.members.iter().map(move |b| (a, b)))
            .find(|&(a, b)| self.dist[a][b] == diameter)
            .expect("diameter is realised by some pair");
        // Walk from x1 towards the far end along decreasing distance.
        let step = |from: usize| {
            self.neighbors(from)
                .iter()
                .find(|&x| self.dist[x][far_end] + 1 == self.dist[from][far_end])
                .expect("a shortest path continues inside the component")
        };
        let x2 = step(x1);
        let x3 = step(x2);
        let observer = self.worlds[x1].first().expect("a pendant world contains its anchor");
        let aggregate = self.aggregate::<S>();
        Ok(Some(StrictWitness {
            path_start: [x1, x2, x3],
            far_end,
            diameter,
            observer,
            delta_w: aggregate.delta_w(observer).clone(),
            total: aggregate.total,
        }))
    }
}

fn lemma1_from_profile<S: Scalar>(p: &LayerProfile, h: &Component<'_>, u: usize, v: usize) -> S {
    let closer = p.delta_minus[u];
    let denominator = h.degree(v) as i64 - 1;
    if closer.len() == 1 && closer.contains(v) {
        let numerator = -(p.delta_minus[v].len() as i64) + p.delta_plus[v].len() as i64 - 1;
        S::ratio(numerator, denominator)
    } else if closer.len() > 1 && closer.contains(v) {
        S::ratio(-(p.delta_minus[v].len() as i64), denominator)
    } else {
        S::zero()
    }
}

pub fn layer_profile(g: &Graph, h: VertexSet, w: usize) -> Result<LayerProfile, TheoryError> {
    Component::new(g, h)?.layer_profile(w)
}

pub fn closer_neighbor(g: &Graph, h: VertexSet, w: usize, u: usize) -> Result<usize, TheoryError> {
    Component::new(g, h)?.closer_neighbor(w, u)
}

pub fn lemma1_delta<S: Scalar>(g: &Graph, h: VertexSet, w: usize, u: usize, v: usize) -> Result<S, TheoryError> {
    Component::new(g, h)?.lemma1_delta(w, u, v)
}

pub fn brute_delta<S: Scalar>(g: &Graph, h: VertexSet, w: usize, u: usize, v: usize) -> Result<S, TheoryError> {
    Component::new(g, h)?.brute_delta(w, u, v)
}

pub fn aggregate<S: Scalar>(g: &Graph, h: VertexSet) -> Result<SwapAggregate<S>, TheoryError> {
    Ok(Component::new(g, h)?.aggregate())
}

pub fn check_inequalities<S: Scalar>(g: &Graph, h: VertexSet, w: usize) -> Result<InequalityReport<S>, TheoryError> {
    Component::new(g, h)?.check_inequalities(w)
}

pub fn strict_witness<S: Scalar>(g: &Graph, h: VertexSet) -> Result<Option<StrictWitness<S>>, TheoryError> {
    Component::new(g, h)?.strict_witness()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeCheck {
    pub holds: bool,
    pub violating_bridge: Option<(usize, usize)>,
}

/// Every bridge has an endpoint of degree 1.
pub fn bridge_degree_condition(g: &Graph) -> Result<BridgeCheck, TheoryError> {
    Ok(bridge_degree_in(g, &structure::decompose(g)?))
}

pub(crate) fn bridge_degree_in(g: &Graph, d: &Decomposition) -> BridgeCheck {
    let violating_bridge = d.bridges.iter().copied().find(|&(u, v)| g.degree(u) != 1 && g.degree(v) != 1);
    BridgeCheck { holds: violating_bridge.is_none(), violating_bridge }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantCheck {
    pub holds: bool,
    /// A component together with its anchors that carry a nontrivial world.
    pub violating: Option<(VertexSet, VertexSet)>,
}

/// In each nontrivial 2-edge-connected component at most one anchor has a pendant world beyond itself.
pub fn single_pendant_condition(g: &Graph) -> Result<PendantCheck, TheoryError> {
    single_pendant_in(g, &structure::decompose(g)?)
}

pub(crate) fn single_pendant_in(g: &Graph, d: &Decomposition) -> Result<PendantCheck, TheoryError> {
    let components = d.nontrivial_teccs();
    if components.is_empty() {
        return Err(TheoryError::TreeInput);
    }
    let violating = components.into_iter().find_map(|h| {
        let anchors: VertexSet =
            pendant_worlds(g, h).into_iter().filter(|w| w.members.len() > 1).map(|w| w.anchor).collect();
        (anchors.len() > 1).then_some((h, anchors))
    });
    Ok(PendantCheck { holds: violating.is_none(), violating })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacentCutCheck {
    pub holds: bool,
    pub violating_pair: Option<(usize, usize)>,
}

/// Two adjacent cut vertices of one block never both carry a pendant world with more than one vertex.
pub fn adjacent_cut_pendant_condition(g: &Graph) -> Result<AdjacentCutCheck, TheoryError> {
    Ok(adjacent_cut_in(g, &structure::decompose(g)?))
}

pub(crate) fn adjacent_cut_in(g: &Graph, d: &Decomposition) -> AdjacentCutCheck {
    let violating_pair = d.blocks.iter().find_map(|block| {
        let worlds = pendant_worlds(g, block.vertices);
        let size = |u: usize| worlds.iter().find(|w| w.anchor == u).unwrap().members.len();
        block
            .edges
            .iter()
            .copied()
            .find(|&(a, b)| d.cut_vertices.contains(a) && d.cut_vertices.contains(b) && size(a) > 1 && size(b) > 1)
    });
    AdjacentCutCheck { holds: violating_pair.is_none(), violating_pair }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactusReport {
    pub cycle_lengths: Vec<usize>,
    /// Every cycle has length at most 5.
    pub max_cycle_len_ok: bool,
    /// Every cycle of length 4 or 5 has pendant worlds of equal size.
    pub world_balance_ok: bool,
    /// At most one cycle is longer than 3.
    pub long_cycle_count_ok: bool,
    pub unbalanced_cycle: Option<VertexSet>,
}

impl CactusReport {
    pub fn all_ok(&self) -> bool {
        self.max_cycle_len_ok && self.world_balance_ok && self.long_cycle_count_ok
    }
}

pub fn cactus_cycle_conditions(g: &Graph) -> Result<CactusReport, TheoryError> {
    cactus_cycles_in(g, &structure::decompose(g)?)
}

pub(crate) fn cactus_cycles_in(g: &Graph, d: &Decomposition) -> Result<CactusReport, TheoryError> {
    let cycle_lengths = structure::cycle_lengths_of(d)?;
    let unbalanced_cycle =
        d.blocks.iter().filter(|b| b.is_cycle() && (4..=5).contains(&b.edges.len())).map(|b| b.vertices).find(|&h| {
            let sizes: Vec<usize> = pendant_worlds(g, h).iter().map(|w| w.members.len()).collect();
            sizes.windows(2).any(|p| p[0] != p[1])
        });
    Ok(CactusReport {
        max_cycle_len_ok: cycle_lengths.iter().all(|&l| l <= 5),
        world_balance_ok: unbalanced_cycle.is_none(),
        long_cycle_count_ok: cycle_lengths.iter().filter(|&&l| l > 3).count() <= 1,
        unbalanced_cycle,
        cycle_lengths,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteCharacterization {
    pub complete_bipartite: Option<(usize, usize)>,
    pub equilibrium: bool,
    /// An equilibrium must be complete bipartite.
    pub consistent: bool,
}

pub fn bipartite_characterization(g: &Graph) -> Result<BipartiteCharacterization, TheoryError> {
    let class = structure::classify(g)?;
    if !class.bipartite {
        return Err(TheoryError::NotBipartite);
    }
    let equilibrium = equilibrium::is_equilibrium(g)?.is_equilibrium;
    Ok(BipartiteCharacterization {
        complete_bipartite: class.complete_bipartite,
        equilibrium,
        consistent: !equilibrium || class.complete_bipartite.is_some(),
    })
}
