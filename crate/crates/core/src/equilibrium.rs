// SPDX-License-Identifier: Apache-2.0

//! Swap deviations, their cost differences and sum basic equilibrium verdicts.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{bfs_sum, Distance, Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid deviation {0}")]
    InvalidDeviation(Deviation),
}

/// Agent `agent` replaces its edge to `drop` by an edge to `add`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Deviation {
    pub agent: usize,
    pub drop: usize,
    pub add: usize,
}

impl Deviation {
    pub fn new(agent: usize, drop: usize, add: usize) -> Self {
        Deviation { agent, drop, add }
    }

    /// The swap that undoes this one.
    pub fn reversed(self) -> Deviation {
        Deviation { agent: self.agent, drop: self.add, add: self.drop }
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.n();
        self.agent < n
            && self.drop < n
            && self.add < n
            && self.add != self.agent
            && self.add != self.drop
            && g.has_edge(self.agent, self.drop)
            && !g.has_edge(self.agent, self.add)
    }
}

impl fmt::Display for Deviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}->{}", self.agent, self.drop, self.add)
    }
}

/// `D'(u) - D(u)`; `Infinite` when the swap disconnects the agent from someone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostDelta {
    Finite(i64),
    Infinite,
}

impl CostDelta {
    pub fn is_improving(self) -> bool {
        matches!(self, CostDelta::Finite(d) if d < 0)
    }

    fn between(before: Distance, after: Distance) -> CostDelta {
        let before = before.value().expect("finite base cost") as i64;
        match after.value() {
            Some(a) => CostDelta::Finite(a as i64 - before),
            None => CostDelta::Infinite,
        }
    }
}

impl Ord for CostDelta {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CostDelta::Finite(a), CostDelta::Finite(b)) => a.cmp(b),
            (CostDelta::Finite(_), CostDelta::Infinite) => Ordering::Less,
            (CostDelta::Infinite, CostDelta::Finite(_)) => Ordering::Greater,
            (CostDelta::Infinite, CostDelta::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for CostDelta {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CostDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostDelta::Finite(d) => write!(f, "{d}"),
            CostDelta::Infinite => f.write_str("+inf"),
        }
    }
}

impl Serialize for CostDelta {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            CostDelta::Finite(d) => serializer.serialize_i64(*d),
            CostDelta::Infinite => serializer.serialize_str("+inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumVerdict {
    pub is_equilibrium: bool,
    /// First strictly improving deviation in enumeration order.
    pub witness: Option<(Deviation, CostDelta)>,
    /// Minimal cost difference per agent; `None` for agents without deviations.
    pub per_agent_min: Vec<Option<CostDelta>>,
}

/// All swaps available to `u`, ordered by `(drop, add)`.
///
/// Targets already adjacent to `u` are left out. Such a swap would leave
/// `G - uv`, and deleting an edge never shortens any distance, so its cost
/// difference is non-negative and it can never witness a non-equilibrium.
pub fn enumerate_deviations(g: &Graph, u: usize) -> Vec<Deviation> {
    let neighbors = g.neighbors(u);
    let targets = g.vertices().difference(neighbors).difference(crate::VertexSet::singleton(u));
    neighbors.iter().flat_map(|v| targets.iter().map(move |add| Deviation::new(u, v, add))).collect()
}

pub fn apply_deviation(g: &Graph, d: Deviation) -> Result<Graph, EquilibriumError> {
    if !d.is_valid_for(g) {
        return Err(EquilibriumError::InvalidDeviation(d));
    }
    Ok(g.swapped(d.agent, d.drop, d.add))
}

pub fn cost_delta(g: &Graph, d: Deviation) -> Result<CostDelta, EquilibriumError> {
    if !d.is_valid_for(g) {
        return Err(EquilibriumError::InvalidDeviation(d));
    }
    let before = g.sum_distances(d.agent);
    if !before.is_finite() {
        return Err(EquilibriumError::Disconnected);
    }
    Ok(SwapEvaluator::new(g).delta(d, before))
}

/// Evaluates swaps against a scratch copy of the adjacency rows, one BFS from the agent each.
struct SwapEvaluator {
    rows: [u64; MAX_VERTICES],
    n: usize,
}

impl SwapEvaluator {
    fn new(g: &Graph) -> Self {
        let mut rows = [0u64; MAX_VERTICES];
        rows[..g.n()].copy_from_slice(g.rows());
        SwapEvaluator { rows, n: g.n() }
    }

    fn delta(&mut self, d: Deviation, before: Distance) -> CostDelta {
        let Deviation { agent: u, drop: v, add: w } = d;
        let saved = (self.rows[u], self.rows[v], self.rows[w]);
        self.rows[u] = (self.rows[u] & !(1 << v)) | (1 << w);
        self.rows[v] &= !(1 << u);
        self.rows[w] |= 1 << u;
        let after = bfs_sum(&self.rows[..self.n], u);
        (self.rows[u], self.rows[v], self.rows[w]) = saved;
        CostDelta::between(before, after)
    }
}

pub fn is_equilibrium(g: &Graph) -> Result<EquilibriumVerdict, EquilibriumError> {
    if !g.is_connected() {
        return Err(EquilibriumError::Disconnected);
    }
    let mut eval = SwapEvaluator::new(g);
    let mut witness = None;
    let mut per_agent_min = Vec::with_capacity(g.n());
    for u in 0..g.n() {
        let before = g.sum_distances(u);
        let mut best: Option<CostDelta> = None;
        for d in enumerate_deviations(g, u) {
            let delta = eval.delta(d, before);
            if witness.is_none() && delta.is_improving() {
                witness = Some((d, delta));
            }
            best = Some(best.map_or(delta, |b| b.min(delta)));
        }
        per_agent_min.push(best);
    }
    Ok(EquilibriumVerdict { is_equilibrium: witness.is_none(), witness, per_agent_min })
}

/// Cheaper than [`is_equilibrium`]: stops at the first improving swap.
pub fn first_improving_deviation(g: &Graph) -> Result<Option<(Deviation, CostDelta)>, EquilibriumError> {
    if !g.is_connected() {
        return Err(EquilibriumError::Disconnected);
    }
    let mut eval = SwapEvaluator::new(g);
    for u in 0..g.n() {
        let before = g.sum_distances(u);
        for d in enumerate_deviations(g, u) {
            let delta = eval.delta(d, before);
            if delta.is_improving() {
                return Ok(Some((d, delta)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub deviation: Deviation,
    pub delta: CostDelta,
    pub next: Graph,
}

/// The improving swap minimising `(delta, agent, drop, add)`, if any.
pub fn best_response_step(g: &Graph) -> Result<Option<BestResponse>, EquilibriumError> {
    if !g.is_connected() {
        return Err(EquilibriumError::Disconnected);
    }
    let mut eval = SwapEvaluator::new(g);
    let mut best: Option<(CostDelta, Deviation)> = None;
    for u in 0..g.n() {
        let before = g.sum_distances(u);
        for d in enumerate_deviations(g, u) {
            let delta = eval.delta(d, before);
            if delta.is_improving() && best.is_none_or(|b| (delta, d) < b) {
                best = Some((delta, d));
            }
        }
    }
    Ok(best.map(|(delta, deviation)| BestResponse {
        deviation,
        delta,
        next: g.swapped(deviation.agent, deviation.drop, deviation.add),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicsOutcome {
    Converged,
    Cycled,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsTrace {
    /// Initial graph followed by one state per move.
    pub states: Vec<Graph>,
    pub moves: Vec<(Deviation, CostDelta)>,
    pub outcome: DynamicsOutcome,
}

impl DynamicsTrace {
    pub fn last(&self) -> &Graph {
        self.states.last().expect("trace holds the initial state")
    }
}

/// Iterates best responses until an equilibrium, a repeated labelled graph, or `step_limit` moves.
pub fn run_dynamics(g: &Graph, step_limit: usize) -> Result<DynamicsTrace, EquilibriumError> {
    let mut states = vec![g.clone()];
    let mut moves = Vec::new();
    let mut seen = HashSet::from([g.clone()]);
    let outcome = loop {
        let current = states.last().unwrap();
        let Some(step) = best_response_step(current)? else {
            break DynamicsOutcome::Converged;
        };
        if moves.len() == step_limit {
            break DynamicsOutcome::StepLimit;
        }
        moves.push((step.deviation, step.delta));
        let repeated = !seen.insert(step.next.clone());
        states.push(step.next);
        if repeated {
            break DynamicsOutcome::Cycled;
        }
    };
    Ok(DynamicsTrace { states, moves, outcome })
}
