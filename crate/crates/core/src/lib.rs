// SPDX-License-Identifier: Apache-2.0

//! Sum basic equilibria of network creation games.
//!
//! A connected graph is a *sum basic equilibrium* when no vertex can lower
//! the sum of its distances to everybody else by swapping one incident edge
//! `uv` for another edge `uv'`. This crate decides that property exactly,
//! runs best-response swap dynamics, evaluates the averaged swap-cost
//! aggregates over 2-edge-connected components, and verifies the structural
//! consequences (diameter at most 2 for bipartite, block and cactus
//! equilibria) exhaustively over small graphs.
//!
//! The swap-cost aggregates are generic over [`Scalar`]; the aliases below
//! fix the exact rational instantiation used for every sign decision.

pub mod equilibrium;
pub mod graph;
pub mod io;
pub mod scalar;
pub mod structure;
pub mod survey;
pub mod theory;

pub use equilibrium::{
    apply_deviation, best_response_step, cost_delta, enumerate_deviations, is_equilibrium, run_dynamics, CostDelta,
    Deviation, DynamicsOutcome, DynamicsTrace, EquilibriumError, EquilibriumVerdict,
};
pub use graph::{Distance, DistanceVector, Graph, GraphError, VertexSet};
pub use scalar::Scalar;
pub use structure::{decompose, Decomposition, GraphClass};
pub use survey::{run_survey, Claim, ClaimOutcome, SurveyConfig, SurveyReport};
pub use theory::{Component, LayerProfile, TheoryError};

/// Exact rational scalar for swap-cost aggregates.
pub type Rational = num_rational::Ratio<i64>;

pub type SwapAggregate = theory::SwapAggregate<Rational>;
pub type ArcContribution = theory::ArcContribution<Rational>;
pub type InequalityReport = theory::InequalityReport<Rational>;
pub type StrictWitness = theory::StrictWitness<Rational>;

/// Floating-point instantiations, for diagnostics only.
pub type SwapAggregateF64 = theory::SwapAggregate<f64>;
pub type SwapAggregateF32 = theory::SwapAggregate<f32>;
