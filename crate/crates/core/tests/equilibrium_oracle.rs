// SPDX-License-Identifier: Apache-2.0

mod common;

use common::Matrix;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumeq::survey::enumerate_labeled_connected;
use sumeq::{
    apply_deviation, cost_delta, enumerate_deviations, is_equilibrium, run_dynamics, CostDelta, Distance,
    DynamicsOutcome, Graph,
};

fn delta_from_sums(before: Distance, after: Distance) -> CostDelta {
    match (before.value(), after.value()) {
        (Some(b), Some(a)) => CostDelta::Finite(a as i64 - b as i64),
        (Some(_), None) => CostDelta::Infinite,
        _ => unreachable!("connected input"),
    }
}

#[test]
fn cost_delta_is_the_definition() {
    for n in 3..=6 {
        for g in enumerate_labeled_connected(n).unwrap() {
            for u in 0..n {
                for d in enumerate_deviations(&g, u) {
                    let deviated = apply_deviation(&g, d).unwrap();
                    assert_eq!(deviated.edge_count(), g.edge_count());
                    let want = delta_from_sums(g.sum_distances(u), deviated.sum_distances(u));
                    assert_eq!(cost_delta(&g, d).unwrap(), want, "{g:?} {d}");
                }
            }
        }
    }
}

#[test]
fn cost_delta_matches_floyd_oracle() {
    for n in 3..=5 {
        for g in enumerate_labeled_connected(n).unwrap() {
            let m = Matrix::from_graph(&g);
            for u in 0..n {
                let before = m.cost(u).unwrap() as i64;
                for d in enumerate_deviations(&g, u) {
                    let after = m.without_edge(d.agent, d.drop).with_edge(d.agent, d.add).cost(u);
                    let want = after.map_or(CostDelta::Infinite, |a| CostDelta::Finite(a as i64 - before));
                    assert_eq!(cost_delta(&g, d).unwrap(), want);
                }
            }
        }
    }
}

/// The oracle also tries targets that are already neighbours; the verdicts must still agree.
#[test]
fn verdicts_match_naive_enumeration() {
    for n in 3..=6 {
        for g in enumerate_labeled_connected(n).unwrap() {
            let verdict = is_equilibrium(&g).unwrap();
            let naive = Matrix::from_graph(&g).improving_swap();
            assert_eq!(verdict.is_equilibrium, naive.is_none(), "{g:?}");
            assert_eq!(verdict.is_equilibrium, verdict.witness.is_none());
            assert_eq!(
                verdict.is_equilibrium,
                verdict.per_agent_min.iter().flatten().all(|&d| d >= CostDelta::Finite(0))
            );
        }
    }
}

#[test]
fn verdicts_match_shuffled_reenumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in enumerate_labeled_connected(6).unwrap().step_by(7) {
        let mut all: Vec<_> = (0..g.n()).flat_map(|u| enumerate_deviations(&g, u)).collect();
        all.shuffle(&mut rng);
        let min = all.iter().map(|&d| cost_delta(&g, d).unwrap()).min();
        let verdict = is_equilibrium(&g).unwrap();
        assert_eq!(verdict.is_equilibrium, min.is_none_or(|m| m >= CostDelta::Finite(0)));
        if let Some((d, delta)) = verdict.witness {
            assert_eq!(cost_delta(&g, d).unwrap(), delta);
            assert!(delta.is_improving());
        }
    }
}

#[test]
fn dynamics_traces_are_sound() {
    for g in enumerate_labeled_connected(5).unwrap() {
        let trace = run_dynamics(&g, 50).unwrap();
        assert_eq!(trace.states.len(), trace.moves.len() + 1);
        for (pair, &(d, delta)) in trace.states.windows(2).zip(&trace.moves) {
            assert_eq!(apply_deviation(&pair[0], d).unwrap(), pair[1]);
            assert_eq!(cost_delta(&pair[0], d).unwrap(), delta);
            assert!(delta.is_improving());
        }
        match trace.outcome {
            DynamicsOutcome::Converged => assert!(is_equilibrium(trace.last()).unwrap().is_equilibrium),
            DynamicsOutcome::Cycled => {
                let last = trace.last();
                assert!(trace.states[..trace.states.len() - 1].contains(last));
            }
            DynamicsOutcome::StepLimit => assert_eq!(trace.moves.len(), 50),
        }
    }
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, seed, extra)| {
        // Random spanning tree plus random extra edges.
        let mut edges = Vec::new();
        let mut state = seed;
        for v in 1..n {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            edges.push(((state >> 33) as usize % v, v));
        }
        let mut k = 0;
        for v in 1..n {
            for u in 0..v {
                if extra >> (k % 64) & 1 == 1 && !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::new(n, &edges).unwrap()
    })
}

proptest! {
    // Deleting an edge never shortens a distance.
    #[test]
    fn edge_removal_is_monotone(g in arb_connected(10)) {
        let m = Matrix::from_graph(&g);
        let base = m.floyd();
        for (u, v) in g.edges() {
            let cut = m.without_edge(u, v).floyd();
            for a in 0..g.n() {
                for b in 0..g.n() {
                    prop_assert!(cut[a][b] >= base[a][b]);
                }
            }
        }
    }

    #[test]
    fn swap_then_reverse_is_identity(g in arb_connected(10)) {
        for u in 0..g.n() {
            for d in enumerate_deviations(&g, u) {
                let there = apply_deviation(&g, d).unwrap();
                prop_assert_eq!(apply_deviation(&there, d.reversed()).unwrap(), g.clone());
            }
        }
    }
}
