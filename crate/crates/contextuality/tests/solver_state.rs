//! Property tests for incremental solver state.
//!
//! The per-point unsatisfied counts must stay consistent with a
//! from-scratch recount after arbitrary flip sequences, and multi-restart
//! results must not depend on the rayon pool size.

use std::sync::OnceLock;

use proptest::prelude::*;

use contextuality::{
    solve, Configuration, QuadricKind, SearchState, SolverParams, SymplecticSpace,
};

fn spaces() -> &'static (SymplecticSpace, SymplecticSpace) {
    static SPACES: OnceLock<(SymplecticSpace, SymplecticSpace)> = OnceLock::new();
    SPACES.get_or_init(|| {
        (
            SymplecticSpace::build(2).unwrap(),
            SymplecticSpace::build(3).unwrap(),
        )
    })
}

fn configuration(choice: u8) -> Configuration {
    let (two, three) = spaces();
    match choice {
        0 => Configuration::from_space(two),
        1 => Configuration::from_space(three),
        2 => {
            let q = three
                .enumerate_quadrics(QuadricKind::Hyperbolic, false)
                .unwrap();
            Configuration::from_quadric(three, &q[0])
        }
        _ => {
            let q = three
                .enumerate_quadrics(QuadricKind::Elliptic, false)
                .unwrap();
            Configuration::from_quadric(three, &q[0])
        }
    }
}

/// Per-point unsatisfied counts computed from scratch.
fn recount(config: &Configuration, state: &SearchState) -> Vec<u32> {
    let mut uns = vec![0u32; config.point_count()];
    let unsatisfied = config.unsatisfied(state.assignment()).unwrap();
    for &c in unsatisfied.context_ids() {
        for &m in &config.context(c as usize) {
            uns[m as usize] += 1;
        }
    }
    uns
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // 300 cases of 20 to 60 flips give over ten thousand recounts per run.
    #[test]
    fn incremental_counts_match_recount_after_every_flip(
        choice in 0u8..4,
        flips in prop::collection::vec(0u32..1000, 20..=60),
    ) {
        let config = configuration(choice);
        let points = config.point_count() as u32;
        let mut state = SearchState::new(&config);
        for raw in flips {
            state.flip(raw % points);
            let fresh = recount(&config, &state);
            for point in 0..points {
                prop_assert_eq!(state.unsatisfied_through(point), fresh[point as usize]);
            }
            let total: u64 = fresh.iter().map(|&u| u64::from(u)).sum();
            prop_assert_eq!(total, 3 * state.distance());
            prop_assert_eq!(
                state.distance(),
                config.hamming_distance(state.assignment()).unwrap()
            );
        }
    }

    #[test]
    fn double_flip_restores_the_state(
        choice in 0u8..4,
        warmup in prop::collection::vec(0u32..1000, 0..=20),
        point in 0u32..1000,
    ) {
        let config = configuration(choice);
        let points = config.point_count() as u32;
        let mut state = SearchState::new(&config);
        for raw in warmup {
            state.flip(raw % points);
        }
        let before_values = state.assignment().values().to_vec();
        let before_distance = state.distance();
        let before_uns: Vec<u32> =
            (0..points).map(|p| state.unsatisfied_through(p)).collect();
        state.flip(point % points);
        state.flip(point % points);
        prop_assert_eq!(state.assignment().values(), &before_values[..]);
        prop_assert_eq!(state.distance(), before_distance);
        for p in 0..points {
            prop_assert_eq!(state.unsatisfied_through(p), before_uns[p as usize]);
        }
    }
}

#[test]
fn solve_results_are_identical_across_pool_sizes() {
    let (_, three) = spaces();
    let config = Configuration::from_space(three);
    let params = SolverParams {
        restarts: 12,
        max_iterations: 120,
        seed: 99,
        ..SolverParams::default()
    };
    let results: Vec<_> = [1usize, 2, 5]
        .iter()
        .map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| solve(&config, &params).unwrap())
        })
        .collect();
    for other in &results[1..] {
        assert_eq!(results[0].best_assignment, other.best_assignment);
        assert_eq!(results[0].best_distance, other.best_distance);
        assert_eq!(
            results[0].restart_index_of_best,
            other.restart_index_of_best
        );
        assert_eq!(results[0].iterations_to_best, other.iterations_to_best);
        assert_eq!(results[0].trajectory, other.trajectory);
        assert_eq!(
            results[0].unsatisfied_context_ids,
            other.unsatisfied_context_ids
        );
    }
}
