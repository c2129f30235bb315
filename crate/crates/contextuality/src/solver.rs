//! Stochastic local search for low-Hamming-distance assignments.
//!
//! The search keeps, for every point, the count of currently unsatisfied
//! contexts through it. Each outer iteration snapshots the maximum count M,
//! then sweeps the points in canonical order; a point with count strictly
//! above θ·M is flipped with probability 1 − γ. Counts are maintained
//! incrementally as flips occur mid-sweep; only M stays fixed for the
//! sweep. Restarts are independent searches from derived seeds, reduced to
//! the minimum distance with ties broken by lowest restart index, so the
//! outcome does not depend on how restarts are scheduled.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Assignment, Configuration};
use crate::error::{Error, Result};
use crate::rng::{derive_restart_seed, Xoshiro256};

/// Search parameters.
///
/// `theta` is the eligibility threshold, `gamma` the flip rejection
/// probability: an eligible point flips when a uniform draw exceeds
/// `gamma`. Both lie in [0,1]. `max_iterations` bounds the outer
/// iterations of one restart and `time_budget_ms`, when set, cuts one
/// restart's loop off early by wall clock.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct SolverParams {
    pub theta: f64,
    pub gamma: f64,
    pub max_iterations: u64,
    pub restarts: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_budget_ms: Option<u64>,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            theta: 0.8,
            gamma: 0.9,
            max_iterations: 1000,
            restarts: 200,
            seed: 1,
            time_budget_ms: None,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::ParameterOutOfRange {
                name: "theta",
                value: self.theta,
            });
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::ParameterOutOfRange {
                name: "gamma",
                value: self.gamma,
            });
        }
        if self.max_iterations == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "max_iterations",
                value: 0.0,
            });
        }
        if self.restarts == 0 {
            return Err(Error::ParameterOutOfRange {
                name: "restarts",
                value: 0.0,
            });
        }
        Ok(())
    }
}

/// A new best distance, recorded when it was first reached. Iteration 0 is
/// the all-plus starting assignment.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub best_distance: u64,
}

/// Outcome of a search: the best assignment found and where it was found.
#[derive(Clone, PartialEq, Debug)]
pub struct SolveResult {
    pub best_assignment: Assignment,
    pub best_distance: u64,
    pub unsatisfied_context_ids: Vec<u32>,
    pub params: SolverParams,
    pub iterations_to_best: u64,
    pub restart_index_of_best: u32,
    pub runtime_ms: u64,
    /// Improvement events of the winning restart, starting at iteration 0.
    pub trajectory: Vec<TracePoint>,
}

/// Mutable search state: an assignment plus per-point unsatisfied counts
/// kept consistent with it under flips.
pub struct SearchState<'a> {
    config: &'a Configuration,
    assignment: Assignment,
    satisfied: Vec<bool>,
    uns: Vec<u32>,
    distance: u64,
}

impl<'a> SearchState<'a> {
    /// State at the all-plus assignment, where exactly the negative
    /// contexts are unsatisfied.
    pub fn new(config: &'a Configuration) -> Self {
        let assignment = Assignment::all_plus(config);
        let satisfied: Vec<bool> = (0..config.context_count())
            .map(|c| config.expected_sign(c) == 1)
            .collect();
        let mut uns = vec![0u32; config.point_count()];
        let mut distance = 0u64;
        for (c, &sat) in satisfied.iter().enumerate() {
            if !sat {
                distance += 1;
                for &m in &config.context(c) {
                    uns[m as usize] += 1;
                }
            }
        }
        SearchState {
            config,
            assignment,
            satisfied,
            uns,
            distance,
        }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    /// Current number of unsatisfied contexts.
    pub fn distance(&self) -> u64 {
        self.distance
    }

    /// Current number of unsatisfied contexts through a point.
    pub fn unsatisfied_through(&self, local_point: u32) -> u32 {
        self.uns[local_point as usize]
    }

    pub fn max_unsatisfied(&self) -> u32 {
        self.uns.iter().copied().max().unwrap_or(0)
    }

    /// Flips one point and toggles the satisfaction of every context
    /// through it, adjusting the counts of all affected members.
    pub fn flip(&mut self, local_point: u32) {
        let config = self.config;
        self.assignment.flip(local_point);
        for &c in config.contexts_through(local_point) {
            let now_satisfied = !self.satisfied[c as usize];
            self.satisfied[c as usize] = now_satisfied;
            if now_satisfied {
                self.distance -= 1;
                for &m in &config.context(c as usize) {
                    self.uns[m as usize] -= 1;
                }
            } else {
                self.distance += 1;
                for &m in &config.context(c as usize) {
                    self.uns[m as usize] += 1;
                }
            }
        }
    }
}

fn run_restart(
    config: &Configuration,
    params: &SolverParams,
    restart_seed: u64,
    restart_index: u32,
) -> SolveResult {
    let start = Instant::now();
    let deadline = params
        .time_budget_ms
        .map(|ms| start + Duration::from_millis(ms));
    let mut rng = Xoshiro256::from_seed(restart_seed);
    let mut state = SearchState::new(config);

    let mut best_distance = state.distance();
    let mut best_assignment = state.assignment().clone();
    let mut iterations_to_best = 0u64;
    let mut trajectory = vec![TracePoint {
        iteration: 0,
        best_distance,
    }];

    for iteration in 1..=params.max_iterations {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            break;
        }
        let snapshot_max = state.max_unsatisfied();
        if snapshot_max == 0 {
            break;
        }
        let threshold = params.theta * f64::from(snapshot_max);
        for point in 0..config.point_count() as u32 {
            if f64::from(state.unsatisfied_through(point)) > threshold
                && rng.next_f64() > params.gamma
            {
                state.flip(point);
            }
        }
        if state.distance() < best_distance {
            best_distance = state.distance();
            best_assignment = state.assignment().clone();
            iterations_to_best = iteration;
            trajectory.push(TracePoint {
                iteration,
                best_distance,
            });
        }
    }

    debug_assert_eq!(
        state.distance(),
        config
            .hamming_distance(state.assignment())
            .expect("state assignment matches config"),
    );
    let unsatisfied = config
        .unsatisfied(&best_assignment)
        .expect("best assignment matches config");
    debug_assert_eq!(unsatisfied.context_count() as u64, best_distance);

    SolveResult {
        best_assignment,
        best_distance,
        unsatisfied_context_ids: unsatisfied.context_ids().to_vec(),
        params: *params,
        iterations_to_best,
        restart_index_of_best: restart_index,
        runtime_ms: start.elapsed().as_millis() as u64,
        trajectory,
    }
}

/// One search from an explicit seed.
pub fn solve_once(
    config: &Configuration,
    params: &SolverParams,
    restart_seed: u64,
) -> Result<SolveResult> {
    params.validate()?;
    if config.context_count() == 0 {
        return Err(Error::NoContexts);
    }
    Ok(run_restart(config, params, restart_seed, 0))
}

/// Multi-restart search. Restart i uses a seed derived from
/// `params.seed` and i; the returned result is the minimum distance over
/// all restarts, ties broken by lowest restart index. The reduction key is
/// unique per restart, so the winner does not depend on thread count.
pub fn solve(config: &Configuration, params: &SolverParams) -> Result<SolveResult> {
    params.validate()?;
    if config.context_count() == 0 {
        return Err(Error::NoContexts);
    }
    let start = Instant::now();
    let mut best = (0..params.restarts)
        .into_par_iter()
        .map(|i| run_restart(config, params, derive_restart_seed(params.seed, i), i))
        .min_by_key(|r| (r.best_distance, r.restart_index_of_best))
        .expect("restarts is positive");
    best.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(best)
}
