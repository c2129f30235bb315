//! Exact degree of contextuality by minimum-weight coset search.
//!
//! Over GF(2) the reachable unsatisfied-context vectors form the coset
//! E + Im(A), where E marks the initially unsatisfied contexts of the
//! all-plus assignment and A is the context-point incidence matrix. The
//! degree equals the minimum Hamming weight of that coset, found by
//! walking all 2^rank codewords of Im(A) in Gray-code order, one generator
//! XOR and one popcount batch per step.

use rayon::prelude::*;

use crate::config::Configuration;
use crate::error::{Error, Result};

/// Budget ceiling used when callers do not pick one. Walks beyond 2^30
/// codewords stop being interactive.
pub const DEFAULT_BUDGET_LOG2: u32 = 30;

/// Number of contiguous Gray-walk ranges scanned independently. Fixed so
/// the partitioning never depends on the thread count.
const WALK_CHUNKS_LOG2: u32 = 8;

/// A basis of the column space Im(A) of a configuration's incidence
/// matrix. Each generator is a context indicator packed into 64-bit words.
pub struct Gf2Basis {
    generators: Vec<Vec<u64>>,
    words: usize,
}

impl Gf2Basis {
    pub fn rank(&self) -> u32 {
        self.generators.len() as u32
    }

    /// Generators as packed bit vectors of `words` words each.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn words_per_vector(&self) -> usize {
        self.words
    }
}

/// Basis of Im(A) by Gaussian elimination on the point columns.
pub fn incidence_rank(config: &Configuration) -> Gf2Basis {
    let words = (config.context_count() + 63) / 64;
    let mut generators: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for point in 0..config.point_count() as u32 {
        let mut column = vec![0u64; words];
        for &c in config.contexts_through(point) {
            column[c as usize / 64] |= 1u64 << (c % 64);
        }
        for (generator, &pivot) in generators.iter().zip(&pivots) {
            if column[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (w, g) in column.iter_mut().zip(generator) {
                    *w ^= g;
                }
            }
        }
        if let Some(pivot) = lowest_set_bit(&column) {
            generators.push(column);
            pivots.push(pivot);
        }
    }
    Gf2Basis { generators, words }
}

fn lowest_set_bit(vector: &[u64]) -> Option<usize> {
    vector
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * 64 + vector[i].trailing_zeros() as usize)
}

fn weight(vector: &[u64]) -> u64 {
    vector.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// The coset member selected by a Gray code: E xored with every generator
/// whose bit is set in gray(k) = k ^ (k >> 1).
fn seed_vector(initial: &[u64], basis: &Gf2Basis, k: u64) -> Vec<u64> {
    let mut acc = initial.to_vec();
    let gray = k ^ (k >> 1);
    for (bit, generator) in basis.generators.iter().enumerate() {
        if gray >> bit & 1 == 1 {
            for (a, g) in acc.iter_mut().zip(generator) {
                *a ^= g;
            }
        }
    }
    acc
}

/// Minimum coset weight over the index range [k_start, k_end).
fn walk_range(initial: &[u64], basis: &Gf2Basis, k_start: u64, k_end: u64) -> u64 {
    let mut acc = seed_vector(initial, basis, k_start);
    let mut best = weight(&acc);
    for k in k_start + 1..k_end {
        let generator = &basis.generators[k.trailing_zeros() as usize];
        for (a, g) in acc.iter_mut().zip(generator) {
            *a ^= g;
        }
        best = best.min(weight(&acc));
    }
    best
}

/// Exact degree of contextuality, or a refusal naming the rank when
/// 2^rank exceeds the enumeration budget.
pub fn exact_degree(config: &Configuration, budget_log2: u32) -> Result<u64> {
    let basis = incidence_rank(config);
    let rank = basis.rank();
    // The ceiling of 62 keeps 1 << rank inside u64 range; walks anywhere
    // near that size are unfinishable regardless of the requested budget.
    if rank > budget_log2.min(62) {
        return Err(Error::BudgetExceeded { rank, budget_log2 });
    }

    let words = basis.words;
    let mut initial = vec![0u64; words];
    for c in 0..config.context_count() {
        if config.expected_sign(c) == -1 {
            initial[c / 64] |= 1u64 << (c % 64);
        }
    }
    if rank == 0 {
        return Ok(weight(&initial));
    }

    let total: u64 = 1 << rank;
    let chunks_log2 = WALK_CHUNKS_LOG2.min(rank);
    let chunk_size = total >> chunks_log2;
    Ok((0..1u64 << chunks_log2)
        .into_par_iter()
        .map(|chunk| {
            let k_start = chunk * chunk_size;
            walk_range(&initial, &basis, k_start, k_start + chunk_size)
        })
        .min()
        .expect("at least one chunk"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Observable;
    use crate::space::{QuadricKind, SymplecticSpace};
    use std::collections::HashSet;

    fn obs(s: &str) -> Observable {
        Observable::parse(s).unwrap()
    }

    #[test]
    fn zero_context_configuration_has_rank_zero_and_degree_zero() {
        let space = SymplecticSpace::build(2).unwrap();
        let elliptic = space
            .enumerate_quadrics(QuadricKind::Elliptic, false)
            .unwrap();
        let config = Configuration::from_quadric(&space, &elliptic[0]);
        assert_eq!(incidence_rank(&config).rank(), 0);
        assert_eq!(exact_degree(&config, DEFAULT_BUDGET_LOG2).unwrap(), 0);
    }

    #[test]
    fn doily_exact_degree_is_three() {
        let space = SymplecticSpace::build(2).unwrap();
        let config = Configuration::from_space(&space);
        assert_eq!(exact_degree(&config, DEFAULT_BUDGET_LOG2).unwrap(), 3);
    }

    #[test]
    fn hyperbolic_quadric_of_two_qubits_has_degree_one() {
        let space = SymplecticSpace::build(2).unwrap();
        let q = space.quadric(&obs("XZ")).unwrap();
        let config = Configuration::from_quadric(&space, &q);
        assert_eq!(config.context_count(), 6);
        assert_eq!(exact_degree(&config, DEFAULT_BUDGET_LOG2).unwrap(), 1);
    }

    #[test]
    fn refusal_reports_the_rank() {
        let space = SymplecticSpace::build(2).unwrap();
        let config = Configuration::from_space(&space);
        let rank = incidence_rank(&config).rank();
        assert!(rank > 5);
        match exact_degree(&config, 5) {
            Err(Error::BudgetExceeded {
                rank: reported,
                budget_log2,
            }) => {
                assert_eq!(reported, rank);
                assert_eq!(budget_log2, 5);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn generators_are_linearly_independent() {
        let space = SymplecticSpace::build(3).unwrap();
        let config = Configuration::from_space(&space);
        let basis = incidence_rank(&config);
        // Re-eliminating the generators must not lose any of them.
        let mut seen_pivots: Vec<usize> = Vec::new();
        let mut reduced: Vec<Vec<u64>> = Vec::new();
        for generator in basis.generators() {
            let mut v = generator.clone();
            for (g, &pivot) in reduced.iter().zip(&seen_pivots) {
                if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(g) {
                        *a ^= b;
                    }
                }
            }
            let pivot = lowest_set_bit(&v).expect("generator dependent on earlier ones");
            reduced.push(v);
            seen_pivots.push(pivot);
        }
        assert_eq!(reduced.len() as u32, basis.rank());
    }

    #[test]
    fn gray_walk_visits_every_codeword_exactly_once() {
        let space = SymplecticSpace::build(2).unwrap();
        let config = Configuration::from_space(&space);
        let basis = incidence_rank(&config);
        let rank = basis.rank();
        assert!(rank <= 20);

        let words = basis.words_per_vector();
        let zero = vec![0u64; words];
        let mut visited: HashSet<Vec<u64>> = HashSet::new();
        let mut acc = zero.clone();
        visited.insert(acc.clone());
        for k in 1..1u64 << rank {
            let generator = &basis.generators()[k.trailing_zeros() as usize];
            for (a, g) in acc.iter_mut().zip(generator) {
                *a ^= g;
            }
            assert!(visited.insert(acc.clone()), "codeword revisited at k={k}");
        }

        let mut direct: HashSet<Vec<u64>> = HashSet::new();
        for combo in 0..1u64 << rank {
            direct.insert(seed_vector(&zero, &basis, combo ^ (combo >> 1)));
        }
        assert_eq!(visited, direct);
    }

    #[test]
    fn chunked_walk_matches_single_range() {
        let space = SymplecticSpace::build(2).unwrap();
        let q = space.quadric(&obs("ZZ")).unwrap();
        let config = Configuration::from_quadric(&space, &q);
        let basis = incidence_rank(&config);
        let rank = basis.rank();
        let mut initial = vec![0u64; basis.words_per_vector()];
        for c in 0..config.context_count() {
            if config.expected_sign(c) == -1 {
                initial[c / 64] |= 1u64 << (c % 64);
            }
        }
        let whole = walk_range(&initial, &basis, 0, 1 << rank);
        assert_eq!(exact_degree(&config, DEFAULT_BUDGET_LOG2).unwrap(), whole);
    }
}
