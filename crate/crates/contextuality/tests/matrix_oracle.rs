//! Exhaustive cross-check of the bit-packed Pauli arithmetic against dense
//! complex matrices for one and two qubits.
//!
//! The oracle side is deliberately naive: observables are materialized as
//! 2^N × 2^N matrices from the standard single-qubit Pauli matrices and
//! multiplied entry by entry. Nothing of the bit-level implementation is
//! reused, so agreement here pins the phase and sign conventions
//! independently.

use contextuality::{triple_sign, Observable};
use num_complex::Complex64;

mod common;
use common::{all_observables, approx_eq, i_to_the, matmul, matrix_of, scaled, Matrix};

#[test]
fn products_match_dense_matrices_exhaustively() {
    for n in 1..=2u32 {
        for p in all_observables(n) {
            let mp = matrix_of(&p);
            for q in all_observables(n) {
                let mq = matrix_of(&q);
                let product = p.multiply(&q).unwrap();
                let expected = matmul(&mp, &mq);
                let got = scaled(&matrix_of(&product.observable), i_to_the(product.phase_exponent));
                assert!(
                    approx_eq(&expected, &got),
                    "{p}·{q} claimed i^{} {}",
                    product.phase_exponent,
                    product.observable
                );
            }
        }
    }
}

#[test]
fn commutation_matches_dense_matrices_exhaustively() {
    for n in 1..=2u32 {
        for p in all_observables(n) {
            let mp = matrix_of(&p);
            for q in all_observables(n) {
                let mq = matrix_of(&q);
                let commutes_matrixwise = approx_eq(&matmul(&mp, &mq), &matmul(&mq, &mp));
                assert_eq!(
                    p.commutes_with(&q).unwrap(),
                    commutes_matrixwise,
                    "commutation of {p} and {q}"
                );
            }
        }
    }
}

#[test]
fn commuting_products_have_even_phase_anticommuting_odd() {
    for n in 1..=2u32 {
        for p in all_observables(n) {
            for q in all_observables(n) {
                let e = p.multiply(&q).unwrap().phase_exponent;
                if p.commutes_with(&q).unwrap() {
                    assert_eq!(e % 2, 0, "{p}·{q}");
                } else {
                    assert_eq!(e % 2, 1, "{p}·{q}");
                }
            }
        }
    }
}

#[test]
fn triple_signs_match_dense_matrices_on_every_collinear_triple() {
    for n in 1..=2u32 {
        let observables = all_observables(n);
        let mut checked = 0u32;
        for p in &observables {
            for q in &observables {
                if p.is_identity() || q.is_identity() || p == q {
                    continue;
                }
                if p.commutes_with(q).unwrap() != true {
                    continue;
                }
                let r = Observable::new(p.mu() ^ q.mu(), p.nu() ^ q.nu(), n).unwrap();
                if r.is_identity() {
                    continue;
                }
                let sign = triple_sign(p, q, &r).unwrap();
                let dense = matmul(&matmul(&matrix_of(p), &matrix_of(q)), &matrix_of(&r));
                let identity = matrix_of(&Observable::identity(n).unwrap());
                let expected = scaled(&identity, Complex64::new(f64::from(sign), 0.0));
                assert!(approx_eq(&dense, &expected), "({p}, {q}, {r})");
                checked += 1;
            }
        }
        if n == 1 {
            // No two distinct nonidentity single-qubit Paulis commute.
            assert_eq!(checked, 0);
        } else {
            assert!(checked > 0, "no collinear triples found at N={n}");
        }
    }
}

#[test]
fn phase_is_associative_over_random_triples() {
    // Associativity of the phased product, checked over every triple at N=2.
    let observables = all_observables(2);
    for p in &observables {
        for q in &observables {
            let pq = p.multiply(q).unwrap();
            for r in &observables {
                let qr = q.multiply(r).unwrap();
                let left = pq.observable.multiply(r).unwrap();
                let right = p.multiply(&qr.observable).unwrap();
                assert_eq!(left.observable, right.observable);
                assert_eq!(
                    (u32::from(pq.phase_exponent) + u32::from(left.phase_exponent)) % 4,
                    (u32::from(qr.phase_exponent) + u32::from(right.phase_exponent)) % 4,
                    "associativity of {p}·{q}·{r}"
                );
            }
        }
    }
}
