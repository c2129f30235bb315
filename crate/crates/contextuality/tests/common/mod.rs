//! Shared test support: a deliberately naive dense-matrix model of Pauli
//! observables. Nothing of the bit-level implementation is reused, so
//! agreement with it pins the phase and sign conventions independently.

#![allow(dead_code)]

use contextuality::Observable;
use num_complex::Complex64;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn single_letter(m: u64, v: u64) -> Matrix {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (m, v) {
        (0, 0) => vec![vec![one, zero], vec![zero, one]],
        (0, 1) => vec![vec![zero, one], vec![one, zero]],
        (1, 1) => vec![vec![zero, -i], vec![i, zero]],
        _ => vec![vec![one, zero], vec![zero, -one]],
    }
}

pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); ca * cb]; ra * rb];
    for ia in 0..ra {
        for ja in 0..ca {
            for ib in 0..rb {
                for jb in 0..cb {
                    out[ia * rb + ib][ja * cb + jb] = a[ia][ja] * b[ib][jb];
                }
            }
        }
    }
    out
}

pub fn matrix_of(observable: &Observable) -> Matrix {
    let n = observable.n_qubits();
    let mut out = single_letter(observable.mu() >> (n - 1) & 1, observable.nu() >> (n - 1) & 1);
    for i in (0..n - 1).rev() {
        let letter = single_letter(observable.mu() >> i & 1, observable.nu() >> i & 1);
        out = kronecker(&out, &letter);
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += a[r][k] * b[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < 1e-9)
}

pub fn scaled(m: &Matrix, factor: Complex64) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|x| x * factor).collect())
        .collect()
}

pub fn i_to_the(e: u8) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub fn all_observables(n: u32) -> Vec<Observable> {
    let mut out = Vec::new();
    for id in 0..(1u64 << (2 * n)) {
        let mu = id >> n;
        let nu = id & ((1 << n) - 1);
        out.push(Observable::new(mu, nu, n).unwrap());
    }
    out
}
