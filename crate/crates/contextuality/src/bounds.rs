//! Closed-form lower bound on the degree of contextuality of the full
//! space, and the count of symplectic polarities.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Lower bound (4^N − 1)(4^{N−1} − 1)/15 on the degree of the full
/// N-qubit configuration. The product is always divisible by 15.
pub fn lower_bound_full(n_qubits: u32) -> Result<BigUint> {
    if n_qubits < 2 {
        return Err(Error::BoundsDomain(n_qubits));
    }
    let four = BigUint::from(4u32);
    let one = BigUint::from(1u32);
    let a = four.pow(n_qubits) - &one;
    let b = four.pow(n_qubits - 1) - &one;
    Ok(a * b / BigUint::from(15u32))
}

/// Number of symplectic polarities on N qubits:
/// 2^{N(N−1)} · Π_{i=1..N−1} (2^{2i+1} − 1).
pub fn polarity_count(n_qubits: u32) -> Result<BigUint> {
    if n_qubits < 2 {
        return Err(Error::BoundsDomain(n_qubits));
    }
    let two = BigUint::from(2u32);
    let one = BigUint::from(1u32);
    let mut count = two.pow(n_qubits * (n_qubits - 1));
    for i in 1..n_qubits {
        count *= two.pow(2 * i + 1) - &one;
    }
    Ok(count)
}
