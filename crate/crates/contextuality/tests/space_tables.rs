//! Census of the full spaces: point, line and negative-line counts for
//! two to five qubits, pinned against independently known values. The
//! six- and seven-qubit rows are exercised by the acceptance suite,
//! which also tracks their time and memory budgets.

use contextuality::{point_count_full, line_count_full, SymplecticSpace};

const ROWS: [(u32, u32, usize, u64); 4] = [
    (2, 15, 15, 3),
    (3, 63, 315, 90),
    (4, 255, 5355, 1908),
    (5, 1023, 86955, 35400),
];

#[test]
fn census_matches_known_rows_up_to_five_qubits() {
    for (qubits, points, lines, negative) in ROWS {
        let space = SymplecticSpace::build(qubits).unwrap();
        assert_eq!(space.point_count(), points, "points at N={qubits}");
        assert_eq!(space.line_count(), lines, "lines at N={qubits}");
        assert_eq!(
            space.negative_line_count(),
            negative,
            "negative lines at N={qubits}"
        );
        assert_eq!(point_count_full(qubits), u64::from(points));
        assert_eq!(line_count_full(qubits), lines as u64);
    }
}

#[test]
fn single_qubit_space_is_lineless() {
    let space = SymplecticSpace::build(1).unwrap();
    assert_eq!(space.point_count(), 3);
    assert_eq!(space.line_count(), 0);
    assert_eq!(space.negative_line_count(), 0);
}

/// Every line's negativity is stable under recomputation from the
/// observables, and the negative count is consistent with the stored
/// signs.
#[test]
fn negative_count_agrees_with_per_line_signs() {
    let space = SymplecticSpace::build(3).unwrap();
    let recount = (0..space.line_count())
        .filter(|&i| space.line_sign(i) == -1)
        .count() as u64;
    assert_eq!(recount, space.negative_line_count());
}
