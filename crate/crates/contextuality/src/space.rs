//! Points, lines, and quadrics of the symplectic polar space W(2N−1,2).
//!
//! Points are the 4^N − 1 nonidentity canonical observables, ordered by
//! their integer id; point index = id − 1. Lines are the totally isotropic
//! triples: pairwise-commuting observables whose components XOR to zero.
//! Each line carries the sign of its operator product.

use crate::error::{Error, Result};
use crate::pauli::{phase_exponent_raw, symplectic_raw, word_mask, Observable};

/// Largest qubit count a space will be built for. N=7 already needs about
/// 22.4 million lines and 67 million incidence slots.
pub const MAX_SPACE_QUBITS: u32 = 7;

/// Number of points of W(2N−1,2): 4^N − 1.
pub fn point_count_full(n_qubits: u32) -> u64 {
    (1u64 << (2 * n_qubits)) - 1
}

/// Number of lines of W(2N−1,2): (4^N − 1)(4^{N−1} − 1)/3.
pub fn line_count_full(n_qubits: u32) -> u64 {
    let p = (1u64 << (2 * n_qubits)) - 1;
    let through_point = (1u64 << (2 * (n_qubits - 1))) - 1;
    p * through_point / 3
}

/// The two quadric families of W(2N−1,2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QuadricKind {
    Hyperbolic,
    Elliptic,
}

impl std::fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuadricKind::Hyperbolic => "hyperbolic",
            QuadricKind::Elliptic => "elliptic",
        })
    }
}

/// Number of points on a quadric of the given kind:
/// (2^{N−1} + 1)(2^N − 1) hyperbolic, (2^{N−1} − 1)(2^N + 1) elliptic.
pub fn quadric_point_count(kind: QuadricKind, n_qubits: u32) -> u64 {
    let half = 1u64 << (n_qubits - 1);
    let full = 1u64 << n_qubits;
    match kind {
        QuadricKind::Hyperbolic => (half + 1) * (full - 1),
        QuadricKind::Elliptic => (half - 1) * (full + 1),
    }
}

/// Number of quadrics of the given kind in W(2N−1,2), including the
/// identity-indexed hyperbolic copy.
pub fn quadric_family_size(kind: QuadricKind, n_qubits: u32) -> u64 {
    quadric_point_count(kind, n_qubits) + 1
}

/// A set of point indices of one space, packed as a bitset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(universe: u32) -> Self {
        PointSet {
            words: vec![0; (universe as usize + 63) / 64],
        }
    }

    pub fn from_ids(universe: u32, ids: impl IntoIterator<Item = u32>) -> Self {
        let mut set = PointSet::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn insert(&mut self, point: u32) {
        self.words[point as usize / 64] |= 1u64 << (point % 64);
    }

    pub fn contains(&self, point: u32) -> bool {
        self.words
            .get(point as usize / 64)
            .is_some_and(|w| w >> (point % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let base = i as u32 * 64;
            (0..64u32).filter_map(move |b| (word >> b & 1 == 1).then_some(base + b))
        })
    }
}

/// A line of the space: three point indices in ascending order and the sign
/// of the product of their observables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Line {
    pub points: [u32; 3],
    pub sign: i8,
}

/// W(2N−1,2) with all lines enumerated and a point→lines incidence index.
pub struct SymplecticSpace {
    n: u32,
    line_points: Vec<[u32; 3]>,
    negative: Vec<u64>,
    negative_count: u64,
    adj_offsets: Vec<u32>,
    adj_lines: Vec<u32>,
}

impl SymplecticSpace {
    /// Enumerates points and lines of W(2N−1,2).
    ///
    /// Every unordered commuting pair {p, q} spans the line {p, q, p⊕q};
    /// a line is recorded only when (p, q) is its lexicographically least
    /// generator pair, so each line is emitted exactly once, in ascending
    /// order of its point triple.
    pub fn build(n_qubits: u32) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_SPACE_QUBITS {
            return Err(Error::SpaceTooLarge(n_qubits));
        }
        let n = n_qubits;
        let p = point_count_full(n) as u32;
        let expected_lines = line_count_full(n) as usize;

        let mut line_points = Vec::with_capacity(expected_lines);
        for a_id in 1..=p {
            for b_id in a_id + 1..=p {
                let c_id = a_id ^ b_id;
                if c_id > b_id && symplectic_ids(a_id, b_id, n) == 0 {
                    line_points.push([a_id - 1, b_id - 1, c_id - 1]);
                }
            }
        }
        debug_assert_eq!(line_points.len(), expected_lines);

        let mut negative = vec![0u64; (line_points.len() + 63) / 64];
        let mut negative_count = 0u64;
        for (i, line) in line_points.iter().enumerate() {
            let e = phase_exponent_ids(line[0] + 1, line[1] + 1, n);
            debug_assert_eq!(e % 2, 0);
            if e == 2 {
                negative[i / 64] |= 1u64 << (i % 64);
                negative_count += 1;
            }
        }

        // Every point lies on exactly 4^{N−1} − 1 lines.
        let degree = (1u32 << (2 * (n - 1))) - 1;
        let mut adj_offsets = Vec::with_capacity(p as usize + 1);
        for i in 0..=p {
            adj_offsets.push(i * degree);
        }
        let mut cursor: Vec<u32> = adj_offsets[..p as usize].to_vec();
        let mut adj_lines = vec![0u32; 3 * line_points.len()];
        for (i, line) in line_points.iter().enumerate() {
            for &pt in line {
                adj_lines[cursor[pt as usize] as usize] = i as u32;
                cursor[pt as usize] += 1;
            }
        }
        debug_assert!(cursor
            .iter()
            .zip(adj_offsets[1..].iter())
            .all(|(c, o)| c == o));

        Ok(SymplecticSpace {
            n,
            line_points,
            negative,
            negative_count,
            adj_offsets,
            adj_lines,
        })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n
    }

    pub fn point_count(&self) -> u32 {
        point_count_full(self.n) as u32
    }

    pub fn line_count(&self) -> usize {
        self.line_points.len()
    }

    pub fn negative_line_count(&self) -> u64 {
        self.negative_count
    }

    /// The observable at a point index (index = id − 1).
    pub fn observable(&self, point: u32) -> Observable {
        let id = u64::from(point) + 1;
        let mu = id >> self.n;
        let nu = id & word_mask(self.n);
        Observable::new(mu, nu, self.n).expect("point index within range")
    }

    /// The point index of a nonidentity observable of this space.
    pub fn point_index_of(&self, observable: &Observable) -> Result<u32> {
        if observable.n_qubits() != self.n {
            return Err(Error::QubitCountMismatch(observable.n_qubits(), self.n));
        }
        if observable.is_identity() {
            return Err(Error::IdentityIndex);
        }
        Ok((observable.id() - 1) as u32)
    }

    pub fn line(&self, index: usize) -> Line {
        Line {
            points: self.line_points[index],
            sign: self.line_sign(index),
        }
    }

    pub fn line_points(&self, index: usize) -> [u32; 3] {
        self.line_points[index]
    }

    pub fn line_sign(&self, index: usize) -> i8 {
        if self.negative[index / 64] >> (index % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn lines(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.line_count()).map(|i| self.line(i))
    }

    /// Indices of the lines through a point.
    pub fn lines_through(&self, point: u32) -> &[u32] {
        let lo = self.adj_offsets[point as usize] as usize;
        let hi = self.adj_offsets[point as usize + 1] as usize;
        &self.adj_lines[lo..hi]
    }

    /// The quadric whose index is the given (nonidentity) observable:
    /// symmetric points commuting with the index together with
    /// skew-symmetric points not commuting with it. The quadric is
    /// hyperbolic iff the index is symmetric.
    pub fn quadric(&self, index: &Observable) -> Result<Quadric> {
        if index.n_qubits() != self.n {
            return Err(Error::QubitCountMismatch(index.n_qubits(), self.n));
        }
        if index.is_identity() {
            return Err(Error::IdentityIndex);
        }
        Ok(self.quadric_unchecked(index))
    }

    /// The hyperbolic quadric associated with the identity: the set of all
    /// symmetric points. Kept separate from [`Self::quadric`] because the
    /// identity is not a point of the space.
    pub fn identity_quadric(&self) -> Quadric {
        self.quadric_unchecked(&Observable::identity(self.n).expect("valid qubit count"))
    }

    fn quadric_unchecked(&self, index: &Observable) -> Quadric {
        let kind = if index.is_symmetric() {
            QuadricKind::Hyperbolic
        } else {
            QuadricKind::Elliptic
        };
        let p = self.point_count();
        let mut members = PointSet::empty(p);
        let mut member_ids = Vec::new();
        for point in 0..p {
            let id = u64::from(point) + 1;
            let mu = id >> self.n;
            let nu = id & word_mask(self.n);
            let skew = ((mu & nu).count_ones() & 1) as u8;
            if symplectic_raw(mu, nu, index.mu(), index.nu()) == skew {
                members.insert(point);
                member_ids.push(point);
            }
        }
        let mut line_ids = Vec::new();
        let mut negative_line_count = 0u64;
        for (i, line) in self.line_points.iter().enumerate() {
            if line.iter().all(|&pt| members.contains(pt)) {
                line_ids.push(i as u32);
                if self.line_sign(i) == -1 {
                    negative_line_count += 1;
                }
            }
        }
        debug_assert_eq!(member_ids.len() as u64, quadric_point_count(kind, self.n));
        Quadric {
            kind,
            index: *index,
            members,
            member_ids,
            line_ids,
            negative_line_count,
        }
    }

    /// All quadrics of one kind, ordered by index id. For the hyperbolic
    /// family, `include_identity_quadric` prepends the identity-indexed
    /// copy, completing the family to its full size
    /// (2^{N−1} ± 1)(2^N ∓ 1) + 1.
    pub fn enumerate_quadrics(
        &self,
        kind: QuadricKind,
        include_identity_quadric: bool,
    ) -> Result<Vec<Quadric>> {
        if kind == QuadricKind::Elliptic {
            if self.n == 1 {
                return Err(Error::NoEllipticQuadrics);
            }
            if include_identity_quadric {
                return Err(Error::WrongIndexSymmetry {
                    expected: QuadricKind::Elliptic,
                    expected_symmetry: "skew-symmetric",
                    index: "identity".into(),
                });
            }
        }
        let mut quadrics = Vec::new();
        if include_identity_quadric {
            quadrics.push(self.identity_quadric());
        }
        for point in 0..self.point_count() {
            let observable = self.observable(point);
            let point_kind = if observable.is_symmetric() {
                QuadricKind::Hyperbolic
            } else {
                QuadricKind::Elliptic
            };
            if point_kind == kind {
                quadrics.push(self.quadric_unchecked(&observable));
            }
        }
        Ok(quadrics)
    }
}

/// A quadric of the space: its member points and the space lines fully
/// contained in it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quadric {
    kind: QuadricKind,
    index: Observable,
    members: PointSet,
    member_ids: Vec<u32>,
    line_ids: Vec<u32>,
    negative_line_count: u64,
}

impl Quadric {
    pub fn kind(&self) -> QuadricKind {
        self.kind
    }

    pub fn index(&self) -> &Observable {
        &self.index
    }

    pub fn members(&self) -> &PointSet {
        &self.members
    }

    /// Member point indices in ascending order.
    pub fn member_ids(&self) -> &[u32] {
        &self.member_ids
    }

    /// Indices of the space lines fully contained in the quadric.
    pub fn line_ids(&self) -> &[u32] {
        &self.line_ids
    }

    pub fn point_count(&self) -> usize {
        self.member_ids.len()
    }

    pub fn line_count(&self) -> usize {
        self.line_ids.len()
    }

    pub fn negative_line_count(&self) -> u64 {
        self.negative_line_count
    }
}

fn symplectic_ids(a_id: u32, b_id: u32, n: u32) -> u8 {
    let mask = word_mask(n);
    symplectic_raw(
        u64::from(a_id) >> n,
        u64::from(a_id) & mask,
        u64::from(b_id) >> n,
        u64::from(b_id) & mask,
    )
}

fn phase_exponent_ids(a_id: u32, b_id: u32, n: u32) -> u8 {
    let mask = word_mask(n);
    phase_exponent_raw(
        u64::from(a_id) >> n,
        u64::from(a_id) & mask,
        u64::from(b_id) >> n,
        u64::from(b_id) & mask,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn rejects_unsupported_sizes() {
        assert!(matches!(SymplecticSpace::build(0), Err(Error::SpaceTooLarge(0))));
        assert!(matches!(SymplecticSpace::build(8), Err(Error::SpaceTooLarge(8))));
    }

    #[test]
    fn single_qubit_space_has_no_lines() {
        let space = SymplecticSpace::build(1).unwrap();
        assert_eq!(space.point_count(), 3);
        assert_eq!(space.line_count(), 0);
    }

    #[test]
    fn counts_match_closed_forms_up_to_four_qubits() {
        let negatives = [(2u32, 3u64), (3, 90), (4, 1908)];
        for (n, expected_negative) in negatives {
            let space = SymplecticSpace::build(n).unwrap();
            assert_eq!(u64::from(space.point_count()), point_count_full(n));
            assert_eq!(space.line_count() as u64, line_count_full(n));
            assert_eq!(space.negative_line_count(), expected_negative, "N={n}");
        }
    }

    #[test]
    fn every_line_is_a_commuting_triple_with_zero_xor() {
        for n in 2..=3u32 {
            let space = SymplecticSpace::build(n).unwrap();
            for line in space.lines() {
                let [a, b, c] = line.points;
                assert!(a < b && b < c);
                let (oa, ob, oc) = (
                    space.observable(a),
                    space.observable(b),
                    space.observable(c),
                );
                assert_eq!(
                    crate::pauli::triple_sign(&oa, &ob, &oc).unwrap(),
                    line.sign
                );
            }
        }
    }

    #[test]
    fn every_point_has_full_degree() {
        for n in 2..=3u32 {
            let space = SymplecticSpace::build(n).unwrap();
            let degree = (1usize << (2 * (n - 1))) - 1;
            for point in 0..space.point_count() {
                assert_eq!(space.lines_through(point).len(), degree);
            }
        }
    }

    #[test]
    fn observable_point_index_round_trip() {
        let space = SymplecticSpace::build(3).unwrap();
        for point in 0..space.point_count() {
            let o = space.observable(point);
            assert_eq!(space.point_index_of(&o).unwrap(), point);
        }
        let identity = Observable::identity(3).unwrap();
        assert!(matches!(
            space.point_index_of(&identity),
            Err(Error::IdentityIndex)
        ));
    }

    #[test]
    fn quadric_membership_and_counts() {
        let space = SymplecticSpace::build(2).unwrap();
        let xz = Observable::parse("XZ").unwrap();
        let q = space.quadric(&xz).unwrap();
        assert_eq!(q.kind(), QuadricKind::Hyperbolic);
        assert_eq!(q.point_count(), 9);
        assert_eq!(q.line_count(), 6);

        let space3 = SymplecticSpace::build(3).unwrap();
        let skew = Observable::parse("IIY").unwrap();
        let q3 = space3.quadric(&skew).unwrap();
        assert_eq!(q3.kind(), QuadricKind::Elliptic);
        assert_eq!(q3.point_count(), 27);
        assert_eq!(q3.line_count(), 45);
    }

    #[test]
    fn quadric_rejects_identity_index() {
        let space = SymplecticSpace::build(2).unwrap();
        let identity = Observable::identity(2).unwrap();
        assert!(matches!(space.quadric(&identity), Err(Error::IdentityIndex)));
    }

    #[test]
    fn identity_quadric_collects_symmetric_points() {
        let space = SymplecticSpace::build(2).unwrap();
        let q = space.identity_quadric();
        assert_eq!(q.kind(), QuadricKind::Hyperbolic);
        assert_eq!(q.point_count(), 9);
        assert!(q
            .member_ids()
            .iter()
            .all(|&pt| space.observable(pt).is_symmetric()));
    }

    #[test]
    fn member_counts_match_closed_forms_for_all_indices() {
        for n in 2..=3u32 {
            let space = SymplecticSpace::build(n).unwrap();
            for point in 0..space.point_count() {
                let q = space.quadric(&space.observable(point)).unwrap();
                assert_eq!(
                    q.point_count() as u64,
                    quadric_point_count(q.kind(), n)
                );
            }
        }
    }

    #[test]
    fn quadric_families_have_expected_sizes_and_distributions() {
        // Negative-line distributions over each full family, keyed by the
        // number of negative lines with the number of quadrics having it.
        let space2 = SymplecticSpace::build(2).unwrap();
        let hyp2 = space2
            .enumerate_quadrics(QuadricKind::Hyperbolic, true)
            .unwrap();
        assert_eq!(hyp2.len() as u64, quadric_family_size(QuadricKind::Hyperbolic, 2));
        assert_eq!(distribution(&hyp2), BTreeMap::from([(1, 9), (3, 1)]));

        let ell2 = space2
            .enumerate_quadrics(QuadricKind::Elliptic, false)
            .unwrap();
        assert_eq!(ell2.len(), 6);
        assert!(ell2.iter().all(|q| q.line_count() == 0));

        let space3 = SymplecticSpace::build(3).unwrap();
        let hyp3 = space3
            .enumerate_quadrics(QuadricKind::Hyperbolic, true)
            .unwrap();
        assert_eq!(hyp3.len(), 36);
        assert_eq!(distribution(&hyp3), BTreeMap::from([(27, 27), (39, 9)]));

        let ell3 = space3
            .enumerate_quadrics(QuadricKind::Elliptic, false)
            .unwrap();
        assert_eq!(ell3.len(), 28);
        assert_eq!(distribution(&ell3), BTreeMap::from([(9, 1), (13, 27)]));
    }

    fn distribution(quadrics: &[Quadric]) -> BTreeMap<u64, u32> {
        let mut hist = BTreeMap::new();
        for q in quadrics {
            *hist.entry(q.negative_line_count()).or_insert(0) += 1;
        }
        hist
    }

    #[test]
    fn elliptic_enumeration_guards() {
        let space1 = SymplecticSpace::build(1).unwrap();
        assert!(matches!(
            space1.enumerate_quadrics(QuadricKind::Elliptic, false),
            Err(Error::NoEllipticQuadrics)
        ));
        let space2 = SymplecticSpace::build(2).unwrap();
        assert!(space2
            .enumerate_quadrics(QuadricKind::Elliptic, true)
            .is_err());
    }

    #[test]
    fn point_sets_insert_and_iterate() {
        let mut set = PointSet::empty(130);
        assert!(set.is_empty());
        for id in [0u32, 63, 64, 129] {
            set.insert(id);
        }
        assert_eq!(set.len(), 4);
        assert!(set.contains(63) && set.contains(64));
        assert!(!set.contains(1));
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }
}
