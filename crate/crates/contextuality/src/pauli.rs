//! Bit-packed arithmetic of canonical N-qubit Pauli observables.
//!
//! An observable is a tensor product of the letters I, X, Y, Z with an
//! implicit +1 prefactor (the canonical representative of its phase class).
//! Each letter maps to a pair of bits (μ, ν): I=(0,0), X=(0,1), Y=(1,1),
//! Z=(1,0), so that the letter equals (−i)^{μν} Z^μ X^ν with the standard
//! single-qubit matrices. The μ bits of all positions pack into one machine
//! word and the ν bits into another, with the leftmost letter in the most
//! significant position.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest qubit count representable with one word per component.
pub const MAX_QUBITS: u32 = 64;

/// A canonical N-qubit Pauli observable, identified with a vector of
/// F₂^{2N} via its (μ, ν) component words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Observable {
    mu: u64,
    nu: u64,
    n: u32,
}

/// A product of two canonical observables: the canonical observable of the
/// XOR-ed components together with the accumulated power of i.
///
/// The ordinary operator product equals `i^phase_exponent × observable`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PhasedProduct {
    pub observable: Observable,
    /// Power of i in {0, 1, 2, 3}.
    pub phase_exponent: u8,
}

impl Observable {
    /// Builds an observable from component words. Bit N−1−i of each word
    /// holds the component of the letter at (0-based) position i; bits at
    /// position N and above must be zero.
    pub fn new(mu: u64, nu: u64, n_qubits: u32) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n_qubits, MAX_QUBITS));
        }
        let mask = word_mask(n_qubits);
        if mu & !mask != 0 || nu & !mask != 0 {
            return Err(Error::StrayBits(n_qubits));
        }
        Ok(Observable { mu, nu, n: n_qubits })
    }

    /// The all-I observable. It is a valid multiplication result but does
    /// not label a point of any polar space.
    pub fn identity(n_qubits: u32) -> Result<Self> {
        Observable::new(0, 0, n_qubits)
    }

    /// Parses a string of letters I, X, Y, Z, leftmost letter first.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyObservable);
        }
        let count = text.chars().count();
        if count > MAX_QUBITS as usize {
            return Err(Error::QubitCountOutOfRange(
                count.min(u32::MAX as usize) as u32,
                MAX_QUBITS,
            ));
        }
        let n = count as u32;
        let mut mu = 0u64;
        let mut nu = 0u64;
        for (position, letter) in text.chars().enumerate() {
            let (m, v) = match letter {
                'I' => (0, 0),
                'X' => (0, 1),
                'Y' => (1, 1),
                'Z' => (1, 0),
                _ => return Err(Error::InvalidLetter { letter, position }),
            };
            mu = mu << 1 | m;
            nu = nu << 1 | v;
        }
        Ok(Observable { mu, nu, n })
    }

    pub fn n_qubits(&self) -> u32 {
        self.n
    }

    /// Z-component word (bit N−1 = first letter's μ).
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// X-component word (bit N−1 = first letter's ν).
    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn is_identity(&self) -> bool {
        self.mu == 0 && self.nu == 0
    }

    /// True iff the observable is a symmetric matrix, i.e. contains an even
    /// number of Y letters.
    pub fn is_symmetric(&self) -> bool {
        (self.mu & self.nu).count_ones() % 2 == 0
    }

    /// Canonical integer id: the 2N-bit value (μ ≪ N) | ν. Ids order the
    /// points of a space; the identity has id 0 and is not a point.
    pub fn id(&self) -> u128 {
        (self.mu as u128) << self.n | self.nu as u128
    }

    /// The symplectic form ⟨self, other⟩ = Σᵢ (μᵢν′ᵢ + νᵢμ′ᵢ) mod 2.
    /// Value 0 iff the observables commute.
    pub fn symplectic_form(&self, other: &Observable) -> Result<u8> {
        self.check_same_width(other)?;
        Ok(symplectic_raw(self.mu, self.nu, other.mu, other.nu))
    }

    /// True iff the two observables commute as operators.
    pub fn commutes_with(&self, other: &Observable) -> Result<bool> {
        Ok(self.symplectic_form(other)? == 0)
    }

    /// Ordinary operator product, as a canonical observable plus the
    /// accumulated power of i.
    pub fn multiply(&self, other: &Observable) -> Result<PhasedProduct> {
        self.check_same_width(other)?;
        Ok(PhasedProduct {
            observable: Observable {
                mu: self.mu ^ other.mu,
                nu: self.nu ^ other.nu,
                n: self.n,
            },
            phase_exponent: phase_exponent_raw(self.mu, self.nu, other.mu, other.nu),
        })
    }

    fn check_same_width(&self, other: &Observable) -> Result<()> {
        if self.n != other.n {
            return Err(Error::QubitCountMismatch(self.n, other.n));
        }
        Ok(())
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (0..self.n).rev() {
            let m = self.mu >> i & 1;
            let v = self.nu >> i & 1;
            f.write_str(match (m, v) {
                (0, 0) => "I",
                (0, 1) => "X",
                (1, 1) => "Y",
                _ => "Z",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Observable({self})")
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Observable::parse(s)
    }
}

/// Sign of the product of a line's three observables.
///
/// Requires the three observables to pairwise commute and their components
/// to XOR to zero; the product is then ±identity and the returned value is
/// its sign.
pub fn triple_sign(p: &Observable, q: &Observable, r: &Observable) -> Result<i8> {
    p.check_same_width(q)?;
    p.check_same_width(r)?;
    let collinear = (p.mu ^ q.mu ^ r.mu) == 0 && (p.nu ^ q.nu ^ r.nu) == 0;
    let commuting = symplectic_raw(p.mu, p.nu, q.mu, q.nu) == 0
        && symplectic_raw(p.mu, p.nu, r.mu, r.nu) == 0
        && symplectic_raw(q.mu, q.nu, r.mu, r.nu) == 0;
    if !collinear || !commuting {
        return Err(Error::NotALine(p.to_string(), q.to_string(), r.to_string()));
    }
    // p·q = i^e (p⊕q) and (p⊕q)·r = r·r contributes no further phase, so the
    // full product's exponent is e; commuting operands force e even.
    let e = phase_exponent_raw(p.mu, p.nu, q.mu, q.nu);
    debug_assert_eq!(e % 2, 0);
    Ok(if e == 0 { 1 } else { -1 })
}

pub(crate) fn word_mask(n: u32) -> u64 {
    u64::MAX >> (64 - n)
}

#[inline]
pub(crate) fn symplectic_raw(pmu: u64, pnu: u64, qmu: u64, qnu: u64) -> u8 {
    (((pmu & qnu) ^ (pnu & qmu)).count_ones() & 1) as u8
}

/// Word-parallel power of i accumulated by the product p·q of canonical
/// observables: with a letter written as (−i)^{μν} Z^μ X^ν, each position
/// contributes Y(r) − Y(p) − Y(q) + 2 ν_p μ_q mod 4, where Y(·) marks the
/// positions carrying the letter Y and r = p⊕q.
#[inline]
pub(crate) fn phase_exponent_raw(pmu: u64, pnu: u64, qmu: u64, qnu: u64) -> u8 {
    let y_p = pmu & pnu;
    let y_q = qmu & qnu;
    let y_r = (pmu ^ qmu) & (pnu ^ qnu);
    let swaps = pnu & qmu;
    let e = y_r.count_ones() + 3 * (y_p.count_ones() + y_q.count_ones()) + 2 * swaps.count_ones();
    (e & 3) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs(s: &str) -> Observable {
        Observable::parse(s).unwrap()
    }

    #[test]
    fn parse_maps_letters_to_component_bits() {
        let x = obs("X");
        assert_eq!((x.mu(), x.nu()), (0, 1));
        let z = obs("Z");
        assert_eq!((z.mu(), z.nu()), (1, 0));
        let y = obs("Y");
        assert_eq!((y.mu(), y.nu()), (1, 1));
        assert!(obs("IIII").is_identity());
        let iiiy = obs("IIIY");
        assert_eq!((iiiy.mu(), iiiy.nu()), (0b0001, 0b0001));
        // Leftmost letter occupies the most significant bit.
        let ziii = obs("ZIII");
        assert_eq!((ziii.mu(), ziii.nu()), (0b1000, 0b0000));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Observable::parse("XQZ"),
            Err(Error::InvalidLetter { letter: 'Q', position: 1 })
        ));
        assert!(matches!(Observable::parse(""), Err(Error::EmptyObservable)));
    }

    #[test]
    fn format_round_trips_every_four_qubit_string() {
        for n in 1..=4u32 {
            for id in 0..(1u128 << (2 * n)) {
                let mu = (id >> n) as u64;
                let nu = (id & ((1 << n) - 1)) as u64;
                let o = Observable::new(mu, nu, n).unwrap();
                assert_eq!(Observable::parse(&o.to_string()).unwrap(), o);
                assert_eq!(o.id(), id);
            }
        }
    }

    #[test]
    fn symplectic_form_basics() {
        assert_eq!(obs("X").symplectic_form(&obs("Z")).unwrap(), 1);
        assert_eq!(obs("XX").symplectic_form(&obs("YY")).unwrap(), 0);
        for s in ["X", "Y", "Z", "I"] {
            assert_eq!(obs(s).symplectic_form(&obs(s)).unwrap(), 0);
        }
        assert!(matches!(
            obs("X").symplectic_form(&obs("XX")),
            Err(Error::QubitCountMismatch(1, 2))
        ));
    }

    #[test]
    fn single_qubit_phase_table() {
        // Cyclic products (X·Y, Y·Z, Z·X) contribute +1; anticyclic +3.
        let cases = [
            ("X", "Y", "Z", 1),
            ("Y", "Z", "X", 1),
            ("Z", "X", "Y", 1),
            ("Y", "X", "Z", 3),
            ("Z", "Y", "X", 3),
            ("X", "Z", "Y", 3),
        ];
        for (a, b, product, phase) in cases {
            let got = obs(a).multiply(&obs(b)).unwrap();
            assert_eq!(got.observable, obs(product), "{a}·{b}");
            assert_eq!(got.phase_exponent, phase, "{a}·{b}");
        }
        for s in ["I", "X", "Y", "Z"] {
            let sq = obs(s).multiply(&obs(s)).unwrap();
            assert!(sq.observable.is_identity());
            assert_eq!(sq.phase_exponent, 0);
            let with_id = obs(s).multiply(&obs("I")).unwrap();
            assert_eq!(with_id.observable, obs(s));
            assert_eq!(with_id.phase_exponent, 0);
        }
    }

    #[test]
    fn multiword_products_accumulate_phases() {
        let p = obs("XX").multiply(&obs("YY")).unwrap();
        assert_eq!(p.observable, obs("ZZ"));
        assert_eq!(p.phase_exponent, 2);
    }

    #[test]
    fn triple_sign_examples() {
        assert_eq!(triple_sign(&obs("XX"), &obs("YY"), &obs("ZZ")).unwrap(), -1);
        assert_eq!(triple_sign(&obs("XI"), &obs("IX"), &obs("XX")).unwrap(), 1);
        assert_eq!(
            triple_sign(&obs("YXYI"), &obs("XIXY"), &obs("ZXZY")).unwrap(),
            -1
        );
        assert!(matches!(
            triple_sign(&obs("XI"), &obs("IX"), &obs("XZ")),
            Err(Error::NotALine(..))
        ));
        // Components XOR to zero but X and Z anticommute.
        assert!(matches!(
            triple_sign(&obs("X"), &obs("Z"), &obs("Y")),
            Err(Error::NotALine(..))
        ));
    }

    #[test]
    fn symmetry_counts_y_letters() {
        assert!(obs("IIII").is_symmetric());
        assert!(!obs("IIIY").is_symmetric());
        assert!(obs("XYYZ").is_symmetric());
        assert!(obs("YY").is_symmetric());
    }

    #[test]
    fn ids_order_observables_lexicographically() {
        let a = obs("IX");
        let b = obs("IZ");
        assert!(a.id() < b.id());
        assert!(a < b);
    }
}
