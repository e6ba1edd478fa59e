//! The translation lattice `{u(n) : n ≥ 0}` of coset representatives of O in K.
//!
//! `u(n)` is built from the base-q digits `b_k` of `n` as `Σ b_k t^{-(k+1)}`,
//! where each digit is read as a residue-field element through its index. The
//! lattice is therefore exactly the set of elements supported on negative
//! exponents. Indices are kept as digit vectors so that deep levels never
//! overflow a machine word.

use std::fmt;

use thiserror::Error;

use crate::gfq::{Field, GfElem};
use crate::locfield::LaurentNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("{0} has a digit at a nonnegative exponent and is not a lattice point")]
    NotInLattice(String),
    #[error("index does not fit in 64 bits")]
    Overflow,
}

/// A lattice index `n`, stored as little-endian base-q digits with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TransIndex {
    digits: Vec<u32>,
}

impl TransIndex {
    pub fn zero() -> Self {
        TransIndex { digits: Vec::new() }
    }

    pub fn from_digits(mut digits: Vec<u32>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        TransIndex { digits }
    }

    pub fn from_u64(field: &Field, mut n: u64) -> Self {
        let q = field.q() as u64;
        let mut digits = Vec::new();
        while n > 0 {
            digits.push((n % q) as u32);
            n /= q;
        }
        TransIndex { digits }
    }

    pub fn to_u64(&self, field: &Field) -> Result<u64, LatticeError> {
        let q = field.q() as u64;
        self.digits.iter().rev().try_fold(0u64, |acc, &d| {
            acc.checked_mul(q).and_then(|v| v.checked_add(d as u64)).ok_or(LatticeError::Overflow)
        })
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Number of base-q digits; `|u(n)| = q^len`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl fmt::Display for TransIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.digits)
    }
}

/// `u(n)`.
pub fn u_of_index(field: &Field, n: &TransIndex) -> LaurentNumber {
    LaurentNumber::from_terms(
        field,
        n.digits.iter().enumerate().map(|(k, &b)| (-(k as i32) - 1, elem(field, b))),
    )
}

/// `u(n)` for a machine-word index.
pub fn u(field: &Field, n: u64) -> LaurentNumber {
    u_of_index(field, &TransIndex::from_u64(field, n))
}

fn elem(field: &Field, index: u32) -> GfElem {
    field.from_index(index as u64).expect("lattice digit below q")
}

/// The unique `n` with `u(n) = x`.
pub fn index_of_u(x: &LaurentNumber) -> Result<TransIndex, LatticeError> {
    if x.top_exponent().is_some_and(|e| e >= 0) {
        return Err(LatticeError::NotInLattice(x.to_string()));
    }
    let len = x.valuation().map_or(0, |v| (-v) as usize);
    let mut digits = vec![0u32; len];
    for &(e, d) in x.terms() {
        digits[(-e - 1) as usize] = d.index();
    }
    Ok(TransIndex::from_digits(digits))
}

/// Index of `u(m) + u(n)`.
pub fn u_add(field: &Field, m: &TransIndex, n: &TransIndex) -> TransIndex {
    let len = m.len().max(n.len());
    let at = |t: &TransIndex, k: usize| elem(field, t.digits.get(k).copied().unwrap_or(0));
    TransIndex::from_digits((0..len).map(|k| field.add(at(m, k), at(n, k)).index()).collect())
}

/// Index of `−u(n)`.
pub fn u_neg(field: &Field, n: &TransIndex) -> TransIndex {
    TransIndex::from_digits(n.digits.iter().map(|&d| field.neg(elem(field, d)).index()).collect())
}

/// Index-level form of `u(r q^k + s) = u(r) t^{-k} + u(s)`, valid for `s < q^k`.
pub fn u_compose(r: &TransIndex, k: usize, s: &TransIndex) -> TransIndex {
    debug_assert!(s.len() <= k);
    let mut digits = s.digits.clone();
    digits.resize(k, 0);
    digits.extend_from_slice(&r.digits);
    TransIndex::from_digits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1)].iter().map(|&(p, c)| Field::new(p, c).unwrap()).collect()
    }

    #[test]
    fn examples() {
        let f2 = Field::prime(2).unwrap();
        assert!(u(&f2, 0).is_zero());
        let t = |e| LaurentNumber::prime_power(e);
        assert_eq!(u(&f2, 3), t(-2).add(&t(-1), &f2));
        assert_eq!(index_of_u(&t(-2)).unwrap().to_u64(&f2).unwrap(), 2);

        let f4 = Field::new(2, 2).unwrap();
        let eps1 = f4.from_digits(&[0, 1]).unwrap();
        assert_eq!(u(&f4, 2), LaurentNumber::monomial(eps1, -1));

        let f3 = Field::prime(3).unwrap();
        let one = TransIndex::from_u64(&f3, 1);
        let two = TransIndex::from_u64(&f3, 2);
        assert!(u_add(&f3, &one, &two).is_zero());
        assert!(index_of_u(&LaurentNumber::one()).is_err());
    }

    #[test]
    fn negation_is_identity_in_characteristic_two() {
        for f in [Field::prime(2).unwrap(), Field::new(2, 2).unwrap()] {
            for n in 0..64 {
                let idx = TransIndex::from_u64(&f, n);
                assert_eq!(u_neg(&f, &idx), idx);
            }
        }
    }

    #[test]
    fn round_trip_below_q4() {
        for f in fields() {
            let q = f.q() as u64;
            for n in 0..q.pow(4) {
                let x = u(&f, n);
                assert_eq!(x.fractional_part(), x);
                assert_eq!(index_of_u(&x).unwrap().to_u64(&f).unwrap(), n);
            }
        }
    }

    #[test]
    fn runs_in_big_window_without_overflow() {
        let f = Field::prime(5).unwrap();
        let deep = TransIndex::from_digits(vec![4; 40]);
        assert!(deep.to_u64(&f).is_err());
        let x = u_of_index(&f, &deep);
        assert_eq!(x.valuation(), Some(-40));
        assert_eq!(index_of_u(&x).unwrap(), deep);
    }
}
