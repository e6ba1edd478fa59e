//! Elements of K = GF(q)((t)) with finitely many nonzero digits.
//!
//! A `LaurentNumber` is the finite sum `Σ c_l t^l`. Digits are stored sparsely,
//! sorted by exponent, and zero digits are never stored, so equal elements have
//! equal representations. Arithmetic needs the residue field, which is passed
//! in explicitly.

use std::fmt;

use crate::gfq::{Field, GfElem};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentNumber {
    terms: Vec<(i32, GfElem)>,
}

impl LaurentNumber {
    pub fn zero() -> Self {
        LaurentNumber { terms: Vec::new() }
    }

    /// The element `1`.
    pub fn one() -> Self {
        Self::monomial(GfElem::ONE, 0)
    }

    /// The prime element raised to `e`.
    pub fn prime_power(e: i32) -> Self {
        Self::monomial(GfElem::ONE, e)
    }

    pub fn monomial(digit: GfElem, exponent: i32) -> Self {
        if digit.is_zero() {
            Self::zero()
        } else {
            LaurentNumber { terms: vec![(exponent, digit)] }
        }
    }

    /// Builds an element from `(exponent, digit)` pairs; repeated exponents are summed.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i32, GfElem)>) -> Self {
        let mut all: Vec<(i32, GfElem)> = terms.into_iter().collect();
        all.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, GfElem)> = Vec::with_capacity(all.len());
        for (e, d) in all {
            match out.last_mut() {
                Some((le, ld)) if *le == e => *ld = field.add(*ld, d),
                _ => out.push((e, d)),
            }
        }
        out.retain(|&(_, d)| !d.is_zero());
        LaurentNumber { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero digits in increasing exponent order.
    pub fn terms(&self) -> &[(i32, GfElem)] {
        &self.terms
    }

    pub fn digit(&self, exponent: i32) -> GfElem {
        match self.terms.binary_search_by_key(&exponent, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => GfElem::ZERO,
        }
    }

    /// Smallest exponent with a nonzero digit; `None` stands for `+∞` at zero.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.first().map(|&(e, _)| e)
    }

    /// Largest exponent with a nonzero digit.
    pub fn top_exponent(&self) -> Option<i32> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// `|x| = q^k`, returned as `Some(k)`; `None` for `|0| = 0`.
    pub fn abs_exponent(&self) -> Option<i32> {
        self.valuation().map(|v| -v)
    }

    pub fn in_ring_of_integers(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let s = field.add(a[i].1, b[j].1);
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentNumber { terms: out }
    }

    pub fn neg(&self, field: &Field) -> Self {
        LaurentNumber { terms: self.terms.iter().map(|&(e, d)| (e, field.neg(d))).collect() }
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        let products = self
            .terms
            .iter()
            .flat_map(|&(e1, d1)| other.terms.iter().map(move |&(e2, d2)| (e1 + e2, d1, d2)))
            .map(|(e, d1, d2)| (e, field.mul(d1, d2)));
        Self::from_terms(field, products)
    }

    /// Multiplies every digit by a residue-field scalar.
    pub fn scale(&self, s: GfElem, field: &Field) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentNumber { terms: self.terms.iter().map(|&(e, d)| (e, field.mul(s, d))).collect() }
    }

    /// Multiplication by `t^j`.
    pub fn shift(&self, j: i32) -> Self {
        LaurentNumber { terms: self.terms.iter().map(|&(e, d)| (e + j, d)).collect() }
    }

    /// Digits at exponents below `level`; this is the canonical center of the ball
    /// `x + 𝔓^level`.
    pub fn truncate(&self, level: i32) -> Self {
        let end = self.terms.partition_point(|&(e, _)| e < level);
        LaurentNumber { terms: self.terms[..end].to_vec() }
    }

    /// Digits at exponents at or above `level`.
    pub fn tail_from(&self, level: i32) -> Self {
        let start = self.terms.partition_point(|&(e, _)| e < level);
        LaurentNumber { terms: self.terms[start..].to_vec() }
    }

    /// The part of `x` on exponents `≤ −1`, which lies in the translation lattice.
    pub fn fractional_part(&self) -> Self {
        self.truncate(0)
    }

    /// Adds a digit at an exponent above every stored one. Used to walk down the
    /// ball tree without re-sorting.
    pub fn with_top_digit(&self, exponent: i32, digit: GfElem) -> Self {
        debug_assert!(self.top_exponent().is_none_or(|t| t < exponent));
        let mut terms = self.terms.clone();
        if !digit.is_zero() {
            terms.push((exponent, digit));
        }
        LaurentNumber { terms }
    }
}

impl fmt::Display for LaurentNumber {
    /// Renders in the script literal syntax, e.g. `t^-2 + 2*t^-1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, d)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e, d.index()) {
                (0, n) => write!(f, "{n}")?,
                (1, 1) => write!(f, "t")?,
                (1, n) => write!(f, "{n}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, n) => write!(f, "{n}*t^{e}")?,
            }
        }
        Ok(())
    }
}
