//! Exact arithmetic in Q(ζ_p) and the additive character of K.
//!
//! A `CycloNumber` holds rational coordinates on `1, ζ, …, ζ^{p-2}`; the relation
//! `ζ^{p-1} = −(1 + ζ + … + ζ^{p-2})` is applied after every operation, so the
//! representation is unique. The character is `χ(x) = ζ_p^{Tr(c_{-1}(x))}`
//! where `c_{-1}` is the digit of `x` at exponent −1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gfq::Field;
use crate::locfield::LaurentNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("cyclotomic numbers over different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the character of 0 is constant and has no finite level")]
    ConstantCharacter,
    #[error("{0} is not a rational number")]
    NotRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    p: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    pub fn zero(p: u32) -> Self {
        CycloNumber { p, coeffs: vec![BigRational::zero(); p as usize - 1] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: u32, num: i64, den: i64) -> Self {
        Self::from_rational(p, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_p^k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let mut full = vec![BigRational::zero(); p as usize];
        full[k.rem_euclid(p as i64) as usize] = BigRational::one();
        Self::reduce(p, full)
    }

    /// Coordinates on `1, ζ, …, ζ^{p-2}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Reduces a length-p vector of coordinates on `1, …, ζ^{p-1}`.
    pub(crate) fn reduce(p: u32, mut full: Vec<BigRational>) -> Self {
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in &mut full {
                *c -= &top;
            }
        }
        CycloNumber { p, coeffs: full }
    }

    /// Coordinates on `1, …, ζ^{p-1}` with a zero last entry.
    pub(crate) fn widened(&self) -> Vec<BigRational> {
        let mut full = self.coeffs.clone();
        full.push(BigRational::zero());
        full
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(CycloError::PrimeMismatch(self.p, other.p))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNumber { p: self.p, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNumber { p: self.p, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let p = self.p as usize;
        // Rational scalars are by far the common case; skip the convolution.
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(r));
        }
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                full[(i + j) % p] += a * b;
            }
        }
        Ok(Self::reduce(self.p, full))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycloNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^a`.
    pub fn galois(&self, a: u32) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.widened().into_iter().enumerate() {
            full[(i * a as usize) % p] += c;
        }
        Self::reduce(self.p, full)
    }

    /// Complex conjugation `ζ ↦ ζ^{p-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.p - 1)
    }

    /// `z · conj(z)`, a nonnegative real number.
    pub fn abs_sq(&self) -> Self {
        self.try_mul(&self.conj()).expect("same prime")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `Some(r)` when `z` is the rational number `r`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn to_rational(&self) -> Result<BigRational, CycloError> {
        self.as_rational().cloned().ok_or_else(|| CycloError::NotRational(self.to_string()))
    }

    /// Field norm to Q, the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for a in 2..self.p {
            acc = acc.try_mul(&self.galois(a)).expect("same prime");
        }
        acc.to_rational().expect("norms are rational")
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.p, r.recip()));
        }
        let mut others = Self::one(self.p);
        for a in 2..self.p {
            others = others.try_mul(&self.galois(a)).expect("same prime");
        }
        let n = self.try_mul(&others).expect("same prime").to_rational().expect("norm is rational");
        Ok(others.scale(&n.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Value under the embedding `ζ ↦ e^{2πi/p}`, for diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        let p = self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let v = rational_to_f64(c);
            let angle = 2.0 * std::f64::consts::PI * k as f64 / p;
            (re + v * angle.cos(), im + v * angle.sin())
        })
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `a` or `a/b`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNumber {
    /// Renders as a sum such as `1 - zeta` or `3/4*zeta^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let power = match k {
                0 => None,
                1 => Some("zeta".to_string()),
                k => Some(format!("zeta^{k}")),
            };
            match power {
                None => write!(f, "{}", format_rational(&magnitude))?,
                Some(z) if magnitude.is_one() => write!(f, "{z}")?,
                Some(z) => write!(f, "{}*{z}", format_rational(&magnitude))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_add(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_sub(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.try_mul(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: CycloNumber) -> CycloNumber {
        &self + &rhs
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: CycloNumber) -> CycloNumber {
        &self * &rhs
    }
}

/// A p-th root of unity `ζ_p^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharValue {
    pub p: u32,
    pub exponent: u32,
}

impl CharValue {
    pub fn trivial(p: u32) -> Self {
        CharValue { p, exponent: 0 }
    }

    pub fn is_trivial(self) -> bool {
        self.exponent == 0
    }

    pub fn mul(self, other: CharValue) -> CharValue {
        CharValue { p: self.p, exponent: (self.exponent + other.exponent) % self.p }
    }

    pub fn inv(self) -> CharValue {
        CharValue { p: self.p, exponent: (self.p - self.exponent) % self.p }
    }

    pub fn to_cyclo(self) -> CycloNumber {
        CycloNumber::zeta_pow(self.p, self.exponent as i64)
    }
}

/// `χ(x)`.
pub fn chi(field: &Field, x: &LaurentNumber) -> CharValue {
    CharValue { p: field.p(), exponent: field.trace(x.digit(-1)) }
}

/// `χ_y(x) = χ(yx)`.
pub fn chi_y(field: &Field, y: &LaurentNumber, x: &LaurentNumber) -> CharValue {
    chi(field, &y.mul(x, field))
}

/// Smallest `k` such that `χ_y` is constant on cosets of `𝔓^k`.
pub fn char_level(y: &LaurentNumber) -> Result<i32, CycloError> {
    y.valuation().map(|v| 1 - v).ok_or(CycloError::ConstantCharacter)
}
