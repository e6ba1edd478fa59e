//! Residue field GF(q), q = p^c.
//!
//! Elements are stored by their digit index `n = Σ a_k p^k`, where `a_k` is the
//! coordinate of the element on `x^k` in the power basis of the field modulus.
//! With that encoding the index doubles as the coset label used by the
//! translation lattice, and all arithmetic goes through precomputed tables.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest field order accepted at construction.
pub const MAX_ORDER: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{c} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge { p: u32, c: u32 },
    #[error("modulus must be monic of degree {expected} (got {got} coefficients)")]
    BadModulusDegree { expected: u32, got: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    BadModulusCoefficient(u32),
    #[error("modulus is reducible over GF(p)")]
    Reducible,
    #[error("index {index} out of range for GF({q})")]
    IndexOutOfRange { index: u64, q: u32 },
    #[error("digit vector {0:?} is not an element of this field")]
    BadDigits(Vec<u32>),
    #[error("elements belong to different fields")]
    Mismatch,
}

/// An element of GF(q), identified by its digit index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GfElem(u8);

impl GfElem {
    pub const ZERO: GfElem = GfElem(0);
    pub const ONE: GfElem = GfElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Digit index `Σ a_k p^k`.
    pub fn index(self) -> u32 {
        self.0 as u32
    }
}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Defining data of GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldParams {
    pub p: u32,
    pub c: u32,
    pub q: u32,
    /// Monic modulus, low degree first, length `c + 1`.
    pub modulus: Vec<u32>,
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
}

struct Inner {
    params: FieldParams,
    tables: Tables,
}

/// Shared handle to a finite field and its arithmetic tables.
///
/// Cloning is cheap. Two handles compare equal when their parameters agree.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.0.params;
        write!(f, "GF({}^{}, modulus {:?})", p.p, p.c, p.modulus)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Polynomials over GF(p), low degree first, without trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p * p - factor * mi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod prime")
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut n = code;
    for _ in 0..deg {
        coeffs.push(n % p);
        n /= p;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let divisor = monic_from_code(code, d, p);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (by `Σ a_k p^k` over the lower coefficients) monic
/// irreducible polynomial of degree `c`.
pub fn default_modulus(p: u32, c: u32) -> Vec<u32> {
    if c == 1 {
        return vec![0, 1];
    }
    (0..p.pow(c))
        .map(|code| monic_from_code(code, c, p))
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(p^c) with the default modulus.
    pub fn new(p: u32, c: u32) -> Result<Field, FieldError> {
        Self::check_order(p, c)?;
        Self::with_modulus(p, c, default_modulus(p, c))
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Self::new(p, 1)
    }

    fn check_order(p: u32, c: u32) -> Result<(), FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if c == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match p.checked_pow(c) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(FieldError::TooLarge { p, c }),
        }
    }

    /// GF(p^c) presented as GF(p)[x]/(modulus). For `c = 1` the modulus is the
    /// placeholder `x` and is accepted as such.
    pub fn with_modulus(p: u32, c: u32, modulus: Vec<u32>) -> Result<Field, FieldError> {
        Self::check_order(p, c)?;
        if modulus.len() != c as usize + 1 || modulus[c as usize] != 1 {
            return Err(FieldError::BadModulusDegree { expected: c, got: modulus.len() });
        }
        if let Some(&bad) = modulus.iter().find(|&&a| a >= p) {
            return Err(FieldError::BadModulusCoefficient(bad));
        }
        if c > 1 && !is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible);
        }
        let q = p.pow(c);
        let params = FieldParams { p, c, q, modulus };
        let tables = build_tables(&params);
        Ok(Field(Arc::new(Inner { params, tables })))
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    pub fn p(&self) -> u32 {
        self.0.params.p
    }

    pub fn c(&self) -> u32 {
        self.0.params.c
    }

    pub fn q(&self) -> u32 {
        self.0.params.q
    }

    fn at(&self, table: &[u8], a: GfElem, b: GfElem) -> GfElem {
        GfElem(table[a.0 as usize * self.q() as usize + b.0 as usize])
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> GfElem {
        self.at(&self.0.tables.add, a, b)
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> GfElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> GfElem {
        self.at(&self.0.tables.mul, a, b)
    }

    pub fn neg(&self, a: GfElem) -> GfElem {
        GfElem(self.0.tables.neg[a.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: GfElem) -> Option<GfElem> {
        (!a.is_zero()).then(|| GfElem(self.0.tables.inv[a.0 as usize]))
    }

    /// Absolute trace to GF(p), returned as an integer in `[0, p)`.
    pub fn trace(&self, a: GfElem) -> u32 {
        self.0.tables.trace[a.0 as usize] as u32
    }

    /// Checked variants reject digit indices outside `[0, q)`, which is how an
    /// element of a different field shows up.
    pub fn try_add(&self, a: GfElem, b: GfElem) -> Result<GfElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: GfElem, b: GfElem) -> Result<GfElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    fn check(&self, a: GfElem) -> Result<(), FieldError> {
        if a.index() < self.q() {
            Ok(())
        } else {
            Err(FieldError::Mismatch)
        }
    }

    pub fn from_index(&self, n: u64) -> Result<GfElem, FieldError> {
        if n < self.q() as u64 {
            Ok(GfElem(n as u8))
        } else {
            Err(FieldError::IndexOutOfRange { index: n, q: self.q() })
        }
    }

    pub fn index(&self, a: GfElem) -> u32 {
        a.index()
    }

    /// Coordinates on `1, x, ..., x^{c-1}`.
    pub fn digits(&self, a: GfElem) -> Vec<u32> {
        let p = self.p();
        let mut n = a.index();
        (0..self.c())
            .map(|_| {
                let d = n % p;
                n /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<GfElem, FieldError> {
        let p = self.p();
        if digits.len() != self.c() as usize || digits.iter().any(|&d| d >= p) {
            return Err(FieldError::BadDigits(digits.to_vec()));
        }
        let n = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        Ok(GfElem(n as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> {
        (0..self.q()).map(|n| GfElem(n as u8))
    }

    pub fn zero(&self) -> GfElem {
        GfElem::ZERO
    }

    pub fn one(&self) -> GfElem {
        GfElem::ONE
    }
}

fn build_tables(params: &FieldParams) -> Tables {
    let FieldParams { p, c, q, .. } = *params;
    let qs = q as usize;
    let to_digits = |mut n: u32| -> Vec<u32> {
        (0..c)
            .map(|_| {
                let d = n % p;
                n /= p;
                d
            })
            .collect()
    };
    let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let digits: Vec<Vec<u32>> = (0..q).map(to_digits).collect();

    let mut add = vec![0u8; qs * qs];
    let mut mul = vec![0u8; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
            add[a * qs + b] = from_digits(&s) as u8;

            let mut prod = vec![0u32; 2 * c as usize - 1];
            for (i, x) in digits[a].iter().enumerate() {
                for (j, y) in digits[b].iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &params.modulus, p);
            r.resize(c as usize, 0);
            mul[a * qs + b] = from_digits(&r) as u8;
        }
    }
    let neg: Vec<u8> = (0..qs)
        .map(|a| {
            let d: Vec<u32> = digits[a].iter().map(|&x| (p - x) % p).collect();
            from_digits(&d) as u8
        })
        .collect();
    let mut inv = vec![0u8; qs];
    for a in 1..qs {
        inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field has inverses") as u8;
    }
    // Tr(a) = a + a^p + ... + a^{p^{c-1}}; the result lies in the prime subfield,
    // whose elements have index < p.
    let trace: Vec<u8> = (0..qs)
        .map(|a| {
            let mut frob = a;
            let mut acc = 0usize;
            for _ in 0..c {
                acc = add[acc * qs + frob] as usize;
                let mut pow = 1usize;
                for _ in 0..p {
                    pow = mul[pow * qs + frob] as usize;
                }
                frob = pow;
            }
            debug_assert!((acc as u32) < p);
            acc as u8
        })
        .collect();
    Tables { add, mul, neg, inv, trace }
}
