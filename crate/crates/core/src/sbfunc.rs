//! Locally constant, compactly supported functions on K with cyclotomic values.
//!
//! An [`SBFunction`] is a finite map from disjoint balls to coefficients. Odd
//! dilations introduce a factor `q^{1/2}` that is not in Q(ζ_p) in general, so
//! a function may carry a global half-power flag: its value on a cell is then
//! `q^{1/2}` times the stored coefficient. Squared quantities absorb the flag.
//!
//! A [`StepFn`] is the same cell map used for real-valued weights. With the
//! periodic flag set it denotes the lattice-periodic extension of its cells,
//! which then all lie in O.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::charcyclo::{chi, format_rational, CycloError, CycloNumber};
use crate::gfq::Field;
use crate::locfield::LaurentNumber;
use crate::setalg::{accumulate, canonicalize, combine, q_power, Ball, ESet};
use crate::ztrans::{u_of_index, TransIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SbError {
    #[error("cannot add functions with different half-power scale flags")]
    ScaleMismatch,
    #[error("the periodization of a periodic function is not defined")]
    AlreadyPeriodic,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

pub type CellValues = BTreeMap<Ball, CycloNumber>;

/// A cyclotomic number times `q^{1/2}` when `sqrt_q` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledValue {
    pub value: CycloNumber,
    pub sqrt_q: bool,
}

impl ScaledValue {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt_q && !self.value.is_zero() {
            write!(f, "sqrt(q)*({})", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

fn rational_cyclo(field: &Field, r: BigRational) -> CycloNumber {
    CycloNumber::from_rational(field.p(), r)
}

/// Transform of `Σ c_a ind(a + 𝔓^k)` over cells of one level `k`.
///
/// The result lives on `𝔓^{-k}` and is constant on cosets of `𝔓^{-e}`, where
/// `e` is the lowest center exponent. The pairing `χ(∓aξ)` only couples the
/// digit of `a` at `i` with the digit of `ξ` at `−1 − i`, so the transform
/// factors into one length-q DFT per digit position. A handful of cells is
/// expanded directly instead, which is cheaper than the full grid.
fn transform_level(field: &Field, k: i32, group: &[(&LaurentNumber, &CycloNumber)], sign: i64, out: &mut Vec<(Ball, CycloNumber)>) {
    let p = field.p();
    let q = field.q() as usize;
    let scale = q_power(field, -k);
    let Some(lowest) = group.iter().filter_map(|(a, _)| a.valuation()).min() else {
        let total = group.iter().fold(CycloNumber::zero(p), |acc, (_, c)| &acc + *c);
        out.push((Ball::ideal(-k), total.scale(&scale)));
        return;
    };
    let width = (k - lowest) as usize;
    if group.len() <= width {
        for (a, c) in group {
            let weight = c.scale(&scale);
            let Some(v) = a.valuation() else {
                out.push((Ball::ideal(-k), weight));
                continue;
            };
            let freq = if sign < 0 { a.neg(field) } else { (*a).clone() };
            for cell in Ball::ideal(-k).split_to_level(-v, field).expect("annular center lies below level") {
                let ch = chi(field, &freq.mul(cell.center(), field));
                out.push((cell, &weight * &CycloNumber::zeta_pow(p, ch.exponent as i64)));
            }
        }
        return;
    }
    let elems: Vec<_> = field.elements().collect();
    let pairing: Vec<Vec<usize>> = elems
        .iter()
        .map(|&a| {
            elems
                .iter()
                .map(|&x| {
                    let tr = field.trace(field.mul(a, x)) as i64;
                    (sign * tr).rem_euclid(p as i64) as usize
                })
                .collect()
        })
        .collect();
    let size = q.pow(width as u32);
    let mut grid: Vec<Vec<BigRational>> = vec![Vec::new(); size];
    for (a, c) in group {
        let idx = (0..width).rev().fold(0, |acc, i| acc * q + field.index(a.digit(lowest + i as i32)) as usize);
        let w = c.scale(&scale).widened();
        if grid[idx].is_empty() {
            grid[idx] = w;
        } else {
            for (x, y) in grid[idx].iter_mut().zip(w) {
                *x += y;
            }
        }
    }
    let zero = vec![BigRational::from_integer(BigInt::from(0)); p as usize];
    let mut stride = 1;
    for _ in 0..width {
        let mut next: Vec<Vec<BigRational>> = vec![Vec::new(); size];
        for base in (0..size).filter(|i| (i / stride) % q == 0) {
            for t in 0..q {
                let mut acc = zero.clone();
                let mut touched = false;
                for (s, kernel) in pairing.iter().enumerate() {
                    let src = &grid[base + s * stride];
                    if src.is_empty() {
                        continue;
                    }
                    touched = true;
                    for (r, x) in src.iter().enumerate() {
                        acc[(r + kernel[t]) % p as usize] += x;
                    }
                }
                if touched {
                    next[base + t * stride] = acc;
                }
            }
        }
        grid = next;
        stride *= q;
    }
    for (idx, full) in grid.into_iter().enumerate().filter(|(_, v)| !v.is_empty()) {
        let value = CycloNumber::reduce(p, full);
        if value.is_zero() {
            continue;
        }
        let mut rest = idx;
        let terms: Vec<_> = (0..width)
            .map(|i| {
                let d = rest % q;
                rest /= q;
                (-1 - lowest - i as i32, elems[d])
            })
            .collect();
        out.push((Ball::new(LaurentNumber::from_terms(field, terms), -lowest), value));
    }
}

/// Sums overlapping weighted balls into canonical cells, dropping zeros.
pub fn sum_cells(field: &Field, items: &[(Ball, CycloNumber)]) -> CellValues {
    let p = field.p();
    accumulate(field, items, move |vs| {
        let mut acc = CycloNumber::zero(p);
        for v in vs {
            acc = &acc + v;
        }
        (!acc.is_zero()).then_some(acc)
    })
}

/// Pointwise binary operation on cell maps with absent cells read as zero.
pub fn pointwise(
    field: &Field,
    a: &CellValues,
    b: &CellValues,
    op: impl Fn(&CycloNumber, &CycloNumber) -> CycloNumber,
) -> CellValues {
    let zero = CycloNumber::zero(field.p());
    combine(field, a, b, |x, y| {
        let v = op(x.unwrap_or(&zero), y.unwrap_or(&zero));
        (!v.is_zero()).then_some(v)
    })
}

/// The cell of `map` containing `cell`, if any. `cell` must not straddle a
/// boundary of the map.
pub fn find_cell<'a, V>(map: &'a BTreeMap<Ball, V>, cell: &Ball) -> Option<(&'a Ball, &'a V)> {
    let min_level = map.keys().next()?.level();
    (min_level..=cell.level()).rev().find_map(|l| map.get_key_value(&Ball::new(cell.center().clone(), l)))
}

fn value_on(map: &CellValues, cell: &Ball, p: u32) -> CycloNumber {
    find_cell(map, cell).map_or_else(|| CycloNumber::zero(p), |(_, v)| v.clone())
}

fn format_cells(map: &CellValues) -> String {
    let body: Vec<String> = map.iter().map(|(b, v)| format!("{b}: {v}")).collect();
    format!("{{{}}}", body.join(", "))
}

fn map_cells(map: &CellValues, f: impl Fn(&Ball, &CycloNumber) -> (Ball, CycloNumber)) -> CellValues {
    map.iter().map(|(b, v)| f(b, v)).collect()
}

fn integral(field: &Field, map: &CellValues, set: Option<&ESet>) -> CycloNumber {
    let mut acc = CycloNumber::zero(field.p());
    let restricted;
    let cells = match set {
        None => map,
        Some(e) => {
            restricted = combine(field, map, e.cells(), |v, inside| inside.and(v).cloned());
            &restricted
        }
    };
    for (b, v) in cells {
        acc = &acc + &v.scale(&b.measure(field));
    }
    acc
}

/// Cells of `map` folded into O with values summed.
fn periodize_cells(field: &Field, map: &CellValues) -> CellValues {
    let mut items = Vec::new();
    for (b, v) in map {
        let parts = if b.level() < 0 { b.split_to_level(0, field).expect("coarser target") } else { vec![b.clone()] };
        for part in parts {
            items.push((Ball::new(part.center().tail_from(0), part.level()), v.clone()));
        }
    }
    sum_cells(field, &items)
}

/// A Schwartz–Bruhat function.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SBFunction {
    cells: CellValues,
    half_scale: bool,
}

impl SBFunction {
    pub fn zero() -> Self {
        SBFunction::default()
    }

    /// `Σ c·ind(b)` for possibly overlapping balls.
    pub fn from_cells(field: &Field, items: &[(Ball, CycloNumber)]) -> Self {
        SBFunction { cells: sum_cells(field, items), half_scale: false }
    }

    /// Canonical cells as they are, with an explicit scale flag.
    pub fn from_canonical(field: &Field, mut cells: CellValues, half_scale: bool) -> Self {
        cells.retain(|_, v| !v.is_zero());
        canonicalize(field, &mut cells);
        SBFunction { cells, half_scale }
    }

    pub fn indicator(field: &Field, set: &ESet) -> Self {
        let one = CycloNumber::one(field.p());
        SBFunction { cells: set.balls().map(|b| (b.clone(), one.clone())).collect(), half_scale: false }
    }

    pub fn scaled_indicator(field: &Field, c: CycloNumber, set: &ESet) -> Self {
        Self::indicator(field, set).scale(field, &c)
    }

    pub fn cells(&self) -> &CellValues {
        &self.cells
    }

    pub fn half_scale(&self) -> bool {
        self.half_scale
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn support(&self, field: &Field) -> ESet {
        ESet::from_balls(field, self.cells.keys().cloned())
    }

    /// Stored coefficient at a point (to be multiplied by `q^{1/2}` when flagged).
    pub fn coefficient_at(&self, field: &Field, x: &LaurentNumber) -> CycloNumber {
        self.cells
            .iter()
            .find(|(b, _)| b.contains_point(x))
            .map_or_else(|| CycloNumber::zero(field.p()), |(_, v)| v.clone())
    }

    /// Stored coefficient on a cell that lies inside one cell of the function or outside its support.
    pub fn coefficient_on(&self, field: &Field, cell: &Ball) -> CycloNumber {
        value_on(&self.cells, cell, field.p())
    }

    pub fn try_add(&self, field: &Field, other: &SBFunction) -> Result<SBFunction, SbError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.half_scale != other.half_scale {
            return Err(SbError::ScaleMismatch);
        }
        Ok(SBFunction { cells: pointwise(field, &self.cells, &other.cells, |a, b| a + b), half_scale: self.half_scale })
    }

    pub fn try_sub(&self, field: &Field, other: &SBFunction) -> Result<SBFunction, SbError> {
        self.try_add(field, &other.scale(field, &CycloNumber::from_int(field.p(), -1)))
    }

    pub fn scale(&self, field: &Field, c: &CycloNumber) -> SBFunction {
        if c.is_zero() {
            return SBFunction::zero();
        }
        let cells = self.cells.iter().map(|(b, v)| (b.clone(), v * c)).collect();
        SBFunction::from_canonical(field, cells, self.half_scale)
    }

    /// Pointwise product; two half-power flags combine into a factor `q`.
    pub fn mul(&self, field: &Field, other: &SBFunction) -> SBFunction {
        let both = self.half_scale && other.half_scale;
        let q = rational_cyclo(field, q_power(field, 1));
        let cells = pointwise(field, &self.cells, &other.cells, |a, b| if both { &(a * b) * &q } else { a * b });
        SBFunction { cells, half_scale: self.half_scale != other.half_scale }
    }

    pub fn conj(&self) -> SBFunction {
        SBFunction { cells: self.cells.iter().map(|(b, v)| (b.clone(), v.conj())).collect(), half_scale: self.half_scale }
    }

    /// `⟨f, g⟩ = ∫ f·conj(g)`.
    pub fn inner(&self, field: &Field, other: &SBFunction) -> ScaledValue {
        let product = self.mul(field, &other.conj());
        ScaledValue { value: integral(field, &product.cells, None), sqrt_q: product.half_scale }
    }

    pub fn norm_sq(&self, field: &Field) -> CycloNumber {
        let v = self.inner(field, self);
        debug_assert!(!v.sqrt_q);
        v.value
    }

    pub fn integral_over(&self, field: &Field, set: &ESet) -> ScaledValue {
        ScaledValue { value: integral(field, &self.cells, Some(set)), sqrt_q: self.half_scale }
    }

    /// `f(x − x0)`.
    pub fn translate_by(&self, field: &Field, x0: &LaurentNumber) -> SBFunction {
        SBFunction { cells: map_cells(&self.cells, |b, v| (b.translate(x0, field), v.clone())), half_scale: self.half_scale }
    }

    /// `T_k f = f(· − u(k))`.
    pub fn translate(&self, field: &Field, k: &TransIndex) -> SBFunction {
        self.translate_by(field, &u_of_index(field, k))
    }

    /// `D^j f = q^{j/2} f(t^{-j} ·)`.
    pub fn dilate(&self, field: &Field, j: i32) -> SBFunction {
        let e = j + self.half_scale as i32;
        let factor = rational_cyclo(field, q_power(field, e.div_euclid(2)));
        SBFunction {
            cells: map_cells(&self.cells, |b, v| (b.dilate(j), v * &factor)),
            half_scale: e.rem_euclid(2) == 1,
        }
    }

    /// `f(t^{-j} ·)` without the unitary normalization.
    pub fn compose_dilation(&self, j: i32) -> SBFunction {
        SBFunction { cells: map_cells(&self.cells, |b, v| (b.dilate(j), v.clone())), half_scale: self.half_scale }
    }

    /// Pointwise product with the character `χ_y`.
    pub fn modulate(&self, field: &Field, y: &LaurentNumber) -> SBFunction {
        let Some(v) = y.valuation() else {
            return self.clone();
        };
        let level = 1 - v;
        let mut items = Vec::new();
        for (b, c) in &self.cells {
            for cell in b.split_to_level(level.max(b.level()), field).expect("finer target") {
                let ch = crate::charcyclo::chi_y(field, y, cell.center()).to_cyclo();
                items.push((cell, c * &ch));
            }
        }
        SBFunction { cells: sum_cells(field, &items), half_scale: self.half_scale }
    }

    fn transform(&self, field: &Field, sign: i64) -> SBFunction {
        let mut by_level: BTreeMap<i32, Vec<(&LaurentNumber, &CycloNumber)>> = BTreeMap::new();
        for (b, c) in &self.cells {
            by_level.entry(b.level()).or_default().push((b.center(), c));
        }
        let mut items = Vec::new();
        for (k, group) in by_level {
            transform_level(field, k, &group, sign, &mut items);
        }
        SBFunction { cells: sum_cells(field, &items), half_scale: self.half_scale }
    }

    /// `f̂(ξ) = ∫ f(x) χ(−ξx) dx`. The indicator of `a + 𝔓^k` goes to
    /// `q^{-k} χ(−aξ) ind(𝔓^{-k})`, and `χ(−a·)` is constant on cosets of
    /// `𝔓^{1 − v(a)}`.
    pub fn fourier(&self, field: &Field) -> SBFunction {
        self.transform(field, -1)
    }

    /// `f(x) = ∫ f̂(ξ) χ(xξ) dξ`.
    pub fn inv_fourier(&self, field: &Field) -> SBFunction {
        self.transform(field, 1)
    }

    /// `|f|²` as a real step function.
    pub fn modulus_sq(&self, field: &Field) -> StepFn {
        let q = rational_cyclo(field, q_power(field, 1));
        let cells = self
            .cells
            .iter()
            .map(|(b, v)| (b.clone(), if self.half_scale { &v.abs_sq() * &q } else { v.abs_sq() }))
            .collect();
        StepFn::from_canonical(field, cells, false)
    }

    /// Smallest `M` with the support inside `𝔓^{-M}`; `None` for the zero function.
    pub fn support_radius(&self) -> Option<i32> {
        self.cells.keys().map(|b| -b.reach()).max()
    }

    pub fn format_cells(&self) -> String {
        let body = format_cells(&self.cells);
        if self.half_scale {
            format!("sqrt(q)*{body}")
        } else {
            body
        }
    }
}

/// A finitely celled step function, optionally extended periodically from O.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepFn {
    cells: CellValues,
    periodic_on_o: bool,
}

impl StepFn {
    pub fn zero() -> Self {
        StepFn::default()
    }

    pub fn from_canonical(field: &Field, mut cells: CellValues, periodic_on_o: bool) -> Self {
        cells.retain(|_, v| !v.is_zero());
        canonicalize(field, &mut cells);
        debug_assert!(!periodic_on_o || cells.keys().all(|b| Ball::unit().contains(b)));
        StepFn { cells, periodic_on_o }
    }

    pub fn from_cells(field: &Field, items: &[(Ball, CycloNumber)], periodic_on_o: bool) -> Self {
        Self::from_canonical(field, sum_cells(field, items), periodic_on_o)
    }

    pub fn indicator(field: &Field, set: &ESet, periodic_on_o: bool) -> Self {
        let one = CycloNumber::one(field.p());
        let items: Vec<_> = set.balls().map(|b| (b.clone(), one.clone())).collect();
        Self::from_cells(field, &items, periodic_on_o)
    }

    /// The constant `c` as a periodic function.
    pub fn constant(field: &Field, c: CycloNumber) -> Self {
        Self::from_cells(field, &[(Ball::unit(), c)], true)
    }

    pub fn cells(&self) -> &CellValues {
        &self.cells
    }

    pub fn periodic_on_o(&self) -> bool {
        self.periodic_on_o
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.cells.values().all(CycloNumber::is_real)
    }

    pub fn support(&self, field: &Field) -> ESet {
        ESet::from_balls(field, self.cells.keys().cloned())
    }

    pub fn value_at(&self, field: &Field, x: &LaurentNumber) -> CycloNumber {
        let point = if self.periodic_on_o { x.tail_from(0) } else { x.clone() };
        self.cells
            .iter()
            .find(|(b, _)| b.contains_point(&point))
            .map_or_else(|| CycloNumber::zero(field.p()), |(_, v)| v.clone())
    }

    /// Value on a cell inside O (or anywhere, for non-periodic functions) that
    /// does not straddle a cell boundary.
    pub fn value_on(&self, field: &Field, cell: &Ball) -> CycloNumber {
        value_on(&self.cells, cell, field.p())
    }

    fn same_kind(&self, other: &StepFn) -> bool {
        self.periodic_on_o == other.periodic_on_o || self.is_zero() || other.is_zero()
    }

    pub fn add(&self, field: &Field, other: &StepFn) -> StepFn {
        debug_assert!(self.same_kind(other));
        StepFn {
            cells: pointwise(field, &self.cells, &other.cells, |a, b| a + b),
            periodic_on_o: self.periodic_on_o || other.periodic_on_o,
        }
    }

    pub fn sub(&self, field: &Field, other: &StepFn) -> StepFn {
        debug_assert!(self.same_kind(other));
        StepFn {
            cells: pointwise(field, &self.cells, &other.cells, |a, b| a - b),
            periodic_on_o: self.periodic_on_o || other.periodic_on_o,
        }
    }

    pub fn mul(&self, field: &Field, other: &StepFn) -> StepFn {
        StepFn {
            cells: pointwise(field, &self.cells, &other.cells, |a, b| a * b),
            periodic_on_o: self.periodic_on_o && other.periodic_on_o,
        }
    }

    pub fn scale(&self, field: &Field, c: &CycloNumber) -> StepFn {
        let cells = self.cells.iter().map(|(b, v)| (b.clone(), v * c)).collect();
        StepFn::from_canonical(field, cells, self.periodic_on_o)
    }

    pub fn restrict(&self, field: &Field, set: &ESet) -> StepFn {
        let cells = combine(field, &self.cells, set.cells(), |v, inside| inside.and(v).cloned());
        StepFn { cells, periodic_on_o: self.periodic_on_o }
    }

    /// `ξ ↦ F(t^{-j} ξ)`, the cells multiplied by `t^j`.
    pub fn compose_dilation(&self, j: i32) -> StepFn {
        debug_assert!(!self.periodic_on_o);
        StepFn { cells: map_cells(&self.cells, |b, v| (b.dilate(j), v.clone())), periodic_on_o: false }
    }

    /// `ξ ↦ F(ξ − x0)`.
    pub fn translate_by(&self, field: &Field, x0: &LaurentNumber) -> StepFn {
        debug_assert!(!self.periodic_on_o);
        StepFn { cells: map_cells(&self.cells, |b, v| (b.translate(x0, field), v.clone())), periodic_on_o: false }
    }

    /// `Σ_k F(ξ + u(k))`, a periodic function.
    pub fn periodize(&self, field: &Field) -> Result<StepFn, SbError> {
        if self.periodic_on_o && !self.is_zero() {
            return Err(SbError::AlreadyPeriodic);
        }
        Ok(StepFn { cells: periodize_cells(field, &self.cells), periodic_on_o: true })
    }

    /// A compactly supported function is invariant under every lattice
    /// translation only when it vanishes identically.
    pub fn is_integral_periodic(&self) -> bool {
        self.periodic_on_o || self.is_zero()
    }

    /// `∫_E F`; for a periodic function `E` should lie in O.
    pub fn integral_over(&self, field: &Field, set: &ESet) -> CycloNumber {
        integral(field, &self.cells, Some(set))
    }

    pub fn integral(&self, field: &Field) -> CycloNumber {
        integral(field, &self.cells, None)
    }

    /// True when the function equals `c` everywhere on `set` (absent cells read as 0).
    pub fn equals_constant_on(&self, field: &Field, set: &ESet, c: &CycloNumber) -> Option<(Ball, CycloNumber)> {
        let constant: CellValues = set.balls().map(|b| (b.clone(), c.clone())).collect();
        let diff = pointwise(field, &self.cells, &constant, |a, b| a - b);
        diff.into_iter()
            .find(|(b, _)| set.contains_ball(b))
            .map(|(b, _)| {
                let v = self.value_on(field, &b);
                (b, v)
            })
    }

    pub fn format_cells(&self) -> String {
        format_cells(&self.cells)
    }

    /// Like [`format_cells`](Self::format_cells) with decimal renderings added.
    pub fn format_approx(&self) -> String {
        let body: Vec<String> = self
            .cells
            .iter()
            .map(|(b, v)| {
                let (re, im) = v.approx();
                format!("{b}: ~{re:.6}{}", if im.abs() > 1e-12 { format!("{im:+.6}i") } else { String::new() })
            })
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// Renders a rational-valued number, falling back to the cyclotomic form.
pub fn format_value(v: &CycloNumber) -> String {
    v.as_rational().map_or_else(|| v.to_string(), format_rational)
}

/// `q^e` as a cyclotomic number.
pub fn q_power_cyclo(field: &Field, e: i32) -> CycloNumber {
    CycloNumber::from_rational(field.p(), q_power(field, e))
}

/// `1/n` as a cyclotomic number.
pub fn reciprocal(field: &Field, n: u64) -> CycloNumber {
    CycloNumber::from_rational(field.p(), BigRational::new(BigInt::from(1), BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztrans::u;

    fn one(f: &Field) -> CycloNumber {
        CycloNumber::one(f.p())
    }

    #[test]
    fn arithmetic_examples() {
        let f = Field::prime(3).unwrap();
        let g = SBFunction::indicator(&f, &ESet::ideal(-1));
        let neg = g.scale(&f, &CycloNumber::from_int(3, -1));
        assert!(g.try_add(&f, &neg).unwrap().is_zero());
        let prod = SBFunction::indicator(&f, &ESet::ideal(0)).mul(&f, &SBFunction::indicator(&f, &ESet::ideal(1)));
        assert_eq!(prod, SBFunction::indicator(&f, &ESet::ideal(1)));
    }

    #[test]
    fn inner_product_examples() {
        let f = Field::prime(2).unwrap();
        let o = SBFunction::indicator(&f, &ESet::ideal(0));
        assert!(o.norm_sq(&f).is_one());
        let shifted = o.translate(&f, &TransIndex::from_u64(&f, 1));
        assert!(o.inner(&f, &shifted).is_zero());
        let ann = SBFunction::indicator(&f, &ESet::annulus(&f, 1));
        assert_eq!(ann.norm_sq(&f), CycloNumber::from_ratio(2, 1, 4));
    }

    #[test]
    fn dilation_is_unitary_with_half_powers() {
        let f = Field::prime(3).unwrap();
        let o = SBFunction::indicator(&f, &ESet::ideal(0));
        let d = o.dilate(&f, 1);
        assert!(d.half_scale());
        assert!(d.norm_sq(&f).is_one());
        assert_eq!(d.dilate(&f, -1), o);
        assert_eq!(o.dilate(&f, 2).cells().values().next().unwrap(), &CycloNumber::from_int(3, 3));
    }

    #[test]
    fn fourier_examples() {
        let f = Field::prime(2).unwrap();
        let o = SBFunction::indicator(&f, &ESet::ideal(0));
        assert_eq!(o.fourier(&f), o);
        let p = SBFunction::indicator(&f, &ESet::ideal(1));
        let expected = SBFunction::scaled_indicator(&f, CycloNumber::from_ratio(2, 1, 2), &ESet::ideal(-1));
        assert_eq!(p.fourier(&f), expected);
        let g = SBFunction::indicator(&f, &ESet::ball(Ball::new(u(&f, 3), 1)));
        assert_eq!(g.fourier(&f).inv_fourier(&f), g);
    }

    #[test]
    fn modulus_and_periodization() {
        let f = Field::prime(3).unwrap();
        let w = ESet::annulus(&f, -1);
        let z = CycloNumber::zeta_pow(3, 1);
        let m = SBFunction::scaled_indicator(&f, z, &w).modulus_sq(&f);
        assert_eq!(m, StepFn::indicator(&f, &w, false));
        let halves = SBFunction::scaled_indicator(&f, CycloNumber::from_ratio(3, 1, 2), &w).modulus_sq(&f);
        assert!(halves.cells().values().all(|v| *v == CycloNumber::from_ratio(3, 1, 4)));

        let coset = ESet::ideal(0).translate(&f, &u(&f, 7));
        let per = StepFn::indicator(&f, &coset, false).periodize(&f).unwrap();
        assert_eq!(per, StepFn::constant(&f, one(&f)));
        assert!(per.is_integral_periodic());
        assert!(!StepFn::indicator(&f, &ESet::ideal(1), false).is_integral_periodic());
    }

    #[test]
    fn integrals() {
        let f = Field::prime(2).unwrap();
        let p = SBFunction::indicator(&f, &ESet::ideal(1));
        assert_eq!(p.integral_over(&f, &ESet::ideal(-5)).value, CycloNumber::from_ratio(2, 1, 2));
        for n in 1..8u64 {
            let ch = SBFunction::indicator(&f, &ESet::ideal(0)).modulate(&f, &u(&f, n));
            assert!(ch.integral_over(&f, &ESet::ideal(0)).is_zero());
        }
    }
}
