//! Principal and finitely generated translation invariant spaces.
//!
//! Everything here reduces to folding: for a generator `φ̂` the lattice sum
//! `Σ_k g(ξ + u(k))` of a compactly supported step function `g` is its
//! periodization, a finite step function on O.

use std::collections::BTreeMap;

use super::{linalg, WaveletError};
use crate::charcyclo::CycloNumber;
use crate::gfq::Field;
use crate::sbfunc::{find_cell, format_value, q_power_cyclo, CellValues, SBFunction, SbError, ScaledValue, StepFn};
use crate::setalg::{overlay, Ball, ESet};
use crate::verdict::Verdict;
use crate::ztrans::u;

fn fold(field: &Field, cells: &CellValues) -> StepFn {
    StepFn::from_canonical(field, cells.clone(), false).periodize(field).expect("compactly supported input")
}

/// `w(ξ) = Σ_k |φ̂(ξ + u(k))|²`, periodic on O.
pub fn periodization_weight(field: &Field, hat_phi: &SBFunction) -> StepFn {
    hat_phi.modulus_sq(field).periodize(field).expect("compactly supported input")
}

/// `{T_k φ}` is a Parseval frame for its closed span exactly when the weight
/// takes only the values 0 and 1; the spectrum is then the support of the weight.
pub fn is_parseval_generator(field: &Field, hat_phi: &SBFunction) -> Verdict {
    let w = periodization_weight(field, hat_phi);
    if let Some((b, v)) = w.cells().iter().find(|(_, v)| !v.is_one()) {
        return Verdict::fail("parseval_generator", b.clone(), format_value(v))
            .with("meaning", "periodization weight outside {0, 1}");
    }
    let spectrum = ESet::from_balls(field, w.cells().keys().cloned());
    Verdict::pass("parseval_generator")
        .with("spectrum", &spectrum)
        .with("spectrum_measure", crate::charcyclo::format_rational(&spectrum.measure(field)))
}

/// `{T_k φ}` is orthonormal exactly when the weight is identically 1 on O.
pub fn is_orthonormal_generator(field: &Field, hat_phi: &SBFunction) -> Verdict {
    let w = periodization_weight(field, hat_phi);
    match w.equals_constant_on(field, &ESet::ideal(0), &CycloNumber::one(field.p())) {
        Some((b, v)) => Verdict::fail("orthonormal_generator", b, format_value(&v))
            .with("meaning", "periodization weight differs from 1"),
        None => Verdict::pass("orthonormal_generator"),
    }
}

/// `Σ_k φ̂_1(ξ + u(k)) conj(φ̂_2(ξ + u(k))) = 0`, i.e. `span{T_k φ_1} ⊥ span{T_k φ_2}`.
pub fn pti_cross_orthogonality(field: &Field, a: &SBFunction, b: &SBFunction) -> Verdict {
    let product = a.mul(field, &b.conj());
    let folded = fold(field, product.cells());
    match folded.cells().iter().next() {
        Some((cell, v)) => {
            let value = ScaledValue { value: v.clone(), sqrt_q: product.half_scale() };
            Verdict::fail("pti_cross_orthogonality", cell.clone(), value.to_string())
                .with("meaning", "folded cross product is nonzero")
        }
        None => Verdict::pass("pti_cross_orthogonality"),
    }
}

/// `⟨T_k φ_1, φ_2⟩`, computed on the frequency side as
/// `⟨χ(−u(k)·) φ̂_1, φ̂_2⟩`.
pub fn gram_entry(field: &Field, a: &SBFunction, b: &SBFunction, k: u64) -> ScaledValue {
    a.modulate(field, &u(field, k).neg(field)).inner(field, b)
}

/// `⟨T_k φ_1, φ_2⟩ = 0` for every `k`, tested directly.
///
/// The inner products are the Fourier coefficients of the folded cross product,
/// a step function on O whose cells have level at most `L`; such a function
/// vanishes once its coefficients for `k < q^L` do, so the check is complete.
pub fn pti_cross_orthogonality_by_gram(field: &Field, a: &SBFunction, b: &SBFunction) -> Verdict {
    let product = a.mul(field, &b.conj());
    let depth = fold(field, product.cells()).cells().keys().map(Ball::level).max().unwrap_or(0).max(0);
    let bound = (field.q() as u64).pow(depth as u32);
    for k in 0..bound {
        let v = gram_entry(field, a, b, k);
        if !v.is_zero() {
            let cell = Ball::unit().translate(&u(field, k), field);
            return Verdict::fail("pti_gram", cell, v.to_string()).with("k", k);
        }
    }
    Verdict::pass("pti_gram").with("k_bound", bound)
}

/// Writes `f̂ = r φ̂` with `r` integral periodic, or explains why no such `r` exists.
pub fn pti_membership(field: &Field, f: &SBFunction, hat_phi: &SBFunction) -> Result<StepFn, Verdict> {
    if !f.is_zero() && f.half_scale() != hat_phi.half_scale() {
        let cell = f.cells().keys().next().cloned().expect("nonzero");
        return Err(Verdict::fail("pti_membership_scale", cell, "sqrt(q)")
            .with("meaning", "ratio would carry a factor sqrt(q) outside Q(zeta_p)"));
    }
    let mut pieces: Vec<(Ball, CycloNumber)> = Vec::new();
    let keys: Vec<Ball> = f.cells().keys().chain(hat_phi.cells().keys()).cloned().collect();
    for (cell, _) in overlay(field, &keys) {
        let num = f.coefficient_on(field, &cell);
        let den = hat_phi.coefficient_on(field, &cell);
        if den.is_zero() {
            if !num.is_zero() {
                return Err(Verdict::fail("pti_membership_support", cell, format_value(&num))
                    .with("meaning", "f is nonzero where the generator vanishes"));
            }
            continue;
        }
        pieces.push((cell, num.try_div(&den).expect("nonzero denominator")));
    }
    let mut images: Vec<(Ball, CycloNumber)> = Vec::new();
    for (b, r) in pieces {
        let parts = if b.level() < 0 { b.split_to_level(0, field).expect("coarser target") } else { vec![b] };
        images.extend(parts.into_iter().map(|part| (Ball::new(part.center().tail_from(0), part.level()), r.clone())));
    }
    let keys: Vec<Ball> = images.iter().map(|(b, _)| b.clone()).collect();
    let mut ratio: CellValues = BTreeMap::new();
    for (cell, idx) in overlay(field, &keys) {
        let values: Vec<CycloNumber> = idx.iter().map(|&i| images[i].1.clone()).collect();
        if values.windows(2).any(|w| w[0] != w[1]) {
            return Err(Verdict::fail("pti_membership_periodic", cell, values.iter().map(format_value).collect::<Vec<_>>().join(" vs "))
                .with("meaning", "ratios on translates of one cell disagree"));
        }
        if !values[0].is_zero() {
            ratio.insert(cell, values[0].clone());
        }
    }
    Ok(StepFn::from_canonical(field, ratio, true))
}

/// A fiber `(f̂(ξ + u(k)))_{k < q^window}` at a cell `ξ` of O. When `sqrt_q` is
/// set every entry carries an additional factor `q^{1/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub entries: Vec<CycloNumber>,
    pub sqrt_q: bool,
}

impl Fiber {
    pub fn norm_sq(&self, field: &Field) -> CycloNumber {
        let sum = self.entries.iter().fold(CycloNumber::zero(field.p()), |acc, v| &acc + &v.abs_sq());
        if self.sqrt_q {
            &sum * &q_power_cyclo(field, 1)
        } else {
            sum
        }
    }
}

/// The truncated fiber of `f̂` over a cell of O.
pub fn fiber(field: &Field, f: &SBFunction, cell: &Ball, window: i32) -> Result<Fiber, WaveletError> {
    if !Ball::unit().contains(cell) {
        return Err(WaveletError::CellTooCoarse(cell.clone()));
    }
    if let Some(radius) = f.support_radius() {
        if radius > window {
            return Err(WaveletError::WindowTooSmall { window, needed: radius });
        }
    }
    let count = (field.q() as u64).pow(window.max(0) as u32);
    let mut entries = Vec::with_capacity(count as usize);
    for k in 0..count {
        let shifted = cell.translate(&u(field, k), field);
        if f.cells().keys().any(|b| b.level() > shifted.level() && shifted.contains(b)) {
            return Err(WaveletError::CellTooCoarse(cell.clone()));
        }
        entries.push(find_cell(f.cells(), &shifted).map_or_else(|| CycloNumber::zero(field.p()), |(_, v)| v.clone()));
    }
    Ok(Fiber { entries, sqrt_q: f.half_scale() })
}

/// A partition of O fine enough that every generator is constant on each
/// translate of each cell.
pub fn fiber_cells(field: &Field, generators: &[SBFunction]) -> Vec<Ball> {
    let mut keys: Vec<Ball> = Vec::new();
    for g in generators {
        for b in g.cells().keys() {
            if b.level() < 0 {
                keys.push(Ball::unit());
            } else {
                keys.push(Ball::new(b.center().tail_from(0), b.level()));
            }
        }
    }
    let mut cells: Vec<Ball> = overlay(field, &keys).into_iter().map(|(b, _)| b).collect();
    let covered = ESet::from_balls(field, cells.iter().cloned());
    cells.extend(ESet::ideal(0).subtract(field, &covered).balls().cloned());
    cells.sort();
    cells
}

/// Compares `m` with the rank of the fiber matrix on every fiber cell.
pub fn fiber_rank_check(field: &Field, generators: &[SBFunction], m: &StepFn) -> Result<Verdict, WaveletError> {
    let window = generators.iter().filter_map(SBFunction::support_radius).max().unwrap_or(0).max(0);
    let cells = fiber_cells(field, generators);
    for cell in &cells {
        let rows = generators
            .iter()
            .map(|g| fiber(field, g, cell, window).map(|fib| fib.entries))
            .collect::<Result<Vec<_>, _>>()?;
        let rank = linalg::rank(rows);
        let value = m.value_on(field, cell);
        if value != CycloNumber::from_int(field.p(), rank as i64) {
            return Ok(Verdict::fail("fiber_rank", cell.clone(), format_value(&value)).with("rank", rank));
        }
    }
    Ok(Verdict::pass("fiber_rank").with("cells", cells.len()).with("window", window))
}

/// `G_ij = Σ_k φ̂_i(ξ + u(k)) conj(φ̂_j(ξ + u(k)))`, periodic on O.
pub fn gram_matrix(field: &Field, generators: &[SBFunction]) -> Result<Vec<Vec<StepFn>>, WaveletError> {
    if let Some(first) = generators.first() {
        if generators.iter().any(|g| g.half_scale() != first.half_scale()) {
            return Err(WaveletError::Sb(SbError::ScaleMismatch));
        }
    }
    Ok(generators
        .iter()
        .map(|a| generators.iter().map(|b| fold(field, a.mul(field, &b.conj()).cells())).collect())
        .collect())
}

/// `{T_k φ_i}` is a Parseval frame for its span exactly when the fiber Gram
/// matrix is an orthogonal projection everywhere, i.e. `G² = G`.
pub fn is_parseval_frame_family(field: &Field, generators: &[SBFunction]) -> Result<Verdict, WaveletError> {
    let g = gram_matrix(field, generators)?;
    let n = g.len();
    for i in 0..n {
        for j in 0..n {
            let mut square = StepFn::zero();
            for k in 0..n {
                square = square.add(field, &g[i][k].mul(field, &g[k][j]));
            }
            let diff = square.sub(field, &g[i][j]);
            if let Some((cell, _)) = diff.cells().iter().next() {
                let value = square.value_on(field, cell);
                return Ok(Verdict::fail("parseval_frame_family", cell.clone(), format_value(&value))
                    .with("entry", format!("({}, {})", i + 1, j + 1))
                    .with("meaning", "entry of G^2 differs from G"));
            }
        }
    }
    Ok(Verdict::pass("parseval_frame_family").with("generators", n))
}

fn require(v: Verdict) -> Result<(), WaveletError> {
    if v.ok {
        Ok(())
    } else {
        Err(WaveletError::Precondition(Box::new(v)))
    }
}

/// `m_V = Σ_i w_i` for pairwise orthogonal Parseval generators.
pub fn multiplicity_from_generators(field: &Field, generators: &[SBFunction]) -> Result<StepFn, WaveletError> {
    if generators.is_empty() {
        return Err(WaveletError::Empty);
    }
    for g in generators {
        require(is_parseval_generator(field, g))?;
    }
    for (i, a) in generators.iter().enumerate() {
        for (j, b) in generators.iter().enumerate().skip(i + 1) {
            require(pti_cross_orthogonality(field, a, b).with("pair", format!("({}, {})", i + 1, j + 1)))?;
        }
    }
    Ok(generators
        .iter()
        .fold(StepFn::zero(), |acc, g| acc.add(field, &periodization_weight(field, g))))
}

/// Behavior of a spectral function on the small ball around 0 that the cell
/// map leaves out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// The cell map is the whole function.
    None,
    /// Constant value on `𝔓^window \ {0}`.
    Constant(CycloNumber),
    /// No exact description near 0 is available.
    Unresolved,
}

/// `σ_V`, given exactly outside `𝔓^window` (everywhere when `window` is `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectral {
    pub sigma: StepFn,
    pub window: Option<i32>,
    pub tail: Tail,
}

impl Spectral {
    /// The function as a single cell map, with a constant tail filled in.
    pub fn resolved(&self, field: &Field) -> Option<StepFn> {
        match (&self.tail, self.window) {
            (Tail::None, _) => Some(self.sigma.clone()),
            (Tail::Constant(c), Some(w)) => {
                let tail = StepFn::from_cells(field, &[(Ball::ideal(w), c.clone())], false);
                Some(self.sigma.add(field, &tail))
            }
            _ => None,
        }
    }
}

/// `σ_V = Σ_i |φ̂_i|²` for a Parseval frame family `{T_k φ_i}` of V.
pub fn spectral_from_generators(field: &Field, generators: &[SBFunction]) -> Result<Spectral, WaveletError> {
    if generators.is_empty() {
        return Err(WaveletError::Empty);
    }
    require(is_parseval_frame_family(field, generators)?)?;
    let sigma = generators.iter().fold(StepFn::zero(), |acc, g| acc.add(field, &g.modulus_sq(field)));
    Ok(Spectral { sigma, window: None, tail: Tail::None })
}

/// `σ_{D(V)}(ξ) = σ_V(tξ)`, with `D(V)` generated by the transforms of
/// `D T_i φ_n` for `i < q`.
pub fn spectral_dilation_identity(field: &Field, generators: &[SBFunction]) -> Result<Verdict, WaveletError> {
    let before = spectral_from_generators(field, generators)?;
    let mut dilated = Vec::new();
    for g in generators {
        for i in 0..field.q() as u64 {
            let y = u(field, i).shift(1).neg(field);
            dilated.push(g.dilate(field, -1).modulate(field, &y));
        }
    }
    let after = spectral_from_generators(field, &dilated)?;
    let expected = before.sigma.compose_dilation(-1);
    let diff = after.sigma.sub(field, &expected);
    Ok(match diff.cells().iter().next() {
        Some((cell, _)) => Verdict::fail("spectral_dilation", cell.clone(), format_value(&after.sigma.value_on(field, cell))),
        None => Verdict::pass("spectral_dilation").with("sigma_dilated", after.sigma.format_cells()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locfield::LaurentNumber;

    fn ind(f: &Field, s: ESet) -> SBFunction {
        SBFunction::indicator(f, &s)
    }

    #[test]
    fn generator_examples() {
        let f = Field::prime(2).unwrap();
        let o = ind(&f, ESet::ideal(0));
        assert!(is_orthonormal_generator(&f, &o).ok);
        let p = ind(&f, ESet::ideal(1));
        assert!(is_parseval_generator(&f, &p).ok);
        assert!(!is_orthonormal_generator(&f, &p).ok);
        let half = o.scale(&f, &CycloNumber::from_ratio(2, 1, 2));
        assert!(!is_parseval_generator(&f, &half).ok);
        assert!(!is_orthonormal_generator(&f, &half).ok);
    }

    #[test]
    fn cross_orthogonality_matches_gram() {
        let f = Field::prime(3).unwrap();
        let a = ind(&f, ESet::ideal(0));
        let b = ind(&f, ESet::ideal(0).translate(&f, &u(&f, 1)));
        assert!(pti_cross_orthogonality(&f, &a, &b).ok);
        assert!(pti_cross_orthogonality_by_gram(&f, &a, &b).ok);
        assert!(!pti_cross_orthogonality(&f, &a, &a).ok);
        assert!(!pti_cross_orthogonality_by_gram(&f, &a, &a).ok);
    }

    #[test]
    fn membership_examples() {
        let f = Field::prime(3).unwrap();
        let phi = ind(&f, ESet::ideal(0));
        let r = pti_membership(&f, &phi, &phi).unwrap();
        assert_eq!(r, StepFn::indicator(&f, &ESet::ideal(0), true));
        let shifted = phi.translate_by(&f, &LaurentNumber::zero());
        assert!(pti_membership(&f, &shifted, &phi).is_ok());
        let small = ind(&f, ESet::ideal(1));
        let v = pti_membership(&f, &phi, &small).unwrap_err();
        assert_eq!(v.condition, "pti_membership_support");
    }

    #[test]
    fn fiber_and_multiplicity() {
        let f = Field::prime(2).unwrap();
        let o = ind(&f, ESet::ideal(0));
        let o1 = ind(&f, ESet::ideal(0).translate(&f, &u(&f, 1)));
        let fib = fiber(&f, &o1, &Ball::unit(), 1).unwrap();
        assert_eq!(fib.entries, vec![CycloNumber::zero(2), CycloNumber::one(2)]);
        assert!(matches!(fiber(&f, &o1, &Ball::unit(), 0), Err(WaveletError::WindowTooSmall { .. })));
        let m = multiplicity_from_generators(&f, &[o.clone(), o1.clone()]).unwrap();
        assert!(m.equals_constant_on(&f, &ESet::ideal(0), &CycloNumber::from_int(2, 2)).is_none());
        assert!(fiber_rank_check(&f, &[o.clone(), o1], &m).unwrap().ok);
        let p2 = ind(&f, ESet::ideal(2));
        let m2 = multiplicity_from_generators(&f, &[p2.clone()]).unwrap();
        assert_eq!(m2, StepFn::indicator(&f, &ESet::ideal(2), true));
        assert!(fiber_rank_check(&f, &[p2], &m2).unwrap().ok);
        assert!(matches!(multiplicity_from_generators(&f, &[o.clone(), o]), Err(WaveletError::Precondition(_))));
    }

    #[test]
    fn spectral_dilation_on_shannon_space() {
        for f in [Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            let o = ind(&f, ESet::ideal(0));
            assert!(spectral_dilation_identity(&f, &[o]).unwrap().ok);
        }
    }
}
