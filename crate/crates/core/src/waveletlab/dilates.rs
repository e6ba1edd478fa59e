//! The space of negative dilates, its multiplicity and spectral functions, the
//! dimension function, and the consistency equation.
//!
//! With `V = ⊕_{j<0} D^j W` the spectral function is the tail dilation sum
//! `σ_V(ξ) = Σ_{j≥1} F(t^{-j}ξ)` of the energy `F = Σ_m |ψ̂_m|²`. If every cell
//! of `F` has valuation at most `v_max`, each `ξ` with `v(ξ) > v_max` sees the
//! whole dilation orbit of `F`, so `σ_V` equals the full sum there. When the
//! full sum is 1 this pins `σ_V` down near 0 and leaves a finite sum elsewhere.

use num_rational::BigRational;

use super::{
    affine_condition_i, is_orthonormal_multiwavelet, periodization_weight, Multiwavelet, Spectral, Tail, WaveletError,
};
use crate::charcyclo::{format_rational, CycloNumber};
use crate::gfq::Field;
use crate::sbfunc::{format_value, sum_cells, SBFunction, StepFn};
use crate::setalg::{Ball, ESet};
use crate::verdict::Verdict;
use crate::ztrans::u;

/// Smallest and largest valuation among the energy cells; errors on a ball around 0.
fn valuation_range(energy: &StepFn) -> Result<Option<(i32, i32)>, WaveletError> {
    let mut range: Option<(i32, i32)> = None;
    for b in energy.cells().keys() {
        let v = b.valuation().ok_or_else(|| WaveletError::SupportAtZero(b.clone()))?;
        range = Some(range.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))));
    }
    Ok(range)
}

/// `Σ_{j=1}^{J} F(t^{-j} ξ)` restricted to `v(ξ) < below`.
fn tail_sum(field: &Field, energy: &StepFn, last: i32, below: i32) -> StepFn {
    let mut items = Vec::new();
    for j in 1..=last {
        for (b, v) in energy.compose_dilation(j).cells() {
            if b.valuation().is_some_and(|val| val < below) {
                items.push((b.clone(), v.clone()));
            }
        }
    }
    StepFn::from_canonical(field, sum_cells(field, &items), false)
}

/// `σ_V` for the negative dilates of Ψ, exact outside `𝔓^window`.
///
/// When the dilation sum of the energy is identically 1 the window is chosen
/// automatically and the tail is the constant 1. Otherwise the caller's window
/// is used and the tail is reported as unresolved.
pub fn spectral_negative_dilates(field: &Field, psi: &Multiwavelet, window: i32) -> Result<Spectral, WaveletError> {
    let energy = psi.energy(field);
    let Some((v_min, v_max)) = valuation_range(&energy)? else {
        return Ok(Spectral { sigma: StepFn::zero(), window: None, tail: Tail::None });
    };
    if affine_condition_i(field, &energy).ok {
        let edge = v_max + 1;
        let sigma = tail_sum(field, &energy, edge - 1 - v_min, edge);
        return Ok(Spectral { sigma, window: Some(edge), tail: Tail::Constant(CycloNumber::one(field.p())) });
    }
    let sigma = tail_sum(field, &energy, window - v_min, window);
    Ok(Spectral { sigma, window: Some(window), tail: Tail::Unresolved })
}

/// Multiplicity function of the negative dilates, with its integral over O and
/// the bound `L/(q−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeDilates {
    pub multiplicity: StepFn,
    pub spectral: Spectral,
    pub integral: BigRational,
    pub bound: BigRational,
}

impl NegativeDilates {
    pub fn within_bound(&self) -> bool {
        self.integral <= self.bound
    }

    pub fn verdict(&self) -> Verdict {
        let base = if self.within_bound() {
            Verdict::pass("multiplicity_bound")
        } else {
            Verdict::fail("multiplicity_bound", Ball::unit(), format_rational(&self.integral))
        };
        base.with("multiplicity", self.multiplicity.format_cells())
            .with("integral", format_rational(&self.integral))
            .with("bound", format_rational(&self.bound))
    }
}

fn require(v: Verdict) -> Result<(), WaveletError> {
    if v.ok {
        Ok(())
    } else {
        Err(WaveletError::Precondition(Box::new(v)))
    }
}

fn rational(v: &CycloNumber) -> Result<BigRational, WaveletError> {
    v.as_rational().cloned().ok_or_else(|| WaveletError::NotRational(v.to_string()))
}

/// `m_V = Σ_k σ_V(· + u(k))` for the negative dilates; needs the dilation sum
/// of the energy to be identically 1.
pub fn negative_dilates_multiplicity(field: &Field, psi: &Multiwavelet) -> Result<NegativeDilates, WaveletError> {
    require(affine_condition_i(field, &psi.energy(field)))?;
    let spectral = spectral_negative_dilates(field, psi, 0)?;
    let sigma = spectral.resolved(field).expect("constant tail");
    let multiplicity = sigma.periodize(field)?;
    let integral = rational(&multiplicity.integral(field))?;
    let bound = BigRational::new((psi.order() as i64).into(), (field.q() as i64 - 1).into());
    Ok(NegativeDilates { multiplicity, spectral, integral, bound })
}

/// `D_Ψ(ξ) = Σ_m Σ_{j≥1} Σ_k |ψ̂_m(t^{-j}(ξ + u(k)))|²`, evaluated on O by a
/// second route: dilates with `j < J` are folded directly, and for `j ≥ J` the
/// supports lie in O so only `k = 0` survives and the remainder is `1` minus
/// the dilates already counted.
pub fn dimension_function(field: &Field, psi: &Multiwavelet) -> Result<StepFn, WaveletError> {
    let energy = psi.energy(field);
    require(affine_condition_i(field, &energy))?;
    let Some((_, v_max)) = valuation_range(&energy)? else {
        return Ok(StepFn::zero());
    };
    let big_j = psi.support_radius().unwrap_or(0).max(1);
    let mut head = StepFn::zero();
    for j in 1..big_j {
        head = head.add(field, &energy.compose_dilation(j).periodize(field)?);
    }
    let mut counted = StepFn::zero();
    for j in -v_max..big_j {
        counted = counted.add(field, &energy.compose_dilation(j));
    }
    let unit = ESet::ideal(0);
    let rest = StepFn::indicator(field, &unit, false).sub(field, &counted).restrict(field, &unit);
    let cells: Vec<(Ball, CycloNumber)> =
        head.cells().iter().chain(rest.cells()).map(|(b, v)| (b.clone(), v.clone())).collect();
    Ok(StepFn::from_cells(field, &cells, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsistencyMode {
    /// `Σ_d m(t(ξ + u(d))) − m(ξ) ≤ L`.
    Inequality,
    /// `Σ_d m(t(ξ + u(d))) − m(ξ) = L`.
    Equality,
}

/// `Δ(ξ) = Σ_{d<q} m(t(ξ + u(d))) − m(ξ)` on O.
///
/// Since `t·u(d)` is the digit `d` itself, `t(ξ + u(d))` already lies in O, and
/// the term for `d` is constant on the cells `t^{-1}(b − d) ∩ O` for cells `b` of `m`.
fn defect(field: &Field, m: &StepFn) -> StepFn {
    let mut items = Vec::new();
    for (b, v) in m.cells() {
        for d in 0..field.q() as u64 {
            let cell = b.dilate(-1).translate(&u(field, d).neg(field), field);
            if cell.contains(&Ball::unit()) {
                items.push((Ball::unit(), v.clone()));
            } else if Ball::unit().contains(&cell) {
                items.push((cell, v.clone()));
            }
        }
    }
    let sum = StepFn::from_cells(field, &items, true);
    sum.sub(field, m)
}

pub fn consistency_check(field: &Field, m: &StepFn, order: i64, mode: ConsistencyMode) -> Result<Verdict, WaveletError> {
    if !m.is_integral_periodic() {
        let cell = m.cells().keys().next().cloned().expect("nonzero");
        return Err(WaveletError::Precondition(Box::new(
            Verdict::fail("integral_periodic", cell, "not periodic").with("meaning", "m must be given on O and extended periodically"),
        )));
    }
    for v in m.cells().values() {
        rational(v)?;
    }
    let delta = defect(field, m);
    Ok(compare_defect(field, &delta, order, mode))
}

/// Tests a defect function on O against the bound `L` in the given mode.
fn compare_defect(field: &Field, delta: &StepFn, order: i64, mode: ConsistencyMode) -> Verdict {
    let bound = CycloNumber::from_int(field.p(), order);
    let unit = ESet::ideal(0);
    let verdict = match mode {
        ConsistencyMode::Equality => match delta.equals_constant_on(field, &unit, &bound) {
            Some((cell, v)) => Verdict::fail("consistency_equality", cell, format_value(&v)),
            None => Verdict::pass("consistency_equality"),
        },
        ConsistencyMode::Inequality => {
            let limit = BigRational::from_integer(order.into());
            let over = delta.cells().iter().find(|(_, v)| v.as_rational().expect("rational") > &limit);
            let gap = unit.subtract(field, &delta.support(field));
            match over {
                Some((cell, v)) => Verdict::fail("consistency_inequality", cell.clone(), format_value(v)),
                None if order < 0 && !gap.is_empty() => {
                    Verdict::fail("consistency_inequality", gap.balls().next().cloned().expect("nonempty"), "0")
                }
                None => Verdict::pass("consistency_inequality"),
            }
        }
    };
    verdict.with("delta", delta.format_cells()).with("L", order)
}

/// An orthonormal multiwavelet comes from an MRA exactly when `m ≡ 1`.
pub fn is_mra_multiwavelet(field: &Field, psi: &Multiwavelet) -> Result<Verdict, WaveletError> {
    require(is_orthonormal_multiwavelet(field, psi))?;
    let nd = negative_dilates_multiplicity(field, psi)?;
    let one = CycloNumber::one(field.p());
    Ok(match nd.multiplicity.equals_constant_on(field, &ESet::ideal(0), &one) {
        Some((cell, v)) => Verdict::fail("mra_multiplicity", cell, format_value(&v)),
        None => Verdict::pass("mra_multiplicity"),
    }
    .with("multiplicity", nd.multiplicity.format_cells()))
}

/// Evidence for the translates `{T_k f}` from two independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatesCheck {
    /// `Δ(m^{(J)}) + P_J = w` for the truncated tail `m^{(J)} = Σ_{j=1}^{J} P_j`.
    pub identity: Verdict,
    /// Consistency route: `Δ(m_f) ≤ 1`.
    pub parseval_consistency: Verdict,
    /// Direct route: the periodization weight takes values in {0, 1}.
    pub parseval_direct: Verdict,
    /// Consistency route: `Δ(m_f) = 1`.
    pub orthonormal_consistency: Verdict,
    /// Direct route: `⟨T_k f, f⟩ = δ_{k0}` for every k.
    pub orthonormal_direct: Verdict,
}

impl TranslatesCheck {
    /// True when the two routes disagree on either property.
    pub fn disagreement(&self) -> bool {
        self.parseval_consistency.ok != self.parseval_direct.ok
            || self.orthonormal_consistency.ok != self.orthonormal_direct.ok
    }
}

/// Compares the consistency-equation tests for `{T_k f}` with the direct tests.
///
/// `P_j = Σ_k |f̂(t^{-j}(ξ + u(k)))|²` tends to 0 almost everywhere, so the
/// defect of `m_f` is the limit of `w − P_J`, which is `w`. The identity is
/// checked exactly at depth `window`.
pub fn translates_check(field: &Field, hat_f: &SBFunction, window: i32) -> Result<TranslatesCheck, WaveletError> {
    let energy = hat_f.modulus_sq(field);
    let w = periodization_weight(field, hat_f);
    let depth = window.max(1);
    let mut truncated = StepFn::zero();
    let mut last = StepFn::zero();
    for j in 1..=depth {
        last = energy.compose_dilation(j).periodize(field)?;
        truncated = truncated.add(field, &last);
    }
    let lhs = defect(field, &truncated).add(field, &last);
    let diff = lhs.sub(field, &w);
    let identity = match diff.cells().iter().next() {
        Some((cell, _)) => Verdict::fail("translates_identity", cell.clone(), format_value(&lhs.value_on(field, cell))),
        None => Verdict::pass("translates_identity").with("depth", depth),
    };
    for v in w.cells().values() {
        rational(v)?;
    }
    let parseval_consistency = compare_defect(field, &w, 1, ConsistencyMode::Inequality);
    let orthonormal_consistency = compare_defect(field, &w, 1, ConsistencyMode::Equality);
    let parseval_consistency = relabel(parseval_consistency, "translates_parseval_consistency");
    let orthonormal_consistency = relabel(orthonormal_consistency, "translates_orthonormal_consistency");
    let parseval_direct = relabel(super::is_parseval_generator(field, hat_f), "translates_parseval_direct");
    let orthonormal_direct = relabel(gram_delta(field, hat_f), "translates_orthonormal_direct");
    Ok(TranslatesCheck { identity, parseval_consistency, parseval_direct, orthonormal_consistency, orthonormal_direct })
}

fn relabel(mut v: Verdict, condition: &str) -> Verdict {
    v.condition = condition.to_string();
    v
}

/// `⟨T_k f, f⟩ = δ_{k0}`; coefficients beyond `q^L` are determined by the
/// earlier ones, as in the cross-orthogonality Gram test.
fn gram_delta(field: &Field, hat_f: &SBFunction) -> Verdict {
    let w = periodization_weight(field, hat_f);
    let depth = w.cells().keys().map(Ball::level).max().unwrap_or(0).max(0);
    let bound = (field.q() as u64).pow(depth as u32);
    for k in 0..bound {
        let v = super::gram_entry(field, hat_f, hat_f, k);
        let expected = if k == 0 { CycloNumber::one(field.p()) } else { CycloNumber::zero(field.p()) };
        if v.sqrt_q || v.value != expected {
            let cell = Ball::unit().translate(&u(field, k), field);
            return Verdict::fail("gram_delta", cell, v.to_string()).with("k", k);
        }
    }
    Verdict::pass("gram_delta").with("k_bound", bound)
}
