//! Parseval frame, orthonormality, and semi-orthogonality tests for affine systems.

use super::{pti_cross_orthogonality, Multiwavelet, WaveletError};
use crate::charcyclo::CycloNumber;
use crate::gfq::Field;
use crate::sbfunc::{format_value, sum_cells, StepFn};
use crate::setalg::{Ball, ESet};
use crate::verdict::Verdict;
use crate::ztrans::{u, TransIndex};

/// `Σ_m Σ_{j∈Z} |ψ̂_m(t^{-j}ξ)|² = 1` for almost every ξ, given the energy
/// `F = Σ_m |ψ̂_m|²`.
///
/// The sum is invariant under `ξ ↦ tξ`, so it is enough to know it on the unit
/// annulus, where each annular cell of `F` contributes through exactly one
/// dilate. A nonzero cell around 0 makes the sum diverge near 0.
pub fn affine_condition_i(field: &Field, energy: &StepFn) -> Verdict {
    if let Some((b, v)) = energy.cells().iter().find(|(b, _)| b.is_zero_ball()) {
        return Verdict::fail("parseval_i_divergent", b.clone(), format_value(v))
            .with("meaning", "energy is nonzero on a ball around 0, so the dilation sum diverges");
    }
    let normalized: Vec<(Ball, CycloNumber)> = energy
        .cells()
        .iter()
        .map(|(b, v)| (b.dilate(-b.valuation().expect("annular")), v.clone()))
        .collect();
    let theta = StepFn::from_canonical(field, sum_cells(field, &normalized), false);
    let annulus = ESet::annulus(field, 0);
    if let Some((cell, value)) = theta.equals_constant_on(field, &annulus, &CycloNumber::one(field.p())) {
        return Verdict::fail("parseval_i", cell, format_value(&value))
            .with("meaning", "dilation sum of the energy on a unit-annulus cell");
    }
    Verdict::pass("parseval_i")
}

/// `Σ_m Σ_{j≥0} ψ̂_m(t^{-j}ξ) conj(ψ̂_m(t^{-j}(ξ + u(s)))) = 0` for every
/// `s` not divisible by q.
///
/// With supports inside `𝔓^{-M}` both factors can be nonzero only when
/// `|t^{-j}u(s)| ≤ q^M`. Since `|u(s)| = q^{d}` for `s` with `d` base-q digits,
/// only `s < q^M` and `j ≤ M − d` contribute.
pub fn affine_condition_ii(field: &Field, psi: &Multiwavelet) -> Verdict {
    let q = field.q() as u64;
    let radius = psi.support_radius().unwrap_or(i32::MIN);
    if radius <= 0 {
        return Verdict::pass("parseval_ii").with("terms", "none: supports lie in O");
    }
    let mut checked = 0u64;
    for s in (1..q.pow(radius as u32)).filter(|s| s % q != 0) {
        let digits = TransIndex::from_u64(field, s).len() as i32;
        let mut items: Vec<(Ball, CycloNumber)> = Vec::new();
        for j in 0..=(radius - digits) {
            let shift = u(field, s).shift(-j).neg(field);
            for f in &psi.hat_psis {
                let a = f.compose_dilation(j);
                let b = f.translate_by(field, &shift).compose_dilation(j);
                let prod = a.mul(field, &b.conj());
                items.extend(prod.cells().iter().map(|(c, v)| (c.clone(), v.clone())));
            }
            checked += 1;
        }
        let total = sum_cells(field, &items);
        if let Some((cell, v)) = total.iter().next() {
            return Verdict::fail("parseval_ii", cell.clone(), v.to_string()).with("s", s);
        }
    }
    Verdict::pass("parseval_ii").with("terms", checked).with("s_bound", q.pow(radius as u32))
}

/// Both conditions of the Parseval frame characterization.
pub fn verify_affine_parseval(field: &Field, psi: &Multiwavelet) -> Verdict {
    let energy = psi.energy(field);
    let first = affine_condition_i(field, &energy);
    let second = affine_condition_ii(field, psi);
    Verdict::all("affine_parseval", vec![first, second]).with("order", psi.order())
}

/// Parseval frame with every generator of norm 1.
pub fn is_orthonormal_multiwavelet(field: &Field, psi: &Multiwavelet) -> Verdict {
    let parseval = verify_affine_parseval(field, psi);
    let mut norms = Verdict::pass("unit_norms");
    let hull = Ball::ideal(-psi.support_radius().unwrap_or(0));
    for (m, f) in psi.hat_psis.iter().enumerate() {
        let n = f.norm_sq(field);
        norms = norms.with(format!("norm_sq[{}]", m + 1), format_value(&n));
        if !n.is_one() && norms.ok {
            let report = norms.report.clone();
            norms = Verdict::fail("unit_norms", hull.clone(), format_value(&n)).with("generator", m + 1);
            norms.report.extend(report);
        }
    }
    Verdict::all("orthonormal_multiwavelet", vec![parseval, norms])
}

/// Smallest `N` with `𝔓^N` missing every support; fails on a ball around 0.
fn separation(psi: &Multiwavelet) -> Result<i32, WaveletError> {
    let mut n = i32::MIN;
    for f in &psi.hat_psis {
        for b in f.cells().keys() {
            match b.valuation() {
                None => return Err(WaveletError::SupportAtZero(b.clone())),
                Some(v) => n = n.max(v + 1),
            }
        }
    }
    Ok(n)
}

/// `D^j W ⊥ W` for every `j ≥ 1`, where `W` is spanned by the translates of Ψ.
///
/// `D^j W` is generated by `D^j T_i ψ_m` for `i < q^j`, whose transforms are
/// `χ_{−t^j u(i)} · D^{-j} ψ̂_m`. Once `j ≥ M + N` the dilated supports sit
/// inside `𝔓^{N}`, away from every support, and orthogonality is automatic.
pub fn is_semi_orthogonal(field: &Field, psi: &Multiwavelet) -> Result<Verdict, WaveletError> {
    let n = separation(psi)?;
    let m = psi.support_radius().expect("nonempty supports");
    let j_max = (m + n).max(0);
    let q = field.q() as u64;
    for j in 1..=j_max {
        for i in 0..q.pow(j as u32) {
            let y = u(field, i).shift(j).neg(field);
            for (a, fa) in psi.hat_psis.iter().enumerate() {
                let generator = fa.dilate(field, -j).modulate(field, &y);
                for (b, fb) in psi.hat_psis.iter().enumerate() {
                    let v = pti_cross_orthogonality(field, &generator, fb);
                    if !v.ok {
                        return Ok(v.with("j", j).with("i", i).with("generators", format!("{} vs {}", a + 1, b + 1)));
                    }
                }
            }
        }
    }
    Ok(Verdict::pass("semi_orthogonal")
        .with("j_max", j_max)
        .with("radius", m)
        .with("separation", n)
        .with("tail", format!("j > {j_max}: dilated supports are disjoint")))
}
