//! Wavelet sets, scaling sets, and scaling functions.

use super::{is_parseval_generator, pti_membership};
use crate::gfq::Field;
use crate::sbfunc::{format_value, q_power_cyclo, SBFunction, StepFn};
use crate::setalg::{fold_with_preimages, is_dilation_partition_multiset, is_translation_partition, Ball, ESet, TilingMode};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetMode {
    Parseval,
    Orthonormal,
}

impl SetMode {
    fn tiling(self) -> TilingMode {
        match self {
            SetMode::Parseval => TilingMode::Subset,
            SetMode::Orthonormal => TilingMode::AllOfK,
        }
    }
}

/// `{W_m}` is a Parseval (orthonormal) multiwavelet set when the dilates of
/// their union tile K and each `W_m` tiles a subset of K (all of K) by lattice
/// translations.
///
/// The pieces enter the dilation test as a multiset, so an overlap between
/// two pieces, or between a piece and a dilate of another, is a failure. This
/// is where `|t^j W_m ∩ W_{m'}| = 0` for `j ≥ 0` and `m ≠ m'` is enforced.
pub fn verify_wavelet_set(field: &Field, pieces: &[ESet], mode: SetMode) -> Verdict {
    let all: Vec<Ball> = pieces.iter().flat_map(|w| w.balls().cloned()).collect();
    let mut parts = vec![is_dilation_partition_multiset(field, &all).with("pieces", pieces.len())];
    for (m, w) in pieces.iter().enumerate() {
        let mut v = is_translation_partition(field, w, mode.tiling());
        v.condition = format!("{}[{}]", v.condition, m + 1);
        parts.push(v);
    }
    Verdict::all("wavelet_set", parts)
        .with("mode", format!("{mode:?}").to_lowercase())
        .with("cross_dilation_disjoint", "enforced by the multiset dilation test")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingSetResult {
    pub verdict: Verdict,
    /// `W = t^{-1}S \ S`, when conditions (i) to (iii) hold.
    pub wavelet_set: Option<ESet>,
    /// Decomposition of `W` into translation-tiling pieces.
    pub pieces: Vec<ESet>,
}

/// `S` is a Parseval (orthonormal) scaling set when its translates tile a
/// subset of K (all of K), its dilates exhaust K, and `S ⊆ t^{-1}S`.
///
/// On success `W = t^{-1}S \ S` is split into pieces by folding: the folded
/// preimages of each cell of O are sorted, and the i-th preimage goes to the
/// i-th piece. The number of pieces is the largest folding multiplicity. The
/// identity `⋃_{j=1}^{J} t^j W = S \ t^J S` is checked for `J ≤ window`.
pub fn verify_scaling_set(field: &Field, s: &ESet, mode: SetMode, window: i32) -> ScalingSetResult {
    let fail = |verdict: Verdict| ScalingSetResult { verdict, wavelet_set: None, pieces: Vec::new() };
    let mut first = is_translation_partition(field, s, mode.tiling());
    first.condition = format!("scaling_{}", first.condition);
    if !first.ok {
        return fail(first);
    }
    let second = exhausts(field, s);
    if !second.ok {
        return fail(second);
    }
    let doubled = s.dilate(-1);
    if !s.is_subset(field, &doubled) {
        let cell = s.subtract(field, &doubled).balls().next().cloned().expect("nonempty difference");
        return fail(Verdict::fail("scaling_nested", cell, "0").with("meaning", "cell of S outside t^{-1}S"));
    }
    let w = doubled.subtract(field, s);
    let balls: Vec<Ball> = w.balls().cloned().collect();
    let folded = fold_with_preimages(field, &balls);
    let order = folded.iter().map(|c| c.offsets.len()).max().unwrap_or(0);
    if mode == SetMode::Orthonormal {
        let covered = ESet::from_balls(field, folded.iter().map(|c| c.cell.clone()));
        let gap = ESet::ideal(0).subtract(field, &covered);
        let uneven = folded.iter().find(|c| c.offsets.len() != order);
        let witness = uneven.map(|c| (c.cell.clone(), c.offsets.len())).or_else(|| gap.balls().next().map(|b| (b.clone(), 0)));
        if let Some((cell, count)) = witness {
            return fail(Verdict::fail("scaling_wavelet_multiplicity", cell, count.to_string())
                .with("meaning", "W does not fold onto O with constant multiplicity"));
        }
    }
    let mut pieces = vec![Vec::new(); order];
    for c in &folded {
        for (i, offset) in c.offsets.iter().enumerate() {
            pieces[i].push(c.cell.translate(offset, field));
        }
    }
    let pieces: Vec<ESet> = pieces.into_iter().map(|p| ESet::from_balls(field, p)).collect();
    let wavelet = verify_wavelet_set(field, &pieces, mode);
    let mut reconstruction = Verdict::pass("scaling_reconstruction").with("window", window.max(1));
    let mut union = ESet::empty();
    for j in 1..=window.max(1) {
        union = union.union(field, &w.dilate(j));
        let expected = s.subtract(field, &s.dilate(j));
        if union != expected {
            let diff = union.subtract(field, &expected).union(field, &expected.subtract(field, &union));
            let cell = diff.balls().next().cloned().expect("sets differ");
            reconstruction = Verdict::fail("scaling_reconstruction", cell, "mismatch").with("J", j);
            break;
        }
    }
    let verdict = Verdict::all("scaling_set", vec![first, second, Verdict::pass("scaling_nested"), wavelet, reconstruction])
        .with("W", &w)
        .with("order", order);
    ScalingSetResult { verdict, wavelet_set: Some(w), pieces }
}

/// `⋃_j t^{-j} S = K`: automatic when S contains a ball around 0, and otherwise
/// equivalent to the normalized annular cells of S covering `O \ 𝔓`.
fn exhausts(field: &Field, s: &ESet) -> Verdict {
    if s.balls().any(Ball::is_zero_ball) {
        return Verdict::pass("scaling_exhausts").with("reason", "contains a ball around 0");
    }
    let normalized = ESet::from_balls(field, s.balls().map(|b| b.dilate(-b.valuation().expect("annular"))));
    let gap = ESet::annulus(field, 0).subtract(field, &normalized);
    let uncovered = gap.balls().next().cloned();
    match uncovered {
        Some(cell) => Verdict::fail("scaling_exhausts", cell, "0").with("meaning", "unit-annulus cell reached by no dilate of S"),
        None => Verdict::pass("scaling_exhausts").with("reason", "normalized cells cover the unit annulus"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingFunctionResult {
    pub verdict: Verdict,
    /// The integral periodic filter `m_0` with `φ̂(t^{-1}ξ) = m_0(ξ) φ̂(ξ)`.
    pub filter: Option<StepFn>,
}

/// Parseval scaling function test: Parseval translates, `|φ̂| = 1` near 0, and
/// a two-scale relation with an integral periodic filter.
///
/// Since φ̂ is locally constant, the limit of `|φ̂(t^j ξ)|` is its modulus on
/// the cell around 0, and that cell must exist. The filter is the ratio
/// `φ̂(t^{-1}ξ) / φ̂(ξ)` folded into O, which must not depend on the translate.
pub fn verify_scaling_function(field: &Field, hat_phi: &SBFunction) -> ScalingFunctionResult {
    let mut first = is_parseval_generator(field, hat_phi);
    first.condition = format!("scaling_function_{}", first.condition);
    let centre = hat_phi.cells().iter().find(|(b, _)| b.is_zero_ball());
    let second = match centre {
        None => {
            let depth = hat_phi.cells().keys().map(|b| b.reach() + 1).max().unwrap_or(0);
            Verdict::fail("scaling_function_limit", Ball::ideal(depth), "0").with("meaning", "transform vanishes near 0")
        }
        Some((b, v)) => {
            let mut modulus = v.abs_sq();
            if hat_phi.half_scale() {
                modulus = &modulus * &q_power_cyclo(field, 1);
            }
            if modulus.is_one() {
                Verdict::pass("scaling_function_limit")
            } else {
                Verdict::fail("scaling_function_limit", b.clone(), format_value(&modulus))
                    .with("meaning", "squared modulus on the ball around 0")
            }
        }
    };
    let (third, filter) = match pti_membership(field, &hat_phi.compose_dilation(1), hat_phi) {
        Ok(m0) => (Verdict::pass("scaling_function_refinement").with("m0", m0.format_cells()), Some(m0)),
        Err(mut v) => {
            v.condition = format!("scaling_function_refinement.{}", v.condition);
            (v, None)
        }
    };
    let verdict = Verdict::all("scaling_function", vec![first, second, third]);
    ScalingFunctionResult { verdict, filter }
}
