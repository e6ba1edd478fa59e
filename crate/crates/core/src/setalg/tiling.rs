//! Folding into O and the translation / dilation tiling tests.
//!
//! Translation tiling by the lattice reduces to folding: `A + u(k)` are pairwise
//! disjoint exactly when no point of O is hit twice by the folded balls of `A`.
//!
//! Dilation tiling reduces to the unit annulus. An annular ball `b` has a
//! constant valuation `v`, and `t^{-v} b ⊂ O \ 𝔓`. A nonzero `ξ = t^w η` with
//! `η` a unit lies in `t^j b` exactly when `j = w - v` and `η ∈ t^{-v} b`, so
//! the dilates of `W` tile `K \ {0}` precisely when the normalized balls tile
//! `O \ 𝔓`. A ball around 0 meets all of its own dilates and always fails.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::{cells, Ball, ESet};
use crate::gfq::Field;
use crate::locfield::LaurentNumber;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TilingMode {
    /// Translates pairwise disjoint: a partition of a subset of K.
    Subset,
    /// Translates disjoint and covering: a partition of K.
    AllOfK,
}

/// A cell of O together with the lattice offsets of the input pieces folded onto it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedCell {
    pub cell: Ball,
    pub offsets: Vec<LaurentNumber>,
}

/// Splits to level ≥ 0 and pairs each piece with its lattice offset.
fn folded_pieces(field: &Field, balls: &[Ball]) -> Vec<(Ball, LaurentNumber)> {
    let mut out = Vec::new();
    for b in balls {
        let parts = if b.level() < 0 { b.split_to_level(0, field).expect("coarser target") } else { vec![b.clone()] };
        for part in parts {
            let offset = part.center().fractional_part();
            out.push((Ball::new(part.center().tail_from(0), part.level()), offset));
        }
    }
    out
}

/// Refined fold: disjoint cells of O, each with the offsets of every piece
/// landing on it. `cell + offset` recovers the preimage.
pub fn fold_with_preimages(field: &Field, balls: &[Ball]) -> Vec<FoldedCell> {
    let pieces = folded_pieces(field, balls);
    let images: Vec<Ball> = pieces.iter().map(|(b, _)| b.clone()).collect();
    cells::overlay(field, &images)
        .into_iter()
        .map(|(cell, idx)| {
            let mut offsets: Vec<LaurentNumber> = idx.iter().map(|&i| pieces[i].1.clone()).collect();
            offsets.sort();
            FoldedCell { cell, offsets }
        })
        .collect()
}

/// Multiset of folded images: canonical cells of O with their multiplicities.
pub fn fold(field: &Field, balls: &[Ball]) -> BTreeMap<Ball, u64> {
    let items: Vec<(Ball, ())> = folded_pieces(field, balls).into_iter().map(|(b, _)| (b, ())).collect();
    cells::accumulate(field, &items, |vs| Some(vs.len() as u64))
}

pub fn is_translation_partition(field: &Field, set: &ESet, mode: TilingMode) -> Verdict {
    let balls: Vec<Ball> = set.balls().cloned().collect();
    let folded = fold(field, &balls);
    if let Some((cell, m)) = folded.iter().find(|(_, &m)| m >= 2) {
        return Verdict::fail("translation_disjoint", cell.clone(), m.to_string())
            .with("meaning", "multiplicity of the folded cell");
    }
    let image = ESet::from_canonical(folded.keys().map(|b| (b.clone(), ())).collect());
    let covered = image.measure(field);
    let verdict = Verdict::pass("translation_partition").with("folded_measure", crate::charcyclo::format_rational(&covered));
    if mode == TilingMode::AllOfK {
        let gap = ESet::ideal(0).subtract(field, &image);
        let uncovered = gap.balls().next().cloned();
        if let Some(cell) = uncovered {
            return Verdict::fail("translation_cover", cell, "0")
                .with("meaning", "cell of O not covered by any translate")
                .with("folded_measure", crate::charcyclo::format_rational(&covered));
        }
    }
    verdict
}

pub fn is_dilation_partition(field: &Field, set: &ESet) -> Verdict {
    let balls: Vec<Ball> = set.balls().cloned().collect();
    is_dilation_partition_multiset(field, &balls)
}

/// Dilation tiling test for a union given as possibly overlapping pieces; an
/// overlap between pieces counts as a failure.
pub fn is_dilation_partition_multiset(field: &Field, balls: &[Ball]) -> Verdict {
    if let Some(b) = balls.iter().find(|b| b.is_zero_ball()) {
        return Verdict::fail("dilation_zero_ball", b.clone(), "0")
            .with("meaning", "ball around 0 overlaps its own dilates");
    }
    let normalized: Vec<Ball> = balls.iter().map(|b| b.dilate(-b.valuation().expect("annular"))).collect();
    let mut union = BTreeMap::new();
    for (cell, idx) in cells::overlay(field, &normalized) {
        if idx.len() >= 2 {
            return Verdict::fail("dilation_overlap", cell, idx.len().to_string())
                .with("meaning", "normalized unit-annulus cell covered more than once");
        }
        union.insert(cell, ());
    }
    cells::canonicalize(field, &mut union);
    let covered = ESet::from_canonical(union);
    let annulus = ESet::annulus(field, 0);
    let gap = annulus.subtract(field, &covered);
    if let Some(cell) = gap.balls().next().cloned() {
        return Verdict::fail("dilation_cover", cell, "0")
            .with("meaning", "unit-annulus cell reached by no dilate");
    }
    let expected = BigRational::one() - BigRational::new(1.into(), field.q().into());
    debug_assert_eq!(covered.measure(field), expected);
    Verdict::pass("dilation_partition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztrans::u;

    #[test]
    fn fold_examples() {
        let f = Field::prime(2).unwrap();
        let coset = Ball::unit().translate(&u(&f, 5), &f);
        assert_eq!(fold(&f, &[coset]), BTreeMap::from([(Ball::unit(), 1)]));
        let two = [Ball::ideal(1), Ball::ideal(1).translate(&u(&f, 1), &f)];
        assert_eq!(fold(&f, &two), BTreeMap::from([(Ball::ideal(1), 2)]));
        assert_eq!(fold(&f, &[Ball::unit()]), BTreeMap::from([(Ball::unit(), 1)]));
    }

    #[test]
    fn translation_examples() {
        let f = Field::prime(2).unwrap();
        assert!(is_translation_partition(&f, &ESet::ideal(0), TilingMode::AllOfK).ok);
        assert!(is_translation_partition(&f, &ESet::ideal(1), TilingMode::Subset).ok);
        assert!(!is_translation_partition(&f, &ESet::ideal(1), TilingMode::AllOfK).ok);
        let set = ESet::from_balls(&f, [Ball::ideal(1), Ball::ideal(1).translate(&u(&f, 1), &f)]);
        let v = is_translation_partition(&f, &set, TilingMode::Subset);
        assert!(!v.ok);
        let w = v.witness.unwrap();
        assert_eq!((w.ball, w.value.as_str()), (Ball::ideal(1), "2"));
    }

    #[test]
    fn dilation_examples() {
        for q in [(2, 1), (3, 1), (2, 2)] {
            let f = Field::new(q.0, q.1).unwrap();
            assert!(is_dilation_partition(&f, &ESet::annulus(&f, -1)).ok);
            assert!(is_dilation_partition(&f, &ESet::annulus(&f, 1)).ok);
            let v = is_dilation_partition(&f, &ESet::ideal(0));
            assert_eq!(v.condition, "dilation_zero_ball");
            assert_eq!(v.witness.unwrap().ball, Ball::unit());
        }
        let f = Field::prime(2).unwrap();
        let overlapping = ESet::annulus(&f, 0).union(&f, &ESet::annulus(&f, 3));
        assert_eq!(is_dilation_partition(&f, &overlapping).condition, "dilation_overlap");
        let partial = ESet::ball(Ball::new(LaurentNumber::one(), 2));
        assert_eq!(is_dilation_partition(&f, &partial).condition, "dilation_cover");
    }
}
