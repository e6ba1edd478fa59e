//! Elementary subsets of K: finite disjoint unions of balls in canonical form,
//! with Boolean operations, measure, affine maps, folding into O, and the two
//! tiling decision procedures.

mod ball;
pub mod cells;
mod tiling;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use ball::{q_power, Ball};
pub use cells::{accumulate, canonicalize, combine, overlay};
pub use tiling::{fold, fold_with_preimages, is_dilation_partition, is_dilation_partition_multiset, is_translation_partition, FoldedCell, TilingMode};

use crate::gfq::Field;
use crate::locfield::LaurentNumber;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("cannot split a ball of level {level} to the coarser level {target}")]
    Refinement { level: i32, target: i32 },
}

/// A finite union of balls, stored as its maximally merged disjoint decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ESet {
    cells: BTreeMap<Ball, ()>,
}

impl ESet {
    pub fn empty() -> Self {
        ESet::default()
    }

    pub fn ball(b: Ball) -> Self {
        ESet { cells: BTreeMap::from([(b, ())]) }
    }

    /// Union of arbitrary, possibly overlapping balls.
    pub fn from_balls(field: &Field, balls: impl IntoIterator<Item = Ball>) -> Self {
        let mut sorted: Vec<Ball> = balls.into_iter().collect();
        sorted.sort();
        sorted.dedup();
        // Coarse balls come first, so a ball is redundant exactly when some
        // already accepted ball contains it.
        let mut cells: BTreeMap<Ball, ()> = BTreeMap::new();
        for b in sorted {
            let covered = cells.keys().next().is_some_and(|first| {
                (first.level()..b.level()).any(|l| cells.contains_key(&Ball::new(b.center().clone(), l)))
            });
            if !covered {
                cells.insert(b, ());
            }
        }
        canonicalize(field, &mut cells);
        ESet { cells }
    }

    /// `𝔓^k \ 𝔓^{k+1}`.
    pub fn annulus(field: &Field, k: i32) -> Self {
        ESet::ball(Ball::ideal(k)).subtract(field, &ESet::ball(Ball::ideal(k + 1)))
    }

    pub fn ideal(k: i32) -> Self {
        ESet::ball(Ball::ideal(k))
    }

    pub(crate) fn from_canonical(cells: BTreeMap<Ball, ()>) -> Self {
        ESet { cells }
    }

    pub fn balls(&self) -> impl Iterator<Item = &Ball> {
        self.cells.keys()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &BTreeMap<Ball, ()> {
        &self.cells
    }

    pub fn measure(&self, field: &Field) -> BigRational {
        self.cells.keys().fold(BigRational::zero(), |acc, b| acc + b.measure(field))
    }

    pub fn contains_point(&self, x: &LaurentNumber) -> bool {
        self.cells.keys().any(|b| b.contains_point(x))
    }

    pub fn contains_ball(&self, cell: &Ball) -> bool {
        self.cells.keys().any(|b| b.contains(cell))
    }

    fn boolean(&self, field: &Field, other: &ESet, keep: impl Fn(bool, bool) -> bool) -> ESet {
        let cells = combine(field, &self.cells, &other.cells, |a, b| keep(a.is_some(), b.is_some()).then_some(()));
        ESet { cells }
    }

    pub fn union(&self, field: &Field, other: &ESet) -> ESet {
        self.boolean(field, other, |a, b| a || b)
    }

    pub fn intersect(&self, field: &Field, other: &ESet) -> ESet {
        self.boolean(field, other, |a, b| a && b)
    }

    pub fn subtract(&self, field: &Field, other: &ESet) -> ESet {
        self.boolean(field, other, |a, b| a && !b)
    }

    pub fn is_subset(&self, field: &Field, other: &ESet) -> bool {
        self.subtract(field, other).is_empty()
    }

    pub fn translate(&self, field: &Field, x: &LaurentNumber) -> ESet {
        ESet::from_balls(field, self.cells.keys().map(|b| b.translate(x, field)))
    }

    /// Multiplication by `t^j`; maps sibling families to sibling families, so
    /// canonical form is preserved.
    pub fn dilate(&self, j: i32) -> ESet {
        ESet { cells: self.cells.keys().map(|b| (b.dilate(j), ())).collect() }
    }

    /// Partition into balls of level exactly `k`.
    pub fn split_to_level(&self, field: &Field, k: i32) -> Result<Vec<Ball>, SetError> {
        let mut out = Vec::new();
        for b in self.cells.keys() {
            out.extend(b.split_to_level(k, field)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "empty");
        }
        for (i, b) in self.cells.keys().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
