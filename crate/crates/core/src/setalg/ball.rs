use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::SetError;
use crate::gfq::Field;
use crate::locfield::LaurentNumber;

/// The ball `center + 𝔓^level`, with the center reduced below `level`.
///
/// Ordering is by level first, so iterating a map of balls visits coarse cells
/// before fine ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ball {
    level: i32,
    center: LaurentNumber,
}

impl Ball {
    pub fn new(center: LaurentNumber, level: i32) -> Self {
        Ball { center: center.truncate(level), level }
    }

    /// The fractional ideal `𝔓^k`.
    pub fn ideal(level: i32) -> Self {
        Ball { center: LaurentNumber::zero(), level }
    }

    /// The ring of integers `O`.
    pub fn unit() -> Self {
        Self::ideal(0)
    }

    pub fn center(&self) -> &LaurentNumber {
        &self.center
    }

    pub fn level(&self) -> i32 {
        self.level
    }

    /// True for `𝔓^k` itself, the only balls containing 0.
    pub fn is_zero_ball(&self) -> bool {
        self.center.is_zero()
    }

    /// Common valuation of every point, or `None` for a ball around 0.
    pub fn valuation(&self) -> Option<i32> {
        self.center.valuation()
    }

    /// Smallest exponent `e` with the ball inside `𝔓^e`.
    pub fn reach(&self) -> i32 {
        self.center.valuation().map_or(self.level, |v| v.min(self.level))
    }

    pub fn contains(&self, other: &Ball) -> bool {
        other.level >= self.level && other.center.truncate(self.level) == self.center
    }

    pub fn contains_point(&self, x: &LaurentNumber) -> bool {
        x.truncate(self.level) == self.center
    }

    pub fn disjoint(&self, other: &Ball) -> bool {
        !self.contains(other) && !other.contains(self)
    }

    pub fn parent(&self) -> Ball {
        Ball::new(self.center.clone(), self.level - 1)
    }

    pub fn children(&self, field: &Field) -> Vec<Ball> {
        field
            .elements()
            .map(|d| Ball { center: self.center.with_top_digit(self.level, d), level: self.level + 1 })
            .collect()
    }

    pub fn translate(&self, x: &LaurentNumber, field: &Field) -> Ball {
        Ball::new(self.center.add(x, field), self.level)
    }

    /// Image under multiplication by `t^j`.
    pub fn dilate(&self, j: i32) -> Ball {
        Ball { center: self.center.shift(j), level: self.level + j }
    }

    /// Haar measure `q^{-level}`.
    pub fn measure(&self, field: &Field) -> BigRational {
        q_power(field, -self.level)
    }

    /// Sub-balls at level exactly `k`.
    pub fn split_to_level(&self, k: i32, field: &Field) -> Result<Vec<Ball>, SetError> {
        if k < self.level {
            return Err(SetError::Refinement { level: self.level, target: k });
        }
        let mut layer = vec![self.clone()];
        for _ in self.level..k {
            layer = layer.iter().flat_map(|b| b.children(field)).collect();
        }
        Ok(layer)
    }
}

/// `q^e` as an exact rational.
pub fn q_power(field: &Field, e: i32) -> BigRational {
    let base = BigInt::from(field.q()).pow(e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::from(1), base)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.center.is_zero() {
            write!(f, "ideal({})", self.level)
        } else {
            write!(f, "ball({}; {})", self.center, self.level)
        }
    }
}

impl Serialize for Ball {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Ball", 2)?;
        s.serialize_field("center", &self.center.to_string())?;
        s.serialize_field("level", &self.level)?;
        s.end()
    }
}
