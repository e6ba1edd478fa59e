//! Worked examples: the Shannon multiwavelet, two Parseval families built from
//! annuli, their scaling sets, and an orthonormal family without an MRA.

use super::Multiwavelet;
use crate::gfq::Field;
use crate::sbfunc::SBFunction;
use crate::setalg::{Ball, ESet};
use crate::ztrans::u;

fn indicators(field: &Field, sets: &[ESet]) -> Multiwavelet {
    Multiwavelet::new(sets.iter().map(|s| SBFunction::indicator(field, s)).collect()).expect("nonempty family")
}

/// The cosets `O + u(i)` for `1 ≤ i < q`, which partition `𝔓^{-1} \ O`.
pub fn shannon_sets(field: &Field) -> Vec<ESet> {
    (1..field.q() as u64).map(|i| ESet::ball(Ball::unit().translate(&u(field, i), field))).collect()
}

/// `ψ̂_i = ind(O + u(i))`, an orthonormal multiwavelet of order `q − 1`.
pub fn shannon(field: &Field) -> Multiwavelet {
    indicators(field, &shannon_sets(field))
}

/// The annulus `𝔓^m \ 𝔓^{m+1}`.
pub fn example_315a_sets(field: &Field, m: i32) -> Vec<ESet> {
    vec![ESet::annulus(field, m)]
}

/// `ψ̂ = ind(𝔓^m \ 𝔓^{m+1})`, a Parseval multiwavelet of order 1.
pub fn example_315a(field: &Field, m: i32) -> Multiwavelet {
    indicators(field, &example_315a_sets(field, m))
}

/// The balls `𝔓^m + t^m u(i)` for `1 ≤ i < q`.
pub fn example_315b_sets(field: &Field, m: i32) -> Vec<ESet> {
    (1..field.q() as u64).map(|i| ESet::ball(Ball::new(u(field, i).shift(m), m))).collect()
}

/// `ψ̂_i = ind(𝔓^m + t^m u(i))`, a Parseval multiwavelet of order `q − 1`.
pub fn example_315b(field: &Field, m: i32) -> Multiwavelet {
    indicators(field, &example_315b_sets(field, m))
}

/// Scaling sets for the three families above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingExample {
    /// `S = O`, for the Shannon multiwavelet.
    Shannon,
    /// `S = 𝔓^{m+1}`, for the single annulus.
    Annulus,
    /// `S = 𝔓^m`, for the shifted balls.
    ShiftedBalls,
}

pub fn example_46_scaling(variant: ScalingExample, m: i32) -> ESet {
    match variant {
        ScalingExample::Shannon => ESet::ideal(0),
        ScalingExample::Annulus => ESet::ideal(m + 1),
        ScalingExample::ShiftedBalls => ESet::ideal(m),
    }
}

/// `φ̂ = ind(S)` for a scaling example.
pub fn example_46_function(field: &Field, variant: ScalingExample, m: i32) -> SBFunction {
    SBFunction::indicator(field, &example_46_scaling(variant, m))
}

/// The unit cosets `O + u(n)` for `q ≤ n < q²`, which partition `𝔓^{-2} \ 𝔓^{-1}`,
/// the Shannon support dilated once more.
pub fn dilated_shannon_sets(field: &Field) -> Vec<ESet> {
    let q = field.q() as u64;
    (q..q * q).map(|n| ESet::ball(Ball::unit().translate(&u(field, n), field))).collect()
}

/// An orthonormal multiwavelet of order `q(q − 1)` whose multiplicity function
/// is the constant `q`, so it does not come from an MRA.
pub fn dilated_shannon(field: &Field) -> Multiwavelet {
    indicators(field, &dilated_shannon_sets(field))
}
