//! Decision procedures for Parseval and orthonormal multiwavelets, translation
//! invariant spaces, consistency equations, and wavelet and scaling sets.
//!
//! Every input is given on the frequency side: a multiwavelet is the list of
//! transforms `ψ̂_m`, a generator is `φ̂`. All answers are exact.

mod dilates;
pub mod examples;
mod frames;
pub mod linalg;
mod sets;
mod tispace;

use thiserror::Error;

pub use dilates::{
    consistency_check, dimension_function, is_mra_multiwavelet, negative_dilates_multiplicity,
    spectral_negative_dilates, translates_check, ConsistencyMode, NegativeDilates, TranslatesCheck,
};
pub use frames::{
    affine_condition_i, affine_condition_ii, is_orthonormal_multiwavelet, is_semi_orthogonal, verify_affine_parseval,
};
pub use sets::{verify_scaling_function, verify_scaling_set, verify_wavelet_set, ScalingFunctionResult, ScalingSetResult, SetMode};
pub use tispace::{
    fiber, fiber_cells, fiber_rank_check, gram_entry, gram_matrix, is_orthonormal_generator, is_parseval_frame_family,
    is_parseval_generator, multiplicity_from_generators, Fiber, periodization_weight, pti_cross_orthogonality,
    pti_cross_orthogonality_by_gram, pti_membership, spectral_dilation_identity, spectral_from_generators, Spectral, Tail,
};

use crate::charcyclo::CycloError;
use crate::sbfunc::{SBFunction, SbError, StepFn};
use crate::setalg::Ball;
use crate::gfq::Field;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveletError {
    #[error("a multiwavelet needs at least one function")]
    Empty,
    #[error("support contains the ball {0} around 0, so no finite separation bound exists")]
    SupportAtZero(Ball),
    #[error("precondition `{}` failed", .0.condition)]
    Precondition(Box<Verdict>),
    #[error("value {0} is not rational, so it cannot be ordered exactly")]
    NotRational(String),
    #[error("window {window} too small: support reaches level {needed}")]
    WindowTooSmall { window: i32, needed: i32 },
    #[error("cell {0} straddles a cell boundary of the function")]
    CellTooCoarse(Ball),
    #[error(transparent)]
    Sb(#[from] SbError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// A candidate multiwavelet `Ψ = {ψ_1, …, ψ_L}`, given by the transforms `ψ̂_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiwavelet {
    pub hat_psis: Vec<SBFunction>,
}

impl Multiwavelet {
    pub fn new(hat_psis: Vec<SBFunction>) -> Result<Self, WaveletError> {
        if hat_psis.is_empty() {
            return Err(WaveletError::Empty);
        }
        Ok(Multiwavelet { hat_psis })
    }

    pub fn order(&self) -> usize {
        self.hat_psis.len()
    }

    /// `F = Σ_m |ψ̂_m|²`.
    pub fn energy(&self, field: &Field) -> StepFn {
        self.hat_psis.iter().fold(StepFn::zero(), |acc, f| acc.add(field, &f.modulus_sq(field)))
    }

    /// Smallest `M` with every support inside `𝔓^{-M}`.
    pub fn support_radius(&self) -> Option<i32> {
        self.hat_psis.iter().filter_map(SBFunction::support_radius).max()
    }
}
