//! Exact harmonic analysis on the local field K = GF(q)((t)).
//!
//! The crate is layered bottom-up: the residue field ([`gfq`]), Laurent
//! numbers ([`locfield`]), the translation lattice ([`ztrans`]), cyclotomic
//! values and the character ([`charcyclo`]), elementary sets ([`setalg`]),
//! locally constant compactly supported functions ([`sbfunc`]), and the
//! wavelet verifiers built on top ([`waveletlab`]).

pub mod charcyclo;
pub mod gfq;
pub mod locfield;
pub mod sbfunc;
pub mod setalg;
pub mod verdict;
pub mod waveletlab;
pub mod ztrans;

pub use charcyclo::{CharValue, CycloNumber};
pub use gfq::{Field, GfElem};
pub use locfield::LaurentNumber;
pub use setalg::{Ball, ESet};
pub use verdict::{Verdict, Witness};
pub use ztrans::TransIndex;
