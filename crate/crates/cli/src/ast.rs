//! Syntax tree of a check script.
//!
//! Every node that can be named in a diagnostic carries its source position.
//! Positions are diagnostics rather than content: two nodes parsed from
//! different locations compare equal when everything else agrees, which is
//! what the print/reparse round trip relies on.

use std::fmt;

#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub header: Header,
    pub statements: Vec<Statement>,
}

/// `field p=INT c=INT [poly=INT(,INT)*]`, with the modulus coefficients listed
/// from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub p: u32,
    pub c: u32,
    pub poly: Option<Vec<u32>>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

/// A Laurent polynomial as written: `(digit index, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentLit {
    pub terms: Vec<(u32, i32)>,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallKind {
    Ball { center: LaurentLit, level: i32 },
    Annulus(i32),
    Ideal(i32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallExpr {
    pub kind: BallKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetAtom {
    Name(Name),
    Ball(BallExpr),
}

/// `±num/den`, optionally times `ζ^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTerm {
    pub negative: bool,
    pub num: u64,
    pub den: u64,
    pub zeta: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff {
    pub terms: Vec<CoeffTerm>,
    pub pos: Pos,
}

/// `COEFF * ind(SETEXPR)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub set: Vec<SetAtom>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameMode {
    Parseval,
    Orthonormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationMode {
    Inequality,
    Equality,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    WaveletSet { names: Vec<Name>, order: u32, mode: FrameMode },
    ParsevalWavelet(Vec<Name>),
    OrthonormalWavelet(Vec<Name>),
    SemiOrthogonal(Vec<Name>),
    ScalingSet { name: Name, mode: FrameMode },
    ScalingFunction(Name),
    /// The consistency equation, for a step function or for the multiplicity
    /// function of a multiwavelet's negative dilates.
    Consistency { names: Vec<Name>, order: u32, mode: EquationMode },
    Mra(Vec<Name>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compute {
    Multiplicity(Vec<Name>),
    Spectral(Vec<Name>),
    Fourier(Name),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingVariant {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Example {
    Shannon,
    AnnulusFamily(i32),
    ShiftedBalls(i32),
    ScalingSet(ScalingVariant, Option<i32>),
}

impl Example {
    /// The name a builtin binds when no alias is given.
    pub fn default_name(&self) -> String {
        let index = |m: i32| if m < 0 { format!("n{}", -m) } else { m.to_string() };
        match self {
            Example::Shannon => "shannon".into(),
            Example::AnnulusFamily(m) => format!("ex315a_{}", index(*m)),
            Example::ShiftedBalls(m) => format!("ex315b_{}", index(*m)),
            Example::ScalingSet(v, None) => format!("ex46_{v:?}"),
            Example::ScalingSet(v, Some(m)) => format!("ex46_{v:?}_{}", index(*m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatementKind {
    Set { name: Name, balls: Vec<BallExpr> },
    Func { name: Name, terms: Vec<Term> },
    /// A lattice-periodic step function given by its cells in O.
    Step { name: Name, terms: Vec<Term> },
    Check(Check),
    Compute(Compute),
    Builtin { example: Example, alias: Option<Name> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub pos: Pos,
}

impl Statement {
    /// The name a binding statement introduces.
    pub fn binds(&self) -> Option<String> {
        match &self.kind {
            StatementKind::Set { name, .. } | StatementKind::Func { name, .. } | StatementKind::Step { name, .. } => {
                Some(name.text.clone())
            }
            StatementKind::Builtin { example, alias } => {
                Some(alias.as_ref().map_or_else(|| example.default_name(), |a| a.text.clone()))
            }
            _ => None,
        }
    }
}
