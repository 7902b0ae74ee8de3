//! Boundary Carathéodory–Fejér interpolation in the Pick class.
//!
//! Given a real node `x` and prescribed Laurent coefficients
//! `a^{-1}, a^0, ..., a^n`, this crate decides whether a Pick-class
//! function with those coefficients at `x` exists, constructs the unique
//! rational solution when the problem is determinate, and parametrizes
//! the full solution set (continued fraction and linear-fractional forms)
//! when it is indeterminate.  All decisions are made in exact rational
//! arithmetic; an independent floating-point oracle suite cross-checks
//! them.

pub mod arith;
pub mod cli;
pub mod hankel;
pub mod interior;
pub mod mat;
pub mod rational;
pub mod series;
pub mod solver;
pub mod verify;

pub use arith::{CRat, Rat};
pub use hankel::{Classification, ClassTag, HankelMatrix};
pub use rational::{ContinuedFraction, LftMatrix, Poly, RationalFunction};
pub use series::ProblemData;
pub use solver::{ParameterTable, Parametrization, Solution, Tail, Verdict, VerdictStatus};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Reduction requires a nonzero first derivative.
    #[error("degenerate derivative: f_1 = 0, reduction undefined")]
    DegenerateDerivative,
    /// Augmentation requires a positive derivative target.
    #[error("invalid augmentation: a^1 must be > 0")]
    InvalidAugmentation,
    /// Hankel classification only applies to real data.
    #[error("non-real entry at index {0}")]
    NonRealEntry(usize),
    #[error("singular pivot: (1,1) entry is zero")]
    SingularPivot,
    #[error("pole at the expansion node")]
    PoleAtNode,
    #[error("degenerate linear fractional transformation")]
    DegenerateLft,
    #[error("invalid continued-fraction tail: {0}")]
    InvalidTail(String),
    /// `unique_solution` called on a problem that is not determinate.
    #[error("problem is not determinate")]
    NotDeterminate,
    /// `parametrize` called on a problem that is not indeterminate.
    #[error("problem is not indeterminate")]
    NotIndeterminate,
    /// An exact structural guarantee failed; indicates an upstream bug.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    /// No closed parametrization is available for complex data.
    #[error("parametrization unsupported for complex target data")]
    ParametrizationUnsupported,
    #[error("not an interior problem: im a^0 must be > 0")]
    NotInterior,
    #[error("not Schur data: |b^0| must be < 1")]
    NotSchurData,
    #[error("boundary-degree selection exceeded budget N <= {0}")]
    SelectionBudgetExceeded(u32),
    /// n = 0 problems are trivially solvable by a constant.
    #[error("trivial problem: n = 0 is solvable by the constant a^0")]
    TrivialProblem,
    #[error("problem is unsolvable: {0:?}")]
    Unsolvable(solver::Verdict),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
