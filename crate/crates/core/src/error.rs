use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::numeric::Vec4;

/// Steps of the figure constructions, named in construction errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureStep {
    Reflection,
    OrthogonalPencil,
    PencilMember,
    CommonOrthogonal,
    IntersectionPoints,
    CrossRatio,
}

impl fmt::Display for FigureStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Reflection => "reflection in the mirror cycle",
            Self::OrthogonalPencil => "pencil orthogonal to both cycles",
            Self::PencilMember => "choice of an orthogonal cycle from the pencil",
            Self::CommonOrthogonal => "cycle orthogonal to both cycles and the real line",
            Self::IntersectionPoints => "intersection points",
            Self::CrossRatio => "cross ratio of the constructed cycles",
        };
        f.write_str(name)
    }
}

/// Errors produced by cycle computations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A tolerance with a non-positive or non-finite threshold.
    InvalidTolerance,
    /// All four homogeneous coordinates vanish.
    ZeroVector,
    /// A quadratic with all three coefficients zero.
    AllZero,
    /// A degenerate quadratic `0·t² + 0·t + c` with `c ≠ 0`.
    NoSolution,
    /// Both polynomials of a limit vanish identically.
    BothZeroPolynomials,
    /// A line was given (`l = n = 0`) with no direction.
    DegenerateLine,
    /// The operation needs `k ≠ 0`.
    IsLine,
    /// The cycle is self-orthogonal where a non-isotropic one is required.
    IsotropicCycle,
    /// A square root of a negative quantity was required.
    NegativeRadicand,
    /// The given cycle is not a zero-radius cycle.
    NotAPoint,
    /// The cycle does not pass through the given point.
    NotIncident,
    /// A point at infinity where a finite point is required.
    PointAtInfinity,
    /// Matrix with vanishing determinant.
    Singular,
    /// A matrix left the FSCc pattern `[[L̄, −m], [k, −L]]` beyond tolerance.
    StructureLost {
        /// Largest structural violation, relative to the matrix scale.
        residual: f64,
    },
    /// Reflection in an isotropic (zero-radius) cycle.
    DegenerateMirror,
    /// Two cycles that are projectively equal where distinct ones are needed.
    CoincidentCycles,
    /// Orthogonality constraints of rank below two.
    DegenerateConstraints,
    /// Orthogonality constraints of rank below three; carries the solution basis.
    DegenerateRank { basis: Vec<Vec4> },
    /// The tangent-pencil cross ratio is not identically one.
    NotIdenticallyOne,
    /// A cross ratio needed as a finite value was infinite or indeterminate.
    UndefinedTerm,
    /// Logarithm of a zero or infinite cross ratio.
    LogOfZero,
    /// A named precondition of a construction does not hold.
    Precondition(&'static str),
    /// A figure construction failed at the named step.
    ConstructionFailed { step: FigureStep, cause: Box<Error> },
}

impl Error {
    pub(crate) fn at(step: FigureStep) -> impl FnOnce(Error) -> Error {
        move |cause| Error::ConstructionFailed {
            step,
            cause: Box::new(cause),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidTolerance => {
                f.write_str("tolerance thresholds must be positive and finite")
            }
            Self::ZeroVector => f.write_str("all homogeneous coordinates are zero"),
            Self::AllZero => f.write_str("all quadratic coefficients are zero"),
            Self::NoSolution => f.write_str("degenerate quadratic has no root"),
            Self::BothZeroPolynomials => {
                f.write_str("numerator and denominator vanish identically")
            }
            Self::DegenerateLine => f.write_str("line with l = n = 0"),
            Self::IsLine => f.write_str("cycle is a straight line (k = 0)"),
            Self::IsotropicCycle => f.write_str("cycle is isotropic (zero radius)"),
            Self::NegativeRadicand => f.write_str("negative quantity under a square root"),
            Self::NotAPoint => f.write_str("cycle is not a zero-radius cycle"),
            Self::NotIncident => f.write_str("cycle does not pass through the point"),
            Self::PointAtInfinity => {
                f.write_str("point at infinity where a finite point is required")
            }
            Self::Singular => f.write_str("singular matrix"),
            Self::StructureLost { residual } => {
                write!(f, "matrix lost its FSCc structure (residual {residual:e})")
            }
            Self::DegenerateMirror => f.write_str("mirror cycle is isotropic"),
            Self::CoincidentCycles => f.write_str("cycles coincide"),
            Self::DegenerateConstraints => {
                f.write_str("orthogonality constraints have rank below 2")
            }
            Self::DegenerateRank { basis } => write!(
                f,
                "orthogonality constraints have rank below 3 ({}-dimensional solution space)",
                basis.len()
            ),
            Self::NotIdenticallyOne => {
                f.write_str("tangent pencil cross ratio is not identically 1")
            }
            Self::UndefinedTerm => {
                f.write_str("a required cross ratio is infinite or indeterminate")
            }
            Self::LogOfZero => f.write_str("logarithm of a zero or infinite cross ratio"),
            Self::Precondition(what) => write!(f, "precondition: {what}"),
            Self::ConstructionFailed { step, cause } => write!(f, "{step}: {cause}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
