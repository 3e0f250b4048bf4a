//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Domain errors raised by exact computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A rational number or rational function cannot be reduced modulo `p`.
    #[error("bad reduction modulo {p}: {detail}")]
    BadReduction { p: u64, detail: String },

    /// Evaluation of a rational function at one of its poles.
    #[error("evaluation at a pole")]
    PoleEvaluation,

    /// Squarefree decomposition in characteristic p hit a multiplicity
    /// divisible by p.
    #[error("inseparable input: a repeated-factor multiplicity is divisible by the characteristic")]
    InseparableInput,

    /// Euclidean division by the zero operator.
    #[error("division by the zero operator")]
    DivisionByZeroOperator,

    /// The base field does not contain enough sample points for the
    /// local-series + CRT reconstruction.
    #[error("not enough sample points: needed {needed}, only {found} available")]
    NotEnoughSamplePoints { needed: usize, found: usize },

    /// A requested expansion point is a pole of the companion matrix.
    #[error("sample point is a pole of the system")]
    PoleAtSamplePoint,

    /// Fundamental-matrix construction requires zero p-curvature.
    #[error("the p-curvature does not vanish")]
    NonzeroPCurvature,

    /// The base point of a fundamental matrix is a pole of the system.
    #[error("base point is a pole of the system")]
    PoleAtBasePoint,

    /// A series-level operation needs regularity at the origin.
    #[error("pole at the origin")]
    PoleAtOrigin,

    /// Power-series solving requires 0 to be an ordinary point.
    #[error("0 is not an ordinary point of the operator")]
    NotOrdinaryPoint,

    /// A P-recurrence cannot be unrolled past index `k` because its leading
    /// coefficient vanishes there.
    #[error("singular index {0} while unrolling recurrence")]
    SingularIndex(usize),

    /// Hypergeometric parameter lists are not disjoint modulo the integers.
    #[error("reducible hypergeometric parameters: upper[{upper}] - lower[{lower}] is an integer")]
    Reducible { upper: usize, lower: usize },

    /// Empty hypergeometric parameter list.
    #[error("empty hypergeometric parameter list")]
    EmptyParams,

    /// A lower hypergeometric parameter is a nonpositive integer.
    #[error("lower hypergeometric parameter is a nonpositive integer")]
    LowerParameterNonpositiveInteger,

    /// The examined prefix is too short to decide.
    #[error("truncation too small to decide")]
    TruncationTooSmall,

    /// Local-solution analysis requires a regular singular (or ordinary) point.
    #[error("0 is an irregular singular point")]
    IrregularSingularPoint,

    /// Local-solution analysis supports orders up to 4 only.
    #[error("operator order {0} unsupported by the local-solution analysis")]
    UnsupportedOrder(usize),

    /// Hensel lifting requires a simple root of P(0, y).
    #[error("y0 is not a simple root of P(0, y)")]
    NotASimpleRoot,

    /// Multivariate expansion requires a nonzero constant term in the denominator.
    #[error("no power series expansion at the origin")]
    NoExpansionAtOrigin,
}

pub type Result<T> = std::result::Result<T, Error>;
