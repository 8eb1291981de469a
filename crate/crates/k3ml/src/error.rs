use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kronecker symbol undefined for n = 0")]
    KroneckerZeroModulus,

    #[error("division by zero polynomial")]
    PolyDivisionByZero,

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("matrix dimensions {rows}x{cols} do not match entry count {len}")]
    MatrixShape { rows: usize, cols: usize, len: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("curve is degenerate: discriminant is the zero polynomial")]
    DegenerateCurve,

    #[error("weight {weight} too small: deg a{index} = {degree} exceeds {index}*weight")]
    WeightTooSmall { weight: u32, index: u32, degree: usize },

    #[error("point is not on the curve")]
    PointNotOnCurve,

    #[error("Shioda rank formula gives negative rank: rho = {rho}, sum(m-1) = {correction}")]
    NegativeRank { rho: i64, correction: i64 },

    #[error("divergent lattice sum: numerator degree {num_degree} with exponent s = {s}")]
    DivergentLatticeSum { num_degree: u32, s: f64 },

    #[error("tau must lie in the upper half-plane (Im tau = {im})")]
    TauNotInUpperHalfPlane { im: f64 },

    #[error("Eisenstein sum has non-real residue {residue:e}; implementation bug")]
    NonRealEisensteinSum { residue: f64 },

    #[error("k = {k} outside the invertible family range (need k > 6)")]
    KOutOfRange { k: f64 },

    #[error("p = {p} not admissible: need an odd prime different from 3")]
    BadPrime { p: u32 },

    #[error("no representation p = a^2 + 2b^2 found for p = {p}; implementation bug")]
    NoRepresentation { p: u32 },

    #[error("internal disagreement: {context} differ by {diff:e} (allowed {allowed:e})")]
    InternalDisagreement {
        context: String,
        diff: f64,
        allowed: f64,
    },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
