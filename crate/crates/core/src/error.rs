use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("cyclotomic index must be at least 1")]
    CyclotomicIndex,
    #[error("malformed coefficient {token:?} at position {position}")]
    Parse { position: usize, token: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("compound order {r} out of range 1..={size}")]
    CompoundOrder { r: usize, size: usize },
    #[error("companion matrix needs a monic polynomial")]
    NotMonic,
    #[error("companion matrix needs degree at least 1")]
    DegreeTooSmall,
}

/// Each variant names the Weil-polynomial invariant that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("q = {q} is not a prime power")]
    NotPrimePower { q: u64 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {degree} is not a positive even number")]
    OddDegree { degree: usize },
    #[error("constant term {found} differs from q^d = {expected}")]
    ConstantTerm { expected: String, found: String },
    #[error("T^(2d) f(q/T) != q^d f(T)")]
    FunctionalEquationFails,
    #[error("root of modulus^2 {modulus_sq} is not within tolerance of q = {q}")]
    RootModulusFails { q: String, modulus_sq: String },
    #[error("field sizes differ: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("cohomology degree {r} out of range 0..={max}")]
    DegreeOutOfRange { r: usize, max: usize },
    #[error("base-change degree must be at least 1")]
    ZeroExtension,
    #[error("root finder did not converge")]
    RootsDidNotConverge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("codimension {k} out of range 0..={d}")]
    CodimensionOutOfRange { k: usize, d: usize },
    #[error("extension degree must be at least 1")]
    ZeroExtension,
    #[error("subset enumeration needs 2d <= 16, got 2d = {degree}")]
    TooLarge { degree: usize },
    #[error(
        "precision {bits} bits is insufficient: |alpha_I^n - q^(kn)| lands near the threshold"
    )]
    PrecisionInsufficient { bits: u32 },
    #[error(transparent)]
    Weil(#[from] WeilError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("log|d_K| must be nonnegative and zero for the rationals")]
    BadDiscriminant,
    #[error("n_K = {n_k} does not divide n_L = {n_l}")]
    DegreeNotDivisible { n_l: u64, n_k: u64 },
    #[error("relative degree n = {n} must be at least 2")]
    TrivialExtension { n: u64 },
    #[error("argument {name} must be positive")]
    NonPositive { name: &'static str },
    #[error("{name} must be at least 1")]
    BelowOne { name: &'static str },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("discriminant must be nonzero")]
    ZeroDiscriminant,
    #[error("{d} is not a fundamental discriminant")]
    NotFundamental { d: i64 },
    #[error("{d} is not one of the supported class-number-one discriminants")]
    UnsupportedDiscriminant { d: i64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("prime {p} divides 2D")]
    ExcludedPrime { p: u64 },
    #[error("{what} = {value} exceeds the budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("curve has zero discriminant")]
    SingularCurve,
    #[error("base field must be the rationals")]
    UnsupportedBase,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Tate(#[from] TateError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
