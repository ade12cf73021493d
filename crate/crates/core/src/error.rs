use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("index {index} repeated in word {word}")]
    DuplicateIndex { index: usize, word: String },
    #[error("radicand {0} is not one of 2, 3, 5, 6, 10, 15, 30")]
    BadRadicand(u64),
    #[error("coefficient {0} is not a constant")]
    NotConstant(String),
    #[error("substituted denominator vanishes")]
    DenominatorVanishes,
    #[error("sqrt(|det g|) = sqrt({0}) is not in the scalar field")]
    IrrationalVolume(String),
    #[error("det B = {0} is not the ninth power of a rational")]
    IrrationalNinthRoot(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("3-form is not positive ({0})")]
    NotPositive(String),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not central")]
    NotCentral,
    #[error("vector does not have unit length (g(X,X) = {0})")]
    NotUnit(String),
    #[error("metric is not the identity")]
    NonIdentityMetric,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("SU(3)-structure is not half-flat")]
    NotHalfFlat,
    #[error("variable {var} appears nonlinearly in equation {equation}")]
    StepNotLinear { equation: String, var: String },
    #[error("pivot {0} vanishes on the current system")]
    DenominatorVanishesOnConstraint(String),
    #[error("unknown equation tag {0}")]
    UnknownEquation(String),
    #[error("script step invalid: {0}")]
    BadStep(String),
    #[error("case {case}: identity fails, {detail}")]
    IdentityFails { case: usize, detail: String },
    #[error("coverage gap: {0}")]
    CoverageGap(String),
    #[error("zero pattern fails: {0}")]
    PatternFails(String),
    #[error("sigma coefficient is nonzero: {0}")]
    SigmaNonzero(String),
    #[error("Gram-Schmidt needs sqrt({0}), which is not in the scalar field")]
    IrrationalGramSchmidt(String),
    #[error("{file}: {message}")]
    Catalog { file: String, message: String },
    #[error("invariant violated for {entry}: {message}")]
    InvariantViolation { entry: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
