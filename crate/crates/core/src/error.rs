use thiserror::Error;

pub type Result<T> = std::result::Result<T, LatticeError>;

/// Every failure the library can report. Variant names double as the
/// machine-readable error codes emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice of rank 0 requested")]
    EmptyLattice,
    #[error("twist factor must be nonzero")]
    ZeroTwist,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("expected {expected} coordinates, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("operation undefined on the zero vector")]
    ZeroVector,
    #[error("vector is not primitive (coordinate gcd {gcd})")]
    NonPrimitive { gcd: i64 },
    #[error("lattice {found} does not have the required shape: {expected}")]
    LatticeShapeMismatch { expected: String, found: String },
    #[error("vectors or isometries live on different lattices ({left} vs {right})")]
    LatticeMismatch { left: String, right: String },
    #[error("lattice {0} is not unimodular")]
    NotUnimodular(String),
    #[error("vector is not characteristic")]
    NotCharacteristic,
    #[error("doubled coordinates do not describe an element of the half lattice: {0}")]
    NotInHalfLattice(String),
    #[error("matrix does not preserve the gram form")]
    NotIsometry,
    #[error("reflection in a vector of norm {norm} is not integral")]
    NotIntegralReflection { norm: i64 },
    #[error("cannot reflect in an isotropic vector")]
    IsotropicReflectionVector,
    #[error("transvection vector e is not isotropic")]
    NotIsotropic,
    #[error("transvection vectors are not orthogonal")]
    NotOrthogonal,
    #[error("transvections require an even lattice")]
    OddLattice,
    #[error("no generator recipe for lattice {0}")]
    NoGeneratorRecipe(String),
    #[error("norm {0} is odd; even lattices have only even norms")]
    OddNormInEvenLattice(i64),
    #[error("label {label} is inconsistent with norm {norm}")]
    LabelParityMismatch { norm: i64, label: String },
    #[error("even type is only defined for even n, got n = {0}")]
    EvenTypeUndefinedForOddN(i64),
    #[error("unknown lattice name {0:?}")]
    UnknownLattice(String),
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("integer overflow")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl LatticeError {
    /// Stable code used in structured error output.
    pub fn code(&self) -> &'static str {
        use LatticeError::*;
        match self {
            EmptyLattice => "EmptyLattice",
            ZeroTwist => "ZeroTwist",
            NotSymmetric => "NotSymmetric",
            RankMismatch { .. } => "RankMismatch",
            ZeroVector => "ZeroVector",
            NonPrimitive { .. } => "NonPrimitive",
            LatticeShapeMismatch { .. } => "LatticeShapeMismatch",
            LatticeMismatch { .. } => "LatticeMismatch",
            NotUnimodular(_) => "NotUnimodular",
            NotCharacteristic => "NotCharacteristic",
            NotInHalfLattice(_) => "NotInHalfLattice",
            NotIsometry => "NotIsometry",
            NotIntegralReflection { .. } => "NotIntegralReflection",
            IsotropicReflectionVector => "IsotropicReflectionVector",
            NotIsotropic => "NotIsotropic",
            NotOrthogonal => "NotOrthogonal",
            OddLattice => "OddLattice",
            NoGeneratorRecipe(_) => "NoGeneratorRecipe",
            OddNormInEvenLattice(_) => "OddNormInEvenLattice",
            LabelParityMismatch { .. } => "LabelParityMismatch",
            EvenTypeUndefinedForOddN(_) => "EvenTypeUndefinedForOddN",
            UnknownLattice(_) => "UnknownLattice",
            NotDefinite => "NotDefinite",
            Overflow => "Overflow",
            InvariantViolation(_) => "InvariantViolation",
        }
    }
}
