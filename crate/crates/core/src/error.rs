use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("binomial C({m}, {k}) requires k <= m")]
    BinomialRange { m: u64, k: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{numerator}/{denominator} is not {p}-local")]
    NotPLocal {
        numerator: String,
        denominator: String,
        p: u64,
    },
    #[error("{0}")]
    Config(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series caps differ ({0} vs {1})")]
    CapMismatch(usize, usize),
    #[error("divisor has constant term {0}, expected +1 or -1")]
    NonUnitConstant(i64),
    #[error("generator of degree {degree} declared with the wrong parity")]
    ParityMismatch { degree: u32 },
    #[error("generator degrees must be positive")]
    ZeroDegree,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("degree {degree} exceeds the cap {cap}")]
    Cap { degree: u32, cap: u32 },
    #[error("{0} is not a prime below 256")]
    UnsupportedPrime(u32),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("unknown generator id {0}")]
    UnknownGenerator(u8),
    #[error("subspaces live in different tensor algebras")]
    AlphabetMismatch,
    #[error("vector in degree {degree} is not in the subspace")]
    NotInSubspace { degree: u32 },
    #[error("marked vectors in degree {degree} are linearly dependent")]
    DependentMarked { degree: u32 },
    #[error("image of generator {generator} has degree {found}, expected {expected}")]
    ImageDegree {
        generator: u8,
        expected: u32,
        found: u32,
    },
    #[error("generators must have positive degree")]
    ZeroDegreeGenerator,
    #[error("malformed cache data: {0}")]
    Format(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("element of degree {degree} is not in L(0)")]
    Membership { degree: u32 },
    #[error("weight of the zero element is undefined")]
    ZeroWeight,
    #[error("coefficient C({m}, {i})/2p is not p-integral")]
    NotPIntegral { m: u64, i: u64 },
    #[error("stage {k}: {element} lies in the decomposables of degree {degree}")]
    Degeneracy {
        k: u32,
        degree: u32,
        element: &'static str,
    },
    #[error("subspace is not bracket-closed in degree {degree}")]
    NotBracketClosed { degree: u32 },
    #[error("stage {k}: {element} is not in L({k})")]
    MissingFromStage { k: u32, element: &'static str },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("subspace is not bracket-closed in degree {degree}")]
    NotBracketClosed { degree: u32 },
    #[error("differential leaves the subspace in degree {degree}")]
    Unstable { degree: u32 },
    #[error("lie computation failed: {0}")]
    Lie(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {0:?} is not in A")]
    ActionDomain(String),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("g({letter}) differs from {letter}.*")]
    SideCondition { letter: String },
    #[error("letter {0:?} after the first position is not in A")]
    NotRelative(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(String),
    #[error("cache entry {path}: {reason}")]
    Corrupt { path: String, reason: String },
}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("i/o: {0}")]
    Io(String),
}
