use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("base ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("unsupported modulus {0} (only 2 and 3 are allowed)")]
    UnsupportedModulus(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes modulo {0}")]
    NotReducible(u8),
    #[error("binomial [{n} choose {k}] requires 0 <= k <= n")]
    BinomialRange { n: i64, k: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Cartan datum: {}", .0.join("; "))]
    InvalidDatum(Vec<String>),
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("unknown datum {0}")]
    UnknownDatum(String),
    #[error("unknown vertex label {0}")]
    UnknownLabel(String),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("datum is not of finite type")]
    NotFiniteType,
    #[error("elements belong to different Cartan data")]
    DatumMismatch,
    #[error("Serre element needs two distinct vertices, got {0} twice")]
    SameVertex(String),
    #[error("braid image not in U_q^-: {0}")]
    NotInNegativePart(String),
    #[error("coefficient is not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("bar matrix is not unitriangular at {0}")]
    NotUnitriangular(String),
    #[error("{0} is not bar-skew")]
    NotSkew(String),
    #[error("canonical-basis coefficient {0} is not in qZ[q]")]
    NotInQZq(String),
    #[error("no sign-respecting bijection between slices: {0}")]
    NoBijection(String),
    #[error("element is not sigma-fixed")]
    NotSigmaFixed,
    #[error("weight {0} is not sigma-stable")]
    WeightNotStable(String),
    #[error("vanishing diagonal form value at {0}")]
    VanishingDiagonal(String),
    #[error("PBW reconstruction failed for weight {0}")]
    Reconstruction(String),
    #[error("alignment failure: {0}")]
    Alignment(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
