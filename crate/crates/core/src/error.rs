use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("weight vector is not generic: {0}")]
    NotGenericWeight(String),
    #[error("matrix is not homogeneous")]
    NotHomogeneous,
    #[error("vectors do not span a hyperplane (span has codimension {0})")]
    NotCodimensionOne(usize),
    #[error("cone is not pointed")]
    ConeNotPointed,
    #[error("cone is not full dimensional")]
    ConeNotFullDimensional,
    #[error("no unimodular subcone of the dual cone contains the weight functional within search bound {0}")]
    NoAdaptedBasis(i64),
    #[error("parameter has a non-rational coordinate")]
    NonRationalInput,
    #[error("exponent coordinate equals -1 in the antiderivative variable")]
    ExponentMinusOne,
    #[error("exponent coordinate {0} is an integer")]
    ExponentInteger(usize),
    #[error("series has logarithmic terms")]
    LogTermsPresent,
    #[error("series is empty")]
    EmptySeries,
    #[error("exponent does not have minimal negative support")]
    NotMinimalNegativeSupport,
    #[error("perturbed exponent coordinate is an integer")]
    IntegerPerturbation,
    #[error("log-degree cap {0} exceeded")]
    DegreeCapExceeded(usize),
    #[error("inconsistent linear system at offset {0}")]
    Inconsistent(String),
    #[error("pole: {0}")]
    PoleHit(String),
    #[error("log polynomial is not in the symmetric algebra of the kernel lattice: {0}")]
    NotInSymmetricAlgebra(String),
    #[error("offset is not a nonnegative combination of the basis: {0}")]
    NotInCone(String),
    #[error("no canonical series with the requested start term: {0}")]
    NoMatchingSeries(String),
    #[error("series did not converge: last shell {last_shell:e} exceeds tolerance {tolerance:e} (value {re}+{im}i)")]
    ConvergenceWarning { re: f64, im: f64, last_shell: f64, tolerance: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable kind, used in the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::Dimension(_) => "Dimension",
            Error::NotGenericWeight(_) => "NotGenericWeight",
            Error::NotHomogeneous => "NotHomogeneous",
            Error::NotCodimensionOne(_) => "NotCodimensionOne",
            Error::ConeNotPointed => "ConeNotPointed",
            Error::ConeNotFullDimensional => "ConeNotFullDimensional",
            Error::NoAdaptedBasis(_) => "NoAdaptedBasis",
            Error::NonRationalInput => "NonRationalInput",
            Error::ExponentMinusOne => "ExponentMinusOne",
            Error::ExponentInteger(_) => "ExponentInteger",
            Error::LogTermsPresent => "LogTermsPresent",
            Error::EmptySeries => "EmptySeries",
            Error::NotMinimalNegativeSupport => "NotMinimalNegativeSupport",
            Error::IntegerPerturbation => "IntegerPerturbation",
            Error::DegreeCapExceeded(_) => "DegreeCapExceeded",
            Error::Inconsistent(_) => "Inconsistent",
            Error::PoleHit(_) => "PoleHit",
            Error::NotInSymmetricAlgebra(_) => "NotInSymmetricAlgebra",
            Error::NotInCone(_) => "NotInCone",
            Error::NoMatchingSeries(_) => "NoMatchingSeries",
            Error::ConvergenceWarning { .. } => "ConvergenceWarning",
            Error::Parse(_) => "Parse",
        }
    }
}
