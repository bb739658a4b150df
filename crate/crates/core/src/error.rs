use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),

    #[error("matrix [[{a}, {b}], [{c}, {d}]] has determinant {det}, not 1")]
    NotUnimodular {
        a: String,
        b: String,
        c: String,
        d: String,
        det: String,
    },

    #[error("lattice matrix is singular")]
    SingularLattice,

    #[error("phase function is not well defined on cosets: {0}")]
    IllPosedSum(String),

    #[error("monodromy {0} is parabolic (trace ±2)")]
    ParabolicMonodromy(String),

    #[error("monodromy {0} has c = 0, which the trace formula does not cover")]
    CUnsupported(String),

    #[error("fixed-point set of w·U is not discrete for U = {monodromy}, w = {weyl}")]
    DegenerateFixedSet { monodromy: String, weyl: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
