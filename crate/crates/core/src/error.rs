use alloc::string::String;

/// Failure modes of the exact-arithmetic routines.
///
/// Each variant maps to a stable short kind string (see [`Error::kind`]) that
/// reports and the CLI surface verbatim.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape: {0}")]
    Shape(String),
    #[error("singular: matrix has no inverse")]
    Singular,
    #[error("norm: {0}")]
    Norm(String),
    #[error("form-kind: {0}")]
    FormKind(String),
    #[error("determinant: {0}")]
    Determinant(String),
    #[error("level: {0}")]
    Level(String),
    #[error("parabolic-or-hyperbolic: {0}")]
    ParabolicOrHyperbolic(String),
    #[error("affine: lower-left entry is zero")]
    Affine,
    #[error("semiorthonormal: {0}")]
    Semiorthonormal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Singular => "singular",
            Error::Norm(_) => "norm",
            Error::FormKind(_) => "form-kind",
            Error::Determinant(_) => "determinant",
            Error::Level(_) => "level",
            Error::ParabolicOrHyperbolic(_) => "parabolic-or-hyperbolic",
            Error::Affine => "affine",
            Error::Semiorthonormal(_) => "semiorthonormal",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
