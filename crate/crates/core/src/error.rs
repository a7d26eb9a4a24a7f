use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element does not have the shape its group requires.
    #[error("shape mismatch: {elem} is not an element of {spec}")]
    Shape { spec: String, elem: String },

    #[error("elements belong to different algebras: {left} vs {right}")]
    CrossAlgebra { left: String, right: String },

    #[error("{elem} is outside the interval [0, {unit}]")]
    OutsideInterval { elem: String, unit: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid unit: {0}")]
    InvalidUnit(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid table: {0}")]
    Table(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),
}

impl Error {
    pub(crate) fn shape(spec: impl ToString, elem: impl ToString) -> Self {
        Error::Shape {
            spec: spec.to_string(),
            elem: elem.to_string(),
        }
    }
}
