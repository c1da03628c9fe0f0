use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown label {label} (valid labels are 1..={n})")]
    Label { label: usize, n: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("all weighted x values are equal; the y-on-x fit is undefined")]
    DegenerateX,

    #[error("non-finite coordinate at label {0}")]
    NonFinite(usize),

    #[error("multiplicity for label {label} is {value}; every multiplicity must be >= 1")]
    Multiplicity { label: usize, value: u64 },

    #[error("interval endpoints coincide; the affine normalisation is undefined")]
    DegenerateInterval,

    #[error("triangle vertices are collinear")]
    DegenerateTriangle,

    #[error("pseudopivot state has repeated values")]
    DegenerateState,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
