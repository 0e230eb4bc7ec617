use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty composition")]
    EmptyComposition,
    #[error("malformed composition `{0}`")]
    MalformedComposition(String),
    #[error("composition part {index} is zero; zero parts are only allowed in weak compositions")]
    ZeroPart { index: usize },
    #[error("odd-length composition ({0} parts); an even number of parts is required")]
    OddLength(usize),
    #[error("even-length composition ({0} parts); an odd number of parts is required")]
    EvenLength(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("zero polynomial has no symmetry center")]
    ZeroPolynomial,
    #[error("negative coefficient {value} at q^{exponent}")]
    NegativeCoefficient { value: String, exponent: usize },
    #[error("poset has {size} elements, enumeration cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("element id {id} out of range for a poset on {size} elements")]
    InvalidElement { id: usize, size: usize },
    #[error("cover relation contains a cycle through element {0}")]
    Cyclic(usize),
    #[error("polytope is unbounded along coordinate {0}")]
    Unbounded(usize),
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("row has {found} coefficients, polytope dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow while scaling constraint rows")]
    Overflow,
    #[error("lattice count disagreement at t={t}, k={k}: transfer gives {transfer}, enumeration gives {enumeration}")]
    PathDisagreement {
        t: i64,
        k: u64,
        transfer: u64,
        enumeration: u64,
    },
    #[error(
        "quasi-polynomial validation failed at k={k}: predicted {predicted}, counted {counted}"
    )]
    Validation {
        k: u64,
        predicted: String,
        counted: u64,
    },
    #[error("constituents disagree on the leading coefficient")]
    LeadingMismatch,
    #[error("section is empty")]
    EmptySection,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
