use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("length vector is not generic: some subset has exactly half the perimeter")]
    NotGeneric,
    #[error("length vector gives an empty space: longest side is not shorter than the others combined")]
    EmptySpace,
    #[error("not an admissible genetic code: {0}")]
    NotAdmissible(String),
    #[error("no length vector realizes the code {0}")]
    Unrealizable(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("n = {n} outside supported range {lo}..={hi}")]
    OutOfRange { n: u32, lo: u32, hi: u32 },
    #[error("degree {degree} outside 0..={m}")]
    Degree { degree: u32, m: u32 },
    #[error("invalid cohomology context: {0}")]
    InvalidContext(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
