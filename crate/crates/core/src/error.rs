use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid compound label: s = {s}, M = {m} (need s in {{0, 1}} and |M| <= s)")]
    InvalidLabel { s: i32, m: i32 },

    #[error("invalid spin-1 magnetic quantum number {0} (expected -1, 0 or +1)")]
    InvalidMagnetic(i32),

    #[error("non-finite {what}: {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("imaginary residue {residue:e} of a real quantity exceeds {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },
}

impl Error {
    /// True for failures that indicate the computation disagrees with itself,
    /// as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ImaginaryResidue { .. })
    }
}
