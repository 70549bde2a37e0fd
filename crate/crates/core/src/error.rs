//! Crate-wide error type.

/// Details of a failed `d∘d = 0` check in a periodic complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryViolation {
    /// Degree `p` such that `d_{p+1} ∘ d_p ≠ 0`.
    pub degree: usize,
    /// Row of the first offending entry of the symbolic product.
    pub row: usize,
    /// Column of the first offending entry.
    pub col: usize,
    /// Rendering of the nonzero product entry.
    pub entry: String,
}

impl std::fmt::Display for CoboundaryViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d_{}∘d_{} has nonzero entry {} at ({}, {})",
            self.degree + 1,
            self.degree,
            self.entry,
            self.row,
            self.col
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violates a precondition.
    #[error("argument error: {0}")]
    Argument(String),

    /// The requested computation exceeds the configured budget.
    /// `largest_feasible` reports the largest window size that fits, when known.
    #[error("resource limit: {detail}")]
    Resource {
        detail: String,
        largest_feasible: Option<usize>,
    },

    /// A margin-stabilization search ran out of budget without settling.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A periodic complex failed its `d∘d = 0` validation.
    #[error("invalid complex: {0}")]
    InvalidComplex(CoboundaryViolation),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn resource(detail: impl Into<String>, largest_feasible: Option<usize>) -> Self {
        Error::Resource {
            detail: detail.into(),
            largest_feasible,
        }
    }
}
