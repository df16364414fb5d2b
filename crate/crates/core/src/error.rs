//! Error type shared across the library.
//!
//! Numerical decision points never guess: a rank or clustering call that lands
//! inside the configured gray zone surfaces as [`Error::ToleranceAmbiguity`] or
//! [`Error::DegenerateSpectrum`] instead of silently picking a side.

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A rank/membership decision fell strictly between the accept and reject
    /// thresholds.
    #[error("ambiguous rank decision in {context}: value {value:.3e} lies between {low:.3e} and {high:.3e}")]
    ToleranceAmbiguity {
        context: String,
        value: f64,
        low: f64,
        high: f64,
    },

    /// Eigenvalue clustering could not separate two candidate clusters.
    #[error("ambiguous eigenvalue clustering in {context}: gap {gap:.3e} lies between {low:.3e} and {high:.3e}")]
    DegenerateSpectrum {
        context: String,
        gap: f64,
        low: f64,
        high: f64,
    },

    /// Matrix shapes incompatible with the requested operation.
    #[error("shape mismatch in {context}: {detail}")]
    ShapeMismatch { context: String, detail: String },

    /// A matrix expected to be hermitian was not.
    #[error("matrix is not hermitian: relative deviation {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    /// A span failed multiplicative or adjoint closure.
    #[error("span is not a *-algebra: {detail}")]
    NotAnAlgebra { detail: String },

    /// The proposed unit is not a self-adjoint idempotent acting as identity.
    #[error("bad unit for algebra: {detail}")]
    BadUnit { detail: String },

    /// A central corner has dimension that is not a perfect square.
    #[error("central corner dimension {dim} is not a perfect square")]
    NonIntegralBlock { dim: usize },

    /// A matrix expected to be a hermitian idempotent was not.
    #[error("not a projection: {detail}")]
    NotAProjection { detail: String },

    /// An element fell outside the algebra span it must belong to.
    #[error("element outside algebra span: {detail}")]
    NotInsideAlgebra { detail: String },

    /// An action implementer failed the unitarity check.
    #[error("matrix is not unitary: {detail}")]
    NotUnitary { detail: String },

    /// Conjugation by an implementer left the algebra span.
    #[error("action does not preserve the algebra: {detail}")]
    NotPreserving { detail: String },

    /// Implementers fail the group law at the automorphism level.
    #[error("implementers violate the group law on the algebra: {detail}")]
    GroupLawViolation { detail: String },

    /// A corner projection is not invariant (or not a projection in the fixed
    /// algebra).
    #[error("not an invariant projection: {detail}")]
    NotInvariantProjection { detail: String },

    /// Full corner enumeration would exceed the configured budget.
    #[error("corner enumeration budget exceeded: {tuples} rank tuples > {budget}")]
    EnumerationBudgetExceeded { tuples: usize, budget: usize },

    /// Two independent computations of the same quantity disagree; this marks a
    /// tolerance failure, not a mathematical finding.
    #[error("independent routes disagree in {context}: {detail}")]
    InternalInconsistency { context: String, detail: String },

    /// Unknown preset group name.
    #[error("unknown preset group {name:?}")]
    UnknownPreset { name: String },

    /// Structurally invalid input (document fields, group tables, ...).
    #[error("invalid {what}: {detail}")]
    InvalidInput { what: String, detail: String },

    /// An error annotated with the document path it originated from.
    #[error("at {path}: {source}")]
    Located {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap the error with a document location such as `action.unitaries.3`.
    pub fn at(self, path: impl Into<String>) -> Error {
        match self {
            // Keep the outermost path only; nested relocations refine it.
            Error::Located { path: inner, source } => Error::Located {
                path: format!("{}.{}", path.into(), inner),
                source,
            },
            other => Error::Located {
                path: path.into(),
                source: Box::new(other),
            },
        }
    }

    /// True for errors that signal numerical ambiguity rather than a
    /// mathematical contradiction or invalid input. Verification maps these to
    /// an `ambiguous` verdict and retries with fresh random draws.
    pub fn is_ambiguity(&self) -> bool {
        match self {
            Error::ToleranceAmbiguity { .. }
            | Error::DegenerateSpectrum { .. }
            | Error::InternalInconsistency { .. } => true,
            Error::Located { source, .. } => source.is_ambiguity(),
            _ => false,
        }
    }
}
