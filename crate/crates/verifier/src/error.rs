use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifierError {
    /// Malformed input or an unknown name: exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    /// A computation refused its input: exit code 1.
    #[error(transparent)]
    Core(#[from] cremona_core::Error),
}

impl VerifierError {
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifierError::Core(cremona_core::Error::Parse { .. } | cremona_core::Error::UnknownLabel(_)) => 2,
            VerifierError::Core(_) => 1,
            _ => 2,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        VerifierError::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, VerifierError>;

/// Stable snake_case name of a core error, used in JSON output.
pub fn error_kind(e: &cremona_core::Error) -> &'static str {
    use cremona_core::Error::*;
    match e {
        Parse { .. } => "parse",
        DivisionByZero => "division_by_zero",
        ConductorCap { .. } => "conductor_cap",
        NotMultiple { .. } => "not_multiple",
        NotHomogeneous => "not_homogeneous",
        DegreeMismatch => "degree_mismatch",
        ZeroMap => "zero_map",
        ZeroPoint => "zero_point",
        CapExceeded { .. } => "cap_exceeded",
        RankMismatch { .. } => "rank_mismatch",
        OddAdjunction => "odd_adjunction",
        UnsupportedRank(_) => "unsupported_rank",
        InvalidModel(_) => "invalid_model",
        UnknownLabel(_) => "unknown_label",
        NonSpanning => "non_spanning",
        NotLinear => "not_linear",
        NonIntegral => "non_integral",
        FormViolation => "form_violation",
        CanonicalViolation => "canonical_violation",
        NotCurvePermutation => "not_curve_permutation",
        InfiniteOrder => "infinite_order",
        InvalidBundle(_) => "invalid_bundle",
        Precondition(_) => "precondition",
    }
}
