use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("enumeration overflow: more than {cap} elements (stopped at {partial})")]
    Overflow { cap: usize, partial: usize },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("value {re}{im:+}i is not a nonnegative integer ({context})")]
    Integrality { re: f64, im: f64, context: String },

    #[error("Dixon splitting failed: {0}")]
    Dixon(String),

    #[error("zonal function not constant on double coset {coset} (values {a} vs {b})")]
    Constancy { coset: usize, a: String, b: String },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Coarse category, stable across versions; used on the wire.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DegreeMismatch { .. } | Error::Invalid(_) | Error::Json(_) | Error::Io(_) => {
                "invalid"
            }
            Error::Overflow { .. } => "overflow",
            Error::Verification(_) => "verification",
            Error::Integrality { .. }
            | Error::Dixon(_)
            | Error::Constancy { .. }
            | Error::Consistency(_) => "internal",
        }
    }
}

/// Process exit code for an error of the given kind.
pub fn exit_code(kind: &str) -> i32 {
    match kind {
        "parse" | "invalid" => 2,
        "overflow" => 3,
        "verification" => 4,
        _ => 1,
    }
}
