use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate point: {0}")]
    Degenerate(String),
    #[error("no intertwiner: null space is empty (smallest singular value ratio {ratio:e})")]
    NoIntertwiner { ratio: f64 },
    #[error("degenerate point: null space dimension {dimension}")]
    DegenerateNullSpace { dimension: usize, singular_values: Vec<f64> },
    #[error("mixed-degree operand in {0}; split into homogeneous parts first")]
    MixedDegree(&'static str),
    #[error("shape mismatch in {op}: {detail}")]
    Shape { op: &'static str, detail: String },
    #[error("singular value decomposition did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("unresolved symbol {0}")]
    UnresolvedSymbol(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("root continuity lost: {0}")]
    Continuity(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by a special parameter point rather than a
    /// broken check.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_) | Error::DegenerateNullSpace { .. } | Error::NoIntertwiner { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
