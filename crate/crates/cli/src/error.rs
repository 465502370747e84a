use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Clap(#[from] clap::Error),

    #[error("config file: {0}")]
    Config(#[from] crate::config::ConfigError),

    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) => e.exit_code(),
            _ => 2,
        }
    }
}

/// Failure of a validated run: domain errors exit with 2 and a
/// machine-readable reason, everything else with 1.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("{reason}: {detail}")]
    Domain { reason: &'static str, detail: String },

    #[error("internal failure: {0}")]
    Internal(String),

    #[error("output: {0}")]
    Output(#[from] crate::table::TableError),
}

impl RunError {
    pub fn domain(reason: &'static str, detail: impl Into<String>) -> Self {
        RunError::Domain { reason, detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Domain { .. } => 2,
            _ => 1,
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        let (kind, reason) = match self {
            RunError::Domain { reason, .. } => ("domain", *reason),
            RunError::Internal(_) => ("internal", "internal"),
            RunError::Output(_) => ("internal", "output"),
        };
        let detail = match self {
            RunError::Domain { detail, .. } => detail.clone(),
            other => other.to_string(),
        };
        serde_json::json!({ "error": kind, "reason": reason, "detail": detail }).to_string()
    }
}

impl From<fluxbound::Error> for RunError {
    fn from(e: fluxbound::Error) -> Self {
        use fluxbound::Error as E;
        match e {
            E::Regime(_) => RunError::domain("regime", e.to_string()),
            E::Domain(_) => RunError::domain("domain", e.to_string()),
            E::Pole(_) => RunError::domain("pole", e.to_string()),
            E::NonNormalizable(_) => RunError::domain("not-normalizable", e.to_string()),
            E::NoSignChange { .. } | E::MaxIterations(_) | E::NonConvergence { .. } | E::Stiffness(_) => RunError::Internal(e.to_string()),
        }
    }
}
