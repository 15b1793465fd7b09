use gcclone_core::SearchOptions;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] gcclone_core::Error),
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// Settings shared by the commands that sample or search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub psd_tol: f64,
    pub radius_tol: f64,
    /// Eigensolves per feasibility search.
    pub budget: usize,
    /// Random draws per invariant, and θ samples per isotropy scan.
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            psd_tol: 1e-9,
            radius_tol: 1e-3,
            budget: 5000,
            samples: 200,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.psd_tol > 0.0 && self.psd_tol.is_finite()) {
            return Err(CliError::Usage(format!("--psd-tol must be positive, got {}", self.psd_tol)));
        }
        if !(self.radius_tol > 0.0 && self.radius_tol.is_finite()) {
            return Err(CliError::Usage(format!("--radius-tol must be positive, got {}", self.radius_tol)));
        }
        if self.budget == 0 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        if self.samples < 2 {
            return Err(CliError::Usage(format!("--samples must be at least 2, got {}", self.samples)));
        }
        Ok(())
    }

    pub fn search_options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            psd_tol: self.psd_tol,
            ..SearchOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_non_positive_tolerances() {
        for cfg in [
            RunConfig { psd_tol: 0.0, ..Default::default() },
            RunConfig { radius_tol: -1e-3, ..Default::default() },
            RunConfig { psd_tol: f64::NAN, ..Default::default() },
            RunConfig { samples: 1, ..Default::default() },
            RunConfig { budget: 0, ..Default::default() },
        ] {
            assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
        }
    }
}
