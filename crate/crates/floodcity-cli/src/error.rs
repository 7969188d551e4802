//! CLI error split matching the exit-code contract.

/// Config errors exit 1, runtime errors exit 2.
#[derive(Debug)]
pub enum CliError {
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

pub type CliResult<T> = Result<T, CliError>;

/// Tags an error as a configuration problem (exit 1).
pub trait ConfigContext<T> {
    fn config_err(self) -> CliResult<T>;
}

/// Tags an error as a runtime problem (exit 2).
pub trait RuntimeContext<T> {
    fn runtime_err(self) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> ConfigContext<T> for Result<T, E> {
    fn config_err(self) -> CliResult<T> {
        self.map_err(|e| CliError::Config(e.into()))
    }
}

impl<T, E: Into<anyhow::Error>> RuntimeContext<T> for Result<T, E> {
    fn runtime_err(self) -> CliResult<T> {
        self.map_err(|e| CliError::Runtime(e.into()))
    }
}

pub fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(anyhow::anyhow!(msg.into()))
}
