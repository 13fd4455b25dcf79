use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("cannot parse config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] ris_esc::Error),
    #[error("N={n}, beta_B^2={beta_b_db} dB, beta_E^2={beta_e_db} dB: {source}")]
    AtPoint {
        n: u32,
        beta_b_db: f64,
        beta_e_db: f64,
        #[source]
        source: ris_esc::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
