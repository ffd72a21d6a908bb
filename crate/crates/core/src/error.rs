use std::path::PathBuf;

use thiserror::Error;

use crate::spacetime::Deformation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site {site} out of range for a {n_sites}-site lattice")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("sites {0} and {1} overlap")]
    OverlappingSites(usize, usize),

    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid sites: {0}")]
    InvalidSites(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("degenerate lattice size: {0}")]
    DegenerateSize(String),

    #[error("deformation {0} is not enabled on the current surface")]
    NotEnabled(Deformation),

    #[error("foliation covers {found_sites} sites to T={found_horizon}, expected {n_sites} sites to T={horizon}")]
    FoliationMismatch {
        found_sites: usize,
        found_horizon: usize,
        n_sites: usize,
        horizon: usize,
    },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid nonlinearity: {0}")]
    InvalidNonlinearity(String),

    #[error("foliation file line {line}: {msg}")]
    FoliationParse { line: usize, msg: String },

    #[error("config key `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("config syntax: {0}")]
    ConfigSyntax(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            msg: msg.into(),
        }
    }
}
