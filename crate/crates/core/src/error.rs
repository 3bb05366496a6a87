//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An enabled pipeline stage has no lexicon to work with.
    #[error("resource missing: stage '{stage}' is enabled but no {resource} was provided")]
    ResourceMissing { stage: &'static str, resource: &'static str },

    /// A lexicon or mapping file failed validation.
    #[error("bad resource {file}:{line}: {reason}")]
    BadResource { file: String, line: usize, reason: String },

    #[error("invalid n-gram size {0}: n must be at least 1")]
    InvalidN(usize),

    #[error("gram size mismatch: left set holds {left}-grams, right set holds {right}-grams")]
    GramSizeMismatch { left: usize, right: usize },

    /// Two term sequences were produced under different pipeline configs.
    #[error("config fingerprint mismatch: {left} vs {right}")]
    ConfigMismatch { left: String, right: String },

    #[error("metric mismatch: score was produced by {score} but thresholds target {thresholds}")]
    MetricMismatch { score: String, thresholds: String },

    #[error("empty score group: {0}")]
    EmptyGroup(String),

    #[error("insufficient calibration data: no sample for verdict {0}")]
    InsufficientData(String),

    /// Per-verdict means do not increase with severity; the combination
    /// cannot yield usable thresholds.
    #[error("group means are not strictly increasing with severity ({0})")]
    NonMonotoneGroups(String),

    #[error("missing file (labels row {row}): {path}")]
    MissingFile { row: usize, path: String },

    #[error("bad label (labels row {row}): '{label}' is not one of clean/heavy/light/copy")]
    BadLabel { row: usize, label: String },

    #[error("duplicate id (labels row {row}): {id}")]
    DuplicateId { row: usize, id: String },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by missing or malformed lexicon resources
    /// (as opposed to corpus/config data problems).
    pub fn is_resource_error(&self) -> bool {
        matches!(self, Error::ResourceMissing { .. } | Error::BadResource { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
