use serde_json::{json, Value};
use thiserror::Error;

use dgca_core::cohomology::CohomologyError;
use dgca_core::dgca::DgcaError;
use dgca_core::enumerate::EnumerateError;
use dgca_core::iso::IsoError;
use dgca_core::orbits::OrbitError;

/// Domain errors. Each one is reported on stderr as a JSON object with an
/// `error` kind and a human-readable `message`.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error(transparent)]
    Matrix(#[from] DgcaError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("fixture not found: {0}")]
    FixtureMissing(String),
    #[error("bad cocycle vector: {0}")]
    BadTheta(String),
}

fn variant_name<T: std::fmt::Debug>(e: &T) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

impl CliError {
    pub fn kind(&self) -> String {
        match self {
            CliError::Io { .. } => "Io".into(),
            CliError::Json { .. } => "MalformedJson".into(),
            CliError::Matrix(e) => variant_name(e),
            CliError::Cohomology(e) => variant_name(e),
            CliError::Iso(e) => variant_name(e),
            CliError::Orbit(e) => variant_name(e),
            CliError::Enumerate(e) => variant_name(e),
            CliError::FixtureMissing(_) => "FixtureMissing".into(),
            CliError::BadTheta(_) => "BadTheta".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::Matrix(e) = self {
            if let Ok(Value::Object(fields)) = serde_json::to_value(e) {
                for (k, x) in fields {
                    if k != "error" {
                        v[k] = x;
                    }
                }
            }
        }
        v
    }
}
