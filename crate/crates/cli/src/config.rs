use milnor_alg::polyring::{FieldSpec, DEFAULT_PRIME};
use serde::Serialize;

/// Settings shared by every subcommand, embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub degree_cap: Option<i64>,
    pub length_cap: Option<usize>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { field: FieldSpec::Prime(DEFAULT_PRIME), seed: 0, degree_cap: None, length_cap: None, format: Format::Text }
    }
}

impl RunConfig {
    /// One-line comment header for text output.
    pub fn header(&self, command: &str) -> String {
        let cap = |x: Option<String>| x.unwrap_or_else(|| "none".into());
        format!(
            "# milnor {command} field={} seed={} degree-cap={} length-cap={}",
            self.field,
            self.seed,
            cap(self.degree_cap.map(|x| x.to_string())),
            cap(self.length_cap.map(|x| x.to_string()))
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Result of one command: both renderings plus whether every check held.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub verified: bool,
}

impl Outcome {
    pub fn ok(text: String, json: serde_json::Value) -> Outcome {
        Outcome { text, json, verified: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json value")),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verified {
            0
        } else {
            2
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Alg(#[from] milnor_alg::Error),
    #[error("reading input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// `2` for verification failures, `1` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Alg(milnor_alg::Error::Verification(_)) => 2,
            _ => 1,
        }
    }
}
