//! Command implementations behind the `invar` binary.
//!
//! Every command turns its input into a [`Report`]: a JSON object whose keys
//! come out in a fixed order, so identical inputs give byte-identical output.

pub mod commands;
pub mod selftest;

use std::path::{Path, PathBuf};

use invar::graph::GraphError;
use invar::invariants::InvariantError;
use invar::laufer::LauferError;
use invar::pgseries::PgError;
use invar::seifert::{SeifertData, SeifertError, Star};
use invar::{Graph, GraphInput};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// Failure classes, one per nonzero exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Input(String),
    /// Well-formed input outside the domain of the command.
    #[error("{0}")]
    Domain(String),
    #[error("self-test: {0} check(s) did not match")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Empty
            | GraphError::DuplicateVertexId(_)
            | GraphError::VertexIdOutOfRange { .. }
            | GraphError::UnknownVertex(..)
            | GraphError::BadArrow(_)
            | GraphError::BadCentral(_) => CliError::Input(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SeifertError> for CliError {
    fn from(e: SeifertError) -> Self {
        match e {
            SeifertError::Parse(_)
            | SeifertError::InvalidPair { .. }
            | SeifertError::InvalidB0(_)
            | SeifertError::InvalidEntry(_) => CliError::Input(e.to_string()),
            SeifertError::Graph(g) => g.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<LauferError> for CliError {
    fn from(e: LauferError) -> Self {
        match e {
            LauferError::Graph(g) => g.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<PgError> for CliError {
    fn from(e: PgError) -> Self {
        match e {
            PgError::Graph(g) => g.into(),
            PgError::Laufer(l) => l.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Graph(g) => g.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Where a command reads its singularity from.
#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    /// Seifert data in the `b0=2;legs=3/1,7/4` syntax.
    Seifert(String),
}

impl Source {
    pub fn from_args(file: Option<PathBuf>, sf: Option<String>) -> Result<Source, CliError> {
        match (file, sf) {
            (Some(f), None) => Ok(Source::File(f)),
            (None, Some(s)) => Ok(Source::Seifert(s)),
            (Some(_), Some(_)) => Err(CliError::Input("give either a graph file or --sf, not both".into())),
            (None, None) => Err(CliError::Input("missing input: a graph file or --sf".into())),
        }
    }
}

/// A parsed input with its echo and digest.
pub struct Loaded {
    pub graph: Graph,
    pub echo: String,
    pub digest: String,
    /// Set when the input was Seifert data.
    pub seifert: Option<SeifertData>,
}

impl Loaded {
    /// The star layout, required by the semigroup and series commands.
    pub fn star(&self) -> Result<Star, CliError> {
        match &self.seifert {
            Some(sf) => Ok(Star::from_seifert(sf)?),
            None => Ok(Star::from_graph(&self.graph)?),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn read_graph_file(path: &Path) -> Result<(GraphInput, Vec<u8>), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let input = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((input, bytes))
}

pub fn load(source: &Source) -> Result<Loaded, CliError> {
    match source {
        Source::File(path) => {
            let (input, bytes) = read_graph_file(path)?;
            Ok(Loaded {
                graph: Graph::build(&input)?,
                echo: path.display().to_string(),
                digest: digest(&bytes),
                seifert: None,
            })
        }
        Source::Seifert(text) => {
            let sf: SeifertData = text.parse()?;
            Ok(Loaded {
                graph: Star::from_seifert(&sf)?.graph().clone(),
                echo: format!("--sf {text}"),
                digest: digest(text.as_bytes()),
                seifert: Some(sf),
            })
        }
    }
}

/// An ordered JSON report: command, input, digest, results, warnings.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    input: String,
    digest: String,
    results: Map<String, Value>,
    warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: &str, digest: &str) -> Report {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            digest: digest.to_string(),
            results: Map::new(),
            warnings: Vec::new(),
        }
    }

    pub fn for_input(command: &str, loaded: &Loaded) -> Report {
        Report::new(command, &loaded.echo, &loaded.digest)
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), value);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.results.get(key)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn to_value(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("input".into(), Value::String(self.input.clone()));
        top.insert("digest".into(), Value::String(self.digest.clone()));
        top.insert("results".into(), Value::Object(self.results.clone()));
        top.insert("warnings".into(), serde_json::to_value(&self.warnings).unwrap());
        Value::Object(top)
    }

    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        out.push('\n');
        out
    }
}

/// A formula value next to its direct counterpart.
pub fn dual_channel(formula: impl Serialize, direct: impl Serialize) -> Value {
    let formula = serde_json::to_value(formula).unwrap();
    let direct = serde_json::to_value(direct).unwrap();
    let consistent = formula == direct;
    serde_json::json!({ "formula": formula, "direct": direct, "consistent": consistent })
}
