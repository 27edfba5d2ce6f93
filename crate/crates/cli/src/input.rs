use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use sring_core::harness::Instance;
use sring_core::RingExpression;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    ring: RingExpression,
    #[serde(default)]
    mult_set: Option<MultSetSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultSetSpec {
    #[serde(default)]
    generators: Vec<Value>,
}

#[derive(Debug)]
pub enum InputError {
    Io(String),
    /// Syntax or shape error, with location.
    Parse(String),
    Core(sring_core::Error),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(m) | InputError::Parse(m) => f.write_str(m),
            InputError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InputError {}

/// A validated input file.
#[derive(Debug)]
pub struct LoadedInput {
    pub instance: Instance,
    pub name: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses a ring-definition document. A missing `mult_set` means `S = {1}`.
pub fn parse_ring_str(text: &str, source: &str, cap: usize) -> Result<Instance, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: RingFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let inner = e.inner();
        let path = e.path().to_string();
        let at = if path == "." {
            String::new()
        } else {
            format!(" at `{path}`")
        };
        InputError::Parse(format!(
            "{source}:{}:{}{at}: {inner}",
            inner.line(),
            inner.column()
        ))
    })?;
    let gens = file.mult_set.map(|m| m.generators).unwrap_or_default();
    Instance::new(0, file.ring, gens, cap).map_err(InputError::Core)
}

pub fn parse_ring_file(path: &Path, cap: usize) -> Result<LoadedInput, InputError> {
    let bytes =
        std::fs::read(path).map_err(|e| InputError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| InputError::Parse(format!("{}: not valid UTF-8", path.display())))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let instance = parse_ring_str(&text, &name, cap)?;
    Ok(LoadedInput {
        instance,
        name,
        sha256: sha256_hex(&bytes),
    })
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn load_corpus_dir(dir: &Path, cap: usize) -> Result<Vec<LoadedInput>, InputError> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| InputError::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let mut loaded = parse_ring_file(p, cap)?;
        loaded.instance.index = i;
        out.push(loaded);
    }
    Ok(out)
}
