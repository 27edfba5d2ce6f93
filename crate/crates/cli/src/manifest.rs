use serde::Serialize;

/// Everything that determines a report. Wall-clock time is only recorded
/// when requested, so equal manifests give byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub caps: Caps,
    pub inputs: Vec<InputDigest>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    pub size_cap: usize,
    pub ideal_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus_size_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, size_cap: usize, ideal_cap: usize) -> Self {
        Self {
            tool: "sring",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed: None,
            caps: Caps {
                size_cap,
                ideal_cap,
                corpus_size_cap: None,
                max_degree: None,
                budget: None,
            },
            inputs: Vec::new(),
        }
    }

    pub fn input(mut self, name: &str, sha256: &str) -> Self {
        self.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: sha256.to_string(),
        });
        self
    }
}
