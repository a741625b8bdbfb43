use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Provenance record written next to every output file as
/// `<file>.manifest.json`. Contains no timestamps, so identical runs give
/// identical manifests.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub seeds: Vec<u64>,
    pub version: String,
    /// SHA-256 of each input file's bytes, keyed by the path as given.
    pub inputs: BTreeMap<String, String>,
    pub outcome: Value,
}

impl RunManifest {
    pub fn new(command: &str, params: Value) -> Self {
        Self {
            command: command.to_string(),
            params,
            seeds: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: BTreeMap::new(),
            outcome: Value::Null,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Buffers output files and writes them, each with its sidecar, once the
/// outcome is known.
#[derive(Debug)]
pub struct Outputs {
    pub manifest: RunManifest,
    files: Vec<(PathBuf, String)>,
}

impl Outputs {
    pub fn new(manifest: RunManifest) -> Self {
        Self { manifest, files: Vec::new() }
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).map_err(|e| crate::Error::Io(format!("{}: {e}", path.display())))?;
        self.manifest.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| crate::Error::InvalidInput(format!("{} is not UTF-8", path.display())))
    }

    pub fn add_seed(&mut self, seed: u64) {
        self.manifest.seeds.push(seed);
    }

    pub fn push(&mut self, path: &Path, content: String) {
        self.files.push((path.to_path_buf(), content));
    }

    pub fn finish(mut self, outcome: Value) -> Result<()> {
        self.manifest.outcome = outcome;
        let sidecar = serde_json::to_string_pretty(&self.manifest)? + "\n";
        for (path, content) in &self.files {
            fs::write(path, content).map_err(|e| crate::Error::Io(format!("{}: {e}", path.display())))?;
            let side = sidecar_path(path);
            fs::write(&side, &sidecar).map_err(|e| crate::Error::Io(format!("{}: {e}", side.display())))?;
        }
        Ok(())
    }
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
