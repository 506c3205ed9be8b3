//! Staged output files and the run manifest.
//!
//! Every file of a run is rendered in memory first. Nothing touches the output
//! directory until the computation has succeeded; each file is then written to
//! a temporary sibling and renamed into place, the manifest last.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ricci_liouville::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name; `replay` re-parses them.
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub tool: String,
    pub version: String,
    pub parallel: bool,
    pub timestamp: String,
    pub outputs: Vec<OutputFile>,
    pub summary: serde_json::Value,
}

#[derive(Default)]
pub struct Staged {
    files: Vec<(String, Vec<u8>)>,
}

impl Staged {
    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_string(), bytes));
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.add(name, json_bytes(value)?);
        Ok(())
    }

    /// Writes every staged file and then the manifest into `dir`.
    pub fn commit(self, dir: &Path, mut manifest: RunManifest) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        manifest.outputs = self
            .files
            .iter()
            .map(|(name, bytes)| OutputFile {
                name: name.clone(),
                bytes: bytes.len(),
                sha256: hex::encode(Sha256::digest(bytes)),
            })
            .collect();
        let mut written = Vec::with_capacity(self.files.len() + 1);
        for (name, bytes) in &self.files {
            written.push(write_atomic(dir, name, bytes)?);
        }
        written.push(write_atomic(dir, MANIFEST, &json_bytes(&manifest)?)?);
        Ok(written)
    }
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Error::Malformed(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf> {
    let target = dir.join(name);
    let mut tmp = tempfile::Builder::new().prefix(".staging-").tempfile_in(dir)?;
    tmp.write_all(bytes)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644))?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(&target).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(target)
}

/// RFC 3339 UTC time of the run. `SOURCE_DATE_EPOCH` pins it, which makes the
/// manifest itself byte-reproducible.
pub fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse::<i64>().ok());
    let time = match pinned.and_then(|t| chrono::DateTime::from_timestamp(t, 0)) {
        Some(t) => t,
        None => chrono::Utc::now(),
    };
    time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest() -> RunManifest {
        RunManifest {
            command: "test".into(),
            argv: vec![],
            parameters: serde_json::Value::Null,
            tool: "t".into(),
            version: "0".into(),
            parallel: false,
            timestamp: "1970-01-01T00:00:00Z".into(),
            outputs: vec![],
            summary: serde_json::Value::Null,
        }
    }

    #[test]
    fn commit_writes_files_and_manifest_without_leftovers() {
        let dir = tempfile::tempdir().unwrap();
        let mut staged = Staged::default();
        staged.add("a.txt", b"hello".to_vec());
        staged.commit(dir.path(), manifest()).unwrap();
        assert_eq!(fs::read(dir.path().join("a.txt")).unwrap(), b"hello");
        let m: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join(MANIFEST)).unwrap()).unwrap();
        assert_eq!(m["outputs"][0]["bytes"], 5);
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 2);
    }

    #[test]
    fn pinned_timestamp() {
        std::env::set_var("SOURCE_DATE_EPOCH", "86400");
        assert_eq!(timestamp(), "1970-01-02T00:00:00Z");
        std::env::remove_var("SOURCE_DATE_EPOCH");
    }
}
