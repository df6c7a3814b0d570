//! On-disk cache of command results keyed by a content hash.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: &Path, version: &str) -> Self {
        Cache { dir: dir.to_path_buf(), version: version.to_string() }
    }

    /// Hash of the command, its canonical parameters and the artifact version.
    pub fn key(&self, command: &str, params: &Value) -> String {
        let canonical = json!([command, params, self.version]).to_string();
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, command: &str, params: &Value) -> Option<Value> {
        let key = self.key(command, params);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: Value = serde_json::from_str(&text).ok()?;
        (entry["key"] == key.as_str()).then(|| entry["result"].clone())
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn put(&self, command: &str, params: &Value, result: &Value) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = self.key(command, params);
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = json!({
            "key": key,
            "command": command,
            "params": params,
            "artifact_version": self.version,
            "created_unix": created,
            "result": result,
        });
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.persist(self.path(&key)).map_err(|e| e.error)?;
        Ok(())
    }
}
