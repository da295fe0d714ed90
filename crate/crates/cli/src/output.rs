use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a truncated file behind.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> CliResult<()>) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::run(format!("{}: {e}", path.display()));
    let tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        fill(&mut w)?;
        w.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError::run(e.to_string()))?;
        w.write_all(b"\n").map_err(|e| CliError::run(e.to_string()))
    })
}

/// Record of one invocation. Timing lives here and never in data files,
/// which keeps those byte-for-byte reproducible.
#[derive(Debug, Serialize)]
pub struct RunManifest<C: Serialize, S: Serialize> {
    pub command: Vec<String>,
    pub version: &'static str,
    pub config: C,
    pub outputs: Vec<PathBuf>,
    pub stats: S,
    pub wall_seconds: f64,
}

impl<C: Serialize, S: Serialize> RunManifest<C, S> {
    pub fn new(config: C, outputs: Vec<PathBuf>, stats: S, elapsed: Duration) -> Self {
        Self {
            command: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION"),
            config,
            outputs,
            stats,
            wall_seconds: elapsed.as_secs_f64(),
        }
    }

    /// Checks that every listed output exists and is non-empty, then writes
    /// the manifest itself.
    pub fn write(&self, path: &Path) -> CliResult<()> {
        for out in &self.outputs {
            let len = std::fs::metadata(out).map(|m| m.len()).unwrap_or(0);
            if len == 0 {
                return Err(CliError::run(format!("output {} is missing or empty", out.display())));
            }
        }
        write_json(path, self)
    }
}

/// `out.csv` → `out.csv.manifest.json`
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
