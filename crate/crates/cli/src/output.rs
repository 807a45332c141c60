//! CSV, JSON and gnuplot emission with atomic writes and a run manifest.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use rdexact::catalog::Sampler;
use rdexact::verify::Grid2D;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// Writes via a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NaN".into()
    }
}

/// A sampled grid as CSV `x,t,u,defined`, x fastest. Returns the text and
/// the defined fraction.
pub fn grid_csv(s: &Sampler, g: &Grid2D) -> (String, f64) {
    let mut out = String::from("x,t,u,defined\n");
    let mut defined = 0usize;
    for j in 0..g.n_t {
        let t = g.t(j);
        for i in 0..g.n_x {
            let x = g.x(i);
            match s.eval(x, t) {
                Some(u) => {
                    defined += 1;
                    let _ = writeln!(out, "{},{},{},1", num(x), num(t), num(u));
                }
                None => {
                    let _ = writeln!(out, "{},{},NaN,0", num(x), num(t));
                }
            }
        }
        out.push('\n');
    }
    (out, defined as f64 / g.len() as f64)
}

/// Surface plot script for a `grid_csv` file (blank lines separate t rows).
pub fn gnuplot_script(csv_name: &str, title: &str, x_label: &str, t_label: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set datafile missing 'NaN'\n\
         set title '{title}'\n\
         set xlabel '{x_label}'\n\
         set ylabel '{t_label}'\n\
         set zlabel 'u'\n\
         set hidden3d\n\
         splot '{csv_name}' every ::1 using 1:2:($4 == 1 ? $3 : NaN) with lines notitle\n\
         pause -1\n"
    )
}

pub fn json_bytes<T: Serialize>(command: &str, result: &T) -> Result<Vec<u8>> {
    let v = json!({ "schema": SCHEMA, "command": command, "result": result });
    let mut bytes = serde_json::to_vec_pretty(&v)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: Value,
    pub tool_version: &'static str,
    pub timestamp_unix: u64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: Value) -> Self {
        Self {
            schema: SCHEMA,
            command: command.into(),
            argv: std::env::args().collect(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            outputs: Vec::new(),
        }
    }

    /// Writes `bytes` atomically and records the path.
    pub fn emit(&mut self, path: PathBuf, bytes: &[u8]) -> Result<()> {
        write_atomic(&path, bytes)?;
        self.outputs.push(path);
        Ok(())
    }

    /// Writes the manifest itself into `dir` (it lists itself last).
    pub fn finish(mut self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        self.outputs.push(path.clone());
        let mut bytes = serde_json::to_vec_pretty(&self)?;
        bytes.push(b'\n');
        write_atomic(&path, &bytes)?;
        Ok(path)
    }
}
