//! Output formatting shared by every subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// Output directory used for relative `--output` paths when set.
pub const OUTPUT_DIR_ENV: &str = "RACSIM_OUTPUT_DIR";

/// Renders `x` with 7 significant digits in plain decimal notation.
pub fn sig7(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.6}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (6 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit, e.g. 0.99999999 -> 1.0000000
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > 7 && decimals > 0 {
        let decimals = decimals - 1;
        format!("{x:.decimals$}")
    } else {
        s
    }
}

#[derive(Debug, Serialize)]
pub struct Provenance<P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parameters: P,
    /// Which reported values were enumerated and which come from closed forms.
    pub sources: BTreeMap<&'static str, &'static str>,
}

impl<P: Serialize> Provenance<P> {
    pub fn new(command: &'static str, parameters: P) -> Self {
        Self {
            tool: "racsim",
            version: env!("CARGO_PKG_VERSION"),
            command,
            parameters,
            sources: BTreeMap::new(),
        }
    }

    pub fn source(mut self, value: &'static str, how: &'static str) -> Self {
        self.sources.insert(value, how);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<P: Serialize, R: Serialize> {
    pub provenance: Provenance<P>,
    pub result: R,
}

pub fn json<P: Serialize, R: Serialize>(provenance: Provenance<P>, result: R) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Envelope { provenance, result })?;
    s.push('\n');
    Ok(s)
}

/// Aligned `key value` lines.
#[derive(Default)]
pub struct KeyValues(Vec<(String, String)>);

impl KeyValues {
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn prob(&mut self, key: &str, value: f64) -> &mut Self {
        self.push(key, sig7(value))
    }

    pub fn render(&self) -> String {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.0 {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
        out
    }
}

pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes to `path` (resolved against the output directory) or stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let p = resolve_output(p);
            fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
