//! `--config` files and run manifests share one format: `key=value` lines,
//! `#` comments. Keys are flag names without the leading dashes.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Bad command line; maps to exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut path = None;
    let mut k = 0;
    while k < argv.len() {
        let arg = argv[k].to_string_lossy();
        if arg == "--config" {
            path = argv.get(k + 1).map(PathBuf::from);
            k += 1;
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
        k += 1;
    }
    path
}

pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            UsageError(format!(
                "config line {}: expected key=value, got {line:?}",
                k + 1
            ))
        })?;
        out.push((key.trim().to_owned(), value.trim().to_owned()));
    }
    Ok(out)
}

/// Splices the entries of a `--config` file in as `--key=value` flags right
/// after the subcommand, so that flags typed on the command line override
/// them.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let Some(subcommand) = argv.get(1).map(|s| s.to_string_lossy().into_owned()) else {
        return Ok(argv);
    };
    let text =
        fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
    let mut injected = Vec::new();
    for (key, value) in parse_pairs(&text)? {
        match key.as_str() {
            "subcommand" if value != subcommand => {
                return Err(UsageError(format!(
                    "config {} is for `{value}`, not `{subcommand}`",
                    path.display()
                ))
                .into())
            }
            "subcommand" | "version" | "config" => {}
            _ => injected.push(OsString::from(format!("--{key}={value}"))),
        }
    }
    let mut out = Vec::with_capacity(argv.len() + injected.len());
    out.extend(argv[..2].iter().cloned());
    out.extend(injected);
    out.extend(argv[2..].iter().cloned());
    Ok(out)
}

/// Every resolved setting of a run, in a fixed order and without
/// timestamps, so identical runs produce identical manifests.
#[derive(Debug, Clone)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(subcommand: &str) -> Self {
        let mut m = Self {
            entries: Vec::new(),
        };
        m.set("subcommand", subcommand);
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.entries.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn set_path(&mut self, key: &str, path: &Path) -> &mut Self {
        self.set(key, path.display())
    }

    pub fn set_opt<T: fmt::Display>(&mut self, key: &str, value: Option<T>) -> &mut Self {
        if let Some(v) = value {
            self.set(key, v);
        }
        self
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    /// Writes next to `output`, or to stderr when output is stdout.
    pub fn emit(&self, output: &Path) -> Result<()> {
        if is_stdio(output) {
            io::stderr().write_all(self.render().as_bytes())?;
            return Ok(());
        }
        let path = manifest_path(output);
        fs::write(&path, self.render()).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest");
    PathBuf::from(name)
}
