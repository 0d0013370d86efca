use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

use crate::{Format, Io};

/// A CSV table plus run metadata, rendered as CSV or as structured text.
pub struct Report {
    command: &'static str,
    csv: String,
    meta: Vec<(&'static str, String)>,
}

impl Report {
    pub fn new(command: &'static str, csv: String) -> Self {
        Self {
            command,
            csv,
            meta: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &'static str, value: &str) -> Self {
        self.meta.push((key, value.to_string()));
        self
    }

    pub fn emit(&self, io: &Io) -> Result<()> {
        match io.format {
            Format::Csv => write(io.out.as_deref(), &self.csv),
            Format::Text => write(io.out.as_deref(), &self.text()),
        }
    }

    /// `key: value` header lines, a blank line, then the table with
    /// space-separated columns.
    fn text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.meta {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push('\n');
        for line in self.csv.lines() {
            out.push_str(&line.replace(',', " "));
            out.push('\n');
        }
        out
    }
}

/// Writes to `path` through a temporary file in the same directory, so a
/// failed run never leaves a partial file behind. `None` means stdout.
pub fn write(path: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        return stdout.flush().map_err(Into::into);
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
