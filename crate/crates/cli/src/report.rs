use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Why a run stopped, mapped onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, config file, parameters or output path (exit 1).
    Config(String),
    /// A coefficient denominator vanished or similar breakdown (exit 2).
    Numeric(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Config(_) => ExitCode::from(1),
            Failure::Numeric(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Config(m) | Failure::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<trigmie::Error> for Failure {
    fn from(e: trigmie::Error) -> Self {
        match e {
            trigmie::Error::Degenerate(_) | trigmie::Error::OffCircle { .. } => {
                Failure::Numeric(e.to_string())
            }
            _ => Failure::Config(e.to_string()),
        }
    }
}

pub fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

/// Shortest round-trip decimal, switching to exponent form for very
/// small or large magnitudes.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        // no "-0"
        return "0".into();
    }
    let a = v.abs();
    if a.is_finite() && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// A CSV table with a header row.
#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Append another table with the same header.
    pub fn extend(&mut self, other: Table) {
        debug_assert_eq!(self.header, other.header);
        self.rows.extend(other.rows);
    }

    fn write<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Write to `path`, or stdout when `None`.
    pub fn write_to(&self, path: Option<&Path>) -> Result<(), Failure> {
        let result = match path {
            Some(p) => {
                let f = File::create(p)
                    .map_err(|e| config_error(format!("cannot write {}: {e}", p.display())))?;
                self.write(f)
            }
            None => self.write(io::stdout().lock()),
        };
        result.map_err(|e| config_error(format!("writing CSV failed: {e}")))
    }
}

/// Outcome of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub table: Table,
    /// Secondary tables and where they go.
    pub extra: Vec<(PathBuf, Table)>,
    pub summary: String,
    /// Set when a verification found a violation (exit 3).
    pub violated: bool,
}
