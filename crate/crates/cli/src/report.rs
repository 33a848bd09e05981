//! Report envelope and exit codes.

use std::io::{self, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_FAULT: u8 = 4;

pub const SCHEMA_VERSION: &str = "1";

pub enum Outcome {
    /// A report was written; exit with this code.
    Done(u8),
    Usage(String),
    Fault(String),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Report<P> {
    pub schema_version: String,
    pub subcommand: String,
    /// Normalized inputs with the translations that were removed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
    pub payload: P,
    pub timing_ms: f64,
}

pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Self(Instant::now())
    }

    pub fn report<P>(&self, subcommand: &str, input: Option<Value>, payload: P) -> Report<P> {
        Report {
            schema_version: SCHEMA_VERSION.to_owned(),
            subcommand: subcommand.to_owned(),
            input,
            payload,
            timing_ms: self.0.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Writes the report to stdout and returns `code`, or a fault if writing fails.
pub fn emit<P: Serialize>(format: Format, report: &Report<P>, text: impl FnOnce() -> String, code: u8) -> Outcome {
    let mut out = io::stdout().lock();
    let written = match format {
        Format::Json => serde_json::to_writer(&mut out, report)
            .map_err(io::Error::from)
            .and_then(|()| writeln!(out)),
        Format::Text => writeln!(
            out,
            "{}\n{}(schema {}, {:.1} ms)",
            report.subcommand,
            text(),
            report.schema_version,
            report.timing_ms
        ),
    };
    match written.and_then(|()| out.flush()) {
        Ok(()) => Outcome::Done(code),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Outcome::Done(code),
        Err(e) => Outcome::Fault(format!("writing report: {e}")),
    }
}
