use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use pmech_core::CONVENTIONS_VERSION;
use serde::Serialize;
use serde_json::{json, Value};

/// Invalid command-line input; reported with kind `usage` and exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

fn core_kind(e: &pmech_core::Error) -> &'static str {
    use pmech_core::Error::*;
    match e {
        DimensionMismatch { .. } | SignatureMismatch | IndexOutOfRange { .. } => "dimension",
        InvalidSignature(_) => "signature",
        ZeroPlanck | ZeroChannel => "planck",
        GridTooSmall { .. } | InvalidGrid(_) => "grid",
        InvalidParameter(_) => "parameter",
        Truncation { .. } => "truncation",
        Unstable(_) => "unstable",
        DegenerateMetric(_) => "metric",
        Schema(_) => "schema",
    }
}

/// `{"error": {"kind", "message"}}` for stderr.
pub fn error_object(e: &anyhow::Error) -> Value {
    let kind = if e.downcast_ref::<UsageError>().is_some() {
        "usage"
    } else if let Some(c) = e.chain().find_map(|c| c.downcast_ref::<pmech_core::Error>()) {
        core_kind(c)
    } else if e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some()) {
        "io"
    } else {
        "internal"
    };
    let message = e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ");
    json!({ "error": { "kind": kind, "message": message } })
}

/// Report envelope shared by every command.
pub fn envelope(command: &str, config: &impl Serialize, body: Value) -> Value {
    let mut v = json!({
        "command": command,
        "conventions": CONVENTIONS_VERSION,
        "config": config,
    });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

pub fn write_output(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

pub fn write_json(out: Option<&PathBuf>, v: &Value) -> anyhow::Result<()> {
    write_output(out.map(PathBuf::as_path), &(serde_json::to_string_pretty(v)? + "\n"))
}

pub fn csv_string(header: &[String], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Reads an inline JSON document or a file path.
pub fn read_document(arg: &str) -> anyhow::Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

pub fn require_positive(name: &str, v: f64) -> anyhow::Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {v}")))
    }
}

/// Comma-separated reals, e.g. `0,0,0.5`.
pub fn parse_list(name: &str, text: &str) -> anyhow::Result<Vec<f64>> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("--{name}: cannot parse \"{t}\" as a number"))))
        .collect()
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl Output {
    pub fn emit(&self, json: &Value, csv: impl FnOnce() -> anyhow::Result<String>) -> anyhow::Result<()> {
        match self.format {
            Format::Json => write_json(self.out.as_ref(), json),
            Format::Csv => write_output(self.out.as_deref(), &csv()?),
        }
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
