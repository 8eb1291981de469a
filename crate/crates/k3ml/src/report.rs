//! Machine-readable verification reports and the shared run configuration.
//!
//! Every harness check produces one `VerificationReport`; JSON output is an
//! array of them. Field names are part of the output contract:
//! {"check_id", "inputs", "computed", "expected", "tolerance", "status",
//! "runtime_ms"}.

use crate::error::Error;
use crate::Result;
use serde::Serialize;
use serde_json::Value;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub inputs: Value,
    pub computed: Value,
    pub expected: Option<Value>,
    pub tolerance: f64,
    pub status: Status,
    pub runtime_ms: u64,
}

/// Stopwatch + metadata for one check; `finish` stamps the elapsed time.
pub struct Check {
    check_id: String,
    inputs: Value,
    started: Instant,
}

impl Check {
    pub fn start(check_id: &str, inputs: Value) -> Self {
        Check {
            check_id: check_id.to_string(),
            inputs,
            started: Instant::now(),
        }
    }

    pub fn finish(
        self,
        computed: Value,
        expected: Option<Value>,
        tolerance: f64,
        status: Status,
    ) -> VerificationReport {
        VerificationReport {
            check_id: self.check_id,
            inputs: self.inputs,
            computed,
            expected,
            tolerance,
            status,
            runtime_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

pub fn status_of(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// One knob surface for the whole harness.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    /// Truncation radius for lattice / Eisenstein sums.
    pub radius: u32,
    /// Target tolerance for torus quadrature.
    pub quadrature_tol: f64,
    /// Coefficient cutoff for Dirichlet-series partial sums.
    pub n_max: usize,
    /// Prime bound for point-count verification.
    pub p_max: u32,
    /// Worker threads (0 = library default); K3ML_THREADS overrides.
    pub threads: usize,
    pub output: OutputFormat,
    /// Report runtime_ms as 0, so reports are byte-stable across runs.
    pub zero_runtime: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            radius: 4096,
            quadrature_tol: 1e-6,
            n_max: 100_000,
            p_max: 50,
            threads: 0,
            output: OutputFormat::Json,
            zero_runtime: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radius == 0 {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        if !(self.quadrature_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "quadrature tolerance must be positive".into(),
            ));
        }
        if self.n_max == 0 || self.p_max == 0 {
            return Err(Error::InvalidArgument(
                "n_max and p_max must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Apply the zero_runtime knob, then sort by check_id so ordering never
/// depends on completion order.
pub fn finalize(mut reports: Vec<VerificationReport>, config: &RunConfig) -> Vec<VerificationReport> {
    if config.zero_runtime {
        for r in &mut reports {
            r.runtime_ms = 0;
        }
    }
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    reports
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

pub fn render_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports are serializable");
    s.push('\n');
    s
}

pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{:<44} {:<7} computed={} expected={} tol={:e} ({} ms)\n",
            r.check_id,
            r.status.to_string(),
            compact(&r.computed),
            r.expected.as_ref().map_or("-".into(), compact),
            r.tolerance,
            r.runtime_ms
        ));
    }
    out
}

pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("check_id,status,tolerance,runtime_ms,computed,expected\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:e},{},{},{}\n",
            r.check_id,
            r.status,
            r.tolerance,
            r.runtime_ms,
            csv_quote(&compact(&r.computed)),
            csv_quote(&r.expected.as_ref().map_or("-".into(), compact)),
        ));
    }
    out
}

pub fn render(reports: &[VerificationReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => render_json(reports),
        OutputFormat::Csv => render_csv(reports),
        OutputFormat::Text => render_text(reports),
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value is serializable")
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}
