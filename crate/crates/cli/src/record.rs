//! Result records and their JSON / CSV renderings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Format;

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub check: String,
    pub inputs_digest: String,
    pub status: Status,
    /// Measured quantities, by name.
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ResultRecord {
    pub fn new(check: impl Into<String>, digest: &str) -> Self {
        Self {
            check: check.into(),
            inputs_digest: digest.to_owned(),
            status: Status::Skipped,
            residuals: BTreeMap::new(),
            tolerance: None,
            detail: None,
            wall_time_ms: None,
        }
    }

    pub fn measure(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_owned(), value);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Passes iff every residual named in `gated` is at most `tol`.
    pub fn gate(mut self, tol: f64, gated: &[&str]) -> Self {
        self.tolerance = Some(tol);
        let ok = gated
            .iter()
            .all(|name| self.residuals.get(*name).is_some_and(|v| v.is_finite() && *v <= tol));
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

/// A full output document for one command invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Document<T: Serialize> {
    pub schema_version: u32,
    pub command: &'static str,
    /// The only field allowed to differ between identical runs.
    pub timestamp: String,
    pub inputs_digest: String,
    pub seed: u64,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Document<T> {
    pub fn new(command: &'static str, digest: String, seed: u64, body: T) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            inputs_digest: digest,
            seed,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }
}

/// 17 significant digits, locale independent.
pub fn csv_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Quotes a CSV field when it needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

/// One row per record and measured quantity.
pub fn records_csv(records: &[ResultRecord]) -> String {
    let mut out = String::from("schema_version,check,status,tolerance,quantity,value,detail,inputs_digest\n");
    for r in records {
        let tol = r.tolerance.map(csv_number).unwrap_or_default();
        let head = format!("{SCHEMA_VERSION},{},{},{tol}", csv_field(&r.check), status_name(r.status));
        let detail = csv_field(r.detail.as_deref().unwrap_or(""));
        if r.residuals.is_empty() {
            out.push_str(&format!("{head},,,{detail},{}\n", r.inputs_digest));
        }
        for (name, value) in &r.residuals {
            let value = csv_number(*value);
            out.push_str(&format!("{head},{},{value},{detail},{}\n", csv_field(name), r.inputs_digest));
        }
    }
    out
}

#[derive(Serialize)]
pub struct Records<'a> {
    pub records: &'a [ResultRecord],
}

pub fn render_records(
    command: &'static str,
    digest: &str,
    seed: u64,
    records: &[ResultRecord],
    format: Format,
) -> String {
    match format {
        Format::Json => Document::new(command, digest.to_owned(), seed, Records { records }).to_json(),
        Format::Csv => records_csv(records),
    }
}

/// Process exit code for a finished run: 1 when any record failed.
pub fn exit_code(records: &[ResultRecord]) -> u8 {
    if records.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}
