//! Run reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use hypercert_core::{Interval, Verdict, VerdictCounts, VerificationReport};
use serde::Serialize;

use crate::args::Format;

#[derive(Debug, Clone)]
pub struct Record {
    pub case: String,
    pub verdict: &'static str,
    /// Lower end of the log2 margin, rounded down.
    pub margin_lo: Option<String>,
    /// Upper end of the log2 margin, rounded up.
    pub margin_hi: Option<String>,
    pub precision: u32,
    pub details: Vec<(String, String)>,
    pub raw: Verdict,
}

impl Record {
    pub fn new(case: impl Into<String>, verdict: Verdict, precision: u32) -> Self {
        Record {
            case: case.into(),
            verdict: verdict.label(),
            margin_lo: None,
            margin_hi: None,
            precision,
            details: Vec::new(),
            raw: verdict,
        }
    }

    pub fn from_report(r: &VerificationReport, digits: usize) -> Self {
        let mut rec = Record::new(r.case.clone(), r.verdict, r.precision);
        if let Some(m) = &r.margin {
            rec = rec.margin(m, digits);
        }
        rec
    }

    pub fn margin(mut self, m: &Interval, digits: usize) -> Self {
        self.margin_lo = Some(m.lo_decimal(digits));
        self.margin_hi = Some(m.hi_decimal(digits));
        self
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.push((key.to_string(), value.to_string()));
        self
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub certain_true: usize,
    pub exact_equality: usize,
    pub certain_false: usize,
    pub undecided: usize,
}

impl From<VerdictCounts> for Summary {
    fn from(c: VerdictCounts) -> Self {
        Summary {
            total: c.total(),
            certain_true: c.certain_true,
            exact_equality: c.exact_equality,
            certain_false: c.certain_false,
            undecided: c.undecided,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    /// Canonical command line that reproduces this report.
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub margin_digits: u32,
    pub records: Vec<Record>,
    pub notes: Vec<(String, String)>,
    pub summary: Summary,
    pub wall_time_seconds: Option<f64>,
}

impl Report {
    pub fn new(path: &str, parameters: Vec<(String, String)>, digits: u32) -> Self {
        let mut command = format!("hypercert {path}");
        for (k, v) in &parameters {
            if v == "true" {
                write!(command, " --{k}").unwrap();
            } else {
                write!(command, " --{k} {v}").unwrap();
            }
        }
        Report {
            command,
            parameters,
            margin_digits: digits,
            records: Vec::new(),
            notes: Vec::new(),
            summary: Summary::default(),
            wall_time_seconds: None,
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn finish(&mut self) {
        self.summary = self
            .records
            .iter()
            .map(|r| r.raw)
            .collect::<VerdictCounts>()
            .into();
    }

    /// 0 when everything holds, 1 on any counterexample, 2 when some case
    /// stayed undecided.
    pub fn exit_code(&self) -> i32 {
        if self.summary.certain_false > 0 {
            1
        } else if self.summary.undecided > 0 {
            2
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json())?;
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv()?,
        })
    }

    fn json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let pairs = |v: &[(String, String)]| {
            Value::Object(
                v.iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect::<Map<_, _>>(),
            )
        };
        let records = self
            .records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("case".into(), r.case.clone().into());
                m.insert("verdict".into(), r.verdict.into());
                if let (Some(lo), Some(hi)) = (&r.margin_lo, &r.margin_hi) {
                    m.insert("margin_lo".into(), lo.clone().into());
                    m.insert("margin_hi".into(), hi.clone().into());
                }
                m.insert("precision".into(), r.precision.into());
                if !r.details.is_empty() {
                    m.insert("details".into(), pairs(&r.details));
                }
                Value::Object(m)
            })
            .collect::<Vec<_>>();
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone().into());
        top.insert("parameters".into(), pairs(&self.parameters));
        top.insert("margin_digits".into(), self.margin_digits.into());
        top.insert("records".into(), Value::Array(records));
        if !self.notes.is_empty() {
            top.insert("notes".into(), pairs(&self.notes));
        }
        top.insert(
            "summary".into(),
            serde_json::to_value(&self.summary).unwrap(),
        );
        if let Some(t) = self.wall_time_seconds {
            top.insert("wall_time_seconds".into(), t.into());
        }
        Value::Object(top)
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# {}", self.command).unwrap();
        writeln!(
            s,
            "# margins: log2 gap, {} significant digits",
            self.margin_digits
        )
        .unwrap();
        for r in &self.records {
            write!(s, "{:<16} {}", r.verdict, r.case).unwrap();
            if let (Some(lo), Some(hi)) = (&r.margin_lo, &r.margin_hi) {
                write!(s, "  margin=[{lo}, {hi}]").unwrap();
            }
            write!(s, "  prec={}", r.precision).unwrap();
            for (k, v) in &r.details {
                write!(s, "  {k}={v}").unwrap();
            }
            s.push('\n');
        }
        for (k, v) in &self.notes {
            writeln!(s, "# {k}: {v}").unwrap();
        }
        let m = &self.summary;
        writeln!(
            s,
            "# summary: total={} certain-true={} exact-equality={} certain-false={} undecided={}",
            m.total, m.certain_true, m.exact_equality, m.certain_false, m.undecided
        )
        .unwrap();
        if let Some(t) = self.wall_time_seconds {
            writeln!(s, "# wall time: {t:.3} s").unwrap();
        }
        s
    }

    fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "case",
            "verdict",
            "margin_lo",
            "margin_hi",
            "precision",
            "details",
        ])?;
        for r in &self.records {
            let details = r
                .details
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                r.case.as_str(),
                r.verdict,
                r.margin_lo.as_deref().unwrap_or(""),
                r.margin_hi.as_deref().unwrap_or(""),
                &r.precision.to_string(),
                &details,
            ])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}
