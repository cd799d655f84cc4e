use std::io::{self, Write};

use quot_dt::dt::VerificationReport;
use serde_json::{Map, Value};

#[derive(Clone, Copy)]
pub enum Format {
    Json,
    Csv,
}

/// A command's result: `command`, `params`, then any of `coefficients`,
/// `report`/`reports` and extra fields.
pub struct Output {
    fields: Map<String, Value>,
    count: Option<usize>,
    rows: Option<(String, Vec<Value>)>,
    reports: Vec<VerificationReport>,
    single_report: bool,
}

impl Output {
    pub fn new(command: &str, params: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), Value::from(command));
        fields.insert("params".into(), params);
        Output { fields, count: None, rows: None, reports: Vec::new(), single_report: false }
    }

    /// Output that is a bare count.
    pub fn count(command: &str, params: Value, n: usize) -> Self {
        let mut out = Output::new(command, params);
        out.count = Some(n);
        out
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.into(), value);
        self
    }

    pub fn with_rows(mut self, key: &str, rows: Vec<Value>) -> Self {
        self.fields.insert(key.into(), Value::Array(rows.clone()));
        self.rows = Some((key.into(), rows));
        self
    }

    pub fn with_coefficients(self, c: Vec<Value>) -> Self {
        self.with_rows("coefficients", c)
    }

    pub fn with_report(mut self, report: VerificationReport) -> Self {
        self.reports = vec![report];
        self.single_report = true;
        self
    }

    pub fn with_reports(mut self, reports: Vec<VerificationReport>) -> Self {
        self.reports = reports;
        self
    }

    /// Every attached report passed.
    pub fn success(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    fn to_json(&self) -> Value {
        let mut fields = self.fields.clone();
        let reports: Vec<Value> =
            self.reports.iter().map(|r| serde_json::to_value(r).unwrap_or(Value::Null)).collect();
        if self.single_report {
            fields.insert("report".into(), reports.into_iter().next().unwrap_or(Value::Null));
        } else if !reports.is_empty() || fields["command"] == "verify" {
            fields.insert("pass".into(), Value::Bool(self.success()));
            fields.insert("reports".into(), Value::Array(reports));
        }
        Value::Object(fields)
    }

    pub fn emit(&self, format: Format) -> io::Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        if let Some(n) = self.count {
            return writeln!(out, "{n}");
        }
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)
            }
            Format::Csv => self.emit_csv(&mut out),
        }
    }

    fn emit_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if !self.reports.is_empty() {
            w.write_record(["identity", "pass", "trial", "index", "lhs", "rhs", "delta"])?;
            for r in &self.reports {
                for c in &r.coefficients {
                    w.write_record([
                        r.identity.clone(),
                        r.pass.to_string(),
                        c.trial.to_string(),
                        c.index.clone(),
                        cell(&c.lhs),
                        cell(&c.rhs),
                        cell(&c.delta),
                    ])?;
                }
            }
        } else if let Some((_, rows)) = self.rows.as_ref().filter(|(_, r)| r.iter().all(Value::is_object) && !r.is_empty()) {
            let keys: Vec<&String> = rows[0].as_object().map(|o| o.keys().collect()).unwrap_or_default();
            w.write_record(std::iter::once("index").chain(keys.iter().map(|k| k.as_str())))?;
            for (i, v) in rows.iter().enumerate() {
                let cells = keys.iter().map(|k| cell(&v[k.as_str()]));
                w.write_record(std::iter::once(i.to_string()).chain(cells))?;
            }
        } else if let Some((key, rows)) = &self.rows {
            w.write_record(["index", key.as_str()])?;
            for (i, v) in rows.iter().enumerate() {
                w.write_record([i.to_string(), cell(v)])?;
            }
        }
        w.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
