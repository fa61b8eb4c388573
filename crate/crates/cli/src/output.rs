use serde::{Deserialize, Serialize};

use qrank_core::degree::Finding;

use crate::{exit, Cli, Format, Report};

pub const SCHEMA_VERSION: u32 = 1;

/// A titled table; key/value output uses the headers `field, value`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn fields(title: impl Into<String>) -> Self {
        Self::new(title, &["field", "value"])
    }

    pub fn push(&mut self, row: Vec<String>) -> &mut Self {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
        self
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.push(vec![key.to_string(), value.to_string()])
    }

    fn render_table(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        out.push_str(&format!("== {} ==\n", self.title));
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
    }

    fn render_csv(&self, out: &mut String) {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["section".to_string()];
        header.extend(self.headers.iter().cloned());
        w.write_record(&header).expect("in-memory writer");
        for row in &self.rows {
            let mut rec = vec![self.title.clone()];
            rec.extend(row.iter().cloned());
            w.write_record(&rec).expect("in-memory writer");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input"));
    }
}

/// The JSON document: `{schema_version, command, config, result, findings}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub command: String,
    pub config: serde_json::Value,
    pub result: serde_json::Value,
    pub findings: Vec<Finding>,
    #[serde(skip)]
    pub sections: Vec<Section>,
}

impl Envelope {
    pub(crate) fn new(cli: &Cli, report: Report) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: cli.command.name().to_string(),
            config: serde_json::to_value(cli).expect("config serializes"),
            result: report.result,
            findings: report.findings,
            sections: report.sections,
        }
    }

    /// [`exit::MISMATCH`] when anything was found, else [`exit::OK`].
    pub fn exit_status(&self) -> u8 {
        if self.findings.is_empty() {
            exit::OK
        } else {
            exit::MISMATCH
        }
    }

    fn findings_section(&self) -> Option<Section> {
        if self.findings.is_empty() {
            return None;
        }
        let mut f = Section::new("findings", &["check", "expected", "actual"]);
        for x in &self.findings {
            f.push(vec![x.check.clone(), x.expected.clone(), x.actual.clone()]);
        }
        Some(f)
    }

    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            let mut out = serde_json::to_string_pretty(self).expect("envelope serializes");
            out.push('\n');
            return out;
        }
        let findings = self.findings_section();
        let mut out = String::new();
        for (i, s) in self.sections.iter().chain(findings.as_ref()).enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match format {
                Format::Table => s.render_table(&mut out),
                _ => s.render_csv(&mut out),
            }
        }
        out
    }
}
