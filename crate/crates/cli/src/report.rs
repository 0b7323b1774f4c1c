//! Command results and their text, markdown and CSV renderings.

use std::io::Write;

use serde_json::Value;

/// What a subcommand hands back: the canonical JSON payload, the verdict,
/// a human summary, a flat table and any counterexamples.
#[derive(Debug)]
pub struct Report {
    pub data: Value,
    pub pass: bool,
    pub summary: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub counterexamples: Option<Value>,
}

impl Report {
    pub fn new(data: Value, pass: bool) -> Self {
        Report { data, pass, summary: Vec::new(), columns: Vec::new(), rows: Vec::new(), counterexamples: None }
    }

    pub fn summary(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }

    pub fn table(mut self, columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.columns = columns;
        self.rows = rows;
        self
    }

    /// Attaches counterexamples; an empty list is dropped.
    pub fn counterexamples(mut self, v: Value) -> Self {
        let empty = v.as_array().is_some_and(|a| a.is_empty());
        if !empty && !v.is_null() {
            self.counterexamples = Some(v);
        }
        self
    }

    fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn write_text(&self, command: &str, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{command}: {}", self.verdict())?;
        for line in &self.summary {
            writeln!(out, "  {line}")?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| self.rows.iter().map(|r| r[i].chars().count()).chain([self.columns[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out)?;
        writeln!(out, "{}", line(self.columns.clone()))?;
        for r in &self.rows {
            writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }

    pub fn write_markdown(&self, command: &str, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "## {command}: {}", self.verdict())?;
        writeln!(out)?;
        for line in &self.summary {
            writeln!(out, "- {line}")?;
        }
        if self.columns.is_empty() {
            return Ok(());
        }
        writeln!(out)?;
        writeln!(out, "| {} |", self.columns.join(" | "))?;
        writeln!(out, "|{}", " --- |".repeat(self.columns.len()))?;
        for r in &self.rows {
            writeln!(out, "| {} |", r.join(" | "))?;
        }
        Ok(())
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}
