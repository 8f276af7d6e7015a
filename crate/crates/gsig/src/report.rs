//! Machine-readable command reports.
//!
//! A report is deterministic: the same inputs produce byte-identical JSON.
//! The only non-canonical field is `elapsed_ms`, which is present only when
//! timing was requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gsig_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Left-aligned columns separated by two spaces.
    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let mut text = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    text.push_str("  ");
                }
                let _ = write!(text, "{cell:<w$}");
            }
            out.push_str(text.trim_end());
            out.push('\n');
        };
        line(&mut out, &self.columns);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&mut out, &rule);
        for row in &self.rows {
            line(&mut out, row);
        }
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    /// Exact intermediate values, rationals rendered as `n/d`.
    pub values: BTreeMap<String, String>,
    pub result: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub decimals: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Report::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn value(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    /// Records an exact rational, plus its rounded form when `digits` is set.
    pub fn rational(&mut self, key: &str, value: &Rational, digits: Option<u32>) -> &mut Self {
        self.values.insert(key.to_string(), value.to_string());
        if let Some(d) = digits {
            self.decimals.insert(key.to_string(), value.to_decimal(d));
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Plain-text rendering: inputs, values, result, basis, then the table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if !self.values.is_empty() {
            let width = self.values.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in &self.values {
                match self.decimals.get(k) {
                    Some(d) => {
                        let _ = writeln!(out, "{k:<width$}  {v}  ({d})");
                    }
                    None => {
                        let _ = writeln!(out, "{k:<width$}  {v}");
                    }
                }
            }
        }
        if let Some(table) = &self.table {
            out.push_str(&table.render());
        }
        if !self.result.is_empty() {
            let _ = writeln!(out, "result: {}", self.result);
        }
        if !self.basis.is_empty() {
            let _ = writeln!(out, "basis: {}", self.basis.join(", "));
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("bound");
        r.input("p", 2).rational("bound", &Rational::new(36, 5).unwrap(), Some(3));
        r.result = "SphereBound(n <= 7)".into();
        r.basis.push("bound:sphere-count".into());
        let mut t = Table::new(["t", "c", "r"]);
        t.push(["4", "0", "0"]);
        r.table = Some(t);
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap(), r);
        assert!(text.contains("\"36/5\""));
        assert!(text.contains("\"7.200\""));
        assert!(!text.contains("elapsed_ms"));
    }

    #[test]
    fn table_alignment() {
        let mut t = Table::new(["n", "spheres"]);
        t.push(["0", "[]"]);
        t.push(["10", "[-1, -1]"]);
        assert_eq!(t.render(), "n   spheres\n--  --------\n0   []\n10  [-1, -1]\n");
    }
}
