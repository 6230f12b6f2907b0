//! Row-oriented output shared by every subcommand, rendered as aligned text,
//! CSV or JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use cuspkernel::Rational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Null,
    Int(i64),
    Bool(bool),
    Text(String),
    Rat(Rational),
    /// A number-field element: its rendering and, when rational, the value.
    Field(String, Option<Rational>),
    /// Decimal with full precision.
    Float(f64),
}

impl Cell {
    fn plain(&self) -> String {
        match self {
            Cell::Null => "-".into(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => if *b { "pass" } else { "FAIL" }.into(),
            Cell::Text(t) => t.clone(),
            Cell::Rat(r) => r.to_string(),
            Cell::Field(t, _) => t.clone(),
            Cell::Float(x) => format!("{x:.15e}"),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Null => String::new(),
            Cell::Int(_) | Cell::Float(_) => self.plain(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(t) | Cell::Field(t, _) => quote(t),
            Cell::Rat(r) => quote(&rat_text(r)),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Null => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(t) | Cell::Field(t, _) => json!(t),
            Cell::Rat(r) => json!({"num": r.numer().to_string(), "den": r.denom().to_string()}),
            Cell::Float(x) => json!(x),
        }
    }

    fn as_rational(&self) -> Option<&Rational> {
        match self {
            Cell::Rat(r) => Some(r),
            Cell::Field(_, r) => r.as_ref(),
            _ => None,
        }
    }
}

fn rat_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn quote(t: &str) -> String {
    format!("\"{}\"", t.replace('"', "\"\""))
}

/// A table plus trailing summary lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, String)>,
}

/// Keys every JSON row carries, filled with null when the column is absent.
const JSON_KEYS: [&str; 4] = ["k", "s", "w", "l"];

impl Table {
    pub fn new(command: &str, columns: &[&'static str]) -> Self {
        Table { command: command.into(), columns: columns.to_vec(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => serde_json::to_string_pretty(&self.json()).expect("serializable") + "\n",
        }
    }

    fn text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::plain).collect()).collect();
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, items: Vec<&str>| {
            let parts: Vec<String> = items.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        if !self.columns.is_empty() {
            line(&mut out, self.columns.clone());
            for r in &cells {
                line(&mut out, r.iter().map(String::as_str).collect());
            }
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",") + "\n";
        for r in &self.rows {
            out += &r.iter().map(Cell::csv).collect::<Vec<_>>().join(",");
            out.push('\n');
        }
        out
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for key in JSON_KEYS {
                    m.insert(key.into(), Value::Null);
                }
                m.insert("value_num".into(), Value::Null);
                m.insert("value_den".into(), Value::Null);
                for (col, cell) in self.columns.iter().zip(r) {
                    if *col == "value" {
                        if let Some(q) = cell.as_rational() {
                            m.insert("value_num".into(), json!(q.numer().to_string()));
                            m.insert("value_den".into(), json!(q.denom().to_string()));
                        }
                    }
                    m.insert((*col).into(), cell.json());
                }
                Value::Object(m)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({"command": self.command, "rows": rows, "summary": summary})
    }

    /// Summary lines, for formats that cannot carry them inline.
    pub fn summary_text(&self) -> String {
        self.summary.iter().map(|(k, v)| format!("# {k}: {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuspkernel::arith::rat;

    fn sample() -> Table {
        let mut t = Table::new("psi", &["k", "s", "w", "l", "value"]);
        t.push(vec![Cell::Int(12), Cell::Int(3), Cell::Int(4), Cell::Int(1), Cell::Rat(rat(-5, 3))]);
        t.note("points", 1);
        t
    }

    #[test]
    fn csv_quotes_rationals() {
        assert_eq!(sample().render(Format::Csv), "k,s,w,l,value\n12,3,4,1,\"-5/3\"\n");
    }

    #[test]
    fn json_rows_carry_fixed_keys() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        let row = &v["rows"][0];
        assert_eq!(row["value_num"], "-5");
        assert_eq!(row["value_den"], "3");
        assert_eq!(row["value"]["num"], "-5");
        assert_eq!(v["summary"]["points"], "1");
    }

    #[test]
    fn text_is_aligned() {
        let out = sample().render(Format::Text);
        assert!(out.starts_with("k   s  w  l  value\n12  3  4  1  -5/3\n"));
        assert!(out.ends_with("# points: 1\n"));
    }
}
