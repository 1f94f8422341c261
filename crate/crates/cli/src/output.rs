//! CSV and JSON tables.

use serde_json::{json, Map, Value};

pub const PROGRAM: &str = "qtomo-delta";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// 17 significant digits, enough to re-parse to the same `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// A command result: named columns, coordinates first and values last.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub cmd: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(cmd: &str, params: Vec<(String, String)>, columns: &[&str]) -> Self {
        Table {
            cmd: cmd.to_string(),
            params,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("# {PROGRAM} v{VERSION} cmd={} params={}", self.cmd, params.join(","))
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_value(*v),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Num(v) => json!(v),
                            Cell::Text(s) => json!(s),
                        })
                        .collect(),
                )
            })
            .collect();
        let doc = json!({
            "program": PROGRAM,
            "version": VERSION,
            "cmd": self.cmd,
            "params": params,
            "columns": self.columns,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("tables serialize");
        text.push('\n');
        text
    }
}

/// `lo:hi:n` for grid parameters in the header.
pub fn range_param(lo: f64, hi: f64, n: usize) -> String {
    format!("{lo}:{hi}:{n}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("wigner", vec![("chi".into(), "1".into())], &["q", "p", "W"]);
        t.push(vec![0.0.into(), 0.5.into(), 2.0.into()]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], format!("# qtomo-delta v{VERSION} cmd=wigner params=chi=1"));
        assert_eq!(lines[1], "q,p,W");
        assert_eq!(
            lines[2],
            "0.0000000000000000e0,5.0000000000000000e-1,2.0000000000000000e0"
        );
    }

    #[test]
    fn json_mirror() {
        let mut t = Table::new("overlap", vec![], &["method", "probability"]);
        t.push(vec!["wavefunction".into(), (8.0 / 9.0).into()]);
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["rows"][0][0], "wavefunction");
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 8.0 / 9.0);
    }

    proptest! {
        #[test]
        fn values_round_trip(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = format_value(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
