//! Tabular output: CSV (12 significant digits, LF line endings) and JSON
//! (schema-versioned `djc-1` object with `columns` and `rows`).

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header row then one line per data row; numbers carry 12 significant
    /// digits so 1e-10 tolerances survive the text round trip.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Num(x) => {
                        let x = if *x == 0.0 { 0.0 } else { *x }; // drop the sign of -0.0
                        let _ = write!(out, "{x:.11e}");
                    }
                    Cell::Int(n) => {
                        let _ = write!(out, "{n}");
                    }
                    Cell::Text(s) => out.push_str(s),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Array(
                    row.iter()
                        .map(|cell| match cell {
                            Cell::Num(x) => serde_json::json!(x),
                            Cell::Int(n) => serde_json::json!(n),
                            Cell::Text(s) => serde_json::json!(s),
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "schema": "djc-1",
            "columns": self.columns,
            "rows": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let table = Table::new(vec!["t", "lz", "sz"]);
        assert_eq!(table.to_csv(), "t,lz,sz\n");
        let json = table.to_json();
        assert_eq!(json["schema"], "djc-1");
        assert_eq!(json["rows"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn csv_round_trips_to_twelve_digits() {
        let mut table = Table::new(vec!["x"]);
        let value = 7.0 / 18.0;
        table.push_row(vec![Cell::Num(value)]);
        let csv = table.to_csv();
        let text = csv.lines().nth(1).unwrap();
        let parsed: f64 = text.parse().unwrap();
        assert!((parsed - value).abs() < 1e-12);
    }

    #[test]
    fn json_preserves_values_exactly() {
        let mut table = Table::new(vec!["x", "label"]);
        table.push_row(vec![Cell::Num(0.1 + 0.2), Cell::Text("row".into())]);
        let json = table.to_json();
        let back = json["rows"][0][0].as_f64().unwrap();
        assert_eq!(back, 0.1 + 0.2);
    }
}
