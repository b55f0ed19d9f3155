//! Text renderers for symbolic and integer matrices.
//!
//! Three formats: `pretty` (aligned plain text), `latex` (smallmatrix
//! bodies), and `json` (symbolic entries as arrays of symbol strings).

use std::fmt::Write as _;
use std::str::FromStr;

use mdk_core::dyck::{DyckSymbol, SymbolKind};
use mdk_core::lambda::SymbolicMatrix;
use mdk_core::IntMat;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pretty,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pretty" => Ok(Format::Pretty),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(format!("unknown format `{other}` (pretty, json, latex)")),
        }
    }
}

/// `a1` / `b2` spelling used by pretty output and the word syntax.
pub fn symbol_ascii(s: DyckSymbol) -> String {
    match s.kind {
        SymbolKind::Alpha => format!("a{}", s.index),
        SymbolKind::Beta => format!("b{}", s.index),
    }
}

fn symbol_latex(s: DyckSymbol) -> String {
    match s.kind {
        SymbolKind::Alpha => format!("\\alpha_{{{}}}", s.index),
        SymbolKind::Beta => format!("\\beta_{{{}}}", s.index),
    }
}

fn entry_text(entry: &[DyckSymbol], latex: bool) -> String {
    if entry.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = entry
        .iter()
        .map(|&s| if latex { symbol_latex(s) } else { symbol_ascii(s) })
        .collect();
    parts.join("+")
}

fn aligned_table(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, Vec::len);
    let mut widths = vec![0usize; cols];
    for row in cells {
        for (j, c) in row.iter().enumerate() {
            widths[j] = widths[j].max(c.len());
        }
    }
    let mut out = String::new();
    for row in cells {
        out.push('[');
        for (j, c) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{c:>width$}", width = widths[j]);
        }
        out.push_str("]\n");
    }
    out
}

fn latex_body(cells: &[Vec<String>]) -> String {
    let rows: Vec<String> = cells.iter().map(|r| r.join(" & ")).collect();
    format!(
        "\\begin{{smallmatrix}}\n{}\n\\end{{smallmatrix}}",
        rows.join(" \\\\\n")
    )
}

fn symbolic_cells(m: &SymbolicMatrix, latex: bool) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| entry_text(m.get(i, j), latex))
                .collect()
        })
        .collect()
}

fn int_cells(m: &IntMat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn render_symbolic(m: &SymbolicMatrix, format: Format) -> String {
    match format {
        Format::Pretty => aligned_table(&symbolic_cells(m, false)),
        Format::Latex => latex_body(&symbolic_cells(m, true)),
        Format::Json => symbolic_json(m).to_string(),
    }
}

pub fn render_int(m: &IntMat, format: Format) -> String {
    match format {
        Format::Pretty => aligned_table(&int_cells(m)),
        Format::Latex => latex_body(&int_cells(m)),
        Format::Json => int_json(m).to_string(),
    }
}

/// JSON value with entries as arrays of symbol strings.
pub fn symbolic_json(m: &SymbolicMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| {
                    let syms: Vec<String> =
                        m.get(i, j).iter().map(|&s| symbol_ascii(s)).collect();
                    json!(syms)
                })
                .collect();
            json!(row)
        })
        .collect();
    json!(rows)
}

pub fn int_json(m: &IntMat) -> Value {
    let rows: Vec<Value> = int_cells(m)
        .into_iter()
        .map(|row| {
            let nums: Vec<Value> = row
                .into_iter()
                .map(|c| {
                    c.parse::<i64>()
                        .map(Value::from)
                        .unwrap_or_else(|_| Value::from(c))
                })
                .collect();
            json!(nums)
        })
        .collect();
    json!(rows)
}
