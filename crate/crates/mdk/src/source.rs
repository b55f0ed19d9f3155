//! Matrix sources: builtin names and matrix files.
//!
//! A source is either a builtin name (`fibonacci`, `full:N`) or a path to a
//! text file whose first line is the size `N`, followed by `N` lines of `N`
//! space-separated `0`/`1` entries.

use std::fmt;
use std::fs;
use std::path::Path;

use mdk_core::markov::MatrixError;
use mdk_core::TransitionMatrix;

#[derive(Debug)]
pub enum SourceError {
    /// A `full:N` spec with an unusable size.
    BadBuiltin(String),
    Io(String),
    /// Parse failure in a matrix file, with a 1-based line number.
    Parse { line: usize, detail: String },
    Matrix(MatrixError),
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceError::BadBuiltin(s) => write!(f, "bad builtin matrix spec `{s}`"),
            SourceError::Io(e) => write!(f, "cannot read matrix file: {e}"),
            SourceError::Parse { line, detail } => write!(f, "matrix file line {line}: {detail}"),
            SourceError::Matrix(e) => write!(f, "invalid transition matrix: {e:?}"),
        }
    }
}

impl std::error::Error for SourceError {}

/// A transition matrix together with the display name used in reports.
pub struct MatrixSource {
    pub name: String,
    pub matrix: TransitionMatrix,
}

/// Resolve a `--matrix` argument.  `fibonacci` and `full:N` are builtin;
/// anything else is read as a file path.
pub fn resolve(spec: &str) -> Result<MatrixSource, SourceError> {
    if spec == "fibonacci" {
        return Ok(MatrixSource {
            name: "fibonacci".into(),
            matrix: TransitionMatrix::fibonacci(),
        });
    }
    if let Some(n) = spec.strip_prefix("full:") {
        let n: usize = n
            .parse()
            .map_err(|_| SourceError::BadBuiltin(spec.into()))?;
        let matrix = TransitionMatrix::full(n).map_err(SourceError::Matrix)?;
        return Ok(MatrixSource {
            name: format!("full:{n}"),
            matrix,
        });
    }
    let text = fs::read_to_string(Path::new(spec)).map_err(|e| SourceError::Io(e.to_string()))?;
    Ok(MatrixSource {
        name: spec.to_string(),
        matrix: parse_matrix_text(&text)?,
    })
}

/// Parse the matrix file format.  Errors carry 1-based line numbers.
pub fn parse_matrix_text(text: &str) -> Result<TransitionMatrix, SourceError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or(SourceError::Parse { line: 1, detail: "empty file".into() })?;
    let n: usize = first.trim().parse().map_err(|_| SourceError::Parse {
        line: 1,
        detail: format!("expected matrix size, found `{}`", first.trim()),
    })?;
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let (idx, line) = lines.next().ok_or(SourceError::Parse {
            line: k + 2,
            detail: format!("expected {n} rows, file ends after {k}"),
        })?;
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            match tok {
                "0" => row.push(false),
                "1" => row.push(true),
                other => {
                    return Err(SourceError::Parse {
                        line: idx + 1,
                        detail: format!("expected 0 or 1, found `{other}`"),
                    })
                }
            }
        }
        if row.len() != n {
            return Err(SourceError::Parse {
                line: idx + 1,
                detail: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    TransitionMatrix::new(rows).map_err(SourceError::Matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        assert_eq!(resolve("fibonacci").unwrap().matrix.size(), 2);
        assert_eq!(resolve("full:3").unwrap().matrix.size(), 3);
        assert!(resolve("full:zero").is_err());
    }

    #[test]
    fn file_format_round_trip() {
        let m = parse_matrix_text("2\n1 1\n1 0\n").unwrap();
        assert!(m.allows(1, 2));
        assert!(!m.allows(2, 2));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_matrix_text("2\n1 1\n1 x\n") {
            Err(SourceError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected: {other:?}"),
        }
        match parse_matrix_text("2\n1 1\n") {
            Err(SourceError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected: {other:?}"),
        }
    }
}
