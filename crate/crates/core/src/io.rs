//! Matrix input: Matrix Market, CSV, and the six built-in example matrices.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("matrix is not square ({rows} x {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("unsupported Matrix Market format: {0}")]
    UnsupportedFormat(String),
    #[error("unknown built-in matrix {0:?} (expected A1..A6)")]
    UnknownName(String),
    #[error("cannot infer format of {0:?}; use a .mtx or .csv extension or pass --format")]
    UnknownExtension(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn parse_err(line: usize, reason: impl Into<String>) -> InputError {
    InputError::Parse {
        line,
        reason: reason.into(),
    }
}

fn matrix_err(e: MatrixError, line: usize) -> InputError {
    match e {
        MatrixError::NotSquare { rows, cols } => InputError::NotSquare { rows, cols },
        MatrixError::NonFinite { row, col } => parse_err(
            line,
            format!("non-finite value at ({}, {})", row + 1, col + 1),
        ),
        other => parse_err(line, other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmLayout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Complex,
}

fn parse_number(tok: &str, field: MmField, line: usize) -> Result<f64, InputError> {
    let v = match field {
        MmField::Integer => tok.parse::<i64>().map(|x| x as f64).ok(),
        _ => tok.parse::<f64>().ok(),
    };
    match v {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(parse_err(line, format!("invalid number {tok:?}"))),
    }
}

fn parse_value(toks: &[&str], field: MmField, line: usize) -> Result<Complex64, InputError> {
    let want = if field == MmField::Complex { 2 } else { 1 };
    if toks.len() != want {
        return Err(parse_err(
            line,
            format!("expected {want} value token(s), found {}", toks.len()),
        ));
    }
    let re = parse_number(toks[0], field, line)?;
    let im = match field {
        MmField::Complex => parse_number(toks[1], field, line)?,
        _ => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn parse_index(tok: &str, bound: usize, line: usize) -> Result<usize, InputError> {
    let i: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("invalid index {tok:?}")))?;
    if i == 0 || i > bound {
        return Err(parse_err(
            line,
            format!("index {i} out of range 1..={bound}"),
        ));
    }
    Ok(i - 1)
}

/// Parses a `general` Matrix Market file in `coordinate` or `array` layout
/// with `real`, `integer` or `complex` values.
pub fn parse_matrix_market(text: &str) -> Result<Matrix, InputError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));

    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let head: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if head.len() != 5 || head[0] != "%%matrixmarket" || head[1] != "matrix" {
        return Err(parse_err(
            1,
            "expected '%%MatrixMarket matrix <layout> <field> <symmetry>'",
        ));
    }
    let layout = match head[2].as_str() {
        "coordinate" => MmLayout::Coordinate,
        "array" => MmLayout::Array,
        other => return Err(InputError::UnsupportedFormat(format!("layout {other}"))),
    };
    let field = match head[3].as_str() {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "complex" => MmField::Complex,
        other => return Err(InputError::UnsupportedFormat(format!("field {other}"))),
    };
    if head[4] != "general" {
        return Err(InputError::UnsupportedFormat(format!(
            "symmetry {}",
            head[4]
        )));
    }

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_err(2, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| parse_err(size_line, format!("invalid size line {size:?}")))?;
    let want = if layout == MmLayout::Coordinate { 3 } else { 2 };
    if dims.len() != want {
        return Err(parse_err(
            size_line,
            format!("size line needs {want} integers"),
        ));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols {
        return Err(InputError::NotSquare { rows, cols });
    }
    let n = rows;
    if n == 0 {
        return Err(parse_err(size_line, "matrix order must be at least 1"));
    }

    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    let mut last_line = size_line;
    match layout {
        MmLayout::Coordinate => {
            let nnz = dims[2];
            let mut seen = vec![false; n * n];
            let mut count = 0;
            for (line, l) in body {
                last_line = line;
                if count == nnz {
                    return Err(parse_err(line, format!("more than {nnz} entries")));
                }
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() < 3 {
                    return Err(parse_err(line, "expected 'row col value'"));
                }
                let i = parse_index(toks[0], n, line)?;
                let j = parse_index(toks[1], n, line)?;
                if seen[i * n + j] {
                    return Err(parse_err(
                        line,
                        format!("duplicate entry ({}, {})", i + 1, j + 1),
                    ));
                }
                seen[i * n + j] = true;
                data[i * n + j] = parse_value(&toks[2..], field, line)?;
                count += 1;
            }
            if count != nnz {
                return Err(parse_err(
                    last_line,
                    format!("expected {nnz} entries, found {count}"),
                ));
            }
        }
        MmLayout::Array => {
            let mut k = 0;
            for (line, l) in body {
                last_line = line;
                if k == n * n {
                    return Err(parse_err(line, format!("more than {} values", n * n)));
                }
                let toks: Vec<&str> = l.split_whitespace().collect();
                // column-major
                let (i, j) = (k % n, k / n);
                data[i * n + j] = parse_value(&toks, field, line)?;
                k += 1;
            }
            if k != n * n {
                return Err(parse_err(
                    last_line,
                    format!("expected {} values, found {k}", n * n),
                ));
            }
        }
    }
    Matrix::new(n, data).map_err(|e| matrix_err(e, last_line))
}

/// Writes `a` in coordinate layout, listing only nonzero entries. Values use
/// the shortest representation that parses back to the same double.
pub fn write_matrix_market(a: &Matrix) -> String {
    let n = a.order();
    let complex = !a.is_real();
    let nonzeros: Vec<(usize, usize, Complex64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, a[(i, j)]))
        .filter(|(_, _, z)| z.re != 0.0 || z.im != 0.0)
        .collect();
    let mut out = format!(
        "%%MatrixMarket matrix coordinate {} general\n{n} {n} {}\n",
        if complex { "complex" } else { "real" },
        nonzeros.len()
    );
    for (i, j, z) in nonzeros {
        if complex {
            writeln!(out, "{} {} {:?} {:?}", i + 1, j + 1, z.re, z.im).unwrap();
        } else {
            writeln!(out, "{} {} {:?}", i + 1, j + 1, z.re).unwrap();
        }
    }
    out
}

/// Real number, or complex literal `a+bi`, `a-bi` or `bi`.
fn parse_cell(cell: &str, line: usize) -> Result<Complex64, InputError> {
    let bad = || parse_err(line, format!("invalid cell {cell:?}"));
    let finite = |x: f64| if x.is_finite() { Ok(x) } else { Err(bad()) };
    if cell.is_empty() {
        return Err(bad());
    }
    let Some(body) = cell.strip_suffix('i') else {
        return finite(cell.parse().map_err(|_| bad())?).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    // last sign that is neither leading nor part of an exponent
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        s => s,
    };
    Ok(Complex64::new(
        finite(re.parse().map_err(|_| bad())?)?,
        finite(im.parse().map_err(|_| bad())?)?,
    ))
}

/// One matrix row per line, cells separated by commas.
pub fn parse_csv(text: &str) -> Result<Matrix, InputError> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut last_line = 1;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        last_line = line;
        let row = l
            .split(',')
            .map(|c| parse_cell(c.trim(), line))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    line,
                    format!("ragged row: {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    if rows[0].len() != rows.len() {
        return Err(InputError::NotSquare {
            rows: rows.len(),
            cols: rows[0].len(),
        });
    }
    Matrix::from_rows(rows).map_err(|e| matrix_err(e, last_line))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Auto,
    MatrixMarket,
    Csv,
}

impl Format {
    /// Resolves `Auto` from the file extension.
    pub fn resolve(self, path: &Path) -> Result<Self, InputError> {
        if self != Format::Auto {
            return Ok(self);
        }
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("mtx") => Ok(Format::MatrixMarket),
            Some("csv") => Ok(Format::Csv),
            _ => Err(InputError::UnknownExtension(path.display().to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BuiltinPaper,
    File,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: Matrix,
    pub provenance: Provenance,
}

pub fn read_matrix_file(path: &Path, format: Format) -> Result<NamedMatrix, InputError> {
    let format = format.resolve(path)?;
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let matrix = match format {
        Format::Csv => parse_csv(&text)?,
        _ => parse_matrix_market(&text)?,
    };
    Ok(NamedMatrix {
        name: path.display().to_string(),
        matrix,
        provenance: Provenance::File,
    })
}

pub const BUILTIN_NAMES: [&str; 6] = ["A1", "A2", "A3", "A4", "A5", "A6"];

fn builtin_rows(name: &str) -> Option<Vec<Vec<f64>>> {
    let rows: &[&[f64]] = match name {
        "A1" => &[
            &[-7.0, 1.0, -0.2, 2.0],
            &[7.0, 88.0, 2.0, -3.0],
            &[2.0, 0.5, 13.0, -2.0],
            &[0.5, 3.0, 1.0, 6.0],
        ],
        "A2" => &[
            &[8.0, 1.0, -0.2, 3.3],
            &[7.0, 13.0, 2.0, -3.0],
            &[-1.3, 6.7, 13.0, -2.0],
            &[0.5, 3.0, 1.0, 6.0],
        ],
        "A3" => &[
            &[21.0, -9.1, -4.2, -2.1],
            &[-0.7, 9.1, -4.2, -2.1],
            &[-0.7, -0.7, 4.9, -2.1],
            &[-0.7, -0.7, -0.7, 2.8],
        ],
        "A4" => &[
            &[5.0, 1.0, 0.2, 2.0],
            &[1.0, 21.0, 1.0, -3.0],
            &[2.0, 0.5, 6.4, -2.0],
            &[0.5, -1.0, 1.0, 9.0],
        ],
        "A5" => &[&[6.0, -3.0, -2.0], &[-1.0, 11.0, -8.0], &[-7.0, -3.0, 10.0]],
        "A6" => &[
            &[8.0, -0.5, -0.5, -0.5],
            &[-9.0, 16.0, -5.0, -5.0],
            &[-6.0, -4.0, 15.0, -3.0],
            &[-4.9, -0.9, -0.9, 6.0],
        ],
        _ => return None,
    };
    Some(rows.iter().map(|r| r.to_vec()).collect())
}

/// One of the built-in example matrices `A1`..`A6` (case-insensitive).
pub fn builtin(name: &str) -> Result<NamedMatrix, InputError> {
    let canonical = name.to_ascii_uppercase();
    let rows = builtin_rows(&canonical).ok_or_else(|| InputError::UnknownName(name.to_string()))?;
    Ok(NamedMatrix {
        name: canonical,
        matrix: Matrix::from_real_rows(&rows).expect("built-in matrices are valid"),
        provenance: Provenance::BuiltinPaper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(rows).unwrap()
    }

    #[test]
    fn mm_coordinate() {
        let m = parse_matrix_market(
            "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 2\n1 2 1\n2 2 3\n",
        )
        .unwrap();
        assert_eq!(m, real(&[&[2.0, 1.0], &[0.0, 3.0]]));
    }

    #[test]
    fn mm_array_is_column_major() {
        let m = parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n1\n3\n2\n4\n")
            .unwrap();
        assert_eq!(m, real(&[&[1.0, 2.0], &[3.0, 4.0]]));
    }

    #[test]
    fn mm_comments_integer_and_complex() {
        let m = parse_matrix_market(
            "%%MatrixMarket matrix coordinate integer general\n% note\n\n1 1 1\n1 1 -4\n",
        )
        .unwrap();
        assert_eq!(m, real(&[&[-4.0]]));
        let m = parse_matrix_market(
            "%%MatrixMarket Matrix Coordinate Complex General\n2 2 2\n1 1 1 2\n2 1 0 -1\n",
        )
        .unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(1.0, 2.0));
        assert_eq!(m[(1, 0)], Complex64::new(0.0, -1.0));
        assert_eq!(m[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn mm_errors() {
        let e =
            parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 3 5.0\n")
                .unwrap_err();
        assert!(matches!(e, InputError::Parse { line: 3, .. }), "{e}");
        for sym in ["symmetric", "skew-symmetric", "hermitian"] {
            let text = format!("%%MatrixMarket matrix coordinate real {sym}\n1 1 0\n");
            assert!(matches!(
                parse_matrix_market(&text),
                Err(InputError::UnsupportedFormat(_))
            ));
        }
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n1 1 0\n"),
            Err(InputError::UnsupportedFormat(_))
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix array real general\n2 3\n"),
            Err(InputError::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"),
            Err(InputError::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_market(
                "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n"
            ),
            Err(InputError::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\nnan\n"),
            Err(InputError::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix_market("hello\n"),
            Err(InputError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix_market(""),
            Err(InputError::Parse { .. })
        ));
    }

    #[test]
    fn mm_writer_round_trips_a_complex_matrix() {
        let m = Matrix::from_rows(vec![
            vec![Complex64::new(0.1, -3.5e-7), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(-2.0, 0.0), Complex64::new(1e300, 1.0 / 3.0)],
        ])
        .unwrap();
        assert_eq!(parse_matrix_market(&write_matrix_market(&m)).unwrap(), m);
    }

    #[test]
    fn csv_examples() {
        let m = parse_csv("6,-3,-2\n-1,11,-8\n-7,-3,10\n").unwrap();
        assert_eq!(m, builtin("A5").unwrap().matrix);
        let m = parse_csv("1+2i,0\n0,1\n").unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(1.0, 2.0));
        assert!(matches!(
            parse_csv("1,2\n3\n"),
            Err(InputError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_csv("1,2\n3,4\n5,6\n"),
            Err(InputError::Parse { .. }) | Err(InputError::NotSquare { .. })
        ));
        assert!(matches!(
            parse_csv("1,2,3\n4,5,6\n"),
            Err(InputError::NotSquare { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            parse_csv("1,x\n1,1\n"),
            Err(InputError::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_csv(""), Err(InputError::Parse { .. })));
    }

    #[test]
    fn csv_complex_literals() {
        let cases = [
            ("3-4i", Complex64::new(3.0, -4.0)),
            ("-1.5e-3+2e2i", Complex64::new(-1.5e-3, 200.0)),
            ("1e+2-1E-1i", Complex64::new(100.0, -0.1)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1+i", Complex64::new(1.0, 1.0)),
            ("-7", Complex64::new(-7.0, 0.0)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_cell(s, 1).unwrap(), want, "{s}");
        }
        for s in ["", "i+", "1+2j", "1 + 2i", "inf"] {
            assert!(parse_cell(s, 1).is_err(), "{s}");
        }
    }

    #[test]
    fn builtins() {
        let a1 = builtin("A1").unwrap();
        assert_eq!(a1.provenance, Provenance::BuiltinPaper);
        assert_eq!(a1.matrix.order(), 4);
        assert_eq!(a1.matrix[(0, 0)].re, -7.0);
        assert_eq!(a1.matrix[(0, 2)].re, -0.2);
        let a6 = builtin("a6").unwrap();
        assert_eq!(a6.name, "A6");
        let last: Vec<f64> = a6.matrix.row(3).iter().map(|z| z.re).collect();
        assert_eq!(last, vec![-4.9, -0.9, -0.9, 6.0]);
        assert!(matches!(builtin("A7"), Err(InputError::UnknownName(_))));
    }

    #[test]
    fn format_resolution() {
        assert_eq!(
            Format::Auto.resolve(Path::new("x.mtx")).unwrap(),
            Format::MatrixMarket
        );
        assert_eq!(
            Format::Auto.resolve(Path::new("x.CSV")).unwrap(),
            Format::Csv
        );
        assert!(Format::Auto.resolve(Path::new("x.txt")).is_err());
        assert_eq!(
            Format::Csv.resolve(Path::new("x.txt")).unwrap(),
            Format::Csv
        );
    }
}
