//! Puzzle and region files, tableau rendering and matrix dumps.
//!
//! Puzzle file:
//!
//! ```text
//! n 3
//! regions layout.txt      (optional, relative to the puzzle file)
//! 2 0 3
//! 0 0 1
//! 1 3 0
//! ```
//!
//! `0` marks an empty cell. A single 81-character line of digits and `.`
//! is also accepted as a 9×9 puzzle.

use std::fmt;
use std::path::Path;

use crate::difference::DenseMatrix;
use crate::error::{Error, Result};
use crate::permutation::{exact_sqrt, Partition};
use crate::problem::{Given, ProblemSpec};
use crate::sign::Assignment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleDocument {
    pub n: usize,
    /// `n` rows of `n` values, `0` for an empty cell.
    pub grid: Vec<Vec<i64>>,
    pub region_path: Option<String>,
    pub source_name: String,
}

impl PuzzleDocument {
    /// Non-empty cells as givens, row-major: cell `(r, c)` is `(r−1)n + c`.
    pub fn givens(&self) -> Vec<Given> {
        self.grid
            .iter()
            .flatten()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| Given::new(i + 1, v))
            .collect()
    }

    /// The whole grid as a vector, empty cells included as `0`.
    pub fn to_assignment(&self) -> Assignment {
        Assignment {
            n: self.n,
            cells: self.grid.iter().flatten().copied().collect(),
        }
    }

    /// Regions when given, else rows/columns/subsquares for square `n`,
    /// else a Latin square.
    pub fn problem(&self, regions: Option<&Partition>) -> Result<ProblemSpec> {
        match regions {
            Some(part) => {
                if part.n() != self.n {
                    return Err(Error::InvalidArgument(format!(
                        "regions are for n = {}, puzzle has n = {}",
                        part.n(),
                        self.n
                    )));
                }
                ProblemSpec::gerechte(part, self.givens())
            }
            None if self.n >= 4 && exact_sqrt(self.n).is_some() => {
                ProblemSpec::classic(self.n, self.givens())
            }
            None => ProblemSpec::latin(self.n, self.givens()),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

pub fn parse_puzzle(text: &str, source_name: &str) -> Result<PuzzleDocument> {
    let mut lines = content_lines(text).peekable();
    let Some(&(first_no, first)) = lines.peek() else {
        return Err(parse_err(1, 1, "empty puzzle"));
    };
    if let Some(doc) = parse_dot_string(first.trim(), source_name) {
        if let Some((no, _)) = lines.nth(1) {
            return Err(parse_err(
                no,
                1,
                "unexpected content after 81-character puzzle",
            ));
        }
        return Ok(doc);
    }
    lines.next();

    let header = tokens(first);
    let n = match header.as_slice() {
        [(_, "n"), (col, value)] => value
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| parse_err(first_no, *col, format!("invalid size '{value}'")))?,
        _ => return Err(parse_err(first_no, 1, "expected header 'n <size>'")),
    };

    let mut region_path = None;
    if let Some(&(no, line)) = lines.peek() {
        let toks = tokens(line);
        if toks.first().map(|t| t.1) == Some("regions") {
            lines.next();
            match toks.as_slice() {
                [_, (_, path)] => region_path = Some(path.to_string()),
                _ => return Err(parse_err(no, 1, "expected 'regions <path>'")),
            }
        }
    }

    let mut grid = Vec::with_capacity(n);
    for r in 0..n {
        let Some((no, line)) = lines.next() else {
            return Err(parse_err(
                text.lines().count() + 1,
                1,
                format!("expected {n} grid rows, found {r}"),
            ));
        };
        let toks = tokens(line);
        if toks.len() != n {
            let col = toks.get(n).map_or(line.chars().count() + 1, |t| t.0);
            return Err(parse_err(
                no,
                col,
                format!("expected {n} values, found {}", toks.len()),
            ));
        }
        let row = toks
            .iter()
            .map(|&(col, tok)| match tok.parse::<i64>() {
                Ok(v) if (0..=n as i64).contains(&v) => Ok(v),
                Ok(v) => Err(parse_err(no, col, format!("value {v} outside 0..={n}"))),
                Err(_) => Err(parse_err(no, col, format!("'{tok}' is not an integer"))),
            })
            .collect::<Result<Vec<_>>>()?;
        grid.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, 1, "unexpected content after the grid"));
    }
    Ok(PuzzleDocument {
        n,
        grid,
        region_path,
        source_name: source_name.to_string(),
    })
}

/// The common one-line 9×9 form: 81 characters, digits or `.` for blank.
pub fn parse_dot_string(s: &str, source_name: &str) -> Option<PuzzleDocument> {
    if s.chars().count() != 81 || !s.chars().all(|c| c == '.' || c.is_ascii_digit()) {
        return None;
    }
    let vals: Vec<i64> = s
        .chars()
        .map(|c| c.to_digit(10).map_or(0, i64::from))
        .collect();
    Some(PuzzleDocument {
        n: 9,
        grid: vals.chunks(9).map(<[i64]>::to_vec).collect(),
        region_path: None,
        source_name: source_name.to_string(),
    })
}

/// Region file: `n` lines of `n` labels. Groups are ordered by first
/// appearance of their label in reading order.
pub fn parse_regions(text: &str, n: usize) -> Result<Partition> {
    let mut labels = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (no, line) in content_lines(text) {
        let toks = tokens(line);
        if rows == n {
            return Err(parse_err(no, 1, format!("expected {n} region rows")));
        }
        if toks.len() != n {
            return Err(parse_err(
                no,
                1,
                format!("expected {n} labels, found {}", toks.len()),
            ));
        }
        labels.extend(toks.into_iter().map(|t| t.1.to_string()));
        rows += 1;
    }
    if rows != n {
        return Err(parse_err(
            text.lines().count() + 1,
            1,
            format!("expected {n} region rows, found {rows}"),
        ));
    }
    Partition::from_labels(n, &labels)
}

/// Reads a puzzle file and, if it names one, its region file.
pub fn load_puzzle(path: &Path) -> Result<(PuzzleDocument, Option<Partition>)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc = parse_puzzle(&text, &path.display().to_string())?;
    let regions = match &doc.region_path {
        Some(rel) => {
            let rpath = path.parent().unwrap_or(Path::new(".")).join(rel);
            Some(load_regions(&rpath, doc.n)?)
        }
        None => None,
    };
    Ok((doc, regions))
}

pub fn load_regions(path: &Path, n: usize) -> Result<Partition> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_regions(&text, n)
}

/// The x-tableau as text: `n` lines of `n` space-separated values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauRendering {
    pub text: String,
}

impl TableauRendering {
    /// The rendering with an `n <n>` header, readable by [`parse_puzzle`].
    pub fn to_puzzle_text(&self, n: usize) -> String {
        format!("n {n}\n{}", self.text)
    }
}

impl fmt::Display for TableauRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn render_tableau(x: &Assignment) -> TableauRendering {
    let mut text = String::new();
    for row in x.cells.chunks(x.n.max(1)) {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    TableauRendering { text }
}

/// Like [`render_tableau`] with `|` and `-` rules between subsquares when
/// `n` is a perfect square.
pub fn render_tableau_ruled(x: &Assignment) -> TableauRendering {
    let n = x.n;
    let Some(m) = exact_sqrt(n).filter(|&m| m > 1) else {
        return render_tableau(x);
    };
    let width = n.to_string().len();
    let mut lines = Vec::new();
    for (r, row) in x.cells.chunks(n).enumerate() {
        if r > 0 && r % m == 0 {
            let seg = "-".repeat(m * (width + 1) - 1);
            lines.push(vec![seg; m].join("-+-"));
        }
        let parts: Vec<String> = row
            .chunks(m)
            .map(|blk| {
                blk.iter()
                    .map(|v| format!("{v:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        lines.push(parts.join(" | "));
    }
    TableauRendering {
        text: lines.join("\n") + "\n",
    }
}

/// Header line followed by the dense rows.
pub fn matrix_dump(header: &str, m: &DenseMatrix) -> String {
    format!("{header}\n{m}")
}
