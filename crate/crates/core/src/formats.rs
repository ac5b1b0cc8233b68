//! Plain-text and JSON file formats.
//!
//! * Graph text: `L r` on the first line, then one `top bottom` pair per edge,
//!   sorted, LF line endings.
//! * alist (tight): `n m`, `max_col_wt max_row_wt`, column weights, row
//!   weights, then 1-based row lists per column and column lists per row.
//! * Pattern files: one pattern per line as space-separated 0-based column
//!   indices; lines starting with `#` are labels and are skipped on read.
//! * Code metadata JSON: parameters, symbol labels, the base graph and a
//!   content hash of H. Loading rebuilds H from the graph and checks the hash.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construction::{build, CodeInstance};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::BipartiteGraph;

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {tok:?}")))
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace().map(|t| parse_usize(t, lineno)).collect()
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    let mut out = String::new();
    for (i, v) in values.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").expect("write to String");
    }
    out
}

pub fn write_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.l(), g.r());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("write to String");
    }
    out
}

pub fn read_graph(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let head = numbers(header, 1)?;
    let [l, r] = head[..] else {
        return Err(Error::parse(1, "header must be `L r`"));
    };
    let mut edges = Vec::with_capacity(l * r);
    for (i, line) in lines {
        let nums = numbers(line, i + 1)?;
        let [u, v] = nums[..] else {
            return Err(Error::parse(i + 1, "edge line must be `top bottom`"));
        };
        edges.push((u, v));
    }
    if edges.len() != l * r {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {} edges, found {}", l * r, edges.len()),
        ));
    }
    BipartiteGraph::new(l, r, edges)
}

pub fn write_alist(h: &BitMatrix) -> String {
    let col_rows = h.column_adjacency();
    let row_cols: Vec<Vec<usize>> = (0..h.rows()).map(|i| h.row_support(i)).collect();
    let col_w: Vec<usize> = col_rows.iter().map(Vec::len).collect();
    let row_w: Vec<usize> = row_cols.iter().map(Vec::len).collect();
    let mut out = String::new();
    writeln!(out, "{} {}", h.cols(), h.rows()).expect("write to String");
    writeln!(
        out,
        "{} {}",
        col_w.iter().max().copied().unwrap_or(0),
        row_w.iter().max().copied().unwrap_or(0)
    )
    .expect("write to String");
    writeln!(out, "{}", join(col_w)).expect("write to String");
    writeln!(out, "{}", join(row_w)).expect("write to String");
    for rows in &col_rows {
        writeln!(out, "{}", join(rows.iter().map(|i| i + 1))).expect("write to String");
    }
    for cols in &row_cols {
        writeln!(out, "{}", join(cols.iter().map(|j| j + 1))).expect("write to String");
    }
    out
}

/// Reads an alist file. Zero entries in index lists (padding) are ignored;
/// the per-row lists must agree with the per-column lists.
pub fn read_alist(text: &str) -> Result<BitMatrix> {
    let lines: Vec<&str> = text.lines().collect();
    let line = |i: usize| -> Result<Vec<usize>> {
        let s = lines.get(i).ok_or_else(|| Error::parse(i + 1, "unexpected end of file"))?;
        numbers(s, i + 1)
    };
    let dims = line(0)?;
    let [n, m] = dims[..] else {
        return Err(Error::parse(1, "expected `n m`"));
    };
    let col_w = line(2)?;
    let row_w = line(3)?;
    if col_w.len() != n || row_w.len() != m {
        return Err(Error::parse(3, "weight list length mismatch"));
    }
    let mut h = BitMatrix::zeros(m, n);
    for (j, &w) in col_w.iter().enumerate() {
        let rows: Vec<usize> = line(4 + j)?.into_iter().filter(|&x| x != 0).collect();
        if rows.len() != w {
            return Err(Error::parse(5 + j, "column weight mismatch"));
        }
        for i in rows {
            if i > m {
                return Err(Error::parse(5 + j, format!("row {i} out of range")));
            }
            h.set(i - 1, j, true);
        }
    }
    for (i, &w) in row_w.iter().enumerate() {
        let mut cols: Vec<usize> = line(4 + n + i)?
            .into_iter()
            .filter(|&x| x != 0)
            .map(|x| x - 1)
            .collect();
        cols.sort_unstable();
        if cols.len() != w || cols != h.row_support(i) {
            return Err(Error::parse(5 + n + i, "row list disagrees with column lists"));
        }
    }
    Ok(h)
}

pub fn parse_pattern(line: &str) -> Result<Vec<usize>> {
    numbers(line, 1)
}

pub fn format_pattern(pattern: &[usize]) -> String {
    join(pattern.iter().copied())
}

pub fn read_patterns(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty())
        .map(|(i, l)| numbers(l, i + 1))
        .collect()
}

/// Pattern file with a `# label` line before each pattern.
pub fn write_labeled_patterns<'a>(entries: impl IntoIterator<Item = (String, &'a [usize])>) -> String {
    let mut out = String::new();
    for (label, pattern) in entries {
        writeln!(out, "# {label}").expect("write to String");
        writeln!(out, "{}", format_pattern(pattern)).expect("write to String");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    #[serde(rename = "L")]
    pub l: usize,
    pub r: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMetadata {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub row_count: usize,
    pub labels: Vec<String>,
    pub base_graph: GraphRecord,
    pub h_sha256: String,
}

impl CodeMetadata {
    pub fn from_code(code: &CodeInstance) -> Self {
        let g = &code.base_graph;
        Self {
            n: code.n,
            k: code.k_claimed,
            r: code.r,
            t: code.t,
            l: code.l(),
            row_count: code.h.rows(),
            labels: code.index.labels(),
            base_graph: GraphRecord {
                l: g.l(),
                r: g.r(),
                edges: g.edges().to_vec(),
            },
            h_sha256: code.content_hash(),
        }
    }

    /// Rebuilds the code from the stored graph and checks the stored hash.
    pub fn rebuild(&self) -> Result<CodeInstance> {
        let g = BipartiteGraph::new(
            self.base_graph.l,
            self.base_graph.r,
            self.base_graph.edges.clone(),
        )?;
        let code = build(&g, self.t)?;
        let computed = code.content_hash();
        if computed != self.h_sha256 {
            return Err(Error::HashMismatch {
                stored: self.h_sha256.clone(),
                computed,
            });
        }
        Ok(code)
    }
}

pub fn write_code_json(code: &CodeInstance) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&CodeMetadata::from_code(code))?;
    s.push('\n');
    Ok(s)
}

pub fn read_code_json(text: &str) -> Result<CodeInstance> {
    let meta: CodeMetadata = serde_json::from_str(text)?;
    meta.rebuild()
}
