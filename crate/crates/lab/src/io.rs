//! Edge-list and coloring files.
//!
//! A graph file holds the vertex count on its first line, then one `u v`
//! pair per edge, 0-indexed. A coloring file adds a third column, `r` or `b`.
//! Blank lines and lines starting with `#` are skipped.

use std::fs;
use std::io::Write;
use std::path::Path;

use bookramsey::{Color, Graph, GraphBuilder, TwoColoring};

use crate::error::{LabError, LabResult};

struct Lines<'a> {
    path: &'a str,
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        Lines {
            path,
            inner: text.lines().enumerate(),
        }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> LabError {
        LabError::Parse {
            path: self.path.to_string(),
            line,
            msg: msg.into(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t.split_whitespace().collect()));
        }
        None
    }
}

fn parse_header(lines: &mut Lines<'_>) -> LabResult<usize> {
    let Some((line, f)) = lines.next() else {
        return Err(lines.err(0, "missing vertex count"));
    };
    match f.as_slice() {
        [n] => n.parse().map_err(|_| lines.err(line, format!("bad vertex count {n:?}"))),
        _ => Err(lines.err(line, "first line must hold only the vertex count")),
    }
}

fn parse_vertex(lines: &Lines<'_>, line: usize, s: &str, n: usize) -> LabResult<usize> {
    let v: usize = s.parse().map_err(|_| lines.err(line, format!("bad vertex {s:?}")))?;
    if v >= n {
        return Err(lines.err(line, format!("vertex {v} out of range for {n} vertices")));
    }
    Ok(v)
}

/// `path` only labels error messages.
pub fn parse_graph(path: &str, text: &str) -> LabResult<Graph> {
    let mut lines = Lines::new(path, text);
    let n = parse_header(&mut lines)?;
    let mut b = GraphBuilder::new(n).map_err(|e| lines.err(1, e.to_string()))?;
    while let Some((line, f)) = lines.next() {
        let [u, v] = f.as_slice() else {
            return Err(lines.err(line, "expected `u v`"));
        };
        let (u, v) = (parse_vertex(&lines, line, u, n)?, parse_vertex(&lines, line, v, n)?);
        b.add_edge(u, v).map_err(|e| lines.err(line, e.to_string()))?;
    }
    Ok(b.build())
}

pub fn parse_coloring(path: &str, text: &str) -> LabResult<TwoColoring> {
    let mut lines = Lines::new(path, text);
    let n = parse_header(&mut lines)?;
    let mut edges = Vec::new();
    while let Some((line, f)) = lines.next() {
        let [u, v, c] = f.as_slice() else {
            return Err(lines.err(line, "expected `u v r|b`"));
        };
        let color = match *c {
            "r" => Color::Red,
            "b" => Color::Blue,
            other => return Err(lines.err(line, format!("color must be r or b, got {other:?}"))),
        };
        edges.push((parse_vertex(&lines, line, u, n)?, parse_vertex(&lines, line, v, n)?, color));
    }
    TwoColoring::from_colored_edges(n, &edges).map_err(|e| lines.err(0, e.to_string()))
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn coloring_to_string(c: &TwoColoring) -> String {
    let mut s = format!("{}\n", c.host().vertex_count());
    for ((u, v), col) in c.host().edges().zip(c.edge_colors()) {
        let tag = if col == Color::Red { 'r' } else { 'b' };
        s.push_str(&format!("{u} {v} {tag}\n"));
    }
    s
}

fn read(path: &Path) -> LabResult<String> {
    fs::read_to_string(path).map_err(|e| LabError::io(path, e))
}

pub fn read_graph(path: &Path) -> LabResult<Graph> {
    parse_graph(&path.display().to_string(), &read(path)?)
}

pub fn read_coloring(path: &Path) -> LabResult<TwoColoring> {
    parse_coloring(&path.display().to_string(), &read(path)?)
}

/// A temporary file next to `path`, renamed over it by [`PendingFile::commit`].
/// Creating it up front surfaces an unwritable destination early.
pub struct PendingFile {
    tmp: tempfile::NamedTempFile,
    path: std::path::PathBuf,
}

impl PendingFile {
    pub fn create(path: &Path) -> LabResult<PendingFile> {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| LabError::io(path, e))?;
        Ok(PendingFile {
            tmp,
            path: path.to_path_buf(),
        })
    }

    pub fn commit(mut self, bytes: &[u8]) -> LabResult<()> {
        self.tmp.write_all(bytes).map_err(|e| LabError::io(&self.path, e))?;
        self.tmp.flush().map_err(|e| LabError::io(&self.path, e))?;
        self.tmp
            .persist(&self.path)
            .map_err(|e| LabError::io(&self.path, e.error))?;
        Ok(())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> LabResult<()> {
    PendingFile::create(path)?.commit(bytes)
}
