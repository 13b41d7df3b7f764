//! Text formats: the edge list, DOT export and transcript JSON.
//!
//! Edge-list layout, 0-indexed, `#` lines and blank lines ignored:
//!
//! ```text
//! n m_und m_dir
//! u v        (m_und undirected edges)
//! u v        (m_dir arcs u -> v)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use adaptivity_core::graph::MixedGraph;
use adaptivity_core::search::SearchTranscript;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Graph(#[from] adaptivity_core::graph::GraphError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str, want: usize) -> Result<Vec<usize>, FormatError> {
    let out: Vec<usize> = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("not a non-negative integer: {t:?}"))))
        .collect::<Result<_, _>>()?;
    if out.len() != want {
        return Err(parse_err(line, format!("expected {want} integers, found {}", out.len())));
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<MixedGraph, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header line"))?;
    let h = numbers(hline, header, 3)?;
    let (n, m_und, m_dir) = (h[0], h[1], h[2]);
    let mut und = Vec::with_capacity(m_und);
    let mut arcs = Vec::with_capacity(m_dir);
    for i in 0..m_und + m_dir {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("header promises {} edges, found {i}", m_und + m_dir)))?;
        let p = numbers(ln, l, 2)?;
        if p[0] >= n || p[1] >= n {
            return Err(parse_err(ln, format!("vertex out of range for n = {n}")));
        }
        if i < m_und {
            und.push((p[0], p[1]));
        } else {
            arcs.push((p[0], p[1]));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "more edges than the header declares"));
    }
    Ok(MixedGraph::from_edges(n, &und, &arcs)?)
}

/// Serializes `g`; `comment` lines, if any, are written first with a `# ` prefix.
pub fn write_edge_list(g: &MixedGraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    for c in comment.into_iter().flat_map(str::lines) {
        let _ = writeln!(out, "# {c}");
    }
    let und = g.undirected_edges();
    let arcs = g.arcs();
    let _ = writeln!(out, "{} {} {}", g.n(), und.len(), arcs.len());
    for (u, v) in und.into_iter().chain(arcs) {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_graph(path: &Path) -> Result<MixedGraph, FormatError> {
    let text =
        fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_edge_list(&text)
}

pub fn write_graph(path: &Path, g: &MixedGraph, comment: Option<&str>) -> Result<(), FormatError> {
    fs::write(path, write_edge_list(g, comment))
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// DOT digraph; undirected edges carry `dir=none`.
pub fn to_dot(g: &MixedGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.undirected_edges() {
        let _ = writeln!(out, "  {u} -> {v} [dir=none];");
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

pub fn transcript_json(t: &SearchTranscript) -> String {
    serde_json::to_string_pretty(t).expect("transcripts serialize")
}
