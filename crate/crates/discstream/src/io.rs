//! Text formats.
//!
//! Edge lists: a header line `n m`, then `m` lines `u v` (0-based). Lines
//! starting with `#` and blank lines are skipped. Pattern files add
//! `root <v>` and `color <v> <c>` directive lines. Stream files use the
//! edge-list layout with lines in stream order and no duplicates.

use std::fmt::Write as _;
use std::path::Path;

use discstream_core::{Error as CoreError, Graph, StreamOrder, Subgraph, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header promises {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: duplicate stream edge {u} {v}")]
    DuplicateStreamEdge { line: usize, u: VertexId, v: VertexId },
    #[error(transparent)]
    Graph(#[from] CoreError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('#')).then(|| (i + 1, t.split_whitespace().collect()))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found `{tok}`")))
}

struct Parsed {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    edge_lines: Vec<usize>,
    roots: Vec<VertexId>,
    colors: Vec<(VertexId, u32)>,
}

fn parse(text: &str, directives: bool) -> Result<Parsed> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(syntax(hl, "header must be `n m`"));
    }
    let n: usize = number(hl, header[0])?;
    let m: usize = number(hl, header[1])?;
    let mut p = Parsed {
        n,
        edges: Vec::with_capacity(m),
        edge_lines: Vec::with_capacity(m),
        roots: Vec::new(),
        colors: Vec::new(),
    };
    for (ln, toks) in lines {
        match toks.as_slice() {
            ["root", v] if directives => p.roots.push(number(ln, v)?),
            ["color", v, c] if directives => p.colors.push((number(ln, v)?, number(ln, c)?)),
            [u, v] => {
                p.edges.push((number(ln, u)?, number(ln, v)?));
                p.edge_lines.push(ln);
            }
            _ => return Err(syntax(ln, "expected `u v`")),
        }
    }
    if p.edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: p.edges.len(),
        });
    }
    Ok(p)
}

/// Parses an edge list. Repeated edges are merged.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let p = parse(text, false)?;
    Ok(Graph::new(p.n, &p.edges)?)
}

/// Serializes with edges in ascending order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.0, e.1);
    }
    out
}

/// Parses a pattern file into a rooted, optionally colored subgraph over
/// `0..n`.
pub fn parse_pattern(text: &str) -> Result<Subgraph> {
    let p = parse(text, true)?;
    let g = Graph::new(p.n, &p.edges)?;
    let mut s = Subgraph::from_graph(&g);
    for r in p.roots {
        g.check_vertex(r)?;
        s.add_root(r);
    }
    for (v, c) in p.colors {
        g.check_vertex(v)?;
        s.colors.insert(v, c);
    }
    Ok(s)
}

pub fn write_pattern(s: &Subgraph) -> String {
    let n = s.vertices.iter().next_back().map_or(0, |&v| v as usize + 1);
    let mut out = format!("{} {}\n", n, s.num_edges());
    for e in &s.edges {
        let _ = writeln!(out, "{} {}", e.0, e.1);
    }
    for r in &s.roots {
        let _ = writeln!(out, "root {r}");
    }
    for (v, c) in &s.colors {
        let _ = writeln!(out, "color {v} {c}");
    }
    out
}

/// Parses a stream file into its graph and the edge order as listed.
pub fn parse_stream(text: &str) -> Result<(Graph, Vec<(VertexId, VertexId)>)> {
    let p = parse(text, false)?;
    let mut seen = std::collections::BTreeSet::new();
    for (&(u, v), &ln) in p.edges.iter().zip(&p.edge_lines) {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(FormatError::DuplicateStreamEdge { line: ln, u, v });
        }
    }
    let g = Graph::new(p.n, &p.edges)?;
    Ok((g, p.edges))
}

pub fn write_stream(s: &StreamOrder<'_>) -> String {
    let g = s.graph();
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for e in s.edges() {
        let _ = writeln!(out, "{} {}", e.0, e.1);
    }
    out
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_pattern(path: &Path) -> Result<Subgraph> {
    parse_pattern(&std::fs::read_to_string(path)?)
}

pub fn read_stream(path: &Path) -> Result<(Graph, Vec<(VertexId, VertexId)>)> {
    parse_stream(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# a path\n4 3\n0 1\n\n1 2\n2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.num_edges(), 3);
        let again = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(g, again);
        assert_eq!(write_graph(&again), "4 3\n0 1\n1 2\n2 3\n");
    }

    #[test]
    fn duplicates_merge_in_graphs_but_not_streams() {
        let text = "3 3\n0 1\n1 0\n1 2\n";
        assert_eq!(parse_graph(text).unwrap().num_edges(), 2);
        assert!(matches!(
            parse_stream(text),
            Err(FormatError::DuplicateStreamEdge { line: 3, .. })
        ));
    }

    #[test]
    fn errors_point_at_lines() {
        assert!(matches!(parse_graph("3 1\n0 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(FormatError::EdgeCount { .. })));
        assert!(matches!(
            parse_graph("3 1\n0 0\n"),
            Err(FormatError::Graph(CoreError::SelfLoop(0)))
        ));
        assert!(matches!(parse_graph(""), Err(FormatError::Syntax { .. })));
        assert!(parse_graph("2 1\nroot 0\n").is_err());
    }

    #[test]
    fn pattern_directives() {
        let s = parse_pattern("3 2\n0 1\n1 2\nroot 0\ncolor 1 7\n").unwrap();
        assert!(s.roots.contains(&0));
        assert_eq!(s.colors[&1], 7);
        assert_eq!(parse_pattern(&write_pattern(&s)).unwrap(), s);
    }

    #[test]
    fn stream_order_kept() {
        let (g, order) = parse_stream("3 2\n2 1\n0 1\n").unwrap();
        let s = StreamOrder::from_edges(&g, &order).unwrap();
        assert_eq!(write_stream(&s), "3 2\n1 2\n0 1\n");
    }
}
