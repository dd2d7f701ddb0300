use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Text formats accepted by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// `p edge <n> <m>` header, `e <u> <v>` edge lines, `c` comments.
    Dimacs,
    /// `<n> <m>` header followed by `<u> <v>` lines; `#` or `c` comments.
    EdgeList,
}

impl GraphFormat {
    /// Picks the DIMACS-like reader when the first significant line is a
    /// `p` header, the plain edge list otherwise.
    pub fn detect(text: &str) -> GraphFormat {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with('p') => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" | "dimacs-like" => Ok(GraphFormat::Dimacs),
            "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            other => Err(Error::InvalidParameter(format!("unknown graph format `{other}`"))),
        }
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

/// Parses a graph with 1-based vertex numbers. Duplicate and reversed edge
/// lines collapse to one edge; the declared edge count must equal the
/// number of distinct edges.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let is_header = match format {
            GraphFormat::Dimacs => {
                let tag = toks.next().unwrap();
                match tag {
                    "p" => {
                        let kind = toks.next();
                        if kind != Some("edge") && kind != Some("col") {
                            return Err(Error::parse(line_no, "expected `p edge <n> <m>`"));
                        }
                        true
                    }
                    "e" => false,
                    other => {
                        return Err(Error::parse(line_no, format!("unexpected line tag `{other}`")))
                    }
                }
            }
            GraphFormat::EdgeList => header.is_none(),
        };
        if is_header {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            let n = parse_num(toks.next(), line_no, "vertex count")?;
            let m = parse_num(toks.next(), line_no, "edge count")?;
            if toks.next().is_some() {
                return Err(Error::parse(line_no, "trailing tokens in header"));
            }
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| Error::parse(line_no, "edge before header"))?;
        let u = parse_num(toks.next(), line_no, "endpoint")?;
        let v = parse_num(toks.next(), line_no, "endpoint")?;
        if toks.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens in edge line"));
        }
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex {x} out of range 1..={n}"),
                ));
            }
        }
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u - 1, v - 1));
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing header"))?;
    let g = Graph::from_edges(n, &edges)?;
    if g.m() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {} distinct edges were read", g.m()),
        ));
    }
    Ok(g)
}

/// Emits the DIMACS-like format with sorted edges and 1-based vertices.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
