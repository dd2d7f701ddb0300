use std::collections::VecDeque;
use std::fmt::Write as _;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Writes `td <#nodes> <width+1> <n>`, one `b <node> <v>...` line per node
/// and one `t <parent> <child>` line per tree edge, all 1-based. Nodes are
/// numbered in pre-order, so the root is node 1.
pub fn serialize_td(td: &TreeDecomposition, n: usize) -> String {
    let td = td.canonical();
    let mut out = String::new();
    writeln!(out, "td {} {} {}", td.len(), td.width() + 1, n).unwrap();
    for t in 0..td.len() {
        write!(out, "b {}", t + 1).unwrap();
        for &v in td.block(t) {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for t in 0..td.len() {
        if let Some(p) = td.parent(t) {
            writeln!(out, "t {} {}", p + 1, t + 1).unwrap();
        }
    }
    out
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

/// Reads the format written by [`serialize_td`]. Lines may come in any
/// order; tree edges are read as undirected and the tree is rooted at the
/// first node. A leading `s` on the header (`s td ...`) is accepted.
/// Returns the decomposition and the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut blocks: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut pending: Vec<(usize, usize, Vec<Vertex>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace().peekable();
        if toks.peek() == Some(&"s") {
            toks.next();
        }
        match toks.next().unwrap_or("") {
            "td" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                let nodes = num(toks.next(), line_no, "node count")?;
                let size = num(toks.next(), line_no, "largest block size")?;
                let n = num(toks.next(), line_no, "vertex count")?;
                header = Some((nodes, size, n, line_no));
                blocks = vec![None; nodes];
            }
            "b" => {
                let id = num(toks.next(), line_no, "node id")?;
                let verts = toks
                    .map(|t| num(Some(t), line_no, "vertex"))
                    .collect::<Result<Vec<_>>>()?;
                pending.push((line_no, id, verts));
            }
            "t" => {
                let a = num(toks.next(), line_no, "node id")?;
                let b = num(toks.next(), line_no, "node id")?;
                edges.push((line_no, a, b));
            }
            other => return Err(Error::parse(line_no, format!("unexpected line tag `{other}`"))),
        }
    }
    let (nodes, size, n, header_line) = header.ok_or_else(|| Error::parse(0, "missing header"))?;
    if nodes == 0 {
        return Err(Error::parse(header_line, "a decomposition needs at least one node"));
    }
    for (line_no, id, verts) in pending {
        if id == 0 || id > nodes {
            return Err(Error::parse(line_no, format!("node {id} out of range 1..={nodes}")));
        }
        if blocks[id - 1].is_some() {
            return Err(Error::parse(line_no, format!("block {id} given twice")));
        }
        let mut block = Vec::with_capacity(verts.len());
        for v in verts {
            if v == 0 || v > n {
                return Err(Error::parse(line_no, format!("vertex {v} out of range 1..={n}")));
            }
            block.push(v - 1);
        }
        blocks[id - 1] = Some(block);
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(line_no, a, b) in &edges {
        for x in [a, b] {
            if x == 0 || x > nodes {
                return Err(Error::parse(line_no, format!("node {x} out of range 1..={nodes}")));
            }
        }
        adj[a - 1].push(b - 1);
        adj[b - 1].push(a - 1);
    }
    if edges.len() + 1 != nodes {
        return Err(Error::parse(
            header_line,
            format!("{} tree edges for {nodes} nodes", edges.len()),
        ));
    }
    let mut parent = vec![None; nodes];
    let mut seen = vec![false; nodes];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(t);
                queue.push_back(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::parse(header_line, "tree edges do not connect all nodes"));
    }
    let blocks: Vec<Vec<Vertex>> = blocks
        .into_iter()
        .enumerate()
        .map(|(t, b)| b.ok_or_else(|| Error::parse(0, format!("block {} missing", t + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::from_parents(blocks, parent)?;
    if td.width() + 1 != size && !(size == 0 && td.blocks().iter().all(Vec::is_empty)) {
        return Err(Error::parse(
            header_line,
            format!("header declares block size {size} but the largest block has {}", td.width() + 1),
        ));
    }
    Ok((td, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let td = TreeDecomposition::from_parents(
            vec![vec![1, 2], vec![0, 1], vec![2, 3]],
            vec![Some(1), None, Some(0)],
        )
        .unwrap();
        let text = serialize_td(&td, 4);
        assert!(text.starts_with("td 3 2 4\n"));
        let (back, n) = parse_td(&text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, td.canonical());
    }

    #[test]
    fn tolerant_of_order_and_pace_header() {
        let text = "c reordered\nt 2 1\nb 2 2 3\ns td 2 2 3\nb 1 1 2\n";
        let (td, n) = parse_td(text).unwrap();
        assert_eq!(n, 3);
        assert_eq!(td.block(td.root()), &[0, 1]);
        assert_eq!(td.len(), 2);
    }

    #[test]
    fn reports_bad_input() {
        assert!(parse_td("td 2 2 3\nb 1 1 2\nb 2 2 3\n").is_err());
        assert!(parse_td("td 1 2 3\nb 1 1 4\n").is_err());
        let err = parse_td("td 1 2 3\nb 1 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
