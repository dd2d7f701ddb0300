use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};
use crate::treedecomp::TreeDecomposition;

/// A tree decomposition together with an apex set `U_t ⊆ B_t` per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSumDecomposition {
    td: TreeDecomposition,
    apex: Vec<Vec<Vertex>>,
}

impl CliqueSumDecomposition {
    pub fn new(td: TreeDecomposition, apex: Vec<Vec<Vertex>>) -> Result<Self> {
        if apex.len() != td.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} apex sets for {} nodes",
                apex.len(),
                td.len()
            )));
        }
        let apex: Vec<Vec<Vertex>> = apex.iter().map(|a| normalize(a)).collect();
        for (t, a) in apex.iter().enumerate() {
            if let Some(v) = a.iter().find(|v| td.block(t).binary_search(v).is_err()) {
                return Err(Error::InvalidDecomposition(format!(
                    "apex vertex {v} of node {t} is not in its block"
                )));
            }
        }
        Ok(CliqueSumDecomposition { td, apex })
    }

    /// One node holding all of `g` with apex set `apex`.
    pub fn single(g: &Graph, apex: &[Vertex]) -> Result<Self> {
        g.check_vertices(apex)?;
        Self::new(TreeDecomposition::trivial(g), vec![apex.to_vec()])
    }

    pub fn decomposition(&self) -> &TreeDecomposition {
        &self.td
    }

    pub fn apex(&self, t: usize) -> &[Vertex] {
        &self.apex[t]
    }

    pub fn len(&self) -> usize {
        self.td.len()
    }

    pub fn is_empty(&self) -> bool {
        self.td.is_empty()
    }

    /// Checks validity for `g`, `|U_t| <= mu`, and, when `lambda` is given,
    /// `|A_t| <= lambda + mu + 1`.
    pub fn validate(&self, g: &Graph, lambda: Option<usize>, mu: usize) -> Result<()> {
        self.td.ensure_valid(g)?;
        for t in 0..self.len() {
            if self.apex[t].len() > mu {
                return Err(Error::ApexOverBound {
                    node: t,
                    size: self.apex[t].len(),
                    mu,
                });
            }
            if let Some(lambda) = lambda {
                let size = self.td.adhesion_set(t).len();
                let bound = lambda + mu + 1;
                if size > bound {
                    return Err(Error::AdhesionOverBound { node: t, size, bound });
                }
            }
        }
        Ok(())
    }
}

fn list(vs: &[Vertex]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// `csd <#nodes> <n>` followed by one
/// `node <id> parent=<id|-> block=<v,...> apex=<v,...>` line per node,
/// 1-based, nodes in pre-order.
pub fn serialize_csd(csd: &CliqueSumDecomposition, n: usize) -> String {
    let order = csd.td.pre_order();
    let mut id = vec![0; csd.len()];
    for (i, &t) in order.iter().enumerate() {
        id[t] = i + 1;
    }
    let mut out = String::new();
    writeln!(out, "csd {} {}", csd.len(), n).unwrap();
    for &t in &order {
        let parent = match csd.td.parent(t) {
            Some(p) => id[p].to_string(),
            None => "-".into(),
        };
        writeln!(
            out,
            "node {} parent={} block={} apex={}",
            id[t],
            parent,
            list(csd.td.block(t)),
            list(&csd.apex[t])
        )
        .unwrap();
    }
    out
}

fn parse_list(s: &str, line: usize, n: usize) -> Result<Vec<Vertex>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("expected a vertex, found `{tok}`")))?;
            if v == 0 || v > n {
                return Err(Error::parse(line, format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        })
        .collect()
}

/// Reads the format written by [`serialize_csd`]; node lines may appear in
/// any order.
/// `(parent, block, apex)` of one node line.
type NodeLine = (Option<usize>, Vec<Vertex>, Vec<Vertex>);

pub fn parse_csd(text: &str) -> Result<(CliqueSumDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut nodes: Vec<Option<NodeLine>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next().unwrap() {
            "csd" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                let count = toks.next().and_then(|t| t.parse().ok());
                let n = toks.next().and_then(|t| t.parse().ok());
                let (Some(count), Some(n)) = (count, n) else {
                    return Err(Error::parse(line_no, "expected `csd <#nodes> <n>`"));
                };
                header = Some((count, n, line_no));
                nodes = vec![None; count];
            }
            "node" => {
                let (count, n, _) = header.ok_or_else(|| Error::parse(line_no, "node before header"))?;
                let id: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "expected a node id"))?;
                if id == 0 || id > count {
                    return Err(Error::parse(line_no, format!("node {id} out of range 1..={count}")));
                }
                let (mut parent, mut block, mut apex) = (None, None, Vec::new());
                for tok in toks {
                    let (key, value) = tok
                        .split_once('=')
                        .ok_or_else(|| Error::parse(line_no, format!("expected key=value, found `{tok}`")))?;
                    match key {
                        "parent" => {
                            parent = Some(if value == "-" {
                                None
                            } else {
                                let p: usize = value
                                    .parse()
                                    .map_err(|_| Error::parse(line_no, format!("bad parent `{value}`")))?;
                                if p == 0 || p > count {
                                    return Err(Error::parse(line_no, format!("parent {p} out of range")));
                                }
                                Some(p - 1)
                            })
                        }
                        "block" => block = Some(parse_list(value, line_no, n)?),
                        "apex" => apex = parse_list(value, line_no, n)?,
                        other => return Err(Error::parse(line_no, format!("unknown field `{other}`"))),
                    }
                }
                let parent = parent.ok_or_else(|| Error::parse(line_no, "missing parent="))?;
                let block = block.ok_or_else(|| Error::parse(line_no, "missing block="))?;
                if nodes[id - 1].is_some() {
                    return Err(Error::parse(line_no, format!("node {id} given twice")));
                }
                nodes[id - 1] = Some((parent, block, apex));
            }
            other => return Err(Error::parse(line_no, format!("unexpected line tag `{other}`"))),
        }
    }
    let (_, n, _) = header.ok_or_else(|| Error::parse(0, "missing header"))?;
    let mut blocks = Vec::new();
    let mut parents = Vec::new();
    let mut apexes = Vec::new();
    for (t, node) in nodes.into_iter().enumerate() {
        let (p, b, a) = node.ok_or_else(|| Error::parse(0, format!("node {} missing", t + 1)))?;
        parents.push(p);
        blocks.push(b);
        apexes.push(a);
    }
    let td = TreeDecomposition::from_parents(blocks, parents)?;
    Ok((CliqueSumDecomposition::new(td, apexes)?, n))
}
