use std::collections::{BTreeSet, HashSet};
use std::str::FromStr;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Greedy elimination rule. Ties go to the lowest vertex id.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    MinFill,
    MinDegree,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-fill" | "minfill" => Ok(Strategy::MinFill),
            "min-degree" | "mindegree" => Ok(Strategy::MinDegree),
            other => Err(Error::InvalidParameter(format!("unknown heuristic `{other}`"))),
        }
    }
}

fn fill_in(adj: &[HashSet<Vertex>], v: Vertex) -> usize {
    let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (a, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[a + 1..] {
            if !adj[x].contains(&y) {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy elimination ordering under `strategy`.
pub fn elimination_order(g: &Graph, strategy: Strategy) -> Vec<Vertex> {
    let n = g.n();
    let mut adj: Vec<HashSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let score = |adj: &[HashSet<Vertex>], v: Vertex| match strategy {
        Strategy::MinDegree => adj[v].len(),
        Strategy::MinFill => fill_in(adj, v),
    };
    let mut current: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (current[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &x in &nbrs {
            adj[x].remove(&v);
        }
        for (a, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[a + 1..] {
                if adj[x].insert(y) {
                    adj[y].insert(x);
                }
            }
        }
        adj[v].clear();
        let mut touched: BTreeSet<Vertex> = nbrs.iter().copied().collect();
        if strategy == Strategy::MinFill {
            for &x in &nbrs {
                touched.extend(adj[x].iter().copied());
            }
        }
        for u in touched {
            if queue.remove(&(current[u], u)) {
                current[u] = score(&adj, u);
                queue.insert((current[u], u));
            }
        }
    }
    order
}

/// The decomposition induced by an elimination ordering: the node of `v`
/// holds `v` and its later neighbours at elimination time, hanging below the
/// node of the earliest-eliminated of those neighbours. Nodes without later
/// neighbours hang below the last eliminated vertex. Nodes contained in
/// their parent are merged away.
pub fn from_elimination_order(g: &Graph, order: &[Vertex]) -> Result<TreeDecomposition> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::InvalidParameter(format!(
            "ordering has {} entries for {n} vertices",
            order.len()
        )));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        g.check_vertex(v)?;
        if pos[v] != usize::MAX {
            return Err(Error::InvalidParameter(format!("vertex {v} repeated in ordering")));
        }
        pos[v] = i;
    }
    if n == 0 {
        return Ok(TreeDecomposition::single(Vec::new()));
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut blocks = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let last = n - 1;
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
        let mut block = later.clone();
        block.push(v);
        blocks.push(block);
        let p = later.iter().map(|&u| pos[u]).min();
        parent.push(match p {
            Some(p) => Some(p),
            None if i == last => None,
            None => Some(last),
        });
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    Ok(TreeDecomposition::from_parents(blocks, parent)?.compress())
}

/// Greedy decomposition: deterministic for a given strategy.
pub fn heuristic_decomposition(g: &Graph, strategy: Strategy) -> TreeDecomposition {
    from_elimination_order(g, &elimination_order(g, strategy)).expect("ordering is a permutation")
}
