use std::collections::{BTreeSet, HashSet};

use super::heuristic::{elimination_order, from_elimination_order, Strategy};
use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest graph accepted by [`exact_treewidth`].
pub const DEFAULT_EXACT_TW_CEILING: usize = 25;

/// Search nodes per call before giving up with an inexact answer.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Outcome of the exact search. When the budget runs out, `exact` is false,
/// `width` is the best upper bound found and `lower_bound` the largest width
/// proved impossible plus one.
#[derive(Clone, Debug)]
pub struct ExactTreewidth {
    pub width: usize,
    pub lower_bound: usize,
    pub exact: bool,
    pub decomposition: TreeDecomposition,
    pub nodes: u64,
}

pub fn exact_treewidth(g: &Graph, node_budget: u64) -> Result<ExactTreewidth> {
    exact_treewidth_with_ceiling(g, node_budget, DEFAULT_EXACT_TW_CEILING)
}

/// Iterative deepening over the width with an elimination-ordering
/// branch-and-bound per connected component. Each width is decided by a
/// depth-first search over eliminated sets with memoized failures.
pub fn exact_treewidth_with_ceiling(g: &Graph, node_budget: u64, ceiling: usize) -> Result<ExactTreewidth> {
    if g.n() > ceiling.min(64) {
        return Err(Error::CeilingExceeded {
            what: "exact tree-width",
            size: g.n(),
            ceiling: ceiling.min(64),
        });
    }
    let mut out = ExactTreewidth {
        width: 0,
        lower_bound: 0,
        exact: true,
        decomposition: TreeDecomposition::single(Vec::new()),
        nodes: 0,
    };
    let mut parts = Vec::new();
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&comp)?;
        let r = solve_component(&h, node_budget.saturating_sub(out.nodes));
        out.width = out.width.max(r.width);
        out.lower_bound = out.lower_bound.max(r.lower_bound);
        out.exact &= r.exact;
        out.nodes += r.nodes;
        let td = from_elimination_order(&h, &r.order)?;
        parts.push(td.map_vertices(|v| map[v]));
    }
    if let Some(td) = TreeDecomposition::join_disjoint(parts) {
        out.decomposition = td;
    }
    if out.exact {
        out.lower_bound = out.width;
    }
    Ok(out)
}

struct ComponentResult {
    width: usize,
    lower_bound: usize,
    exact: bool,
    order: Vec<Vertex>,
    nodes: u64,
}

fn order_width(g: &Graph, order: &[Vertex]) -> usize {
    from_elimination_order(g, order).map(|td| td.width()).unwrap_or(usize::MAX)
}

fn solve_component(g: &Graph, budget: u64) -> ComponentResult {
    let n = g.n();
    let mut best_order = elimination_order(g, Strategy::MinFill);
    let mut ub = order_width(g, &best_order);
    let alt = elimination_order(g, Strategy::MinDegree);
    let alt_w = order_width(g, &alt);
    if alt_w < ub {
        ub = alt_w;
        best_order = alt;
    }
    let lb = g.clique_number().saturating_sub(1).max(minor_min_width(g));
    let mut result = ComponentResult {
        width: ub,
        lower_bound: lb,
        exact: true,
        order: best_order,
        nodes: 0,
    };
    if lb >= ub || n <= 1 {
        return result;
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for w in lb..ub {
        let mut search = Search {
            adj: &adj,
            all,
            w,
            failed: HashSet::new(),
            nodes: 0,
            budget: budget.saturating_sub(result.nodes),
            order: Vec::with_capacity(n),
        };
        let outcome = search.run(0);
        result.nodes += search.nodes;
        match outcome {
            Some(true) => {
                result.width = w;
                result.lower_bound = w;
                result.order = search.order;
                return result;
            }
            Some(false) => result.lower_bound = w + 1,
            None => {
                result.exact = false;
                return result;
            }
        }
    }
    result.lower_bound = ub;
    result
}

struct Search<'a> {
    adj: &'a [u64],
    all: u64,
    w: usize,
    failed: HashSet<u64>,
    nodes: u64,
    budget: u64,
    order: Vec<Vertex>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl Search<'_> {
    /// Neighbours of `v` in the graph left after eliminating `s`: vertices
    /// outside `s` reachable from `v` through `s`.
    fn neighbourhood(&self, s: u64, v: usize) -> u64 {
        let mut result = 0;
        let mut seen = 0u64;
        let mut frontier = self.adj[v];
        loop {
            result |= frontier & !s;
            let inner = frontier & s & !seen;
            if inner == 0 {
                break;
            }
            seen |= inner;
            frontier = bits(inner).fold(0, |m, x| m | self.adj[x]);
        }
        result & !(1 << v)
    }

    fn is_clique(nb: &[u64], q: u64) -> bool {
        bits(q).all(|x| q & !(1 << x) & !nb[x] == 0)
    }

    fn run(&mut self, s: u64) -> Option<bool> {
        let rest = self.all & !s;
        if rest.count_ones() as usize <= self.w + 1 {
            self.order.extend(bits(rest));
            return Some(true);
        }
        if self.failed.contains(&s) {
            return Some(false);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let mut nb = vec![0u64; self.adj.len()];
        for v in bits(rest) {
            nb[v] = self.neighbourhood(s, v);
        }
        let mut forced = None;
        let mut candidates = Vec::new();
        for v in bits(rest) {
            let q = nb[v];
            let d = q.count_ones() as usize;
            if d > self.w {
                continue;
            }
            let safe = Self::is_clique(&nb, q) || bits(q).any(|u| Self::is_clique(&nb, q & !(1 << u)));
            if safe {
                forced = Some(v);
                break;
            }
            candidates.push((d, v));
        }
        if let Some(v) = forced {
            candidates = vec![(0, v)];
        } else {
            candidates.sort_unstable();
        }
        for (_, v) in candidates {
            self.order.push(v);
            match self.run(s | (1 << v)) {
                Some(true) => return Some(true),
                Some(false) => {
                    self.order.pop();
                }
                None => return None,
            }
        }
        self.failed.insert(s);
        Some(false)
    }
}

/// Contraction degeneracy lower bound: repeatedly contract a minimum-degree
/// vertex into its minimum-degree neighbour, recording the largest minimum
/// degree seen.
pub fn minor_min_width(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<Vertex> = (0..n).collect();
    let mut lb = 0;
    while alive.len() > 1 {
        let v = *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).unwrap();
        lb = lb.max(adj[v].len());
        alive.remove(&v);
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &x in &nbrs {
            adj[x].remove(&v);
        }
        if let Some(&u) = nbrs.iter().min_by_key(|&&u| (adj[u].len(), u)) {
            for &x in &nbrs {
                if x != u && adj[u].insert(x) {
                    adj[x].insert(u);
                }
            }
        }
        adj[v].clear();
    }
    lb
}
