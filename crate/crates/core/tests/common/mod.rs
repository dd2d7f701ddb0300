//! Test-side oracles written independently of the library code paths.
#![allow(dead_code)]

pub mod facts;

use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;
use shiftptas::{Graph, ProblemKind, Vertex};

/// Arbitrary simple graphs on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Tree-width by the subset recursion over elimination prefixes:
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)`, where `Q(S, v)` is
/// the set of vertices outside `S + v` reachable from `v` through `S`.
pub fn treewidth(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "oracle is exponential");
    if n == 0 {
        return 0;
    }
    let adj = adjacency_masks(g);
    let q = |s: u64, v: usize| -> u32 {
        let mut seen = 1u64 << v;
        let mut frontier = 1u64 << v;
        let mut out = 0u64;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out.count_ones()
    };
    let full = (1u64 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cand = tw[prev as usize].max(q(prev, v));
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    tw[full as usize] as usize
}

pub fn is_feasible(g: &Graph, kind: ProblemKind, set: u64) -> bool {
    let adj = adjacency_masks(g);
    (0..g.n()).all(|v| {
        let inside = set >> v & 1 == 1;
        match kind {
            ProblemKind::VertexCover => inside || adj[v] & !set == 0,
            ProblemKind::IndependentSet => !inside || adj[v] & set == 0,
            ProblemKind::DominatingSet => inside || adj[v] & set != 0,
        }
    })
}

/// Optimum by enumerating every vertex subset.
pub fn optimum(g: &Graph, kind: ProblemKind) -> usize {
    let n = g.n();
    assert!(n <= 24, "oracle is exponential");
    let sizes = (0u64..1 << n).filter(|&s| is_feasible(g, kind, s)).map(|s| s.count_ones() as usize);
    if kind.is_minimization() {
        sizes.min().unwrap()
    } else {
        sizes.max().unwrap()
    }
}

pub fn mask(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn bfs(g: &Graph, v: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Vertices at distance `lo..=hi` from `v`, `lo` clamped at 0.
pub fn band(g: &Graph, v: Vertex, lo: i64, hi: i64) -> Vec<Vertex> {
    bfs(g, v)
        .iter()
        .enumerate()
        .filter(|(_, d)| matches!(d, Some(d) if (*d as i64) >= lo.max(0) && (*d as i64) <= hi))
        .map(|(w, _)| w)
        .collect()
}

pub fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// All labelled trees on `n` vertices, decoded from Prüfer sequences.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n <= 1 {
        return vec![Graph::new(n)];
    }
    if n == 2 {
        return vec![Graph::from_edges(2, &[(0, 1)]).unwrap()];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            let mut degree = vec![1usize; n];
            for &s in &seq {
                degree[s] += 1;
            }
            let mut edges = Vec::with_capacity(n - 1);
            for &s in &seq {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, s));
                degree[leaf] -= 1;
                degree[s] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn components_within(adj: &[u64], set: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut left = set;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & set & !comp;
            comp |= nb;
            frontier |= nb;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

/// Whether `g` is built from graphs of tree-width at most `w` by clique-sums
/// along sets of at most `omega` vertices: either `tw(g) <= w`, or some
/// `X` with `|X| <= omega` leaves two or more components `C` and every
/// `g[X + C]` with `X` made a clique decomposes in turn.
pub fn decomposes(g: &Graph, w: usize, omega: usize) -> bool {
    fn rec(adj: &[u64], set: u64, w: usize, omega: usize, memo: &mut HashMap<(u64, Vec<u64>), bool>) -> bool {
        let key = (set, adj.iter().enumerate().filter(|(v, _)| set >> v & 1 == 1).map(|(_, a)| a & set).collect());
        if let Some(&b) = memo.get(&key) {
            return b;
        }
        let verts: Vec<usize> = (0..adj.len()).filter(|&v| set >> v & 1 == 1).collect();
        let local: Vec<(usize, usize)> = verts
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| verts[i + 1..].iter().enumerate().map(move |(j, &v)| (i, i + 1 + j, u, v)))
            .filter(|&(_, _, u, v)| adj[u] >> v & 1 == 1)
            .map(|(a, b, _, _)| (a, b))
            .collect();
        let sub = Graph::from_edges(verts.len(), &local).unwrap();
        let mut ok = treewidth(&sub) <= w;
        if !ok {
            let limit = omega.min(verts.len().saturating_sub(2));
            let mut chosen = Vec::new();
            ok = subsets(&verts, limit, &mut chosen, 0, &mut |x| {
                let xm = mask(x);
                let comps = components_within(adj, set & !xm);
                if comps.len() < 2 {
                    return false;
                }
                comps.iter().all(|&c| {
                    let mut a = adj.to_vec();
                    for &u in x {
                        a[u] |= xm & !(1 << u);
                    }
                    rec(&a, c | xm, w, omega, memo)
                })
            });
        }
        memo.insert(key, ok);
        ok
    }
    fn subsets(verts: &[usize], limit: usize, cur: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if f(cur) {
            return true;
        }
        if cur.len() == limit {
            return false;
        }
        for i in start..verts.len() {
            cur.push(verts[i]);
            if subsets(verts, limit, cur, i + 1, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    assert!(g.n() <= 12, "oracle is exponential");
    let adj = adjacency_masks(g);
    let full = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
    rec(&adj, full, w, omega, &mut HashMap::new())
}

/// `value ≤ (1+ε)·opt` for minimization, `value ≥ (1−ε)·opt` for independent set.
pub fn within_ratio(kind: ProblemKind, eps: num_rational::Ratio<u64>, value: usize, opt: usize) -> bool {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let (v, o) = (value as u128, opt as u128);
    if kind.is_minimization() {
        v * q <= (q + p) * o
    } else {
        p >= q || v * q >= (q - p) * o
    }
}

/// `Σ_i |X_i|` against `(k+1)`, `(k+2)` or `(k−1)` times the optimum.
pub fn counting_holds(kind: ProblemKind, k: usize, shift_sum: usize, opt: usize) -> bool {
    match kind {
        ProblemKind::VertexCover => shift_sum <= (k + 1) * opt,
        ProblemKind::DominatingSet => shift_sum <= (k + 2) * opt,
        ProblemKind::IndependentSet => shift_sum + opt >= k * opt,
    }
}

/// Least `X ⊆ S` dominating `I` inside `g[S]`, by enumeration.
pub fn strip_domination(g: &Graph, s: u64, interior: u64) -> usize {
    let adj = adjacency_masks(g);
    let mut sub = s;
    let mut best = usize::MAX;
    loop {
        let ok = (0..g.n())
            .filter(|&v| interior >> v & 1 == 1)
            .all(|v| sub >> v & 1 == 1 || adj[v] & s & sub != 0);
        if ok {
            best = best.min(sub.count_ones() as usize);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & s;
    }
    best
}

/// Clique-sum of 2 to 4 planar-like parts of at most 12 vertices, each with
/// up to two apexes, glued along cliques of size 1 to 3.
pub fn clique_sum_instance(seed: u64) -> (Graph, shiftptas::ptas::CliqueSumDecomposition) {
    use rand::Rng;
    use shiftptas::graph::{apex_over, clique_sum_of, random_planar_like, ApexAttachment, Part};
    let mut r = facts::rng(seed);
    for attempt in 0u64.. {
        let count = r.gen_range(2..=4);
        let adhesion = r.gen_range(1..=3);
        let parts: Vec<Part> = (0..count)
            .map(|i| {
                let mu = r.gen_range(0..=2);
                let base = random_planar_like(r.gen_range(4..=12 - mu), seed * 97 + attempt * 13 + i);
                let (graph, apex) = apex_over(&base, mu, ApexAttachment::Random, seed + i).unwrap();
                Part { graph, apex }
            })
            .collect();
        if let Ok(out) = clique_sum_of(&parts, adhesion, seed + attempt) {
            return out;
        }
    }
    unreachable!()
}
