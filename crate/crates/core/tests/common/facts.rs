//! Corpora and checks for the structural tree-width facts and the path
//! attachment bound.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shiftptas::graph::{clique_sum_of, random_connected, Part};
use shiftptas::treedecomp::{
    attach_path, exact_treewidth, heuristic_decomposition, Strategy, DEFAULT_NODE_BUDGET,
};
use shiftptas::{Graph, PathDecomposition, TreeDecomposition, Vertex};

use super::{mask, treewidth};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Decomposition conditions checked from scratch.
pub fn td_valid(g: &Graph, td: &TreeDecomposition) -> Result<(), String> {
    if td.blocks().iter().flatten().any(|&v| v >= g.n()) {
        return Err("vertex out of range".into());
    }
    let holds = |t: usize, v: Vertex| td.block(t).contains(&v);
    for v in 0..g.n() {
        let holders: Vec<usize> = (0..td.len()).filter(|&t| holds(t, v)).collect();
        if holders.is_empty() {
            return Err(format!("vertex {v} uncovered"));
        }
        // Occurrences form a subtree iff exactly one holder has its parent
        // outside the holder set.
        let tops = holders
            .iter()
            .filter(|&&t| td.parent(t).is_none_or(|p| !holds(p, v)))
            .count();
        if tops != 1 {
            return Err(format!("occurrences of {v} are disconnected"));
        }
    }
    for (u, v) in g.edges() {
        if !(0..td.len()).any(|t| holds(t, u) && holds(t, v)) {
            return Err(format!("edge {u}-{v} uncovered"));
        }
    }
    Ok(())
}

/// Maximal cliques by Bron-Kerbosch with pivoting, on graphs up to 64 vertices.
pub fn maximal_cliques(g: &Graph) -> Vec<u64> {
    fn bk(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let adj = super::adjacency_masks(g);
    let mut out = Vec::new();
    if g.n() > 0 {
        let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        bk(&adj, 0, all, 0, &mut out);
    }
    out
}

/// Every clique lies inside one block.
pub fn cliques_in_blocks(g: &Graph, td: &TreeDecomposition) -> Result<(), String> {
    let blocks: Vec<u64> = td.blocks().iter().map(|b| mask(b)).collect();
    for c in maximal_cliques(g) {
        if !blocks.iter().any(|b| b & c == c) {
            return Err(format!("clique {c:#b} is split"));
        }
    }
    Ok(())
}

fn exact(g: &Graph) -> usize {
    let r = exact_treewidth(g, DEFAULT_NODE_BUDGET).unwrap();
    assert!(r.exact);
    r.width
}

/// The decompositions produced for `g` by the heuristic and exact solvers.
pub fn produced(g: &Graph) -> Vec<TreeDecomposition> {
    vec![
        heuristic_decomposition(g, Strategy::MinFill),
        heuristic_decomposition(g, Strategy::MinDegree),
        exact_treewidth(g, DEFAULT_NODE_BUDGET).unwrap().decomposition,
    ]
}

pub fn small_graph(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let p = r.gen_range(0.1..0.7);
    random_connected(n, p, seed)
}

/// Clique in every block, on every produced decomposition.
pub fn fact_cliques(seed: u64) -> Result<(), String> {
    let g = small_graph(seed, 12);
    for td in produced(&g) {
        td_valid(&g, &td)?;
        cliques_in_blocks(&g, &td)?;
    }
    Ok(())
}

/// Gluing two graphs on a shared clique: the width is the larger of the two.
pub fn fact_clique_sum(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    for attempt in 0.. {
        let s = r.gen_range(1..=3);
        let a = r.gen_range(s.max(2)..=8);
        let b = r.gen_range(s.max(2)..=(14 + s - a).min(8));
        let parts: Vec<Part> = [a, b]
            .iter()
            .enumerate()
            .map(|(i, &n)| random_connected(n, 0.5, seed * 7 + i as u64 + attempt * 131).into())
            .collect();
        let Ok((g, csd)) = clique_sum_of(&parts, s, seed + attempt) else {
            continue;
        };
        assert!(g.n() <= 14);
        let td = csd.decomposition();
        let (x, y) = (td.block(0), td.block(1));
        let (gx, _) = g.induced_subgraph(x).unwrap();
        let (gy, _) = g.induced_subgraph(y).unwrap();
        let shared: Vec<Vertex> = x.iter().copied().filter(|v| y.contains(v)).collect();
        if shared.len() != s || !g.is_clique(&shared).unwrap() {
            return Err("glue set is not a clique of the requested size".into());
        }
        let want = treewidth(&gx).max(treewidth(&gy));
        let got = treewidth(&g);
        if got != want || exact(&g) != got {
            return Err(format!("tw(G ∪ H) = {got}, max = {want}"));
        }
        return Ok(());
    }
    unreachable!()
}

/// Removing `X` lowers the width by at most `|X|`.
pub fn fact_apex(seed: u64) -> Result<(), String> {
    let g = small_graph(seed, 12);
    let mut r = rng(seed ^ 0xabc);
    let x: Vec<Vertex> = (0..g.n()).filter(|_| r.gen_bool(0.3)).collect();
    let (rest, _) = g.without(&x).unwrap();
    let (tg, tr) = (treewidth(&g), treewidth(&rest));
    if tg > tr + x.len() || exact(&g) != tg || exact(&rest) != tr {
        return Err(format!("tw(G) = {tg}, tw(G - X) = {tr}, |X| = {}", x.len()));
    }
    Ok(())
}

/// Up to three random deletions or contractions never raise the width.
pub fn fact_minor(seed: u64) -> Result<(), String> {
    let g = small_graph(seed, 12);
    let mut r = rng(seed ^ 0x5eed);
    let mut h = g.clone();
    for _ in 0..r.gen_range(1..=3) {
        let edges: Vec<_> = h.edges().collect();
        match r.gen_range(0..3) {
            0 if !edges.is_empty() => {
                let &(u, v) = edges.choose(&mut r).unwrap();
                let kept: Vec<_> = edges.into_iter().filter(|&e| e != (u, v)).collect();
                h = Graph::from_edges(h.n(), &kept).unwrap();
            }
            1 if h.n() > 1 => {
                let v = r.gen_range(0..h.n());
                h = h.without(&[v]).unwrap().0;
            }
            2 if !edges.is_empty() => {
                let &(u, v) = edges.choose(&mut r).unwrap();
                h = h.contract_edge(u, v).unwrap().0;
            }
            _ => {}
        }
    }
    let (tg, th) = (treewidth(&g), treewidth(&h));
    if th > tg || exact(&h) != th {
        return Err(format!("tw(H) = {th} > tw(G) = {tg}"));
    }
    Ok(())
}

pub struct AttachInstance {
    pub g: Graph,
    pub td_g: TreeDecomposition,
    pub tw_g: usize,
    pub h: Graph,
    pub pd_h: PathDecomposition,
    pub anchors: Vec<(Vertex, Vertex)>,
}

/// `G` random connected with `n ≤ 12`, a simple path `x_1 … x_L` in
/// `G`, and `H` an interval-like graph whose path blocks each hold a fresh
/// anchor `y_i`.
pub fn attach_instance(seed: u64) -> AttachInstance {
    let mut r = rng(seed);
    let g = small_graph(seed, 12);
    let start = r.gen_range(0..g.n());
    let mut walk = vec![start];
    let want = r.gen_range(1..=5);
    while walk.len() < want {
        let last = *walk.last().unwrap();
        let next: Vec<Vertex> = g.neighbors(last).iter().copied().filter(|v| !walk.contains(v)).collect();
        match next.choose(&mut r) {
            Some(&v) => walk.push(v),
            None => break,
        }
    }
    let mut n_h = 0;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut anchors = Vec::new();
    for &x in &walk {
        let mut block: Vec<Vertex> = match blocks.last() {
            Some(prev) => prev.iter().copied().filter(|_| r.gen_bool(0.5)).collect(),
            None => Vec::new(),
        };
        let y = n_h;
        n_h += 1;
        block.push(y);
        anchors.push((y, x));
        for _ in 0..r.gen_range(0..=2) {
            block.push(n_h);
            n_h += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    let mut edges = Vec::new();
    for b in &blocks {
        for (i, &u) in b.iter().enumerate() {
            for &v in &b[i + 1..] {
                if r.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
    }
    let h = Graph::from_edges(n_h, &edges).unwrap();
    let ex = exact_treewidth(&g, DEFAULT_NODE_BUDGET).unwrap();
    assert!(ex.exact);
    AttachInstance {
        g,
        td_g: ex.decomposition,
        tw_g: ex.width,
        h,
        pd_h: PathDecomposition::new(blocks),
        anchors,
    }
}

/// Output valid and width at most `(tw(G)+1)(k+1) − 1`.
pub fn check_attach(inst: &AttachInstance) -> Result<(usize, usize), String> {
    let (u, td) = attach_path(&inst.g, &inst.td_g, &inst.h, &inst.pd_h, &inst.anchors).map_err(|e| e.to_string())?;
    if u.n() != inst.g.n() + inst.h.n() - inst.anchors.len() {
        return Err("union has the wrong size".into());
    }
    if inst.g.edges().any(|(a, b)| !u.has_edge(a, b)) {
        return Err("union lost an edge of G".into());
    }
    td_valid(&u, &td)?;
    let k = inst.pd_h.width();
    let bound = (inst.tw_g + 1) * (k + 1) - 1;
    if td.width() > bound {
        return Err(format!("width {} above {bound}", td.width()));
    }
    Ok((td.width(), bound))
}
