//! Deterministic graph generators. Every randomized generator takes an
//! explicit seed and draws from a ChaCha stream, so corpora are reproducible.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::ptas::CliqueSumDecomposition;
use crate::treedecomp::TreeDecomposition;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Cycle on `n >= 3` vertices (smaller `n` degenerates to a path).
pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(0, n - 1).unwrap();
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random `k`-tree on `n >= k + 1` vertices: a `(k+1)`-clique grown by
/// repeatedly attaching a new vertex to a random existing `k`-clique.
pub fn k_tree(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if k == 0 || n < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "k-tree needs k >= 1 and n >= k + 1 (got n = {n}, k = {k})"
        )));
    }
    let mut rng = rng(seed);
    let mut g = complete(k + 1);
    let mut cliques: Vec<Vec<Vertex>> = (0..=k)
        .map(|skip| (0..=k).filter(|&v| v != skip).collect())
        .collect();
    for _ in k + 1..n {
        let base = cliques[rng.gen_range(0..cliques.len())].clone();
        let v = g.add_vertex();
        for &u in &base {
            g.add_edge(u, v)?;
        }
        for skip in 0..k {
            let mut c: Vec<Vertex> = base.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, u)| u).collect();
            c.push(v);
            cliques.push(c);
        }
    }
    Ok(g)
}

/// How apex vertices are wired to the base graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexAttachment {
    /// Each apex is adjacent to every base vertex and to the other apexes.
    Universal,
    /// Each apex picks every base vertex with probability 1/2 (at least one),
    /// and apex pairs are joined with probability 1/2.
    Random,
}

/// Adds `mu` apex vertices (ids `base.n()..base.n() + mu`) to `base`.
pub fn apex_over(
    base: &Graph,
    mu: usize,
    attachment: ApexAttachment,
    seed: u64,
) -> Result<(Graph, Vec<Vertex>)> {
    if base.n() == 0 && mu > 0 {
        return Err(Error::InvalidParameter("apex_over needs a non-empty base".into()));
    }
    let mut rng = rng(seed);
    let mut g = base.clone();
    let apexes: Vec<Vertex> = (0..mu).map(|_| g.add_vertex()).collect();
    for (i, &a) in apexes.iter().enumerate() {
        match attachment {
            ApexAttachment::Universal => {
                for v in 0..base.n() {
                    g.add_edge(a, v)?;
                }
                for &b in &apexes[..i] {
                    g.add_edge(a, b)?;
                }
            }
            ApexAttachment::Random => {
                let mut any = false;
                for v in 0..base.n() {
                    if rng.gen_bool(0.5) {
                        g.add_edge(a, v)?;
                        any = true;
                    }
                }
                if !any {
                    let v = rng.gen_range(0..base.n());
                    g.add_edge(a, v)?;
                }
                for &b in &apexes[..i] {
                    if rng.gen_bool(0.5) {
                        g.add_edge(a, b)?;
                    }
                }
            }
        }
    }
    Ok((g, apexes))
}

/// A graph glued into a clique-sum, with the apex set recorded for its node.
#[derive(Clone, Debug)]
pub struct Part {
    pub graph: Graph,
    pub apex: Vec<Vertex>,
}

impl From<Graph> for Part {
    fn from(graph: Graph) -> Self {
        Part {
            graph,
            apex: Vec::new(),
        }
    }
}

fn cliques_of_size(g: &Graph, size: usize) -> Vec<Vec<Vertex>> {
    fn grow(g: &Graph, size: usize, cur: &mut Vec<Vertex>, start: Vertex, out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                grow(g, size, cur, v + 1, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(g, size, &mut Vec::new(), 0, &mut out);
    out
}

/// Glues `parts` along cliques of size `adhesion` into a tree of parts and
/// returns the composite graph with its ground-truth decomposition. Part 0
/// keeps ids `0..|part 0|`; later parts are attached to a random earlier
/// part, sharing `adhesion` vertices, and their private vertices receive
/// fresh ids in order.
pub fn clique_sum_of(
    parts: &[Part],
    adhesion: usize,
    seed: u64,
) -> Result<(Graph, CliqueSumDecomposition)> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("clique_sum_of needs at least one part".into()));
    }
    if let Some(p) = parts.iter().find(|p| p.graph.n() < adhesion) {
        return Err(Error::InvalidParameter(format!(
            "adhesion {adhesion} exceeds a part of size {}",
            p.graph.n()
        )));
    }
    let mut rng = rng(seed);
    let mut maps: Vec<Vec<Vertex>> = Vec::with_capacity(parts.len());
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(parts.len());
    let mut next = 0usize;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let mut map = vec![usize::MAX; part.graph.n()];
        if i == 0 {
            parent.push(None);
        } else {
            let p = rng.gen_range(0..i);
            parent.push(Some(p));
            let host = cliques_of_size(&parts[p].graph, adhesion);
            let guest = cliques_of_size(&part.graph, adhesion);
            if host.is_empty() || guest.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "no clique of size {adhesion} to glue part {i} onto part {p}"
                )));
            }
            let host = host.choose(&mut rng).unwrap();
            let mut guest = guest.choose(&mut rng).unwrap().clone();
            guest.shuffle(&mut rng);
            for (&h, &gv) in host.iter().zip(&guest) {
                map[gv] = maps[p][h];
            }
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        edges.extend(part.graph.edges().map(|(u, v)| (map[u], map[v])));
        maps.push(map);
    }
    let g = Graph::from_edges(next, &edges)?;
    let blocks: Vec<Vec<Vertex>> = maps.iter().map(|m| super::normalize(m)).collect();
    let apex: Vec<Vec<Vertex>> = parts
        .iter()
        .zip(&maps)
        .map(|(p, m)| super::normalize(&p.apex.iter().map(|&a| m[a]).collect::<Vec<_>>()))
        .collect();
    let td = TreeDecomposition::from_parents(blocks, parent)?;
    let csd = CliqueSumDecomposition::new(td, apex)?;
    Ok((g, csd))
}

/// Random labelled tree: vertex `i >= 1` hangs below a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected graph: a random tree plus every other pair with
/// probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut g = random_tree(n, seed);
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random stacked (Apollonian) triangulation: a maximal planar graph grown
/// by inserting vertices into random triangular faces.
pub fn stacked_triangulation(n: usize, seed: u64) -> Graph {
    if n < 3 {
        return complete(n);
    }
    let mut rng = rng(seed);
    let mut g = complete(3);
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for _ in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        let v = g.add_vertex();
        for u in [a, b, c] {
            g.add_edge(u, v).unwrap();
        }
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    g
}

/// Random connected planar graph: a random spanning tree of a stacked
/// triangulation plus each remaining triangulation edge with probability 1/2.
pub fn random_planar_like(n: usize, seed: u64) -> Graph {
    let tri = stacked_triangulation(n, seed);
    let mut rng = rng(seed.wrapping_mul(31).wrapping_add(7));
    let mut edges: Vec<_> = tri.edges().collect();
    edges.shuffle(&mut rng);
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut g = Graph::new(n);
    for (u, v) in edges {
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        if a != b {
            root[a] = b;
            g.add_edge(u, v).unwrap();
        } else if rng.gen_bool(0.5) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random simple cubic graph on an even number of vertices (configuration
/// model with restarts).
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("cubic graphs need even n >= 4, got {n}")));
    }
    let mut rng = rng(seed);
    'attempt: loop {
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.add_edge(u, v)?;
        }
        return Ok(g);
    }
}

/// Named generator families, as accepted by the command-line front end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Grid(usize, usize),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    KTree { n: usize, k: usize },
    Triangulation(usize),
    PlanarLike(usize),
    ApexOver { base: Box<GraphKind>, mu: usize, universal: bool },
    CliqueSumOf { parts: Vec<GraphKind>, adhesion: usize },
}

impl GraphKind {
    /// Builds the graph; clique sums also return their decomposition.
    pub fn generate(&self, seed: u64) -> Result<(Graph, Option<CliqueSumDecomposition>)> {
        let g = match self {
            GraphKind::Grid(a, b) => grid(*a, *b),
            GraphKind::Path(n) => path(*n),
            GraphKind::Cycle(n) => cycle(*n),
            GraphKind::Complete(n) => complete(*n),
            GraphKind::KTree { n, k } => k_tree(*n, *k, seed)?,
            GraphKind::Triangulation(n) => stacked_triangulation(*n, seed),
            GraphKind::PlanarLike(n) => random_planar_like(*n, seed),
            GraphKind::ApexOver { base, mu, universal } => {
                let (b, _) = base.generate(seed)?;
                let att = if *universal {
                    ApexAttachment::Universal
                } else {
                    ApexAttachment::Random
                };
                apex_over(&b, *mu, att, seed.wrapping_add(1))?.0
            }
            GraphKind::CliqueSumOf { parts, adhesion } => {
                let mut built = Vec::with_capacity(parts.len());
                for (i, p) in parts.iter().enumerate() {
                    let (graph, _) = p.generate(seed.wrapping_add(i as u64 + 1))?;
                    let apex = match p {
                        GraphKind::ApexOver { mu, .. } => (graph.n() - mu..graph.n()).collect(),
                        _ => Vec::new(),
                    };
                    built.push(Part { graph, apex });
                }
                let (g, csd) = clique_sum_of(&built, *adhesion, seed)?;
                return Ok((g, Some(csd)));
            }
        };
        Ok((g, None))
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once('x')
        .ok_or_else(|| Error::InvalidParameter(format!("expected <rows>x<cols>, got `{s}`")))?;
    Ok((parse_usize(a)?, parse_usize(b)?))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("expected a number, got `{s}`")))
}

impl FromStr for GraphKind {
    type Err = Error;

    /// Syntax: `grid:5x5`, `path:9`, `cycle:6`, `complete:5`, `ktree:12,2`,
    /// `triangulation:18`, `planar:18`, `apex:<mu>:<base>` (random
    /// attachment), `uapex:<mu>:<base>` (universal), and
    /// `cliquesum:<adhesion>:<part>+<part>+...`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("malformed generator `{s}`")))?;
        Ok(match head {
            "grid" => {
                let (a, b) = parse_dims(rest)?;
                GraphKind::Grid(a, b)
            }
            "path" => GraphKind::Path(parse_usize(rest)?),
            "cycle" => GraphKind::Cycle(parse_usize(rest)?),
            "complete" => GraphKind::Complete(parse_usize(rest)?),
            "ktree" => {
                let (n, k) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidParameter("expected ktree:<n>,<k>".into()))?;
                GraphKind::KTree {
                    n: parse_usize(n)?,
                    k: parse_usize(k)?,
                }
            }
            "triangulation" => GraphKind::Triangulation(parse_usize(rest)?),
            "planar" => GraphKind::PlanarLike(parse_usize(rest)?),
            "apex" | "uapex" => {
                let (mu, base) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidParameter("expected apex:<mu>:<base>".into()))?;
                GraphKind::ApexOver {
                    base: Box::new(base.parse()?),
                    mu: parse_usize(mu)?,
                    universal: head == "uapex",
                }
            }
            "cliquesum" => {
                let (adh, parts) = rest.split_once(':').ok_or_else(|| {
                    Error::InvalidParameter("expected cliquesum:<adhesion>:<parts>".into())
                })?;
                GraphKind::CliqueSumOf {
                    adhesion: parse_usize(adh)?,
                    parts: parts.split('+').map(str::parse).collect::<Result<_>>()?,
                }
            }
            other => {
                return Err(Error::InvalidParameter(format!("unknown generator `{other}`")))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_named_graphs() {
        let c4 = grid(2, 2);
        assert_eq!(c4.m(), 4);
        assert!((0..4).all(|v| c4.degree(v) == 2) && c4.is_connected());
        assert_eq!(complete(5).m(), 10);
        assert_eq!(path(1).m(), 0);
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_planar_like(15, 3), random_planar_like(15, 3));
        assert_eq!(k_tree(12, 3, 9).unwrap(), k_tree(12, 3, 9).unwrap());
        assert!(random_planar_like(15, 3).is_connected());
    }

    #[test]
    fn k_tree_edge_count() {
        let g = k_tree(10, 2, 1).unwrap();
        // k-trees on n vertices have k*n - k(k+1)/2 edges.
        assert_eq!(g.m(), 2 * 10 - 3);
        assert_eq!(g.clique_number(), 3);
    }

    #[test]
    fn triangulation_is_maximal_planar() {
        let g = stacked_triangulation(12, 5);
        assert_eq!(g.m(), 3 * 12 - 6);
    }

    #[test]
    fn cubic_degrees() {
        let g = random_cubic(14, 2).unwrap();
        assert!((0..14).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn apex_attachment() {
        let (g, apex) = apex_over(&grid(3, 3), 2, ApexAttachment::Universal, 0).unwrap();
        assert_eq!(apex, vec![9, 10]);
        assert_eq!(g.degree(9), 10);
    }

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let parts = [Part::from(complete(3)), Part::from(complete(3))];
        let (g, csd) = clique_sum_of(&parts, 1, 0).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 6);
        let td = csd.decomposition();
        assert_eq!(td.len(), 2);
        assert_eq!(td.adhesion(), 1);
        assert!(td.validate(&g).is_valid());
    }

    #[test]
    fn parse_generator_specs() {
        let k: GraphKind = "cliquesum:2:grid:3x3+apex:1:cycle:5".parse().unwrap();
        let (g, csd) = k.generate(4).unwrap();
        let csd = csd.unwrap();
        assert!(csd.decomposition().validate(&g).is_valid());
        assert_eq!(csd.apex(1).len(), 1);
        assert!("blob:3".parse::<GraphKind>().is_err());
    }
}
