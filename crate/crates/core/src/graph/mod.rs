//! Finite simple undirected graphs over dense vertex identifiers.

mod generate;
mod io;
mod minor;

pub use generate::{
    apex_over, clique_sum_of, complete, cycle, grid, k_tree, path, random_connected,
    random_cubic, random_planar_like, random_tree, stacked_triangulation, ApexAttachment,
    GraphKind, Part,
};
pub use io::{parse_graph, serialize_graph, GraphFormat};
pub use minor::MinorWitness;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Simple undirected graph. Adjacency lists are strictly increasing and
/// symmetric; the value is immutable once built except through the explicit
/// edge-insertion helpers used by builders.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

/// BFS layering from a single source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layers {
    pub source: Vertex,
    /// `levels[r]` holds the vertices at distance exactly `r`, sorted.
    pub levels: Vec<Vec<Vertex>>,
    /// Vertices not reachable from the source, sorted.
    pub unreachable: Vec<Vertex>,
}

impl Layers {
    /// Largest non-empty level index.
    pub fn depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// `L_v[i, j]` with the clamping convention: empty when `i > j`, and
    /// `L_v[0, j]` whenever `i <= 0`.
    pub fn interval(&self, i: i64, j: i64) -> Vec<Vertex> {
        if i > j || j < 0 {
            return Vec::new();
        }
        let lo = i.max(0) as usize;
        let hi = (j as usize).min(self.levels.len().saturating_sub(1));
        if lo >= self.levels.len() {
            return Vec::new();
        }
        let mut out: Vec<Vertex> = self.levels[lo..=hi].iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, collapsing duplicate and reversed
    /// edges. Self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Inserts an edge, keeping adjacency lists sorted. Returns `false` if the
    /// edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Precondition(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    /// Appends a fresh isolated vertex and returns its identifier.
    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds all edges of a clique on `set`.
    pub fn add_clique(&mut self, set: &[Vertex]) -> Result<()> {
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                if u != v {
                    self.add_edge(u, v)?;
                }
            }
        }
        Ok(())
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn check_vertices(&self, set: &[Vertex]) -> Result<()> {
        set.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// BFS distances from `v`; `None` for unreachable vertices.
    pub fn distances(&self, v: Vertex) -> Result<Vec<Option<usize>>> {
        self.check_vertex(v)?;
        let mut dist = vec![None; self.n()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn bfs_layers(&self, v: Vertex) -> Result<Layers> {
        let dist = self.distances(v)?;
        let mut levels: Vec<Vec<Vertex>> = Vec::new();
        let mut unreachable = Vec::new();
        for (w, d) in dist.iter().enumerate() {
            match d {
                Some(d) => {
                    if levels.len() <= *d {
                        levels.resize(d + 1, Vec::new());
                    }
                    levels[*d].push(w);
                }
                None => unreachable.push(w),
            }
        }
        Ok(Layers {
            source: v,
            levels,
            unreachable,
        })
    }

    /// `L_v[i, j]`: vertices at distance between `i` and `j` from `v`, with
    /// the clamping convention of [`Layers::interval`].
    pub fn level_interval(&self, v: Vertex, i: i64, j: i64) -> Result<Vec<Vertex>> {
        Ok(self.bfs_layers(v)?.interval(i, j))
    }

    /// The closed `r`-neighbourhood `N_r(v)`, sorted.
    pub fn ball(&self, v: Vertex, r: usize) -> Result<Vec<Vertex>> {
        let dist = self.distances(v)?;
        Ok((0..self.n())
            .filter(|&w| matches!(dist[w], Some(d) if d <= r))
            .collect())
    }

    /// Induced subgraph on `set` (duplicates ignored). The returned map sends
    /// each vertex of the subgraph to its identifier in `self`; subgraph
    /// vertices are numbered in increasing order of their original ids.
    pub fn induced_subgraph(&self, set: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        self.check_vertices(set)?;
        let mut map: Vec<Vertex> = set.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        Ok((Graph { adj }, map))
    }

    /// `G \ X`: the subgraph induced on the complement of `removed`.
    pub fn without(&self, removed: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        self.check_vertices(removed)?;
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<Vertex> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// `G ∪ H` over a shared identifier space; the result has
    /// `max(|G|, |H|)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let n = self.n().max(other.n());
        let mut g = self.clone();
        g.adj.resize(n, Vec::new());
        for (u, v) in other.edges() {
            g.add_edge(u, v).expect("in range");
        }
        g
    }

    pub fn is_clique(&self, set: &[Vertex]) -> Result<bool> {
        self.check_vertices(set)?;
        Ok(set.iter().enumerate().all(|(a, &u)| {
            set[a + 1..]
                .iter()
                .all(|&v| u == v || self.has_edge(u, v))
        }))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Clique number by a small pivoting Bron–Kerbosch search.
    pub fn clique_number(&self) -> usize {
        fn expand(g: &Graph, size: usize, mut cand: Vec<Vertex>, mut excl: Vec<Vertex>, best: &mut usize) {
            if cand.is_empty() {
                if excl.is_empty() {
                    *best = (*best).max(size);
                }
                return;
            }
            if size + cand.len() <= *best {
                return;
            }
            let pivot = cand
                .iter()
                .chain(excl.iter())
                .copied()
                .max_by_key(|&p| cand.iter().filter(|&&c| g.has_edge(p, c)).count())
                .unwrap();
            let branch: Vec<Vertex> = cand.iter().copied().filter(|&c| !g.has_edge(pivot, c)).collect();
            for v in branch {
                let nc = cand.iter().copied().filter(|&c| g.has_edge(v, c)).collect();
                let ne = excl.iter().copied().filter(|&c| g.has_edge(v, c)).collect();
                expand(g, size + 1, nc, ne, best);
                cand.retain(|&c| c != v);
                excl.push(v);
            }
        }
        let mut best = 0;
        expand(self, 0, (0..self.n()).collect(), Vec::new(), &mut best);
        best
    }

    /// Contracts the ball `N_r(v)` to a single vertex `v'`. The contracted
    /// vertex gets id 0 in the result; the remaining vertices follow in
    /// increasing order of their original ids.
    pub fn contract_ball(&self, v: Vertex, r: usize) -> Result<(Graph, MinorWitness)> {
        let ball = self.ball(v, r)?;
        minor::contract_set(self, &ball)
    }

    /// Contracts the edge `uv`; the merged vertex gets id 0.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<(Graph, MinorWitness)> {
        if !self.has_edge(u, v) {
            return Err(Error::Precondition(format!("{u}-{v} is not an edge")));
        }
        minor::contract_set(self, &[u, v])
    }
}

/// Sorted, deduplicated copy of a vertex list.
pub fn normalize(set: &[Vertex]) -> Vec<Vertex> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}
