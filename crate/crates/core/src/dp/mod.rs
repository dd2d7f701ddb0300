//! Exact solvers for vertex cover, dominating set and independent set over
//! tree decompositions, their constrained variants, and a brute-force oracle.

mod brute;
pub(crate) mod engine;

pub use brute::{brute_force, brute_force_with_ceiling, DEFAULT_BRUTE_FORCE_CEILING};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};
use crate::treedecomp::TreeDecomposition;
use engine::{run, Spec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    VertexCover,
    DominatingSet,
    IndependentSet,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 3] = [
        ProblemKind::VertexCover,
        ProblemKind::DominatingSet,
        ProblemKind::IndependentSet,
    ];

    pub fn is_minimization(self) -> bool {
        self != ProblemKind::IndependentSet
    }

    pub fn short_name(self) -> &'static str {
        match self {
            ProblemKind::VertexCover => "vc",
            ProblemKind::DominatingSet => "ds",
            ProblemKind::IndependentSet => "is",
        }
    }

    /// Whether `set` is a feasible solution on `g`.
    pub fn is_feasible(self, g: &Graph, set: &[Vertex]) -> bool {
        match self {
            ProblemKind::VertexCover => is_vertex_cover(g, set),
            ProblemKind::DominatingSet => dominates(g, set, &(0..g.n()).collect::<Vec<_>>()),
            ProblemKind::IndependentSet => is_independent_set(g, set),
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vc" | "vertex-cover" => Ok(ProblemKind::VertexCover),
            "ds" | "dominating-set" => Ok(ProblemKind::DominatingSet),
            "is" | "independent-set" => Ok(ProblemKind::IndependentSet),
            other => Err(Error::InvalidParameter(format!("unknown problem `{other}`"))),
        }
    }
}

fn membership(g: &Graph, set: &[Vertex]) -> Option<Vec<bool>> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        *inside.get_mut(v)? = true;
    }
    Some(inside)
}

pub fn is_vertex_cover(g: &Graph, set: &[Vertex]) -> bool {
    membership(g, set).is_some_and(|inside| g.edges().all(|(u, v)| inside[u] || inside[v]))
}

pub fn is_independent_set(g: &Graph, set: &[Vertex]) -> bool {
    membership(g, set).is_some_and(|inside| g.edges().all(|(u, v)| !(inside[u] && inside[v])))
}

/// Whether every vertex of `targets` is in `set` or has a neighbour in it.
pub fn dominates(g: &Graph, set: &[Vertex], targets: &[Vertex]) -> bool {
    let Some(inside) = membership(g, set) else {
        return false;
    };
    targets
        .iter()
        .all(|&w| w < g.n() && (inside[w] || g.neighbors(w).iter().any(|&u| inside[u])))
}

/// Audit trail attached to a solution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub method: String,
    /// Chosen shift, for the shifting schemes.
    pub shift: Option<usize>,
    /// `(shift, band, lo, hi)` of every strip used by the chosen shift.
    pub strips: Vec<(usize, i64, i64, i64)>,
    /// The apex subset the solution was completed from, when relevant.
    pub subset: Option<Vec<Vertex>>,
}

impl Provenance {
    pub fn method(name: &str) -> Self {
        Provenance {
            method: name.into(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub kind: ProblemKind,
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    pub value: usize,
    pub feasible: bool,
    pub provenance: Provenance,
}

impl Solution {
    /// Wraps `vertices`, checking feasibility directly on `g`.
    pub fn new(g: &Graph, kind: ProblemKind, vertices: Vec<Vertex>, provenance: Provenance) -> Self {
        let vertices = normalize(&vertices);
        let feasible = kind.is_feasible(g, &vertices);
        Solution {
            kind,
            value: vertices.len(),
            vertices,
            feasible,
            provenance,
        }
    }
}

/// Optimal solution by dynamic programming over a nicified version of `td`.
pub fn solve_exact_tw(g: &Graph, td: &TreeDecomposition, kind: ProblemKind) -> Result<Solution> {
    td.ensure_valid(g)?;
    let spec = Spec::new(kind, g, td);
    let best = run(&spec)?.into_iter().next().expect("unconstrained problems are feasible");
    debug_assert_eq!(best.cost.unsigned_abs() as usize, best.chosen.len());
    Ok(Solution::new(g, kind, best.chosen, Provenance::method("exact-tw")))
}

/// Least `X ⊆ V \ U` such that `X ∪ Y` covers every edge, or `None` when
/// some edge has both ends in `U \ Y`. `td` decomposes `G \ U` and uses the
/// vertex identifiers of `g`. The returned solution holds `X` only; its
/// feasibility flag refers to `X ∪ Y`.
pub fn solve_vc_constrained(
    g: &Graph,
    u: &[Vertex],
    y: &[Vertex],
    td: &TreeDecomposition,
) -> Result<Option<Solution>> {
    g.check_vertices(u)?;
    g.check_vertices(y)?;
    let u = normalize(u);
    let y = normalize(y);
    if let Some(v) = y.iter().find(|v| u.binary_search(v).is_err()) {
        return Err(Error::Precondition(format!("vertex {v} of Y is not in U")));
    }
    let (rest, map) = g.without(&u)?;
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    if let Some(v) = td.blocks().iter().flatten().find(|&&v| v >= g.n() || local[v] == usize::MAX) {
        return Err(Error::InvalidDecomposition(format!("block mentions vertex {v} outside G \\ U")));
    }
    let td_local = td.map_vertices(|v| local[v]);
    td_local.ensure_valid(&rest)?;
    let in_y = |v: Vertex| y.binary_search(&v).is_ok();
    let in_u = |v: Vertex| u.binary_search(&v).is_ok();
    let mut spec = Spec::new(ProblemKind::VertexCover, &rest, &td_local);
    for (a, b) in g.edges() {
        match (in_u(a), in_u(b)) {
            (true, true) if !in_y(a) && !in_y(b) => return Ok(None),
            (true, false) if !in_y(a) => spec.forced[local[b]] = true,
            (false, true) if !in_y(b) => spec.forced[local[a]] = true,
            _ => {}
        }
    }
    let best = run(&spec)?.into_iter().next().expect("forcing never blocks a cover");
    let x: Vec<Vertex> = best.chosen.iter().map(|&v| map[v]).collect();
    let mut with_y = x.clone();
    with_y.extend_from_slice(&y);
    let mut sol = Solution::new(g, ProblemKind::VertexCover, x, Provenance::method("vc-constrained"));
    sol.feasible = is_vertex_cover(g, &with_y);
    sol.provenance.subset = Some(y);
    Ok(Some(sol))
}

/// Least `X ⊆ strip` dominating every vertex of `interior` using edges of
/// `⟨strip⟩` only. `td` decomposes `⟨strip⟩` in the identifiers of `g`.
pub fn solve_ds_strip(
    g: &Graph,
    strip: &[Vertex],
    interior: &[Vertex],
    td: &TreeDecomposition,
) -> Result<Solution> {
    let strip = normalize(strip);
    let interior = normalize(interior);
    if let Some(v) = interior.iter().find(|v| strip.binary_search(v).is_err()) {
        return Err(Error::Precondition(format!("interior vertex {v} is not in the strip")));
    }
    let (h, map) = g.induced_subgraph(&strip)?;
    if let Some(v) = td.blocks().iter().flatten().find(|v| strip.binary_search(v).is_err()) {
        return Err(Error::InvalidDecomposition(format!("block mentions vertex {v} outside the strip")));
    }
    let td_local = td.map_vertices(|v| strip.binary_search(&v).unwrap());
    td_local.ensure_valid(&h)?;
    let mut spec = Spec::new(ProblemKind::DominatingSet, &h, &td_local);
    spec.needs_domination = strip.iter().map(|v| interior.binary_search(v).is_ok()).collect();
    let best = run(&spec)?.into_iter().next().expect("the whole strip dominates its interior");
    let x: Vec<Vertex> = best.chosen.iter().map(|&v| map[v]).collect();
    let mut sol = Solution::new(g, ProblemKind::DominatingSet, x, Provenance::method("ds-strip"));
    sol.feasible = dominates(&h, &best.chosen, &(0..h.n()).filter(|&i| spec.needs_domination[i]).collect::<Vec<_>>());
    Ok(sol)
}
