use crate::dp::ProblemKind;
use crate::error::{Error, Result};
use crate::graph::{Graph, Layers, Vertex};

/// One band `L_ij` of BFS levels for shift `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub kind: ProblemKind,
    pub i: usize,
    pub j: usize,
    /// First level, clamped at 0.
    pub lo: i64,
    /// Last level; below `lo` for an empty strip.
    pub hi: i64,
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Vertices that must be dominated inside the strip (dominating set);
    /// equal to `vertices` for the other problems.
    pub interior: Vec<Vertex>,
}

impl Strip {
    /// Number of levels spanned.
    pub fn levels(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }
}

/// Raw `(lo, hi, interior_lo, interior_hi)` of band `j` for shift `i`.
pub(crate) fn bounds(kind: ProblemKind, k: usize, i: usize, j: usize) -> (i64, i64, i64, i64) {
    let (k, i, j) = (k as i64, i as i64, j as i64);
    let base = (j - 1) * k + i;
    match kind {
        ProblemKind::VertexCover => (base, j * k + i, base, j * k + i),
        ProblemKind::DominatingSet => (base - 1, j * k + i, base, j * k + i - 1),
        ProblemKind::IndependentSet => (base, j * k + i - 2, base, j * k + i - 2),
    }
}

/// All strips of shift `i` over `layers`, for `j = 0, 1, …` until the
/// levels are exhausted.
pub(crate) fn strips_from_layers(layers: &Layers, kind: ProblemKind, k: usize, i: usize) -> Vec<Strip> {
    let depth = layers.depth() as i64;
    let mut out = Vec::new();
    for j in 0.. {
        let (lo, hi, ilo, ihi) = bounds(kind, k, i, j);
        if ilo > depth {
            break;
        }
        let vertices = layers.interval(lo, hi);
        let interior = if kind == ProblemKind::DominatingSet {
            layers.interval(ilo, ihi)
        } else {
            vertices.clone()
        };
        out.push(Strip {
            kind,
            i,
            j,
            lo: lo.max(0),
            hi,
            vertices,
            interior,
        });
    }
    out
}

/// Strips `L_ij` of shift `i` around `v`. Vertices unreachable from `v`
/// belong to no strip.
pub fn build_strips(g: &Graph, v: Vertex, kind: ProblemKind, k: usize, i: usize) -> Result<Vec<Strip>> {
    if k == 0 || i == 0 || i > k {
        return Err(Error::InvalidParameter(format!("shift {i} outside 1..={k}")));
    }
    Ok(strips_from_layers(&g.bfs_layers(v)?, kind, k, i))
}
