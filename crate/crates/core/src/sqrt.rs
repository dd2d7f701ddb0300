//! Tree decompositions of width `O(√(λn))` built from the BFS levels of a
//! single vertex: sparse runs of levels are covered by consecutive level
//! pairs, dense runs by an inner decomposition widened with the two
//! neighbouring border levels.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};
use crate::treedecomp::{heuristic_decomposition, Strategy, TreeDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// Every level has `|L_j|² ≤ λn`.
    Sparse,
    /// Every level has `|L_j|² > λn`.
    Dense,
}

/// A maximal run of levels `start..=end` of one kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub kind: IntervalKind,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSplit {
    /// `|L_0|, …, |L_m|`.
    pub levels: Vec<usize>,
    /// Alternating runs partitioning `1..=m` in order.
    pub intervals: Vec<Interval>,
    /// `λ · n`, the square of the threshold.
    pub threshold_sq: usize,
}

impl IntervalSplit {
    pub fn new(levels: Vec<usize>, lambda: usize, n: usize) -> Self {
        let threshold_sq = lambda * n;
        let mut intervals: Vec<Interval> = Vec::new();
        for (j, &size) in levels.iter().enumerate().skip(1) {
            let kind = if size * size <= threshold_sq {
                IntervalKind::Sparse
            } else {
                IntervalKind::Dense
            };
            match intervals.last_mut() {
                Some(last) if last.kind == kind => last.end = j,
                _ => intervals.push(Interval { kind, start: j, end: j }),
            }
        }
        IntervalSplit {
            levels,
            intervals,
            threshold_sq,
        }
    }

    pub fn threshold(&self) -> f64 {
        (self.threshold_sq as f64).sqrt()
    }
}

/// Decomposes a dense run of levels.
pub type InnerProvider<'a> = &'a (dyn Fn(&Graph) -> Result<TreeDecomposition> + Sync);

/// Min-fill decomposition; the default inner provider.
pub fn min_fill_inner(g: &Graph) -> Result<TreeDecomposition> {
    Ok(heuristic_decomposition(g, Strategy::MinFill))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtReport {
    pub n: usize,
    pub lambda: usize,
    pub mu: usize,
    pub split: IntervalSplit,
    /// Width of the part built for each interval, level 0 included in the
    /// first.
    pub interval_widths: Vec<usize>,
    pub width: usize,
    /// `⌊3√(λn)⌋ + μ`.
    pub bound: usize,
}

/// `⌊3√(λn)⌋` in exact integer arithmetic.
pub fn sqrt_bound(lambda: usize, n: usize) -> usize {
    (9 * lambda as u64 * n as u64).isqrt() as usize
}

pub fn sqrt_decomposition(g: &Graph, lambda: usize, v: Vertex, inner: InnerProvider<'_>) -> Result<(TreeDecomposition, SqrtReport)> {
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be at least 1".into()));
    }
    let layers = g.bfs_layers(v)?;
    if !layers.unreachable.is_empty() {
        return Err(Error::Disconnected);
    }
    let levels = &layers.levels;
    let split = IntervalSplit::new(levels.iter().map(Vec::len).collect(), lambda, g.n());
    // Level 0 is a single vertex, so it always joins the leading sparse run.
    let mut runs: Vec<Interval> = Vec::new();
    match split.intervals.first() {
        Some(first) if first.kind == IntervalKind::Sparse => {
            runs.push(Interval { start: 0, ..*first });
            runs.extend_from_slice(&split.intervals[1..]);
        }
        _ => {
            runs.push(Interval {
                kind: IntervalKind::Sparse,
                start: 0,
                end: 0,
            });
            runs.extend_from_slice(&split.intervals);
        }
    }
    let span = |a: usize, b: usize| -> Vec<Vertex> { normalize(&levels[a..=b].concat()) };
    let parts: Vec<TreeDecomposition> = runs
        .par_iter()
        .enumerate()
        .map(|(r, run)| match run.kind {
            IntervalKind::Sparse => {
                let blocks: Vec<Vec<Vertex>> = if run.start == run.end {
                    vec![levels[run.start].clone()]
                } else {
                    (run.start..run.end).map(|j| span(j, j + 1)).collect()
                };
                let parent = (0..blocks.len()).map(|i| i.checked_sub(1)).collect();
                TreeDecomposition::from_parents(blocks, parent)
            }
            IntervalKind::Dense => {
                let vertices = span(run.start, run.end);
                let (sub, map) = g.induced_subgraph(&vertices)?;
                let td = inner(&sub)?;
                td.ensure_valid(&sub)?;
                let mut border = levels[run.start - 1].clone();
                if r + 1 < runs.len() {
                    border.extend_from_slice(&levels[run.end + 1]);
                }
                Ok(td.map_vertices(|x| map[x]).with_added_to_every_block(&border))
            }
        })
        .collect::<Result<_>>()?;
    let interval_widths = parts.iter().map(TreeDecomposition::width).collect();
    // Chain the parts: each dense part hangs below the last block of the
    // preceding sparse path, and the next sparse path hangs below its root.
    let mut td = parts[0].clone();
    let mut last_sparse_tail = td.len() - 1;
    for (run, part) in runs.iter().zip(&parts).skip(1) {
        let offset = td.len();
        match run.kind {
            IntervalKind::Dense => {
                td.graft(last_sparse_tail, part, part.root());
                last_sparse_tail = offset + part.root();
            }
            IntervalKind::Sparse => {
                td.graft(last_sparse_tail, part, 0);
                last_sparse_tail = offset + part.len() - 1;
            }
        }
    }
    let width = td.width();
    let report = SqrtReport {
        n: g.n(),
        lambda,
        mu: 0,
        split,
        interval_widths,
        width,
        bound: sqrt_bound(lambda, g.n()),
    };
    Ok((td, report))
}

/// Decomposes `G \ X` and adds `X` to every block.
pub fn sqrt_decomposition_apex(
    g: &Graph,
    lambda: usize,
    mu: usize,
    apex: &[Vertex],
    v: Vertex,
    inner: InnerProvider<'_>,
) -> Result<(TreeDecomposition, SqrtReport)> {
    g.check_vertices(apex)?;
    let apex = normalize(apex);
    if apex.len() > mu {
        return Err(Error::ApexOverBound {
            node: 0,
            size: apex.len(),
            mu,
        });
    }
    if apex.binary_search(&v).is_ok() {
        return Err(Error::Precondition(format!("center {v} is an apex vertex")));
    }
    let (rest, map) = g.without(&apex)?;
    let center = map.binary_search(&v).map_err(|_| Error::VertexOutOfRange { vertex: v, n: g.n() })?;
    let (td, mut report) = sqrt_decomposition(&rest, lambda, center, inner)?;
    let td = td.map_vertices(|x| map[x]).with_added_to_every_block(&apex);
    report.n = g.n();
    report.mu = mu;
    report.width = td.width();
    report.bound = sqrt_bound(lambda, g.n()) + mu;
    Ok((td, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, path};

    #[test]
    fn path_is_one_sparse_run() {
        let (td, report) = sqrt_decomposition(&path(9), 1, 0, &min_fill_inner).unwrap();
        td.ensure_valid(&path(9)).unwrap();
        assert_eq!(report.width, 1);
        assert_eq!(report.split.intervals.len(), 1);
        assert!(report.width <= report.bound);
    }

    #[test]
    fn star_has_a_dense_level() {
        let edges: Vec<_> = (1..9).map(|v| (0, v)).collect();
        let g = Graph::from_edges(9, &edges).unwrap();
        let (td, report) = sqrt_decomposition(&g, 1, 0, &min_fill_inner).unwrap();
        td.ensure_valid(&g).unwrap();
        assert_eq!(report.split.levels, vec![1, 8]);
        assert_eq!(
            report.split.intervals,
            vec![Interval {
                kind: IntervalKind::Dense,
                start: 1,
                end: 1
            }]
        );
        assert!(report.width <= sqrt_bound(1, 9));
    }

    #[test]
    fn dense_runs_between_sparse_runs() {
        // Levels 1, 2, 6, 6, 2, 1 with λn small enough that the middle is dense.
        let mut g = grid(6, 2);
        let extra = g.add_vertex();
        g.add_edge(extra, 11).unwrap();
        let split = IntervalSplit::new(vec![1, 2, 6, 6, 2, 1], 1, 13);
        assert_eq!(split.intervals.len(), 3);
        assert_eq!(split.intervals[1].kind, IntervalKind::Dense);
        let (td, report) = sqrt_decomposition(&g, 1, 0, &min_fill_inner).unwrap();
        td.ensure_valid(&g).unwrap();
        assert!(report.width <= report.bound);
    }

    #[test]
    fn threshold_ties_are_sparse() {
        let split = IntervalSplit::new(vec![1, 3], 1, 9);
        assert_eq!(split.intervals[0].kind, IntervalKind::Sparse);
        let split = IntervalSplit::new(vec![1, 4], 1, 9);
        assert_eq!(split.intervals[0].kind, IntervalKind::Dense);
    }

    #[test]
    fn wheel_with_hub_as_apex() {
        let mut g = cycle(8);
        let hub = g.add_vertex();
        for v in 0..8 {
            g.add_edge(hub, v).unwrap();
        }
        let (td, report) = sqrt_decomposition_apex(&g, 2, 1, &[hub], 0, &min_fill_inner).unwrap();
        td.ensure_valid(&g).unwrap();
        assert!(report.width <= report.bound);
        assert!(sqrt_decomposition_apex(&g, 2, 0, &[hub], 0, &min_fill_inner).is_err());
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(2);
        assert!(matches!(sqrt_decomposition(&g, 1, 0, &min_fill_inner), Err(Error::Disconnected)));
    }
}
