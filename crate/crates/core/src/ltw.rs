//! Local tree-width: the largest tree-width of an `r`-neighbourhood, per
//! radius, with certificates and a linear-bound check.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treedecomp::{
    exact_treewidth_with_ceiling, heuristic_decomposition, minor_min_width, Strategy, TreeDecomposition, DEFAULT_EXACT_TW_CEILING,
    DEFAULT_NODE_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LtwMode {
    /// Exact tree-width of every neighbourhood.
    #[default]
    Exact,
    /// Min-fill widths against a contraction-degeneracy lower bound; a
    /// value is exact only where the two meet.
    Upper,
}

#[derive(Clone, Debug)]
pub struct LtwOptions {
    pub mode: LtwMode,
    pub ceiling: usize,
    pub node_budget: u64,
    /// Number of contracted balls sampled by [`check_linear_bound_with`].
    pub minor_samples: usize,
}

impl Default for LtwOptions {
    fn default() -> Self {
        LtwOptions {
            mode: LtwMode::Exact,
            ceiling: DEFAULT_EXACT_TW_CEILING,
            node_budget: DEFAULT_NODE_BUDGET,
            minor_samples: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LtwEntry {
    pub radius: usize,
    pub value: usize,
    /// Proven lower bound on the local tree-width at this radius.
    pub lower: usize,
    /// A vertex whose neighbourhood attains `value`; `None` on the empty graph.
    pub witness: Option<Vertex>,
    /// Radius of the neighbourhood the certificate decomposes. Below
    /// `radius` only when an upper bound was raised to keep the profile
    /// monotone.
    pub certificate_radius: usize,
    /// Decomposition of `N_{certificate_radius}(witness)` of width `value`,
    /// over the identifiers of the input graph.
    pub certificate: Option<TreeDecomposition>,
    /// `lower == value`.
    pub exact: bool,
    /// Distinct neighbourhoods whose tree-width was solved exactly.
    pub solved: usize,
}

#[derive(Clone, Debug)]
pub struct LtwProfile {
    pub mode: LtwMode,
    pub entries: Vec<LtwEntry>,
}

impl LtwProfile {
    pub fn radii(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.radius).collect()
    }

    pub fn values(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn value(&self, r: usize) -> Option<usize> {
        self.entries.get(r).map(|e| e.value)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|e| e.exact)
    }
}

pub fn local_treewidth(g: &Graph, r_max: usize, mode: LtwMode) -> Result<LtwProfile> {
    local_treewidth_with(
        g,
        r_max,
        &LtwOptions {
            mode,
            ..LtwOptions::default()
        },
    )
}

struct Measured {
    vertex: Vertex,
    width: usize,
    lower: usize,
    td: TreeDecomposition,
}

pub fn local_treewidth_with(g: &Graph, r_max: usize, opts: &LtwOptions) -> Result<LtwProfile> {
    let n = g.n();
    let dist: Vec<Vec<Option<usize>>> = (0..n).into_par_iter().map(|v| g.distances(v)).collect::<Result<_>>()?;
    let mut entries: Vec<LtwEntry> = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let balls: Vec<Vec<Vertex>> = dist
            .iter()
            .map(|d| (0..n).filter(|&w| matches!(d[w], Some(x) if x <= r)).collect())
            .collect();
        if opts.mode == LtwMode::Exact {
            if let Some(v) = (0..n).find(|&v| balls[v].len() > opts.ceiling) {
                return Err(Error::NeighbourhoodCeiling {
                    vertex: v,
                    radius: r,
                    size: balls[v].len(),
                    ceiling: opts.ceiling,
                });
            }
        }
        // Equal balls have equal width; keep the first vertex of each.
        let mut seen: HashMap<&[Vertex], ()> = HashMap::new();
        let distinct: Vec<Vertex> = (0..n).filter(|&v| seen.insert(&balls[v], ()).is_none()).collect();
        let upper: Vec<Measured> = distinct
            .par_iter()
            .map(|&v| {
                let (sub, map) = g.induced_subgraph(&balls[v])?;
                let td = heuristic_decomposition(&sub, Strategy::MinFill);
                Ok(Measured {
                    vertex: v,
                    width: td.width(),
                    lower: minor_min_width(&sub),
                    td: td.map_vertices(|x| map[x]),
                })
            })
            .collect::<Result<_>>()?;
        let (measured, solved) = match opts.mode {
            LtwMode::Upper => (upper, 0),
            LtwMode::Exact => {
                let floor = entries.last().map_or(0, |e| e.lower);
                let best = AtomicUsize::new(floor);
                let mut order: Vec<&Measured> = upper.iter().collect();
                order.sort_by_key(|m| (std::cmp::Reverse(m.width), m.vertex));
                let solved: Vec<Option<Measured>> = order
                    .par_iter()
                    .map(|m| {
                        // A ball whose heuristic width is already beaten cannot attain the maximum.
                        if m.width < best.load(Ordering::Relaxed) {
                            return Ok(None);
                        }
                        let (sub, map) = g.induced_subgraph(&balls[m.vertex])?;
                        let t = exact_treewidth_with_ceiling(&sub, opts.node_budget, opts.ceiling)?;
                        let lower = if t.exact { t.width } else { t.lower_bound };
                        best.fetch_max(lower, Ordering::Relaxed);
                        Ok(Some(Measured {
                            vertex: m.vertex,
                            width: t.width,
                            lower,
                            td: t.decomposition.map_vertices(|x| map[x]),
                        }))
                    })
                    .collect::<Result<_>>()?;
                let solved: Vec<Measured> = solved.into_iter().flatten().collect();
                let count = solved.len();
                (solved, count)
            }
        };
        let value = measured.iter().map(|m| m.width).max().unwrap_or(0);
        let floor = entries.last().map_or(0, |e| e.lower);
        let lower = measured.iter().map(|m| m.lower).max().unwrap_or(0).max(floor);
        let top = measured.iter().filter(|m| m.width == value).min_by_key(|m| m.vertex);
        let mut entry = LtwEntry {
            radius: r,
            value,
            lower,
            witness: top.map(|m| m.vertex),
            certificate_radius: r,
            certificate: top.map(|m| m.td.clone()),
            exact: lower == value,
            solved,
        };
        if let Some(prev) = entries.last() {
            if prev.value > entry.value {
                entry = LtwEntry {
                    radius: r,
                    lower,
                    exact: lower == prev.value,
                    solved,
                    ..prev.clone()
                };
            }
        }
        entries.push(entry);
    }
    Ok(LtwProfile { mode: opts.mode, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// An upper bound above `λ·r` with a lower bound below it.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusCheck {
    pub radius: usize,
    pub value: usize,
    pub bound: usize,
    pub verdict: Verdict,
    pub witness: Option<Vertex>,
}

#[derive(Clone, Debug)]
pub struct MinorCheck {
    /// Centre of the contracted ball in the input graph.
    pub center: Vertex,
    pub contracted_radius: usize,
    pub n: usize,
    /// Empty when a neighbourhood of the minor exceeded the ceiling.
    pub checks: Vec<RadiusCheck>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LinearBoundReport {
    pub lambda: usize,
    pub profile: LtwProfile,
    pub checks: Vec<RadiusCheck>,
    pub minors: Vec<MinorCheck>,
}

impl LinearBoundReport {
    /// Every checked radius of the graph and of every sampled minor passes.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .chain(self.minors.iter().flat_map(|m| &m.checks))
            .all(|c| c.verdict == Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        self.checks
            .iter()
            .chain(self.minors.iter().flat_map(|m| &m.checks))
            .any(|c| c.verdict == Verdict::Fail)
    }

    /// What a passing report establishes.
    pub fn scope(&self) -> &'static str {
        "subgraph neighbourhoods and sampled ball contractions; other minors unchecked"
    }
}

fn radius_checks(profile: &LtwProfile, lambda: usize) -> Vec<RadiusCheck> {
    profile
        .entries
        .iter()
        .map(|e| {
            let bound = lambda * e.radius;
            let verdict = if e.value <= bound {
                Verdict::Pass
            } else if e.lower > bound {
                Verdict::Fail
            } else {
                Verdict::Inconclusive
            };
            RadiusCheck {
                radius: e.radius,
                value: e.value,
                bound,
                verdict,
                witness: e.witness,
            }
        })
        .collect()
}

pub fn check_linear_bound(g: &Graph, lambda: usize, r_max: usize) -> Result<LinearBoundReport> {
    check_linear_bound_with(g, lambda, r_max, &LtwOptions::default())
}

/// Checks `ltw(r) ≤ λ·r` for `r = 0..=r_max` on `g` and on the graphs
/// obtained by contracting the 1-ball around a few evenly spaced vertices.
pub fn check_linear_bound_with(g: &Graph, lambda: usize, r_max: usize, opts: &LtwOptions) -> Result<LinearBoundReport> {
    let profile = local_treewidth_with(g, r_max, opts)?;
    let checks = radius_checks(&profile, lambda);
    let n = g.n();
    let samples = if n < 3 { 0 } else { opts.minor_samples.min(n) };
    let mut centers: Vec<Vertex> = (0..samples).map(|i| i * n / samples).collect();
    centers.dedup();
    let minors = centers
        .into_iter()
        .map(|v| {
            let (h, _) = g.contract_ball(v, 1)?;
            let (checks, skipped) = match local_treewidth_with(&h, r_max, opts) {
                Ok(p) => (radius_checks(&p, lambda), None),
                Err(e @ Error::NeighbourhoodCeiling { .. }) => (Vec::new(), Some(e.to_string())),
                Err(e) => return Err(e),
            };
            Ok(MinorCheck {
                center: v,
                contracted_radius: 1,
                n: h.n(),
                checks,
                skipped,
            })
        })
        .collect::<Result<_>>()?;
    Ok(LinearBoundReport {
        lambda,
        profile,
        checks,
        minors,
    })
}

/// `l·(l−1)^(r−1)`, the local tree-width bound for maximum degree `l`.
pub fn valence_bound(l: u64, r: u32) -> Result<BigUint> {
    if l == 0 || r == 0 {
        return Err(Error::InvalidParameter(format!("valence bound needs l, r >= 1, got l={l}, r={r}")));
    }
    Ok(BigUint::from(l) * BigUint::from(l - 1).pow(r - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, grid, path, random_tree};

    #[test]
    fn trees_have_local_width_one() {
        for seed in 0..5 {
            let p = local_treewidth(&random_tree(12, seed), 3, LtwMode::Exact).unwrap();
            assert_eq!(p.values(), vec![0, 1, 1, 1]);
        }
        assert_eq!(local_treewidth(&Graph::new(3), 2, LtwMode::Exact).unwrap().values(), vec![0, 0, 0]);
    }

    #[test]
    fn clique_and_grid() {
        let p = local_treewidth(&complete(5), 2, LtwMode::Exact).unwrap();
        assert_eq!(p.values(), vec![0, 4, 4]);
        // The 2-ball around the centre contains a 3×3 grid.
        let p = local_treewidth(&grid(5, 5), 2, LtwMode::Exact).unwrap();
        assert_eq!(p.values()[1], 1);
        assert_eq!(p.values()[2], 3);
        let e = &p.entries[2];
        let ball = grid(5, 5).ball(e.witness.unwrap(), 2).unwrap();
        let (sub, map) = grid(5, 5).induced_subgraph(&ball).unwrap();
        let td = e.certificate.as_ref().unwrap().map_vertices(|x| map.binary_search(&x).unwrap());
        td.ensure_valid(&sub).unwrap();
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn upper_mode_brackets_exact_values() {
        for g in [grid(4, 4), grid(5, 5), crate::graph::stacked_triangulation(14, 3)] {
            let up = local_treewidth(&g, 3, LtwMode::Upper).unwrap();
            let ex = local_treewidth(&g, 3, LtwMode::Exact).unwrap();
            assert!(up.values().windows(2).all(|w| w[0] <= w[1]));
            for (u, e) in up.entries.iter().zip(&ex.entries) {
                assert!(u.lower <= e.value && e.value <= u.value);
                assert_eq!(u.exact, u.lower == u.value);
            }
        }
        assert!(local_treewidth(&complete(5), 1, LtwMode::Upper).unwrap().is_exact());
    }

    #[test]
    fn ceiling_names_vertex_and_radius() {
        let opts = LtwOptions {
            ceiling: 4,
            ..LtwOptions::default()
        };
        match local_treewidth_with(&path(9), 2, &opts) {
            Err(Error::NeighbourhoodCeiling { vertex, radius, size, .. }) => assert_eq!((vertex, radius, size), (2, 2, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn linear_bound_on_clique_fails() {
        let r = check_linear_bound(&complete(5), 1, 1).unwrap();
        assert!(r.failed());
        assert_eq!(r.checks[1].value, 4);
        assert_eq!(r.checks[1].verdict, Verdict::Fail);
        assert!(check_linear_bound(&complete(5), 4, 2).unwrap().passed());
    }

    #[test]
    fn valence() {
        assert_eq!(valence_bound(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(valence_bound(2, 5).unwrap(), BigUint::from(2u32));
        assert_eq!(valence_bound(3, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(valence_bound(10, 40).unwrap().to_string(), (BigUint::from(10u32) * BigUint::from(9u32).pow(39)).to_string());
        assert!(valence_bound(0, 1).is_err());
    }
}
