//! Shifting approximation schemes for vertex cover, dominating set and
//! independent set: plain graphs, graphs with an apex set, and clique-sums
//! given by a [`CliqueSumDecomposition`].

mod csd;
mod node;
mod strips;

pub use csd::{parse_csd, serialize_csd, CliqueSumDecomposition};
pub use strips::{build_strips, Strip};

use std::str::FromStr;

use num_rational::Ratio;

use crate::dp::{ProblemKind, Provenance, Solution};
use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};
use crate::treedecomp::{DEFAULT_EXACT_TW_CEILING, DEFAULT_NODE_BUDGET};

/// How the BFS center of each component is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CenterRule {
    /// Lowest vertex id of the component.
    #[default]
    FirstVertex,
    /// This vertex where it lies in the component, the lowest id elsewhere.
    Given(Vertex),
    /// Every vertex; the best result is kept.
    BestOfAll,
}

impl FromStr for CenterRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(CenterRule::FirstVertex),
            "all" => Ok(CenterRule::BestOfAll),
            _ => s
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .map(|v| CenterRule::Given(v - 1))
                .ok_or_else(|| Error::InvalidParameter(format!("center rule `{s}`: expected first, all or a 1-based vertex"))),
        }
    }
}

/// Parses `0.34`, `1/3` or `2` into an exact positive rational.
pub fn parse_epsilon(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::InvalidParameter(format!("epsilon `{s}` is not a positive number"));
    let r = if let Some((a, b)) = s.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        Ratio::new(a, b)
    } else {
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if frac.len() > 18 || !frac.bytes().all(|c| c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(bad)?;
        Ratio::new(num, den)
    };
    if *r.numer() == 0 {
        return Err(bad());
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtasConfig {
    pub epsilon: Ratio<u64>,
    /// Assumed local tree-width slope; strips wider than `λ · levels` are
    /// retried exactly and flagged.
    pub lambda: Option<usize>,
    /// Apex budget.
    pub mu: usize,
    pub center: CenterRule,
    /// Search budget for exact strip tree-width.
    pub node_budget: u64,
    /// Largest strip handed to the exact tree-width solver.
    pub exact_ceiling: usize,
}

impl PtasConfig {
    pub fn new(epsilon: Ratio<u64>) -> Result<Self> {
        if *epsilon.numer() == 0 {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        Ok(PtasConfig {
            epsilon,
            lambda: None,
            mu: 0,
            center: CenterRule::default(),
            node_budget: DEFAULT_NODE_BUDGET,
            exact_ceiling: DEFAULT_EXACT_TW_CEILING,
        })
    }

    /// `⌈1/ε⌉` for vertex cover and independent set, `⌈2/ε⌉` for
    /// dominating set.
    pub fn k(&self, kind: ProblemKind) -> usize {
        let (p, q) = (*self.epsilon.numer() as u128, *self.epsilon.denom() as u128);
        let top = if kind == ProblemKind::DominatingSet { 2 * q } else { q };
        top.div_ceil(p).max(1) as usize
    }
}

/// Shift-level factor guaranteed for a given `k`: `(k+1)/k` for vertex
/// cover, `(k+2)/k` for dominating set, `(k-1)/k` for independent set.
pub fn shift_factor(kind: ProblemKind, k: usize) -> Ratio<u64> {
    let k = k as u64;
    match kind {
        ProblemKind::VertexCover => Ratio::new(k + 1, k),
        ProblemKind::DominatingSet => Ratio::new(k + 2, k),
        ProblemKind::IndependentSet => Ratio::new(k - 1, k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripAudit {
    pub node: usize,
    pub center: Vertex,
    pub shift: usize,
    pub band: usize,
    pub lo: i64,
    pub hi: i64,
    pub size: usize,
    /// Width of the decomposition the strip was solved on.
    pub width: usize,
    /// `λ · levels`, when λ is configured.
    pub bound: Option<usize>,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtasAudit {
    pub k: usize,
    /// Center chosen in each component at the root.
    pub centers: Vec<Vertex>,
    /// Shift chosen in each component at the root.
    pub chosen_shifts: Vec<usize>,
    /// `|X_i|` at the root for `i = 1..=k`, every component on shift `i`;
    /// `None` when the shift has no feasible completion.
    pub shift_values: Vec<Option<usize>>,
    /// Apex vertices taken into the solution at the root.
    pub apex_subset: Vec<Vertex>,
    pub strips: Vec<StripAudit>,
}

impl PtasAudit {
    /// `Σ_i |X_i|`, when every shift is feasible.
    pub fn shift_sum(&self) -> Option<usize> {
        self.shift_values.iter().copied().sum()
    }

    /// Whether some strip exceeded its `λ` bound, which makes the ratio
    /// guarantee conditional.
    pub fn conditional(&self) -> bool {
        self.strips.iter().any(|s| !s.within_bound)
    }

    pub fn max_strip_width(&self) -> usize {
        self.strips.iter().map(|s| s.width).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtasOutcome {
    pub solution: Solution,
    pub audit: PtasAudit,
}

fn run(g: &Graph, csd: &CliqueSumDecomposition, kind: ProblemKind, cfg: &PtasConfig, method: &str) -> Result<PtasOutcome> {
    let k = cfg.k(kind);
    if g.n() == 0 {
        return Ok(PtasOutcome {
            solution: Solution::new(g, kind, Vec::new(), Provenance::method(method)),
            audit: PtasAudit {
                k,
                centers: Vec::new(),
                chosen_shifts: Vec::new(),
                shift_values: vec![Some(0); k],
                apex_subset: Vec::new(),
                strips: Vec::new(),
            },
        });
    }
    let root = node::solve(g, csd, kind, cfg)?;
    let mut provenance = Provenance::method(method);
    provenance.shift = root.choices.first().map(|c| c.1);
    provenance.strips = root
        .choices
        .iter()
        .flat_map(|(_, shift, bands)| bands.iter().map(move |&(j, lo, hi)| (*shift, j as i64, lo, hi)))
        .collect();
    if !csd.apex(csd.decomposition().root()).is_empty() {
        provenance.subset = Some(root.z.clone());
    }
    Ok(PtasOutcome {
        solution: Solution::new(g, kind, root.set, provenance),
        audit: PtasAudit {
            k,
            centers: root.choices.iter().map(|c| c.0).collect(),
            chosen_shifts: root.choices.iter().map(|c| c.1).collect(),
            shift_values: root.shift_values,
            apex_subset: root.z,
            strips: root.strips,
        },
    })
}

/// Shifting scheme on a graph assumed to have linear local tree-width.
/// Each component is handled on its own.
pub fn ptas_local(g: &Graph, kind: ProblemKind, cfg: &PtasConfig) -> Result<PtasOutcome> {
    let csd = CliqueSumDecomposition::single(g, &[])?;
    run(g, &csd, kind, cfg, "ptas-local")
}

/// Shifting scheme on `G \ U` for every choice of in-set `Y ⊆ U`.
pub fn ptas_apex(g: &Graph, apex: &[Vertex], kind: ProblemKind, cfg: &PtasConfig) -> Result<PtasOutcome> {
    let apex = normalize(apex);
    if apex.len() > cfg.mu {
        return Err(Error::ApexOverBound {
            node: 0,
            size: apex.len(),
            mu: cfg.mu,
        });
    }
    let csd = CliqueSumDecomposition::single(g, &apex)?;
    run(g, &csd, kind, cfg, "ptas-apex")
}

/// Shifting scheme over a clique-sum decomposition, leaf to root.
pub fn ptas_cliquesum(g: &Graph, csd: &CliqueSumDecomposition, kind: ProblemKind, cfg: &PtasConfig) -> Result<PtasOutcome> {
    csd.validate(g, cfg.lambda, cfg.mu)?;
    run(g, csd, kind, cfg, "ptas-cliquesum")
}
