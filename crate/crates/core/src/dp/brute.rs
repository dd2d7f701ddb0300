use super::{ProblemKind, Provenance, Solution};
use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};

pub const DEFAULT_BRUTE_FORCE_CEILING: usize = 22;

pub fn brute_force(
    g: &Graph,
    kind: ProblemKind,
    forced_in: &[Vertex],
    forbidden: &[Vertex],
    dominate_only: Option<&[Vertex]>,
) -> Result<Option<Solution>> {
    brute_force_with_ceiling(g, kind, forced_in, forbidden, dominate_only, DEFAULT_BRUTE_FORCE_CEILING)
}

fn mask_of(set: &[Vertex]) -> u64 {
    set.iter().fold(0, |m, &v| m | (1 << v))
}

/// Whether `a` precedes `b` as sorted vertex lists (equal sizes).
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

/// Exhaustive optimum over all vertex sets containing `forced_in` and
/// avoiding `forbidden`. For dominating set, only `dominate_only` (default:
/// every vertex) must be dominated. Among optimal sets the lexicographically
/// least sorted vertex list is returned; `None` means no set satisfies the
/// constraints.
pub fn brute_force_with_ceiling(
    g: &Graph,
    kind: ProblemKind,
    forced_in: &[Vertex],
    forbidden: &[Vertex],
    dominate_only: Option<&[Vertex]>,
    ceiling: usize,
) -> Result<Option<Solution>> {
    let n = g.n();
    if n > ceiling.min(63) {
        return Err(Error::CeilingExceeded {
            what: "brute force",
            size: n,
            ceiling: ceiling.min(63),
        });
    }
    g.check_vertices(forced_in)?;
    g.check_vertices(forbidden)?;
    let forced = mask_of(forced_in);
    let banned = mask_of(forbidden);
    if forced & banned != 0 {
        return Ok(None);
    }
    let adj: Vec<u64> = (0..n).map(|v| mask_of(g.neighbors(v))).collect();
    let targets = match dominate_only {
        Some(d) => {
            g.check_vertices(d)?;
            normalize(d)
        }
        None => (0..n).collect(),
    };
    let feasible = |s: u64| -> bool {
        match kind {
            ProblemKind::VertexCover => (0..n).all(|v| s >> v & 1 == 1 || adj[v] & !s == 0),
            ProblemKind::IndependentSet => (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0),
            ProblemKind::DominatingSet => targets.iter().all(|&v| s >> v & 1 == 1 || adj[v] & s != 0),
        }
    };
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let free: Vec<Vertex> = (0..n).filter(|&v| (forced | banned) >> v & 1 == 0).collect();
    let sizes: Vec<usize> = if kind.is_minimization() {
        (0..=free.len()).collect()
    } else {
        (0..=free.len()).rev().collect()
    };
    for j in sizes {
        let mut best: Option<u64> = None;
        for_each_subset(free.len(), j, |pick| {
            let s = forced | free.iter().enumerate().fold(0, |m, (i, &v)| if pick >> i & 1 == 1 { m | (1 << v) } else { m });
            if feasible(s & full) && best.is_none_or(|b| lex_less(s, b)) {
                best = Some(s);
            }
        });
        if let Some(s) = best {
            let vertices: Vec<Vertex> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            let mut sol = Solution::new(g, kind, vertices, Provenance::method("brute-force"));
            if kind == ProblemKind::DominatingSet {
                sol.feasible = super::dominates(g, &sol.vertices, &targets);
            }
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Calls `f` with every `k`-subset of `0..m` as a bit mask.
fn for_each_subset(m: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > m {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << m;
    let mut s: u64 = (1 << k) - 1;
    while s < limit {
        f(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn value(g: &Graph, kind: ProblemKind) -> usize {
        brute_force(g, kind, &[], &[], None).unwrap().unwrap().value
    }

    #[test]
    fn cycle_and_clique() {
        assert_eq!(value(&cycle(5), ProblemKind::VertexCover), 3);
        assert_eq!(value(&cycle(5), ProblemKind::IndependentSet), 2);
        assert_eq!(value(&complete(4), ProblemKind::DominatingSet), 1);
    }

    #[test]
    fn lexicographically_least() {
        let s = brute_force(&cycle(4), ProblemKind::VertexCover, &[], &[], None).unwrap().unwrap();
        assert_eq!(s.vertices, vec![0, 2]);
        let s = brute_force(&complete(4), ProblemKind::DominatingSet, &[], &[0], None).unwrap().unwrap();
        assert_eq!(s.vertices, vec![1]);
    }

    #[test]
    fn constraints() {
        let g = path(5);
        let s = brute_force(&g, ProblemKind::DominatingSet, &[], &[], Some(&[1, 2, 3])).unwrap().unwrap();
        assert_eq!(s.vertices, vec![2]);
        let s = brute_force(&g, ProblemKind::IndependentSet, &[1], &[], None).unwrap().unwrap();
        assert_eq!(s.vertices, vec![1, 3]);
        assert!(brute_force(&g, ProblemKind::IndependentSet, &[1, 2], &[], None).unwrap().is_none());
        assert!(brute_force(&path(23), ProblemKind::VertexCover, &[], &[], None).is_err());
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0;
        for_each_subset(6, 3, |_| count += 1);
        assert_eq!(count, 20);
    }
}
