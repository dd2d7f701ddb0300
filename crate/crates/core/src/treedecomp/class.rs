use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::exact::{exact_treewidth_with_ceiling, DEFAULT_EXACT_TW_CEILING, DEFAULT_NODE_BUDGET};
use super::heuristic::{heuristic_decomposition, Strategy};
use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

type Test = dyn Fn(&Graph) -> bool + Send + Sync;

/// A graph class given by a membership oracle and a bound `omega` on the
/// clique number of its members. The search is only sound for classes
/// closed under taking subgraphs.
#[derive(Clone)]
pub struct ClassPredicate {
    name: String,
    omega: usize,
    test: Arc<Test>,
}

impl fmt::Debug for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassPredicate")
            .field("name", &self.name)
            .field("omega", &self.omega)
            .finish()
    }
}

fn treewidth_at_most(g: &Graph, w: usize) -> bool {
    if g.n() <= w + 1 {
        return true;
    }
    if heuristic_decomposition(g, Strategy::MinFill).width() <= w {
        return true;
    }
    match exact_treewidth_with_ceiling(g, DEFAULT_NODE_BUDGET, 64) {
        Ok(r) => r.width <= w,
        Err(_) => false,
    }
}

fn subsets_up_to(n: usize, k: usize, mut f: impl FnMut(&[Vertex]) -> bool) -> bool {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for v in start..n {
            cur.push(v);
            if rec(n, size, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (0..=k.min(n)).any(|size| rec(n, size, 0, &mut Vec::new(), &mut f))
}

impl ClassPredicate {
    pub fn new(name: impl Into<String>, omega: usize, test: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        ClassPredicate {
            name: name.into(),
            omega,
            test: Arc::new(test),
        }
    }

    /// Graphs of tree-width at most `w` (clique number at most `w + 1`).
    pub fn width_bound(w: usize) -> Self {
        Self::new(format!("tw{w}"), w + 1, move |g| treewidth_at_most(g, w))
    }

    /// Graphs with a set of at most `mu` vertices whose removal leaves
    /// tree-width at most `w`.
    pub fn apex_width(mu: usize, w: usize) -> Self {
        Self::new(format!("apex{mu}-tw{w}"), w + 1 + mu, move |g| {
            subsets_up_to(g.n(), mu, |x| {
                let (rest, _) = g.without(x).expect("in range");
                treewidth_at_most(&rest, w)
            })
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn omega(&self) -> usize {
        self.omega
    }

    pub fn test(&self, g: &Graph) -> bool {
        (self.test)(g)
    }
}

impl FromStr for ClassPredicate {
    type Err = Error;

    /// `tw<w>` or `apex<mu>-tw<w>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown class `{s}` (expected tw<w> or apex<mu>-tw<w>)"));
        if let Some(w) = s.strip_prefix("tw") {
            return Ok(Self::width_bound(w.parse().map_err(|_| bad())?));
        }
        if let Some(rest) = s.strip_prefix("apex") {
            let (mu, w) = rest.split_once("-tw").ok_or_else(bad)?;
            return Ok(Self::apex_width(
                mu.parse().map_err(|_| bad())?,
                w.parse().map_err(|_| bad())?,
            ));
        }
        Err(bad())
    }
}

/// Result of [`decompose_over_class`].
#[derive(Clone, Debug)]
pub enum ClassOutcome {
    /// Every torso is accepted by the predicate and the adhesion is at most
    /// `omega`.
    Decomposed(TreeDecomposition),
    /// Neither the predicate nor any separator of size at most `omega`
    /// works; `instances` sub-instances and `separators` candidate sets were
    /// examined.
    Rejected { instances: usize, separators: usize },
}

type Key = (Vec<Vertex>, Vec<(Vertex, Vertex)>);

struct Search<'a> {
    pred: &'a ClassPredicate,
    memo: HashMap<Key, Option<TreeDecomposition>>,
    tests: HashMap<Key, bool>,
    separators: usize,
}

/// Sub-instance: a graph on local ids plus the original id of each vertex.
struct Piece {
    graph: Graph,
    verts: Vec<Vertex>,
}

impl Piece {
    fn key(&self) -> Key {
        let edges = self.graph.edges().map(|(u, v)| (self.verts[u], self.verts[v])).collect();
        (self.verts.clone(), edges)
    }
}

impl Search<'_> {
    fn accepts(&mut self, p: &Piece) -> bool {
        let key = p.key();
        if let Some(&b) = self.tests.get(&key) {
            return b;
        }
        let b = self.pred.test(&p.graph);
        self.tests.insert(key, b);
        b
    }

    /// Pieces `⟨X ∪ C⟩ ∪ K_X` for the components `C` of `p \ X`, or `None`
    /// when `X` leaves fewer than two components.
    fn split(p: &Piece, x: &[Vertex]) -> Option<Vec<Piece>> {
        let (rest, map) = p.graph.without(x).expect("in range");
        let comps = rest.components();
        if comps.len() < 2 {
            return None;
        }
        let pieces = comps
            .into_iter()
            .map(|c| {
                let mut set: Vec<Vertex> = c.into_iter().map(|v| map[v]).collect();
                set.extend_from_slice(x);
                let (mut graph, local) = p.graph.induced_subgraph(&set).expect("in range");
                let xs: Vec<Vertex> = x.iter().map(|v| local.binary_search(v).unwrap()).collect();
                graph.add_clique(&xs).expect("in range");
                Piece {
                    graph,
                    verts: local.iter().map(|&v| p.verts[v]).collect(),
                }
            })
            .collect();
        Some(pieces)
    }

    fn combine(x: &[Vertex], parts: Vec<TreeDecomposition>) -> TreeDecomposition {
        let mut iter = parts.into_iter();
        let mut base = iter.next().expect("at least two pieces");
        for td in iter {
            let at = base.block_containing(x).expect("separator is a clique in every piece");
            let other_at = td.block_containing(x).expect("separator is a clique in every piece");
            base.graft(at, &td, other_at);
        }
        base
    }

    /// Separators of `p` in order of size, then lexicographically, up to
    /// `omega`, stopping at the first for which `f` succeeds.
    fn first_separator<T>(&mut self, p: &Piece, mut f: impl FnMut(&mut Self, &[Vertex], Vec<Piece>) -> Option<T>) -> Option<T> {
        let n = p.graph.n();
        let limit = self.pred.omega.min(n.saturating_sub(2));
        let mut found = None;
        subsets_up_to(n, limit, |x| {
            let Some(pieces) = Self::split(p, x) else {
                return false;
            };
            self.separators += 1;
            found = f(self, x, pieces);
            found.is_some()
        });
        found
    }

    /// Splits a piece already known to be in the class as finely as possible
    /// along separators whose pieces are themselves in the class.
    fn refine(&mut self, p: &Piece) -> TreeDecomposition {
        let split = self.first_separator(p, |s, x, pieces| {
            if !pieces.iter().all(|q| s.accepts(q)) {
                return None;
            }
            let tds = pieces.iter().map(|q| s.refine(q)).collect();
            let xo: Vec<Vertex> = x.iter().map(|&v| p.verts[v]).collect();
            Some(Self::combine(&xo, tds))
        });
        split.unwrap_or_else(|| TreeDecomposition::single(p.verts.clone()))
    }

    fn solve(&mut self, p: &Piece) -> Option<TreeDecomposition> {
        let key = p.key();
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let result = if self.accepts(p) {
            Some(self.refine(p))
        } else {
            self.first_separator(p, |s, x, pieces| {
                let mut tds = Vec::with_capacity(pieces.len());
                for q in &pieces {
                    tds.push(s.solve(q)?);
                }
                let xo: Vec<Vertex> = x.iter().map(|&v| p.verts[v]).collect();
                Some(Self::combine(&xo, tds))
            })
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// Searches for a decomposition of `g` whose torsos all satisfy `pred`,
/// following the recursive characterisation: `g` decomposes iff it is in
/// the class or some set `X` with `|X| <= omega` splits it into at least
/// two components `C` such that every piece `⟨X ∪ C⟩ ∪ K_X` decomposes.
///
/// Separators are tried by increasing size, then lexicographically. Pieces
/// accepted by the predicate are still split further where possible, so
/// the returned decomposition is as fine as the separator order allows.
pub fn decompose_over_class(g: &Graph, pred: &ClassPredicate) -> Result<ClassOutcome> {
    if g.n() > DEFAULT_EXACT_TW_CEILING {
        return Err(Error::CeilingExceeded {
            what: "decomposition over a class",
            size: g.n(),
            ceiling: DEFAULT_EXACT_TW_CEILING,
        });
    }
    let mut search = Search {
        pred,
        memo: HashMap::new(),
        tests: HashMap::new(),
        separators: 0,
    };
    let root = Piece {
        graph: g.clone(),
        verts: (0..g.n()).collect(),
    };
    Ok(match search.solve(&root) {
        Some(td) => ClassOutcome::Decomposed(td),
        None => ClassOutcome::Rejected {
            instances: search.memo.len(),
            separators: search.separators,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn decomposed(o: ClassOutcome) -> TreeDecomposition {
        match o {
            ClassOutcome::Decomposed(td) => td,
            ClassOutcome::Rejected { .. } => panic!("unexpected rejection"),
        }
    }

    #[test]
    fn triangle_is_not_over_forests() {
        let o = decompose_over_class(&complete(3), &ClassPredicate::width_bound(1)).unwrap();
        assert!(matches!(o, ClassOutcome::Rejected { .. }));
    }

    #[test]
    fn k5_is_not_over_width_two() {
        let o = decompose_over_class(&complete(5), &ClassPredicate::width_bound(2)).unwrap();
        assert!(matches!(o, ClassOutcome::Rejected { separators: 0, .. }));
    }

    #[test]
    fn two_k4_sharing_an_edge() {
        let mut g = complete(4);
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_clique(&[0, 1, a, b]).unwrap();
        let p = ClassPredicate::width_bound(3);
        let td = decomposed(decompose_over_class(&g, &p).unwrap());
        assert!(td.validate(&g).is_valid());
        assert_eq!(td.len(), 2);
        assert_eq!(td.adhesion(), 2);
        for t in 0..td.len() {
            let (torso, _) = td.torso(&g, t).unwrap();
            assert_eq!(torso, complete(4));
        }
    }

    #[test]
    fn parses_names() {
        let p: ClassPredicate = "apex1-tw2".parse().unwrap();
        assert_eq!((p.name(), p.omega()), ("apex1-tw2", 4));
        assert!(p.test(&complete(4)));
        assert!(!p.test(&complete(5)));
        assert!("planar".parse::<ClassPredicate>().is_err());
    }
}
