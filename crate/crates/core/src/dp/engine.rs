//! Table-based dynamic programming over a nice tree decomposition, shared by
//! every exact solver in the crate.
//!
//! A bag position carries two bits: 0 = out of the set and not yet
//! dominated, 1 = out and dominated, 2 = in the set. Vertex cover and
//! independent set only use 0 and 2. Costs are always minimized (a chosen
//! vertex costs +1, or -1 for independent set) and are charged when the
//! vertex is forgotten.

use std::collections::{BTreeMap, HashMap};

use super::ProblemKind;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::treedecomp::TreeDecomposition;

pub(crate) const MAX_BAG: usize = 32;

const OUT: u64 = 0;
const DOM: u64 = 1;
const IN: u64 = 2;
const HIGH: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// One way a child subproblem can be completed for a fixed in/out pattern
/// on its attachment set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TermOption {
    pub cost: i64,
    /// Attachment positions that the child dominates.
    pub dominated: u64,
    /// Persistent vertices (by index) that the child dominates.
    pub persistent: u64,
}

/// A cost table attached to a set of vertices. `options[in_mask]` lists the
/// completions allowed when exactly the vertices selected by `in_mask` (bit
/// `i` for `vertices[i]`) are in the set; a missing key means infeasible.
#[derive(Clone, Debug, Default)]
pub(crate) struct Term {
    pub vertices: Vec<Vertex>,
    pub options: HashMap<u64, Vec<TermOption>>,
}

/// Everything the engine needs. `td` covers the non-persistent vertices and
/// every edge of `graph` between them; persistent vertices are added to
/// every bag.
pub(crate) struct Spec<'a> {
    pub kind: ProblemKind,
    pub graph: &'a Graph,
    pub td: &'a TreeDecomposition,
    pub forced: Vec<bool>,
    pub forbidden: Vec<bool>,
    pub needs_domination: Vec<bool>,
    pub persistent: Vec<Vertex>,
    pub terms: Vec<Term>,
}

impl<'a> Spec<'a> {
    pub fn new(kind: ProblemKind, graph: &'a Graph, td: &'a TreeDecomposition) -> Self {
        let n = graph.n();
        Spec {
            kind,
            graph,
            td,
            forced: vec![false; n],
            forbidden: vec![false; n],
            needs_domination: vec![kind == ProblemKind::DominatingSet; n],
            persistent: Vec::new(),
            terms: Vec::new(),
        }
    }
}

/// Result for one final state of the persistent vertices.
#[derive(Clone, Debug)]
pub(crate) struct RootChoice {
    /// Persistent vertices (by index) dominated in this completion.
    pub persistent_dominated: u64,
    pub cost: i64,
    pub chosen: Vec<Vertex>,
    /// `(term, in_mask, option)` for every term.
    pub picks: Vec<(usize, u64, usize)>,
}

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    Introduce(u64),
    Forget(u64, Vec<(usize, u64, usize)>),
    Join(u64, u64),
}

enum Op {
    Leaf,
    Introduce(Vertex, usize),
    Forget(Vertex, usize),
    Join(usize, usize),
}

/// `(state, cost, picks as (term, key, option index))` while a
/// child state is expanded through its terms.
type Expansion = (u64, i64, Vec<(usize, u64, usize)>);

struct Node {
    op: Op,
    bag: Vec<Vertex>,
    table: BTreeMap<u64, (i64, Back)>,
}

fn get(s: u64, pos: usize) -> u64 {
    (s >> (2 * pos)) & 3
}

fn set(s: u64, pos: usize, v: u64) -> u64 {
    (s & !(3 << (2 * pos))) | (v << (2 * pos))
}

fn low_bits(s: u64, pos: usize) -> u64 {
    s & 1u64.checked_shl(2 * pos as u32).map_or(u64::MAX, |b| b - 1)
}

fn insert_at(s: u64, pos: usize, v: u64) -> u64 {
    let high = s.checked_shr(2 * pos as u32).unwrap_or(0);
    low_bits(s, pos) | (v << (2 * pos)) | high.checked_shl(2 * pos as u32 + 2).unwrap_or(0)
}

fn remove_at(s: u64, pos: usize) -> u64 {
    let high = s.checked_shr(2 * pos as u32 + 2).unwrap_or(0);
    low_bits(s, pos) | high.checked_shl(2 * pos as u32).unwrap_or(0)
}

fn offer(table: &mut BTreeMap<u64, (i64, Back)>, s: u64, cost: i64, back: Back) {
    match table.get(&s) {
        Some((c, _)) if *c <= cost => {}
        _ => {
            table.insert(s, (cost, back));
        }
    }
}

struct Engine<'s, 'a> {
    spec: &'s Spec<'a>,
    nodes: Vec<Node>,
    is_persistent: Vec<bool>,
    persistent_index: Vec<usize>,
    term_of_forget: HashMap<usize, Vec<usize>>,
    assigned: Vec<bool>,
}

impl Engine<'_, '_> {
    fn in_cost(&self) -> i64 {
        match self.spec.kind {
            ProblemKind::IndependentSet => -1,
            _ => 1,
        }
    }

    fn push(&mut self, op: Op, bag: Vec<Vertex>) -> Result<usize> {
        if bag.len() > MAX_BAG {
            return Err(Error::WidthLimit {
                size: bag.len(),
                limit: MAX_BAG,
            });
        }
        let id = self.nodes.len();
        let table = match op {
            Op::Leaf => BTreeMap::from([(0, (0, Back::Leaf))]),
            Op::Introduce(v, c) => self.introduce(v, c, &bag),
            Op::Forget(v, c) => self.forget(v, c, id),
            Op::Join(a, b) => self.join(a, b),
        };
        self.nodes.push(Node { op, bag, table });
        Ok(id)
    }

    fn introduce(&self, v: Vertex, child: usize, bag: &[Vertex]) -> BTreeMap<u64, (i64, Back)> {
        let spec = self.spec;
        let pos = bag.binary_search(&v).unwrap();
        let nbr_pos: Vec<usize> = bag
            .iter()
            .enumerate()
            .filter(|&(_, &u)| u != v && spec.graph.has_edge(u, v))
            .map(|(i, _)| i)
            .collect();
        let persistent = self.is_persistent[v];
        let mut out = BTreeMap::new();
        for (&s0, &(cost, _)) in &self.nodes[child].table {
            let s = insert_at(s0, pos, OUT);
            let any_in = nbr_pos.iter().any(|&p| get(s, p) == IN);
            if !spec.forbidden[v] && !persistent {
                let ok = match spec.kind {
                    ProblemKind::IndependentSet => !any_in,
                    _ => true,
                };
                if ok {
                    let mut t = set(s, pos, IN);
                    if spec.kind == ProblemKind::DominatingSet {
                        for &p in &nbr_pos {
                            if get(t, p) == OUT {
                                t = set(t, p, DOM);
                            }
                        }
                    }
                    offer(&mut out, t, cost, Back::Introduce(s0));
                }
            }
            if !spec.forced[v] || persistent {
                let state = match spec.kind {
                    ProblemKind::VertexCover => {
                        if nbr_pos.iter().any(|&p| get(s, p) != IN && !self.is_persistent[bag[p]]) {
                            continue;
                        }
                        OUT
                    }
                    ProblemKind::DominatingSet if any_in => DOM,
                    _ => OUT,
                };
                offer(&mut out, set(s, pos, state), cost, Back::Introduce(s0));
            }
        }
        out
    }

    fn forget(&self, v: Vertex, child: usize, id: usize) -> BTreeMap<u64, (i64, Back)> {
        let spec = self.spec;
        let child_bag = &self.nodes[child].bag;
        let pos = child_bag.binary_search(&v).unwrap();
        let terms = self.term_of_forget.get(&id).cloned().unwrap_or_default();
        let positions: Vec<Vec<usize>> = terms
            .iter()
            .map(|&t| {
                spec.terms[t]
                    .vertices
                    .iter()
                    .map(|u| child_bag.binary_search(u).unwrap())
                    .collect()
            })
            .collect();
        let mut out = BTreeMap::new();
        for (&s0, &(cost0, _)) in &self.nodes[child].table {
            // Expand the child state through every term option.
            let mut cur: Vec<Expansion> = vec![(s0, cost0, Vec::new())];
            for (k, &t) in terms.iter().enumerate() {
                let term = &spec.terms[t];
                let mut next = Vec::new();
                for (s, c, picks) in &cur {
                    let key = positions[k]
                        .iter()
                        .enumerate()
                        .fold(0u64, |m, (i, &p)| if get(*s, p) == IN { m | (1 << i) } else { m });
                    let Some(opts) = term.options.get(&key) else {
                        continue;
                    };
                    for (oi, opt) in opts.iter().enumerate() {
                        let mut s2 = *s;
                        for (i, &p) in positions[k].iter().enumerate() {
                            if opt.dominated >> i & 1 == 1 && get(s2, p) == OUT {
                                s2 = set(s2, p, DOM);
                            }
                        }
                        for (pi, &pv) in spec.persistent.iter().enumerate() {
                            if opt.persistent >> pi & 1 == 1 {
                                let p = child_bag.binary_search(&pv).unwrap();
                                if get(s2, p) == OUT {
                                    s2 = set(s2, p, DOM);
                                }
                            }
                        }
                        let mut p2 = picks.clone();
                        p2.push((t, key, oi));
                        next.push((s2, c + opt.cost, p2));
                    }
                }
                cur = next;
            }
            for (s, c, picks) in cur {
                let state = get(s, pos);
                if state == OUT && spec.kind == ProblemKind::DominatingSet && spec.needs_domination[v] {
                    continue;
                }
                let c = if state == IN { c + self.in_cost() } else { c };
                offer(&mut out, remove_at(s, pos), c, Back::Forget(s0, picks));
            }
        }
        out
    }

    fn join(&self, a: usize, b: usize) -> BTreeMap<u64, (i64, Back)> {
        let mut by_in: HashMap<u64, Vec<(u64, i64)>> = HashMap::new();
        for (&s, &(c, _)) in &self.nodes[b].table {
            by_in.entry(s & HIGH).or_default().push((s, c));
        }
        let mut out = BTreeMap::new();
        for (&s1, &(c1, _)) in &self.nodes[a].table {
            if let Some(list) = by_in.get(&(s1 & HIGH)) {
                for &(s2, c2) in list {
                    offer(&mut out, s1 | s2, c1 + c2, Back::Join(s1, s2));
                }
            }
        }
        out
    }

    /// Registers terms to be applied at forget node `id` (forgetting `v`
    /// from `bag`).
    fn assign_terms(&mut self, id: usize, v: Vertex, bag: &[Vertex]) {
        let mut list = Vec::new();
        for (t, term) in self.spec.terms.iter().enumerate() {
            if !self.assigned[t]
                && term.vertices.binary_search(&v).is_ok()
                && term.vertices.iter().all(|u| bag.binary_search(u).is_ok())
            {
                self.assigned[t] = true;
                list.push(t);
            }
        }
        if !list.is_empty() {
            self.term_of_forget.insert(id, list);
        }
    }

    fn forget_vertex(&mut self, child: usize, v: Vertex) -> Result<usize> {
        let bag = self.nodes[child].bag.clone();
        let id = self.nodes.len();
        self.assign_terms(id, v, &bag);
        let new_bag: Vec<Vertex> = bag.into_iter().filter(|&u| u != v).collect();
        self.push(Op::Forget(v, child), new_bag)
    }

    fn introduce_vertex(&mut self, child: usize, v: Vertex) -> Result<usize> {
        let mut bag = self.nodes[child].bag.clone();
        let pos = bag.binary_search(&v).unwrap_err();
        bag.insert(pos, v);
        self.push(Op::Introduce(v, child), bag)
    }

    /// Forgets then introduces vertices to move from `from`'s bag to
    /// `target`.
    fn chain(&mut self, mut from: usize, target: &[Vertex]) -> Result<usize> {
        let current = self.nodes[from].bag.clone();
        for v in current.iter().copied().filter(|v| target.binary_search(v).is_err()) {
            from = self.forget_vertex(from, v)?;
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            from = self.introduce_vertex(from, v)?;
        }
        Ok(from)
    }

    fn build(&mut self) -> Result<usize> {
        let td = self.spec.td;
        let mut result = vec![usize::MAX; td.len()];
        for t in td.post_order() {
            let mut target: Vec<Vertex> = td.block(t).to_vec();
            target.extend_from_slice(&self.spec.persistent);
            target.sort_unstable();
            target.dedup();
            let mut acc: Option<usize> = None;
            for &c in td.children(t) {
                let top = self.chain(result[c], &target)?;
                acc = Some(match acc {
                    None => top,
                    Some(prev) => self.push(Op::Join(prev, top), target.clone())?,
                });
            }
            result[t] = match acc {
                Some(id) => id,
                None => {
                    let leaf = self.push(Op::Leaf, Vec::new())?;
                    self.chain(leaf, &target)?
                }
            };
        }
        let mut root_bag = self.spec.persistent.clone();
        root_bag.sort_unstable();
        self.chain(result[td.root()], &root_bag)
    }

    fn reconstruct(&self, root: usize, state: u64) -> (Vec<Vertex>, Vec<(usize, u64, usize)>) {
        let mut chosen = Vec::new();
        let mut picks = Vec::new();
        let mut stack = vec![(root, state)];
        while let Some((id, s)) = stack.pop() {
            let node = &self.nodes[id];
            let back = &node.table[&s].1;
            match (&node.op, back) {
                (Op::Leaf, _) => {}
                (Op::Introduce(_, c), Back::Introduce(prev)) => stack.push((*c, *prev)),
                (Op::Forget(v, c), Back::Forget(prev, p)) => {
                    let pos = self.nodes[*c].bag.binary_search(v).unwrap();
                    if get(*prev, pos) == IN {
                        chosen.push(*v);
                    }
                    picks.extend(p.iter().copied());
                    stack.push((*c, *prev));
                }
                (Op::Join(a, b), Back::Join(s1, s2)) => {
                    stack.push((*a, *s1));
                    stack.push((*b, *s2));
                }
                _ => unreachable!("back pointer matches node kind"),
            }
        }
        chosen.sort_unstable();
        picks.sort_unstable();
        (chosen, picks)
    }
}

/// Runs the dynamic program and returns one optimal completion per
/// reachable final state of the persistent vertices, ordered by state.
pub(crate) fn run(spec: &Spec<'_>) -> Result<Vec<RootChoice>> {
    let n = spec.graph.n();
    let mut is_persistent = vec![false; n];
    let mut persistent_index = vec![usize::MAX; n];
    for (i, &p) in spec.persistent.iter().enumerate() {
        is_persistent[p] = true;
        persistent_index[p] = i;
    }
    if spec.terms.iter().any(|t| t.vertices.is_empty()) {
        return Err(Error::Precondition("cost terms need a non-empty vertex set".into()));
    }
    let mut engine = Engine {
        spec,
        nodes: Vec::new(),
        is_persistent,
        persistent_index,
        term_of_forget: HashMap::new(),
        assigned: vec![false; spec.terms.len()],
    };
    let root = engine.build()?;
    if let Some(t) = engine.assigned.iter().position(|a| !a) {
        return Err(Error::Precondition(format!(
            "cost term on {:?} is not contained in any block",
            spec.terms[t].vertices
        )));
    }
    let root_bag = engine.nodes[root].bag.clone();
    let mut out = Vec::new();
    for (&s, &(cost, _)) in &engine.nodes[root].table {
        let mut dominated = 0u64;
        for (pos, &v) in root_bag.iter().enumerate() {
            if get(s, pos) != OUT {
                dominated |= 1 << engine.persistent_index[v];
            }
        }
        let (chosen, picks) = engine.reconstruct(root, s);
        out.push(RootChoice {
            persistent_dominated: dominated,
            cost,
            chosen,
            picks,
        });
    }
    Ok(out)
}
