//! Leaf-to-root evaluation of the shifting scheme over a clique-sum
//! decomposition. Plain graphs and apex graphs are the one-node case.
//!
//! At a node `t` with apex set `U` and adhesion set `A`, every in-set
//! `Z ⊆ W = U ∪ A` is tried. The rest of the block is cut into strips of
//! the torso levels minus `W`; each strip is solved exactly with the child
//! tables folded in as cost terms, and the best shift is kept per
//! component. For dominating set the vertices of `W \ Z` ride along as
//! persistent vertices, so every completion also reports which of them it
//! dominates; results are combined by OR-convolution over these masks.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::strips::{bounds, strips_from_layers, Strip};
use super::{CenterRule, CliqueSumDecomposition, PtasConfig, StripAudit};
use crate::dp::engine::{run, Spec, Term, TermOption};
use crate::dp::ProblemKind;
use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};
use crate::treedecomp::{exact_treewidth_with_ceiling, heuristic_decomposition, Strategy, TreeDecomposition};

type Mask = u64;

/// Largest `|U_t ∪ A_t|` the node enumeration accepts.
pub(crate) const MAX_W: usize = 16;

#[derive(Clone, Debug)]
struct Entry {
    /// Adhesion positions dominated by the completion.
    dominated: Mask,
    set: Vec<Vertex>,
}

/// `X(t, ·)` keyed by the in-mask over the adhesion set.
#[derive(Debug, Default)]
struct Table {
    entries: HashMap<Mask, Vec<Entry>>,
}

/// `(component, center, shift)`.
type Trace = Vec<(usize, Vertex, usize)>;

#[derive(Clone, Debug)]
struct Cand {
    set: Vec<Vertex>,
    trace: Trace,
}

type Profile = BTreeMap<Mask, Cand>;

/// `(center, shift, strips as (band, lo, hi))`.
pub(crate) type Choice = (Vertex, usize, Vec<(usize, i64, i64)>);

#[derive(Clone, Copy, Debug)]
enum Role {
    Strip(usize),
    W(usize),
    Out,
}

struct Attach {
    child: usize,
    k_local: Vec<Vertex>,
    /// Role of each adhesion vertex of the child.
    roles: Vec<Role>,
}

struct StripPlan {
    strip: Strip,
    /// Strip vertices first, then `W`; edges of the input graph only.
    local: Graph,
    td: TreeDecomposition,
    w_nbr: Vec<Mask>,
    in_interior: Vec<bool>,
    attached: Vec<Attach>,
    relevant: Mask,
}

struct ShiftPlan {
    strips: Vec<StripPlan>,
    detached: Vec<usize>,
}

struct Variant {
    center: Vertex,
    shifts: Vec<ShiftPlan>,
}

struct NodePlan {
    w: Vec<Vertex>,
    a_pos: Vec<usize>,
    u_only: Mask,
    w_adj: Vec<Mask>,
    components: Vec<Vec<Variant>>,
    fixed: Vec<usize>,
    /// Per child: position in `W` of each adhesion vertex, if any.
    child_w: HashMap<usize, Vec<Option<usize>>>,
}

pub(crate) struct RootResult {
    pub set: Vec<Vertex>,
    pub z: Vec<Vertex>,
    /// `(center, shift, strips as (band, lo, hi))` per root component.
    pub choices: Vec<Choice>,
    pub shift_values: Vec<Option<usize>>,
    pub strips: Vec<StripAudit>,
}

struct Solver<'a> {
    g: &'a Graph,
    kind: ProblemKind,
    cfg: &'a PtasConfig,
    k: usize,
    csd: &'a CliqueSumDecomposition,
    adhesion: Vec<Vec<Vertex>>,
}

fn union(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&b| mask >> b & 1 == 1)
}

impl Solver<'_> {
    fn sign(&self) -> i64 {
        if self.kind.is_minimization() {
            1
        } else {
            -1
        }
    }

    fn better(&self, a: usize, b: usize) -> bool {
        if self.kind.is_minimization() {
            a < b
        } else {
            a > b
        }
    }

    fn offer(&self, p: &mut Profile, mask: Mask, cand: Cand) {
        match p.get(&mask) {
            Some(old) if !self.better(cand.set.len(), old.set.len()) => {}
            _ => {
                p.insert(mask, cand);
            }
        }
    }

    fn or_conv(&self, a: &Profile, b: &Profile) -> Profile {
        let mut out = Profile::new();
        for (&ma, ca) in a {
            for (&mb, cb) in b {
                let mut trace = ca.trace.clone();
                trace.extend_from_slice(&cb.trace);
                let cand = Cand {
                    set: union(&ca.set, &cb.set),
                    trace,
                };
                self.offer(&mut out, ma | mb, cand);
            }
        }
        out
    }

    fn unit(trace: Trace) -> Profile {
        Profile::from([(0, Cand { set: Vec::new(), trace })])
    }

    fn plan(&self, t: usize, audits: &mut Vec<StripAudit>) -> Result<NodePlan> {
        let g = self.g;
        let td = self.csd.decomposition();
        let block = td.block(t);
        let a = &self.adhesion[t];
        let w = normalize(&[self.csd.apex(t), a.as_slice()].concat());
        if w.len() > MAX_W {
            return Err(Error::Precondition(format!(
                "node {t}: apex and adhesion sets together hold {} vertices, limit {MAX_W}",
                w.len()
            )));
        }
        let wpos = |v: Vertex| w.binary_search(&v).ok();
        let a_pos: Vec<usize> = a.iter().map(|&v| wpos(v).unwrap()).collect();
        let a_mask: Mask = a_pos.iter().fold(0, |m, &p| m | 1 << p);
        let u_only = ((1u64 << w.len()) - 1) & !a_mask;
        let w_adj: Vec<Mask> = w
            .iter()
            .map(|&x| {
                g.neighbors(x)
                    .iter()
                    .filter_map(|&y| wpos(y))
                    .fold(0, |m, p| m | 1 << p)
            })
            .collect();
        let rest_vertices: Vec<Vertex> = block.iter().copied().filter(|v| wpos(*v).is_none()).collect();
        let rpos = |v: Vertex| rest_vertices.binary_search(&v).ok();
        let mut rest = Graph::new(rest_vertices.len());
        for (i, &x) in rest_vertices.iter().enumerate() {
            for &y in g.neighbors(x) {
                if let Some(j) = rpos(y) {
                    if i < j {
                        rest.add_edge(i, j)?;
                    }
                }
            }
        }
        let mut fixed = Vec::new();
        let mut child_k: Vec<(usize, Vec<Vertex>)> = Vec::new();
        let mut child_w = HashMap::new();
        for &c in td.children(t) {
            let ac = &self.adhesion[c];
            child_w.insert(c, ac.iter().map(|&v| wpos(v)).collect::<Vec<_>>());
            let k_local: Vec<Vertex> = ac.iter().filter_map(|&v| rpos(v)).collect();
            if k_local.is_empty() {
                fixed.push(c);
            } else {
                rest.add_clique(&k_local)?;
                child_k.push((c, k_local));
            }
        }
        let comps = rest.components();
        let mut comp_of = vec![0; rest.n()];
        for (ci, comp) in comps.iter().enumerate() {
            for &x in comp {
                comp_of[x] = ci;
            }
        }
        let mut components = Vec::new();
        for (ci, comp) in comps.iter().enumerate() {
            let centers: Vec<Vertex> = match self.cfg.center {
                CenterRule::FirstVertex => vec![comp[0]],
                CenterRule::Given(v) => match rpos(v) {
                    Some(x) if comp_of[x] == ci => vec![x],
                    _ => vec![comp[0]],
                },
                CenterRule::BestOfAll => comp.clone(),
            };
            let kids: Vec<&(usize, Vec<Vertex>)> = child_k.iter().filter(|(_, k)| comp_of[k[0]] == ci).collect();
            let mut variants = Vec::new();
            for center in centers {
                let layers = rest.bfs_layers(center)?;
                let mut level = vec![usize::MAX; rest.n()];
                for (l, lv) in layers.levels.iter().enumerate() {
                    for &x in lv {
                        level[x] = l;
                    }
                }
                let mut shifts = Vec::new();
                for i in 1..=self.k {
                    let strips = strips_from_layers(&layers, self.kind, self.k, i);
                    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); strips.len()];
                    let mut detached = Vec::new();
                    for (c, kl) in &kids {
                        let lmin = kl.iter().map(|&x| level[x]).min().unwrap() as i64;
                        let lmax = kl.iter().map(|&x| level[x]).max().unwrap() as i64;
                        match self.kind {
                            ProblemKind::VertexCover => {
                                let j = strips
                                    .iter()
                                    .position(|s| s.lo <= lmin && lmax <= s.hi)
                                    .expect("vertex cover strips cover every pair of adjacent levels");
                                attached[j].push(*c);
                            }
                            ProblemKind::DominatingSet => {
                                for (j, s) in strips.iter().enumerate() {
                                    let (_, _, ilo, ihi) = bounds(self.kind, self.k, i, s.j);
                                    if ilo.max(0) <= lmax && lmin <= ihi {
                                        attached[j].push(*c);
                                    }
                                }
                            }
                            ProblemKind::IndependentSet => {
                                match strips.iter().position(|s| s.lo <= lmax && lmin <= s.hi) {
                                    Some(j) => attached[j].push(*c),
                                    None => detached.push(*c),
                                }
                            }
                        }
                    }
                    let mut plans = Vec::new();
                    for (strip, att) in strips.into_iter().zip(attached) {
                        let global = Strip {
                            vertices: strip.vertices.iter().map(|&x| rest_vertices[x]).collect(),
                            interior: strip.interior.iter().map(|&x| rest_vertices[x]).collect(),
                            ..strip
                        };
                        let plan = self.strip_plan(t, global, &w, att, rest_vertices[center], audits)?;
                        plans.push(plan);
                    }
                    shifts.push(ShiftPlan {
                        strips: plans,
                        detached,
                    });
                }
                variants.push(Variant {
                    center: rest_vertices[center],
                    shifts,
                });
            }
            components.push(variants);
        }
        Ok(NodePlan {
            w,
            a_pos,
            u_only,
            w_adj,
            components,
            fixed,
            child_w,
        })
    }

    fn strip_plan(
        &self,
        t: usize,
        strip: Strip,
        w: &[Vertex],
        att: Vec<usize>,
        center: Vertex,
        audits: &mut Vec<StripAudit>,
    ) -> Result<StripPlan> {
        let g = self.g;
        let verts = &strip.vertices;
        let l = verts.len();
        let spos = |v: Vertex| verts.binary_search(&v).ok();
        let wpos = |v: Vertex| w.binary_search(&v).ok();
        let mut local = Graph::new(l + w.len());
        let mut aug = Graph::new(l);
        let mut w_nbr = vec![0; l];
        for (x, &v) in verts.iter().enumerate() {
            for &u in g.neighbors(v) {
                if let Some(y) = spos(u) {
                    if x < y {
                        local.add_edge(x, y)?;
                        aug.add_edge(x, y)?;
                    }
                } else if let Some(p) = wpos(u) {
                    local.add_edge(x, l + p)?;
                    w_nbr[x] |= 1 << p;
                }
            }
        }
        let in_interior = verts.iter().map(|v| strip.interior.binary_search(v).is_ok()).collect();
        let mut relevant = w_nbr.iter().fold(0, |m, &b| m | b);
        let mut attached = Vec::new();
        for c in att {
            let ac = &self.adhesion[c];
            let roles: Vec<Role> = ac
                .iter()
                .map(|&v| match (spos(v), wpos(v)) {
                    (Some(x), _) => Role::Strip(x),
                    (None, Some(p)) => Role::W(p),
                    _ => Role::Out,
                })
                .collect();
            let k_local: Vec<Vertex> = roles
                .iter()
                .filter_map(|r| match r {
                    Role::Strip(x) => Some(*x),
                    _ => None,
                })
                .collect();
            for r in &roles {
                if let Role::W(p) = r {
                    relevant |= 1 << p;
                }
            }
            aug.add_clique(&k_local)?;
            attached.push(Attach {
                child: c,
                k_local,
                roles,
            });
        }
        let mut td = heuristic_decomposition(&aug, Strategy::MinFill);
        let mut width = if l == 0 { 0 } else { td.width() };
        let bound = self.cfg.lambda.map(|lambda| lambda * strip.levels());
        if let Some(b) = bound {
            if l > 0 && width > b && l <= self.cfg.exact_ceiling {
                let exact = exact_treewidth_with_ceiling(&aug, self.cfg.node_budget, self.cfg.exact_ceiling)?;
                if exact.width < width {
                    width = exact.width;
                    td = exact.decomposition;
                }
            }
        }
        audits.push(StripAudit {
            node: t,
            center,
            shift: strip.i,
            band: strip.j,
            lo: strip.lo,
            hi: strip.hi,
            size: l,
            width,
            bound,
            within_bound: bound.is_none_or(|b| width <= b),
        });
        Ok(StripPlan {
            strip,
            local,
            td,
            w_nbr,
            in_interior,
            attached,
            relevant,
        })
    }

    fn child_key(&self, roles: &[Role], strip_in: &[bool], z: Mask) -> Mask {
        roles.iter().enumerate().fold(0, |m, (b, r)| {
            let inside = match *r {
                Role::Strip(x) => strip_in[x],
                Role::W(p) => z >> p & 1 == 1,
                Role::Out => false,
            };
            if inside {
                m | 1 << b
            } else {
                m
            }
        })
    }

    /// Completions of a child whose adhesion set avoids the strips, as a
    /// profile over `W` positions.
    fn child_profile(&self, tables: &[Option<Table>], plan: &NodePlan, c: usize, z: Mask) -> Option<Profile> {
        let map = &plan.child_w[&c];
        let key = map
            .iter()
            .enumerate()
            .fold(0, |m, (b, p)| match p {
                Some(p) if z >> p & 1 == 1 => m | 1 << b,
                _ => m,
            });
        let entries = tables[c].as_ref().unwrap().entries.get(&key)?;
        let mut prof = Profile::new();
        for e in entries {
            let mask = bits(e.dominated).fold(0, |m, b| match map[b] {
                Some(p) => m | 1 << p,
                None => m,
            });
            self.offer(
                &mut prof,
                mask,
                Cand {
                    set: e.set.clone(),
                    trace: Vec::new(),
                },
            );
        }
        Some(prof)
    }

    fn strip_profile(&self, tables: &[Option<Table>], sp: &StripPlan, z: Mask, domz: Mask) -> Result<Option<Profile>> {
        let l = sp.strip.vertices.len();
        if l == 0 {
            return Ok(Some(Self::unit(Vec::new())));
        }
        let mut spec = Spec::new(self.kind, &sp.local, &sp.td);
        let mut pers_pos = Vec::new();
        match self.kind {
            ProblemKind::VertexCover => {
                for x in 0..l {
                    spec.forced[x] = sp.w_nbr[x] & !z != 0;
                }
            }
            ProblemKind::IndependentSet => {
                for x in 0..l {
                    spec.forbidden[x] = sp.w_nbr[x] & z != 0;
                }
            }
            ProblemKind::DominatingSet => {
                for x in 0..sp.local.n() {
                    spec.needs_domination[x] = x < l && sp.in_interior[x] && sp.w_nbr[x] & z == 0;
                }
                pers_pos = bits(sp.relevant & !z & !domz).collect();
                spec.persistent = pers_pos.iter().map(|&p| l + p).collect();
            }
        }
        let pers_index = |p: usize| pers_pos.iter().position(|&q| q == p);
        for att in &sp.attached {
            let table = tables[att.child].as_ref().unwrap();
            let kn = att.k_local.len();
            let mut options = HashMap::new();
            for m in 0..(1u64 << kn) {
                let mut strip_in = vec![false; l];
                for (b, &x) in att.k_local.iter().enumerate() {
                    strip_in[x] = m >> b & 1 == 1;
                }
                let key = self.child_key(&att.roles, &strip_in, z);
                let Some(entries) = table.entries.get(&key) else {
                    continue;
                };
                let opts: Vec<TermOption> = entries
                    .iter()
                    .map(|e| {
                        let (mut dominated, mut persistent) = (0, 0);
                        for b in bits(e.dominated) {
                            match att.roles[b] {
                                Role::Strip(x) => dominated |= 1 << att.k_local.binary_search(&x).unwrap(),
                                Role::W(p) => {
                                    if let Some(pi) = pers_index(p) {
                                        persistent |= 1 << pi;
                                    }
                                }
                                Role::Out => {}
                            }
                        }
                        TermOption {
                            cost: self.sign() * e.set.len() as i64,
                            dominated,
                            persistent,
                        }
                    })
                    .collect();
                options.insert(m, opts);
            }
            spec.terms.push(Term {
                vertices: att.k_local.clone(),
                options,
            });
        }
        let choices = run(&spec)?;
        if choices.is_empty() {
            return Ok(None);
        }
        let mut prof = Profile::new();
        for ch in choices {
            let mut set: Vec<Vertex> = ch.chosen.iter().map(|&x| sp.strip.vertices[x]).collect();
            let mut strip_in = vec![false; l];
            for &x in &ch.chosen {
                strip_in[x] = true;
            }
            for &(term, _, oi) in &ch.picks {
                let att = &sp.attached[term];
                let key = self.child_key(&att.roles, &strip_in, z);
                let e = &tables[att.child].as_ref().unwrap().entries[&key][oi];
                set = union(&set, &e.set);
            }
            let mask = bits(ch.persistent_dominated).fold(0, |m, pi| m | 1 << pers_pos[pi]);
            self.offer(&mut prof, mask, Cand { set, trace: Vec::new() });
        }
        Ok(Some(prof))
    }

    /// Completions for in-set `z`, as `(dominated adhesion mask, candidate)`.
    /// `only_shift` restricts every component to one shift.
    fn solve_z(
        &self,
        tables: &[Option<Table>],
        plan: &NodePlan,
        z: Mask,
        only_shift: Option<usize>,
    ) -> Result<Vec<(Mask, Cand)>> {
        let nw = plan.w.len();
        match self.kind {
            ProblemKind::VertexCover => {
                if (0..nw).any(|p| z >> p & 1 == 0 && plan.w_adj[p] & !z != 0) {
                    return Ok(Vec::new());
                }
            }
            ProblemKind::IndependentSet => {
                if bits(z).any(|p| plan.w_adj[p] & z != 0) {
                    return Ok(Vec::new());
                }
            }
            ProblemKind::DominatingSet => {}
        }
        let domz = if self.kind == ProblemKind::DominatingSet {
            (0..nw)
                .filter(|&p| z >> p & 1 == 0 && plan.w_adj[p] & z != 0)
                .fold(0, |m, p| m | 1 << p)
        } else {
            0
        };
        let a_mask: Mask = plan.a_pos.iter().fold(0, |m, &p| m | 1 << p);
        let own: Vec<Vertex> = bits(z & !a_mask).map(|p| plan.w[p]).collect();
        let mut acc = Profile::from([(0, Cand { set: own, trace: Vec::new() })]);
        for &c in &plan.fixed {
            let Some(p) = self.child_profile(tables, plan, c, z) else {
                return Ok(Vec::new());
            };
            acc = self.or_conv(&acc, &p);
        }
        for (ci, variants) in plan.components.iter().enumerate() {
            let mut comp = Profile::new();
            for var in variants {
                for (si, sp) in var.shifts.iter().enumerate() {
                    if only_shift.is_some_and(|s| s != si + 1) {
                        continue;
                    }
                    let mut prof = Self::unit(vec![(ci, var.center, si + 1)]);
                    let mut ok = true;
                    for strip in &sp.strips {
                        match self.strip_profile(tables, strip, z, domz)? {
                            Some(p) => prof = self.or_conv(&prof, &p),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    for &c in &sp.detached {
                        match self.child_profile(tables, plan, c, z) {
                            Some(p) if ok => prof = self.or_conv(&prof, &p),
                            _ => ok = false,
                        }
                    }
                    if ok {
                        for (m, cand) in prof {
                            self.offer(&mut comp, m, cand);
                        }
                    }
                }
            }
            if comp.is_empty() {
                return Ok(Vec::new());
            }
            acc = self.or_conv(&acc, &comp);
        }
        let required = if self.kind == ProblemKind::DominatingSet {
            plan.u_only & !z & !domz
        } else {
            0
        };
        Ok(acc
            .into_iter()
            .filter(|(m, _)| (m | domz) & required == required)
            .map(|(m, cand)| {
                let full = m | domz;
                let dominated = plan
                    .a_pos
                    .iter()
                    .enumerate()
                    .fold(0, |d, (b, &p)| if full >> p & 1 == 1 { d | 1 << b } else { d });
                (dominated, cand)
            })
            .collect())
    }

    fn a_key(plan: &NodePlan, z: Mask) -> Mask {
        plan.a_pos
            .iter()
            .enumerate()
            .fold(0, |m, (b, &p)| if z >> p & 1 == 1 { m | 1 << b } else { m })
    }

    fn build_table(&self, plan: &NodePlan, results: Vec<(Mask, Vec<(Mask, Cand)>)>) -> Table {
        let mut merged: BTreeMap<Mask, Profile> = BTreeMap::new();
        for (z, list) in results {
            let key = Self::a_key(plan, z);
            let prof = merged.entry(key).or_default();
            for (d, cand) in list {
                self.offer(prof, d, cand);
            }
        }
        let mut table = Table::default();
        for (key, prof) in merged {
            let all: Vec<(Mask, usize)> = prof.iter().map(|(&m, c)| (m, c.set.len())).collect();
            let entries: Vec<Entry> = prof
                .into_iter()
                .filter(|(m, c)| {
                    !all.iter().any(|&(m2, len2)| {
                        m2 != *m && m2 & m == *m && !self.better(c.set.len(), len2)
                    })
                })
                .map(|(dominated, c)| Entry { dominated, set: c.set })
                .collect();
            table.entries.insert(key, entries);
        }
        table
    }
}

/// Runs the scheme over `csd` and returns the root solution with its audit.
pub(crate) fn solve(g: &Graph, csd: &CliqueSumDecomposition, kind: ProblemKind, cfg: &PtasConfig) -> Result<RootResult> {
    let td = csd.decomposition();
    let adhesion: Vec<Vec<Vertex>> = (0..td.len()).map(|t| td.adhesion_set(t)).collect();
    let solver = Solver {
        g,
        kind,
        cfg,
        k: cfg.k(kind),
        csd,
        adhesion,
    };
    let mut tables: Vec<Option<Table>> = (0..td.len()).map(|_| None).collect();
    let mut audits = Vec::new();
    let root = td.root();
    for t in td.post_order() {
        let plan = solver.plan(t, &mut audits)?;
        let zs: Vec<Mask> = (0..1u64 << plan.w.len()).collect();
        let results: Vec<(Mask, Vec<(Mask, Cand)>)> = zs
            .par_iter()
            .map(|&z| solver.solve_z(&tables, &plan, z, None).map(|r| (z, r)))
            .collect::<Result<_>>()?;
        if t == root {
            return finish(&solver, &tables, &plan, results, audits);
        }
        let table = solver.build_table(&plan, results);
        for &c in td.children(t) {
            tables[c] = None;
        }
        tables[t] = Some(table);
    }
    unreachable!("post-order ends at the root")
}

fn finish(
    solver: &Solver<'_>,
    tables: &[Option<Table>],
    plan: &NodePlan,
    results: Vec<(Mask, Vec<(Mask, Cand)>)>,
    strips: Vec<StripAudit>,
) -> Result<RootResult> {
    let mut best: Option<(Mask, Cand)> = None;
    for (z, list) in results {
        for (_, cand) in list {
            if best.as_ref().is_none_or(|(_, b)| solver.better(cand.set.len(), b.set.len())) {
                best = Some((z, cand));
            }
        }
    }
    let (z, cand) = best.ok_or_else(|| Error::Precondition("no feasible completion at the root".into()))?;
    let mut shift_values = Vec::new();
    for i in 1..=solver.k {
        let list = solver.solve_z(tables, plan, z, Some(i))?;
        let value = list
            .iter()
            .map(|(_, c)| c.set.len())
            .reduce(|a, b| if solver.better(b, a) { b } else { a });
        shift_values.push(value);
    }
    let mut trace = cand.trace.clone();
    trace.sort_unstable();
    let choices = trace
        .iter()
        .map(|&(ci, center, shift)| {
            let var = plan.components[ci].iter().find(|v| v.center == center).unwrap();
            let bands = var.shifts[shift - 1]
                .strips
                .iter()
                .map(|s| (s.strip.j, s.strip.lo, s.strip.hi))
                .collect();
            (center, shift, bands)
        })
        .collect();
    Ok(RootResult {
        set: cand.set,
        z: bits(z).map(|p| plan.w[p]).collect(),
        choices,
        shift_values,
        strips,
    })
}
