//! Tree and path decompositions, their validity conditions and derived
//! quantities, plus the constructions that produce them.

mod attach;
mod class;
mod exact;
mod heuristic;
mod io;

pub use attach::attach_path;
pub use class::{decompose_over_class, ClassOutcome, ClassPredicate};
pub use exact::{
    exact_treewidth, exact_treewidth_with_ceiling, minor_min_width, ExactTreewidth, DEFAULT_EXACT_TW_CEILING, DEFAULT_NODE_BUDGET,
};
pub use heuristic::{elimination_order, from_elimination_order, heuristic_decomposition, Strategy};
pub use io::{parse_td, serialize_td};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{normalize, Graph, Vertex};

/// Rooted tree decomposition. Blocks are sorted vertex lists; adhesion sets
/// are always derived from the blocks and the parent pointers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    blocks: Vec<Vec<Vertex>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

/// One violated decomposition condition, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { node: usize, vertex: Vertex },
    UncoveredVertex(Vertex),
    UncoveredEdge(Vertex, Vertex),
    /// The nodes whose blocks contain `vertex`, split into the connected
    /// pieces they form in the tree.
    DisconnectedOccurrence { vertex: Vertex, pieces: Vec<Vec<usize>> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "node {node} mentions out-of-range vertex {vertex}")
            }
            Violation::UncoveredVertex(v) => write!(f, "vertex {v} is in no block"),
            Violation::UncoveredEdge(u, v) => write!(f, "edge {u}-{v} is in no block"),
            Violation::DisconnectedOccurrence { vertex, pieces } => {
                write!(f, "occurrences of vertex {vertex} split into {} pieces", pieces.len())
            }
        }
    }
}

/// Every violated condition; empty exactly when the decomposition is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl TreeDecomposition {
    /// Builds a decomposition from blocks and parent pointers. Exactly one
    /// node must have no parent, and following parents must reach it.
    pub fn from_parents(blocks: Vec<Vec<Vertex>>, parent: Vec<Option<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidDecomposition("no nodes".into()));
        }
        if blocks.len() != parent.len() {
            return Err(Error::InvalidDecomposition(format!(
                "{} blocks but {} parent entries",
                blocks.len(),
                parent.len()
            )));
        }
        let len = blocks.len();
        let roots: Vec<usize> = (0..len).filter(|&t| parent[t].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(format!(
                "expected one root, found {}",
                roots.len()
            )));
        }
        let mut children = vec![Vec::new(); len];
        for (t, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= len || p == t {
                    return Err(Error::InvalidDecomposition(format!("bad parent {p} of node {t}")));
                }
                children[p].push(t);
            }
        }
        let td = TreeDecomposition {
            blocks: blocks.iter().map(|b| normalize(b)).collect(),
            parent,
            children,
            root: roots[0],
        };
        if td.pre_order().len() != len {
            return Err(Error::InvalidDecomposition("parent pointers contain a cycle".into()));
        }
        Ok(td)
    }

    /// Single-block decomposition.
    pub fn single(block: Vec<Vertex>) -> Self {
        TreeDecomposition {
            blocks: vec![normalize(&block)],
            parent: vec![None],
            children: vec![Vec::new()],
            root: 0,
        }
    }

    /// The decomposition with one block holding every vertex of `g`.
    pub fn trivial(g: &Graph) -> Self {
        Self::single((0..g.n()).collect())
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn block(&self, t: usize) -> &[Vertex] {
        &self.blocks[t]
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    /// Nodes with every parent before its children.
    pub fn pre_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(self.children[t].iter().rev());
        }
        out
    }

    /// Nodes with every child before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = self.pre_order();
        out.reverse();
        out
    }

    /// Largest block size minus one (0 for all-empty decompositions).
    pub fn width(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// `A_t = B_t ∩ B_parent(t)`, empty at the root.
    pub fn adhesion_set(&self, t: usize) -> Vec<Vertex> {
        match self.parent[t] {
            None => Vec::new(),
            Some(p) => intersect(&self.blocks[t], &self.blocks[p]),
        }
    }

    pub fn adhesion(&self) -> usize {
        (0..self.len()).map(|t| self.adhesion_set(t).len()).max().unwrap_or(0)
    }

    /// Vertices of all blocks in the subtree rooted at `t`.
    pub fn subtree_vertices(&self, t: usize) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            out.extend_from_slice(&self.blocks[u]);
            stack.extend_from_slice(&self.children[u]);
        }
        normalize(&out)
    }

    /// First node (in pre-order) whose block contains all of `set`.
    pub fn block_containing(&self, set: &[Vertex]) -> Option<usize> {
        self.pre_order()
            .into_iter()
            .find(|&t| set.iter().all(|v| self.blocks[t].binary_search(v).is_ok()))
    }

    /// Lists every violated condition against `g`.
    pub fn validate(&self, g: &Graph) -> ValidityReport {
        let mut violations = Vec::new();
        let n = g.n();
        let mut occ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (t, b) in self.blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    violations.push(Violation::VertexOutOfRange { node: t, vertex: v });
                } else {
                    occ[v].push(t);
                }
            }
        }
        for (v, nodes) in occ.iter().enumerate() {
            if nodes.is_empty() {
                violations.push(Violation::UncoveredVertex(v));
            }
        }
        for (u, v) in g.edges() {
            let covered = occ[u]
                .iter()
                .any(|&t| self.blocks[t].binary_search(&v).is_ok());
            if !covered {
                violations.push(Violation::UncoveredEdge(u, v));
            }
        }
        let mut mark = vec![false; self.len()];
        for (v, nodes) in occ.iter().enumerate() {
            if nodes.len() <= 1 {
                continue;
            }
            for &t in nodes {
                mark[t] = true;
            }
            let mut pieces = Vec::new();
            for &s in nodes {
                if !mark[s] {
                    continue;
                }
                mark[s] = false;
                let mut piece = vec![s];
                let mut queue = VecDeque::from([s]);
                while let Some(t) = queue.pop_front() {
                    let nbrs = self.children[t].iter().copied().chain(self.parent[t]);
                    for u in nbrs {
                        if mark[u] {
                            mark[u] = false;
                            piece.push(u);
                            queue.push_back(u);
                        }
                    }
                }
                piece.sort_unstable();
                pieces.push(piece);
            }
            if pieces.len() > 1 {
                violations.push(Violation::DisconnectedOccurrence { vertex: v, pieces });
            }
        }
        ValidityReport { violations }
    }

    /// `Ok` when valid for `g`, otherwise an error listing the violations.
    pub fn ensure_valid(&self, g: &Graph) -> Result<()> {
        let report = self.validate(g);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDecomposition(report.to_string()))
        }
    }

    /// The torso at `t`: `⟨B_t⟩` plus cliques on `A_t` and on `A_u` for each
    /// child `u`. Returned on local ids with the map back to `g`.
    pub fn torso(&self, g: &Graph, t: usize) -> Result<(Graph, Vec<Vertex>)> {
        if t >= self.len() {
            return Err(Error::InvalidParameter(format!("unknown node {t}")));
        }
        let (mut h, map) = g.induced_subgraph(&self.blocks[t])?;
        let local = |v: Vertex| map.binary_search(&v).unwrap();
        let mut cliques = vec![self.adhesion_set(t)];
        cliques.extend(self.children[t].iter().map(|&u| self.adhesion_set(u)));
        for c in cliques {
            let c: Vec<Vertex> = c.into_iter().map(local).collect();
            h.add_clique(&c)?;
        }
        Ok((h, map))
    }

    /// Renumbers nodes in pre-order, so the root becomes node 0.
    pub fn canonical(&self) -> TreeDecomposition {
        let order = self.pre_order();
        let mut new_id = vec![0; self.len()];
        for (i, &t) in order.iter().enumerate() {
            new_id[t] = i;
        }
        let blocks = order.iter().map(|&t| self.blocks[t].clone()).collect();
        let parent = order.iter().map(|&t| self.parent[t].map(|p| new_id[p])).collect();
        TreeDecomposition::from_parents(blocks, parent).expect("renumbering preserves shape")
    }

    /// Hangs `other` (over the same vertex identifiers) below node `at`,
    /// connecting `other`'s node `other_at` to it. `other` is rerooted at
    /// `other_at` first.
    pub fn graft(&mut self, at: usize, other: &TreeDecomposition, other_at: usize) {
        let offset = self.len();
        let other = other.rerooted(other_at);
        for t in 0..other.len() {
            self.blocks.push(other.blocks[t].clone());
            let p = match other.parent[t] {
                Some(p) => p + offset,
                None => at,
            };
            self.parent.push(Some(p));
            self.children.push(Vec::new());
        }
        for t in offset..self.len() {
            let p = self.parent[t].unwrap();
            self.children[p].push(t);
        }
    }

    /// Same blocks and tree, rooted at `r`.
    pub fn rerooted(&self, r: usize) -> TreeDecomposition {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(t) = queue.pop_front() {
            for u in self.children[t].iter().copied().chain(self.parent[t]) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(t);
                    queue.push_back(u);
                }
            }
        }
        TreeDecomposition::from_parents(self.blocks.clone(), parent).expect("rerooting a tree")
    }

    /// Adds `extra` to every block.
    pub fn with_added_to_every_block(&self, extra: &[Vertex]) -> TreeDecomposition {
        let mut td = self.clone();
        for b in &mut td.blocks {
            b.extend_from_slice(extra);
            *b = normalize(b);
        }
        td
    }

    /// Applies a vertex renaming to every block.
    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> TreeDecomposition {
        let mut td = self.clone();
        for b in &mut td.blocks {
            *b = normalize(&b.iter().map(|&v| f(v)).collect::<Vec<_>>());
        }
        td
    }

    /// Contracts every tree edge whose two blocks are nested, keeping the
    /// larger block. Validity is preserved.
    pub fn compress(&self) -> TreeDecomposition {
        let mut blocks = self.blocks.clone();
        let mut keep_parent: Vec<Option<usize>> = self.parent.clone();
        let mut alias: Vec<usize> = (0..self.len()).collect();
        for t in self.pre_order() {
            if let Some(p) = self.parent[t] {
                let p = alias[p];
                keep_parent[t] = Some(p);
                if is_subset(&blocks[t], &blocks[p]) {
                    alias[t] = p;
                } else if is_subset(&blocks[p], &blocks[t]) {
                    blocks[p] = std::mem::take(&mut blocks[t]);
                    alias[t] = p;
                }
            }
        }
        let kept: Vec<usize> = self.pre_order().into_iter().filter(|&t| alias[t] == t).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (i, &t) in kept.iter().enumerate() {
            new_id[t] = i;
        }
        let parent = kept.iter().map(|&t| keep_parent[t].map(|p| new_id[p])).collect();
        let blocks = kept.iter().map(|&t| std::mem::take(&mut blocks[t])).collect();
        TreeDecomposition::from_parents(blocks, parent).expect("compression keeps a tree")
    }

    /// Joins decompositions of vertex-disjoint graphs under the first one's
    /// root.
    pub fn join_disjoint(parts: Vec<TreeDecomposition>) -> Option<TreeDecomposition> {
        let mut iter = parts.into_iter();
        let mut first = iter.next()?;
        for td in iter {
            let root = td.root;
            first.graft(first.root, &td, root);
        }
        Some(first)
    }
}

/// Path decomposition: blocks in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    blocks: Vec<Vec<Vertex>>,
}

impl PathDecomposition {
    /// Any sequence of blocks, possibly empty (for the empty graph).
    pub fn new(blocks: Vec<Vec<Vertex>>) -> Self {
        PathDecomposition {
            blocks: blocks.iter().map(|b| normalize(b)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn width(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// The path as a tree decomposition rooted at the first block.
    pub fn to_tree(&self) -> Option<TreeDecomposition> {
        if self.blocks.is_empty() {
            return None;
        }
        let parent = (0..self.blocks.len()).map(|i| i.checked_sub(1)).collect();
        Some(TreeDecomposition::from_parents(self.blocks.clone(), parent).unwrap())
    }

    pub fn validate(&self, g: &Graph) -> ValidityReport {
        match self.to_tree() {
            Some(td) => td.validate(g),
            None => ValidityReport {
                violations: (0..g.n()).map(Violation::UncoveredVertex).collect(),
            },
        }
    }
}

pub(crate) fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}
