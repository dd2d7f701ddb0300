use super::{normalize, Graph, Vertex};
use crate::error::{Error, Result};

/// Branch sets witnessing that a pattern graph is a minor of a host graph:
/// `branch_sets[x]` is the set of host vertices contracted onto pattern
/// vertex `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<Vertex>>,
}

impl MinorWitness {
    /// Checks the three witness conditions and returns a description of the
    /// first violation found.
    pub fn check(&self, host: &Graph, pattern: &Graph) -> std::result::Result<(), String> {
        if self.branch_sets.len() != pattern.n() {
            return Err(format!(
                "{} branch sets for a pattern with {} vertices",
                self.branch_sets.len(),
                pattern.n()
            ));
        }
        let mut owner = vec![usize::MAX; host.n()];
        for (x, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(format!("branch set of {x} is empty"));
            }
            for &v in set {
                if v >= host.n() {
                    return Err(format!("branch set of {x} contains out-of-range vertex {v}"));
                }
                if owner[v] != usize::MAX {
                    return Err(format!("vertex {v} lies in branch sets {} and {x}", owner[v]));
                }
                owner[v] = x;
            }
            let (sub, _) = host.induced_subgraph(set).map_err(|e| e.to_string())?;
            if !sub.is_connected() {
                return Err(format!("branch set of {x} is not connected"));
            }
        }
        for (x, y) in pattern.edges() {
            let linked = self.branch_sets[x]
                .iter()
                .any(|&u| host.neighbors(u).iter().any(|&w| owner[w] == y));
            if !linked {
                return Err(format!("pattern edge {x}-{y} has no host edge between branch sets"));
            }
        }
        Ok(())
    }
}

/// Contracts a connected vertex set to one vertex (id 0 in the result).
pub(crate) fn contract_set(g: &Graph, set: &[Vertex]) -> Result<(Graph, MinorWitness)> {
    g.check_vertices(set)?;
    let set = normalize(set);
    if set.is_empty() {
        return Err(Error::Precondition("cannot contract an empty set".into()));
    }
    let mut inside = vec![false; g.n()];
    for &v in &set {
        inside[v] = true;
    }
    let mut new_id = vec![0usize; g.n()];
    let mut branch_sets = vec![set.clone()];
    for v in 0..g.n() {
        if !inside[v] {
            new_id[v] = branch_sets.len();
            branch_sets.push(vec![v]);
        }
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (new_id[u], new_id[v]);
        if a != b {
            edges.push((a, b));
        }
    }
    let h = Graph::from_edges(branch_sets.len(), &edges)?;
    Ok((h, MinorWitness { branch_sets }))
}
