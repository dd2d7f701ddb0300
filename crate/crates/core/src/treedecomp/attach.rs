use super::{PathDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Glues `h` onto `g` along a path of `g` and extends a decomposition of `g`
/// to the union.
///
/// `anchors[i] = (y, x)` identifies vertex `y` of `h` with vertex `x` of
/// `g`; `y` must lie in the `i`-th block of `pd_h`, consecutive `x`s must be
/// adjacent in `g`, and both sides must be injective. In the union, `g`
/// keeps its identifiers and the non-anchor vertices of `h` follow in
/// increasing order. Every block `C_t` of `td_g` becomes `C_t` plus the
/// path blocks `B_i` with `x_i ∈ C_t`, so the width is at most
/// `(width(td_g) + 1)(width(pd_h) + 1) - 1`.
pub fn attach_path(
    g: &Graph,
    td_g: &TreeDecomposition,
    h: &Graph,
    pd_h: &PathDecomposition,
    anchors: &[(Vertex, Vertex)],
) -> Result<(Graph, TreeDecomposition)> {
    if anchors.len() != pd_h.len() {
        return Err(Error::Precondition(format!(
            "{} anchors for a path decomposition with {} blocks",
            anchors.len(),
            pd_h.len()
        )));
    }
    let mut to_union = vec![usize::MAX; h.n()];
    let mut used_in_g = vec![false; g.n()];
    for (i, &(y, x)) in anchors.iter().enumerate() {
        h.check_vertex(y)?;
        g.check_vertex(x)?;
        if pd_h.blocks()[i].binary_search(&y).is_err() {
            return Err(Error::Precondition(format!(
                "anchor {i}: vertex {y} of the attached graph is not in block {i}"
            )));
        }
        if to_union[y] != usize::MAX || used_in_g[x] {
            return Err(Error::Precondition(format!("anchor {i} ({y} -> {x}) is not injective")));
        }
        if i > 0 && !g.has_edge(anchors[i - 1].1, x) {
            return Err(Error::Precondition(format!(
                "anchors {} and {i} ({} and {x}) are not adjacent",
                i - 1,
                anchors[i - 1].1
            )));
        }
        to_union[y] = x;
        used_in_g[x] = true;
    }
    let mut next = g.n();
    for slot in to_union.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut union = g.clone();
    while union.n() < next {
        union.add_vertex();
    }
    for (u, v) in h.edges() {
        union.add_edge(to_union[u], to_union[v])?;
    }
    let mut anchor_blocks: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(_, x)) in anchors.iter().enumerate() {
        anchor_blocks[x].push(i);
    }
    let mut blocks = Vec::with_capacity(td_g.len());
    let mut parent = Vec::with_capacity(td_g.len());
    for t in 0..td_g.len() {
        let mut block = td_g.block(t).to_vec();
        for &x in td_g.block(t) {
            for &i in anchor_blocks.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                block.extend(pd_h.blocks()[i].iter().map(|&y| to_union[y]));
            }
        }
        blocks.push(block);
        parent.push(td_g.parent(t));
    }
    Ok((union, TreeDecomposition::from_parents(blocks, parent)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn empty_attachment_is_identity() {
        let g = path(2);
        let td = TreeDecomposition::single(vec![0, 1]);
        let (u, t) = attach_path(&g, &td, &Graph::new(0), &PathDecomposition::new(vec![]), &[]).unwrap();
        assert_eq!(u, g);
        assert_eq!(t, td);
    }

    #[test]
    fn two_paths() {
        let g = path(3);
        let td = TreeDecomposition::from_parents(vec![vec![0, 1], vec![1, 2]], vec![None, Some(0)]).unwrap();
        // A second P_3 glued along its first two vertices.
        let h = path(3);
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        let (u, t) = attach_path(&g, &td, &h, &pd, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(u.n(), 4);
        assert!(t.validate(&u).is_valid());
        assert!(t.width() <= 3);
    }

    #[test]
    fn fan_on_cycle() {
        let g = cycle(4);
        let td = TreeDecomposition::from_parents(vec![vec![0, 1, 2], vec![0, 2, 3]], vec![None, Some(0)]).unwrap();
        // Fan: hub 3 joined to the path 0-1-2.
        let h = Graph::from_edges(4, &[(0, 1), (1, 2), (3, 0), (3, 1), (3, 2)]).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1, 3], vec![1, 2, 3], vec![2, 3]]);
        assert!(pd.validate(&h).is_valid());
        let (u, t) = attach_path(&g, &td, &h, &pd, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert!(t.validate(&u).is_valid());
        assert!(t.width() < 3 * 3);
    }

    #[test]
    fn precondition_errors_name_the_anchor() {
        let g = path(3);
        let td = TreeDecomposition::single(vec![0, 1, 2]);
        let h = path(2);
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1]]);
        let err = attach_path(&g, &td, &h, &pd, &[(0, 0), (1, 2)]).unwrap_err();
        assert!(err.to_string().contains("not adjacent"), "{err}");
        let err = attach_path(&g, &td, &h, &pd, &[(1, 0), (0, 1)]).unwrap_err();
        assert!(err.to_string().contains("anchor 1"), "{err}");
    }
}
