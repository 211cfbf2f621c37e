//! Equidistant tree from an ultrametric: single linkage merging, each merge
//! placed at half the merge distance.

use crate::error::{Error, Result};
use crate::treespace::projection::minimum_spanning_tree;
use crate::treespace::tree::{Node, PhyloTree};
use crate::treespace::ultrametric::three_point_violation;
use crate::treespace::UltrametricVector;

/// Default leaf labels `1..=m`, zero-padded when `m >= 10` so that the
/// lexicographic label order matches the leaf index order.
pub fn default_labels(m: usize) -> Vec<String> {
    let width = m.to_string().len();
    (1..=m).map(|i| format!("{i:0width$}")).collect()
}

/// Rebuilds the unique equidistant tree with pairwise distances `u`.
///
/// Merge heights that agree within `tol / 2` collapse into one polytomy.
pub fn reconstruct_tree(u: &UltrametricVector, tol: f64) -> Result<PhyloTree> {
    reconstruct_tree_with_labels(u, &default_labels(u.m()), tol)
}

/// As [`reconstruct_tree`], with `labels[i]` naming leaf `i`. Labels must be
/// strictly increasing so leaf indices survive the round trip.
pub fn reconstruct_tree_with_labels(
    u: &UltrametricVector,
    labels: &[String],
    tol: f64,
) -> Result<PhyloTree> {
    let m = u.m();
    if labels.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: labels.len() });
    }
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("leaf labels must be strictly increasing".into()));
    }
    let coords = u.coords();
    let violation = three_point_violation(coords)?;
    if violation > tol {
        return Err(Error::NotUltrametric { violation, tol });
    }
    if let Some((index, &value)) = coords.iter().enumerate().find(|(_, &v)| v <= 0.0) {
        return Err(Error::NonPositive { index, value });
    }

    let mut edges = minimum_spanning_tree(coords, m);
    edges.sort_by(|a, b| a.2.total_cmp(&b.2));

    let mut nodes: Vec<Node> = labels
        .iter()
        .map(|l| Node { parent: None, children: Vec::new(), length: 0.0, label: Some(l.clone()) })
        .collect();
    let mut height = vec![0.0; m];
    // union-find over leaves; `top[r]` is the node currently heading cluster r
    let mut uf: Vec<usize> = (0..m).collect();
    let mut top: Vec<usize> = (0..m).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }

    for (a, b, w) in edges {
        let h = w / 2.0;
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        let (na, nb) = (top[ra], top[rb]);
        let flat = |n: usize, nodes: &[Node], height: &[f64]| {
            !nodes[n].children.is_empty() && (height[n] - h).abs() <= tol / 2.0
        };
        let merged = match (flat(na, &nodes, &height), flat(nb, &nodes, &height)) {
            (true, true) => {
                let moved = std::mem::take(&mut nodes[nb].children);
                for &c in &moved {
                    nodes[c].parent = Some(na);
                }
                nodes[na].children.extend(moved);
                na
            }
            (true, false) => {
                nodes[nb].parent = Some(na);
                nodes[na].children.push(nb);
                na
            }
            (false, true) => {
                nodes[na].parent = Some(nb);
                nodes[nb].children.push(na);
                nb
            }
            (false, false) => {
                let id = nodes.len();
                nodes.push(Node { parent: None, children: vec![na, nb], length: 0.0, label: None });
                height.push(h);
                nodes[na].parent = Some(id);
                nodes[nb].parent = Some(id);
                id
            }
        };
        uf[rb] = ra;
        top[ra] = merged;
    }

    let root = top[find(&mut uf, 0)];
    for id in 0..nodes.len() {
        if let Some(p) = nodes[id].parent {
            nodes[id].length = (height[p] - height[id]).max(0.0);
        }
    }
    // Nodes emptied by a flat merge are unreachable; drop them.
    compact(nodes, root)
}

fn compact(nodes: Vec<Node>, root: usize) -> Result<PhyloTree> {
    let mut remap = vec![usize::MAX; nodes.len()];
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        remap[v] = order.len();
        order.push(v);
        stack.extend(nodes[v].children.iter().rev().copied());
    }
    let out = order
        .iter()
        .map(|&v| {
            let n = &nodes[v];
            Node {
                parent: n.parent.map(|p| remap[p]),
                children: n.children.iter().map(|&c| remap[c]).collect(),
                length: n.length,
                label: n.label.clone(),
            }
        })
        .collect();
    PhyloTree::from_nodes(out, 0)
}
