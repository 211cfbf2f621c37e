//! Projection of torus points onto the space of ultrametrics.
//!
//! The projection of `x` is its subdominant ultrametric: the entry for
//! `(i, j)` is the smallest achievable maximum edge weight over all paths
//! from `i` to `j` in the complete graph weighted by `x`. Every such minimax
//! path runs along a minimum spanning tree, so the projection is a spanning
//! tree computation followed by a max-edge sweep from every leaf, `O(m^2)`
//! overall. This is the single linkage dendrogram read back as a distance.

use crate::error::Result;
use crate::treespace::pairs::{leaf_count, pair_index};
use crate::treespace::UltrametricVector;
use crate::trop::TorusPoint;

/// An edge `(a, b, weight)` of a spanning tree over the leaves.
pub type SpanningEdge = (usize, usize, f64);

/// Prim's algorithm on the complete graph with pair weights `x`.
///
/// Ties go to the lowest leaf index; edges are returned in insertion order.
pub fn minimum_spanning_tree(x: &[f64], m: usize) -> Vec<SpanningEdge> {
    let mut in_tree = vec![false; m];
    let mut best = vec![f64::INFINITY; m];
    let mut link = vec![0usize; m];
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    in_tree[0] = true;
    for v in 1..m {
        best[v] = x[pair_index(0, v, m)];
    }
    for _ in 1..m {
        let mut next = usize::MAX;
        let mut next_w = f64::INFINITY;
        for v in 0..m {
            if !in_tree[v] && (next == usize::MAX || best[v] < next_w) {
                next = v;
                next_w = best[v];
            }
        }
        in_tree[next] = true;
        edges.push((link[next], next, next_w));
        for v in 0..m {
            if !in_tree[v] {
                let w = x[pair_index(next, v, m)];
                if w < best[v] {
                    best[v] = w;
                    link[v] = next;
                }
            }
        }
    }
    edges
}

/// Max edge weight along the tree path between every pair of leaves.
fn minimax_closure(edges: &[SpanningEdge], m: usize) -> Vec<f64> {
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    for &(a, b, w) in edges {
        adjacency[a].push((b, w));
        adjacency[b].push((a, w));
    }
    let mut out = vec![0.0; crate::treespace::pair_count(m)];
    let mut reach = vec![f64::NEG_INFINITY; m];
    let mut seen = vec![false; m];
    let mut stack = Vec::with_capacity(m);
    for source in 0..m {
        seen.iter_mut().for_each(|s| *s = false);
        seen[source] = true;
        stack.push(source);
        while let Some(v) = stack.pop() {
            for &(nb, w) in &adjacency[v] {
                if !seen[nb] {
                    seen[nb] = true;
                    reach[nb] = if v == source { w } else { reach[v].max(w) };
                    stack.push(nb);
                }
            }
        }
        for target in source + 1..m {
            out[pair_index(source, target, m)] = reach[target];
        }
    }
    out
}

/// Projects `x` onto the space of ultrametrics.
///
/// The result is coordinatewise `<= x`, satisfies the three-point condition
/// exactly (every entry is copied from `x`), fixes ultrametric inputs, and is
/// a closest ultrametric to `x` in the tropical metric.
pub fn project_to_treespace(x: &TorusPoint) -> Result<UltrametricVector> {
    let m = leaf_count(x.dim())?;
    let edges = minimum_spanning_tree(x.coords(), m);
    let coords = minimax_closure(&edges, m);
    Ok(UltrametricVector::from_trusted(TorusPoint::from_raw(coords), m))
}
