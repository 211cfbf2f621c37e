//! Equidistant trees and the space of ultrametrics.

mod clades;
mod newick;
mod pairs;
mod projection;
mod reconstruct;
mod tree;
mod ultrametric;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use clades::{clade_span_projection, enumerate_extreme_clades, ExtremeCladeUltrametric, MAX_CLADE_LEAVES};
pub use newick::{parse_newick, parse_newick_lines, NewickRecord};
pub use pairs::{leaf_count, pair_count, pair_index, pairs};
pub use projection::{minimum_spanning_tree, project_to_treespace, SpanningEdge};
pub use reconstruct::{default_labels, reconstruct_tree, reconstruct_tree_with_labels};
pub use tree::{Node, PhyloTree};
pub use ultrametric::{default_tolerance, is_ultrametric, three_point_violation, UltrametricVector};

use crate::error::{Error, Result};
use crate::trop::TorusPoint;

/// Pairwise leaf path weights of `tree` (see [`PhyloTree::cophenetic_vector`]).
pub fn cophenetic_vector(tree: &PhyloTree) -> TorusPoint {
    tree.cophenetic_vector()
}

/// Projection of `e` independent uniform(0, 1) draws onto tree space.
pub fn random_ultrametric(m: usize, seed: u64) -> Result<UltrametricVector> {
    random_ultrametric_with(m, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// As [`random_ultrametric`], drawing from a caller-owned generator.
pub fn random_ultrametric_with<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<UltrametricVector> {
    if m < 3 {
        return Err(Error::LeafCountOutOfRange { m, min: 3, max: usize::MAX });
    }
    let draw: Vec<f64> = (0..pair_count(m)).map(|_| rng.gen::<f64>()).collect();
    project_to_treespace(&TorusPoint::from_raw(draw))
}
