//! Extreme clade ultrametrics: the max-plus rays of tree space.
//!
//! For a proper leaf subset `sigma` with at least two members the ray has
//! coordinate `-∞` on every pair inside `sigma` and `0` on every other pair.
//! The classical clade ultrametric (0 inside, 1 outside) is the same subset
//! read in ordinary arithmetic; only the max-plus form is used here.

use crate::error::{Error, Result};
use crate::treespace::pairs::{leaf_count, pair_count, pairs};
use crate::trop::{trop_add, trop_mul, TorusPoint, TROPICAL_ZERO};

/// Largest leaf count accepted by [`enumerate_extreme_clades`].
pub const MAX_CLADE_LEAVES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremeCladeUltrametric {
    m: usize,
    mask: u32,
}

impl ExtremeCladeUltrametric {
    /// `members` are zero-based leaf indices.
    pub fn new(m: usize, members: &[usize]) -> Result<Self> {
        if !(3..=MAX_CLADE_LEAVES).contains(&m) {
            return Err(Error::LeafCountOutOfRange { m, min: 3, max: MAX_CLADE_LEAVES });
        }
        let mut mask = 0u32;
        for &leaf in members {
            if leaf >= m {
                return Err(Error::InvalidConfig(format!("leaf {leaf} out of range for m = {m}")));
            }
            mask |= 1 << leaf;
        }
        let size = mask.count_ones() as usize;
        if size < 2 || size >= m {
            return Err(Error::InvalidConfig(format!(
                "clade size {size} outside 2..={}",
                m - 1
            )));
        }
        Ok(Self { m, mask })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.m).filter(|&i| self.contains(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, leaf: usize) -> bool {
        self.mask & (1 << leaf) != 0
    }

    /// `-∞` for pairs inside the clade, `0` otherwise.
    pub fn coordinate(&self, i: usize, j: usize) -> f64 {
        if self.contains(i) && self.contains(j) {
            TROPICAL_ZERO
        } else {
            0.0
        }
    }

    pub fn coordinates(&self) -> Vec<f64> {
        pairs(self.m).map(|(i, j)| self.coordinate(i, j)).collect()
    }

    /// Projection coefficient `min { x_p : coordinate p is 0 }`.
    pub fn coefficient(&self, x: &[f64]) -> f64 {
        pairs(self.m)
            .zip(x)
            .filter(|((i, j), _)| self.coordinate(*i, *j) == 0.0)
            .map(|(_, &v)| v)
            .fold(f64::INFINITY, f64::min)
    }
}

/// All `2^m - m - 2` extreme clades, ordered by size then lexicographically.
pub fn enumerate_extreme_clades(m: usize) -> Result<Vec<ExtremeCladeUltrametric>> {
    if !(3..=MAX_CLADE_LEAVES).contains(&m) {
        return Err(Error::LeafCountOutOfRange { m, min: 3, max: MAX_CLADE_LEAVES });
    }
    let mut clades: Vec<ExtremeCladeUltrametric> = (0u32..(1 << m))
        .filter(|mask| (2..m as u32).contains(&mask.count_ones()))
        .map(|mask| ExtremeCladeUltrametric { m, mask })
        .collect();
    clades.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members().cmp(&b.members())));
    Ok(clades)
}

/// Tropical combination `⊕_σ λ_σ ⊙ D_σ` with `λ_σ = min { x_p : D_σ(p) = 0 }`
/// over every extreme clade: the projection of `x` onto the max-plus span of
/// the clade rays, evaluated by brute force.
pub fn clade_span_projection(x: &TorusPoint) -> Result<Vec<f64>> {
    let m = leaf_count(x.dim())?;
    let clades = enumerate_extreme_clades(m)?;
    let mut out = vec![TROPICAL_ZERO; pair_count(m)];
    for clade in &clades {
        let lambda = clade.coefficient(x.coords());
        for (o, (i, j)) in out.iter_mut().zip(pairs(m)) {
            *o = trop_add(*o, trop_mul(lambda, clade.coordinate(i, j)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_extreme_clades(3).unwrap().len(), 3);
        assert_eq!(enumerate_extreme_clades(4).unwrap().len(), 10);
        assert_eq!(enumerate_extreme_clades(5).unwrap().len(), 25);
        for m in 3..=10 {
            assert_eq!(enumerate_extreme_clades(m).unwrap().len(), (1 << m) - m - 2);
        }
    }

    #[test]
    fn order_and_members() {
        let c: Vec<Vec<usize>> = enumerate_extreme_clades(3)
            .unwrap()
            .iter()
            .map(|c| c.members())
            .collect();
        assert_eq!(c, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let c4 = enumerate_extreme_clades(4).unwrap();
        assert_eq!(c4[5].members(), vec![2, 3]);
        assert_eq!(c4[6].members(), vec![0, 1, 2]);
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_extreme_clades(2).is_err());
        assert!(enumerate_extreme_clades(17).is_err());
        assert!(ExtremeCladeUltrametric::new(4, &[0, 1, 2, 3]).is_err());
        assert!(ExtremeCladeUltrametric::new(4, &[1]).is_err());
    }

    #[test]
    fn zero_coordinates_nonempty() {
        for m in 3..=7 {
            for clade in enumerate_extreme_clades(m).unwrap() {
                assert!(clade.coordinates().contains(&0.0));
            }
        }
    }

    #[test]
    fn coordinates_of_a_clade() {
        let c = ExtremeCladeUltrametric::new(4, &[0, 2]).unwrap();
        assert_eq!(
            c.coordinates(),
            vec![0.0, TROPICAL_ZERO, 0.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(c.coefficient(&[5.0, -1.0, 4.0, 3.0, 6.0, 7.0]), 3.0);
    }

    #[test]
    fn three_leaf_span_projection() {
        let x = TorusPoint::new(vec![1.0, 3.0, 2.0]).unwrap();
        assert_eq!(clade_span_projection(&x).unwrap(), vec![1.0, 2.0, 2.0]);
    }

    #[test]
    fn span_projection_misses_two_cherry_trees() {
        // ((0,1),(2,3)) is ultrametric but no clade ray can raise the four
        // cross pairs without also raising one of the cherries.
        let u = TorusPoint::new(vec![1.0, 5.0, 5.0, 5.0, 5.0, 1.0]).unwrap();
        assert_eq!(clade_span_projection(&u).unwrap(), vec![1.0; 6]);
    }
}
