use crate::error::{Error, Result};
use crate::treespace::pairs::{leaf_count, pair_index};
use crate::trop::TorusPoint;

/// Largest gap between the two biggest entries of any leaf triple.
///
/// Zero exactly when the three-point condition holds exactly.
pub fn three_point_violation(u: &[f64]) -> Result<f64> {
    let m = leaf_count(u.len())?;
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            let ij = u[pair_index(i, j, m)];
            for k in j + 1..m {
                let ik = u[pair_index(i, k, m)];
                let jk = u[pair_index(j, k, m)];
                let (hi, mid) = top_two(ij, ik, jk);
                worst = worst.max(hi - mid);
            }
        }
    }
    Ok(worst)
}

#[inline]
fn top_two(a: f64, b: f64, c: f64) -> (f64, f64) {
    let hi = a.max(b).max(c);
    let mid = if hi == a {
        b.max(c)
    } else if hi == b {
        a.max(c)
    } else {
        a.max(b)
    };
    (hi, mid)
}

/// Three-point condition: in every triple the maximum is attained at least
/// twice, up to `tol`.
pub fn is_ultrametric(u: &[f64], tol: f64) -> Result<bool> {
    Ok(three_point_violation(u)? <= tol)
}

/// Tolerance used when accepting measured trees: `1e-8` relative to the
/// largest absolute entry.
pub fn default_tolerance(u: &[f64]) -> f64 {
    1e-8 * u.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(f64::MIN_POSITIVE)
}

/// A torus point satisfying the three-point condition, i.e. the pairwise
/// distance vector of an equidistant tree (up to a common shift).
#[derive(Debug, Clone, PartialEq)]
pub struct UltrametricVector {
    point: TorusPoint,
    m: usize,
}

impl UltrametricVector {
    pub fn new(point: TorusPoint, tol: f64) -> Result<Self> {
        let m = leaf_count(point.dim())?;
        let violation = three_point_violation(point.coords())?;
        if violation > tol {
            return Err(Error::NotUltrametric { violation, tol });
        }
        Ok(Self { point, m })
    }

    pub fn from_coords(coords: Vec<f64>, tol: f64) -> Result<Self> {
        Self::new(TorusPoint::new(coords)?, tol)
    }

    pub(crate) fn from_trusted(point: TorusPoint, m: usize) -> Self {
        debug_assert_eq!(crate::treespace::pair_count(m), point.dim());
        Self { point, m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn point(&self) -> &TorusPoint {
        &self.point
    }

    pub fn coords(&self) -> &[f64] {
        self.point.coords()
    }

    pub fn into_point(self) -> TorusPoint {
        self.point
    }

    /// Entry for leaves `i != j` (zero-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.coords()[pair_index(i, j, self.m)]
    }

    /// Representative with every entry strictly positive.
    ///
    /// Unchanged when the smallest entry is already positive; otherwise
    /// shifted so the smallest entry equals the spread of the entries (or 1
    /// when all entries agree).
    pub fn positive_realization(&self) -> Self {
        let lo = self.coords().iter().copied().fold(f64::INFINITY, f64::min);
        if lo > 0.0 {
            return self.clone();
        }
        let hi = self.coords().iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let spread = if hi > lo { hi - lo } else { 1.0 };
        Self {
            point: self.point.shifted(spread - lo),
            m: self.m,
        }
    }
}

impl AsRef<TorusPoint> for UltrametricVector {
    fn as_ref(&self) -> &TorusPoint {
        &self.point
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_examples() {
        assert!(is_ultrametric(&[1.0, 1.0, 1.0], 0.0).unwrap());
        assert!(is_ultrametric(&[1.0, 2.0, 2.0], 0.0).unwrap());
        assert!(!is_ultrametric(&[1.0, 2.0, 3.0], 0.0).unwrap());
        assert!(is_ultrametric(&[1.0, 2.0, 3.0], 1.0).unwrap());
        assert_eq!(three_point_violation(&[1.0, 2.0, 3.0]).unwrap(), 1.0);
    }

    #[test]
    fn rejects_non_triangular() {
        assert_eq!(is_ultrametric(&[1.0, 2.0], 0.0), Err(Error::NotTriangular(2)));
        assert_eq!(is_ultrametric(&[1.0; 4], 0.0), Err(Error::NotTriangular(4)));
    }

    #[test]
    fn shift_invariant() {
        let u = [2.0, 4.0, 6.0, 4.0, 6.0, 6.0];
        let shifted: Vec<f64> = u.iter().map(|v| v - 10.0).collect();
        assert!(is_ultrametric(&u, 0.0).unwrap());
        assert!(is_ultrametric(&shifted, 0.0).unwrap());
    }

    #[test]
    fn positive_realization_keeps_shape() {
        let u = UltrametricVector::from_coords(vec![-2.0, 0.0, 0.0], 0.0).unwrap();
        let p = u.positive_realization();
        assert_eq!(p.coords(), &[2.0, 4.0, 4.0]);
        let flat = UltrametricVector::from_coords(vec![0.0; 3], 0.0).unwrap();
        assert_eq!(flat.positive_realization().coords(), &[1.0; 3]);
    }

    #[test]
    fn new_reports_violation() {
        let err = UltrametricVector::from_coords(vec![1.0, 2.0, 3.0], 0.5).unwrap_err();
        assert_eq!(err, Error::NotUltrametric { violation: 1.0, tol: 0.5 });
    }
}
