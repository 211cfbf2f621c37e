//! Max-plus arithmetic and the tropical projective torus `R^e / R·1`.
//!
//! Scalars live in `R ∪ {-∞}` and are plain `f64` values, with
//! [`f64::NEG_INFINITY`] standing in for the tropical zero. Points of the
//! torus ([`TorusPoint`]) always have finite coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The additive identity of the max-plus semiring.
pub const TROPICAL_ZERO: f64 = f64::NEG_INFINITY;

/// Tropical addition: `a ⊕ b = max(a, b)`.
#[inline]
pub fn trop_add(a: f64, b: f64) -> f64 {
    if a >= b {
        a
    } else {
        b
    }
}

/// Tropical multiplication: `a ⊙ b = a + b`, with `-∞` absorbing.
#[inline]
pub fn trop_mul(a: f64, b: f64) -> f64 {
    if a == TROPICAL_ZERO || b == TROPICAL_ZERO {
        TROPICAL_ZERO
    } else {
        a + b
    }
}

/// A point of the tropical projective torus.
///
/// Two points are the same torus point when their coordinates differ by a
/// common constant. The stored coordinates are one representative; use
/// [`TorusPoint::canonical`] for the representative with first coordinate 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TorusPoint {
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("torus point needs at least one coordinate"));
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { coords })
    }

    /// Callers guarantee finiteness and non-emptiness.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|v| v.is_finite()));
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Representative with the first coordinate shifted to 0.
    pub fn canonical(&self) -> Self {
        let base = self.coords[0];
        Self::from_raw(self.coords.iter().map(|v| v - base).collect())
    }

    /// Adds `c` to every coordinate (same torus point, different representative).
    pub fn shifted(&self, c: f64) -> Self {
        Self::from_raw(self.coords.iter().map(|v| v + c).collect())
    }

    /// Equality in the torus, up to `tol` in the tropical metric.
    pub fn torus_eq(&self, other: &Self, tol: f64) -> bool {
        matches!(trop_dist(self, other), Ok(d) if d <= tol)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for TorusPoint {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl AsRef<TorusPoint> for TorusPoint {
    fn as_ref(&self) -> &TorusPoint {
        self
    }
}

impl From<TorusPoint> for Vec<f64> {
    fn from(p: TorusPoint) -> Self {
        p.coords
    }
}

/// Tropical linear combination `⊕_k scalars[k] ⊙ points[k]`.
pub fn trop_combine(scalars: &[f64], points: &[TorusPoint]) -> Result<TorusPoint> {
    let first = points
        .first()
        .ok_or(Error::Empty("tropical combination needs at least one point"))?;
    if scalars.len() != points.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            found: scalars.len(),
        });
    }
    let e = first.dim();
    let mut out = vec![TROPICAL_ZERO; e];
    for (&c, p) in scalars.iter().zip(points) {
        p.check_dim(e)?;
        for (o, &x) in out.iter_mut().zip(p.coords()) {
            *o = trop_add(*o, trop_mul(c, x));
        }
    }
    TorusPoint::new(out)
}

/// The tropical metric `max_i(v_i - w_i) - min_i(v_i - w_i)`.
pub fn trop_dist(v: &TorusPoint, w: &TorusPoint) -> Result<f64> {
    w.check_dim(v.dim())?;
    Ok(dist_slices(v.coords(), w.coords()))
}

#[inline]
pub(crate) fn dist_slices(v: &[f64], w: &[f64]) -> f64 {
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for (a, b) in v.iter().zip(w) {
        let d = a - b;
        hi = hi.max(d);
        lo = lo.min(d);
    }
    hi - lo
}

/// Sector membership of `x` with respect to the max- and min-tropical
/// hyperplanes with apex `-omega`. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sectors {
    pub max_sector: Vec<usize>,
    pub min_sector: Vec<usize>,
}

impl Sectors {
    /// True when `x` lies in open sectors of both hyperplanes.
    pub fn is_generic(&self) -> bool {
        self.max_sector.len() == 1 && self.min_sector.len() == 1
    }
}

/// Indices attaining the max (and min) of `omega_i + x_i`, up to `tie_tolerance`.
pub fn sector_of(x: &TorusPoint, omega: &TorusPoint, tie_tolerance: f64) -> Result<Sectors> {
    omega.check_dim(x.dim())?;
    let sums: Vec<f64> = x.coords().iter().zip(omega.coords()).map(|(a, b)| a + b).collect();
    let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(Sectors {
        max_sector: (0..sums.len()).filter(|&i| hi - sums[i] <= tie_tolerance).collect(),
        min_sector: (0..sums.len()).filter(|&i| sums[i] - lo <= tie_tolerance).collect(),
    })
}

/// Lowest index attaining the maximum.
#[inline]
pub(crate) fn argmax(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, v) in values.into_iter().enumerate() {
        if v > best_val {
            best = i;
            best_val = v;
        }
    }
    best
}

/// Lowest index attaining the minimum.
#[inline]
pub(crate) fn argmin(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (i, v) in values.into_iter().enumerate() {
        if v < best_val {
            best = i;
            best_val = v;
        }
    }
    best
}
