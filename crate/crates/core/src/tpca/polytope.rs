use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::treespace::{is_ultrametric, UltrametricVector};
use crate::trop::{argmax, argmin, dist_slices, TorusPoint};

/// A tropical polytope given by its ordered vertices `D^(1..s)`.
///
/// The fitting routines require `s >= 2` ultrametric vertices; the
/// projection and derivative routines accept any `s >= 1` vertices of a
/// common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalPolytope {
    vertices: Vec<TorusPoint>,
}

impl TropicalPolytope {
    pub fn new(vertices: Vec<TorusPoint>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::Empty("polytope needs a vertex"))?;
        let e = first.dim();
        for v in &vertices {
            v.check_dim(e)?;
        }
        Ok(Self { vertices })
    }

    pub fn from_ultrametrics(vertices: Vec<UltrametricVector>) -> Result<Self> {
        Self::new(vertices.into_iter().map(UltrametricVector::into_point).collect())
    }

    /// Number of vertices `s`.
    pub fn s(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[TorusPoint] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<TorusPoint> {
        self.vertices
    }

    pub fn is_ultrametric(&self, tol: f64) -> bool {
        self.vertices
            .iter()
            .all(|v| matches!(is_ultrametric(v.coords(), tol), Ok(true)))
    }

    /// Tropical projection of `u` onto the convex hull of the vertices.
    pub fn project(&self, u: &TorusPoint) -> Result<(TorusPoint, LambdaCoords)> {
        project_to_polytope(u, self)
    }
}

/// Projection coefficients `λ_k = min_j (u_j - D^(k)_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaCoords(pub Vec<f64>);

impl LambdaCoords {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Everything the derivative code needs to know about one projection.
#[derive(Debug, Clone)]
pub(crate) struct ProjectionDetail {
    pub lambda: Vec<f64>,
    /// Lowest index attaining `min_j (u_j - D^(k)_j)`, per vertex.
    pub anchor: Vec<usize>,
    pub w: Vec<f64>,
    /// Lowest vertex index attaining `max_k (λ_k + D^(k)_l)`, per coordinate.
    pub owner: Vec<usize>,
}

pub(crate) fn project_detail(u: &[f64], p: &TropicalPolytope) -> ProjectionDetail {
    let s = p.s();
    let mut lambda = Vec::with_capacity(s);
    let mut anchor = Vec::with_capacity(s);
    for d in p.vertices() {
        let j = argmin(u.iter().zip(d.coords()).map(|(a, b)| a - b));
        anchor.push(j);
        lambda.push(u[j] - d.coords()[j]);
    }
    let e = u.len();
    let mut w = Vec::with_capacity(e);
    let mut owner = Vec::with_capacity(e);
    for l in 0..e {
        let k = argmax(p.vertices().iter().zip(&lambda).map(|(d, lam)| lam + d.coords()[l]));
        owner.push(k);
        w.push(lambda[k] + p.vertices()[k].coords()[l]);
    }
    ProjectionDetail { lambda, anchor, w, owner }
}

/// Projects `u` onto the tropical polytope: `w = ⊕_k λ_k ⊙ D^(k)`.
pub fn project_to_polytope(u: &TorusPoint, p: &TropicalPolytope) -> Result<(TorusPoint, LambdaCoords)> {
    u.check_dim(p.dim())?;
    let detail = project_detail(u.coords(), p);
    Ok((TorusPoint::from_raw(detail.w), LambdaCoords(detail.lambda)))
}

pub(crate) fn check_sample<T: AsRef<TorusPoint>>(sample: &[T], p: &TropicalPolytope) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::Empty("sample has no observations"));
    }
    for u in sample {
        u.as_ref().check_dim(p.dim())?;
    }
    Ok(())
}

/// Tropical distance from each observation to its projection, in order.
pub fn residuals<T: AsRef<TorusPoint> + Sync>(sample: &[T], p: &TropicalPolytope) -> Result<Vec<f64>> {
    check_sample(sample, p)?;
    Ok(sample
        .par_iter()
        .map(|u| {
            let u = u.as_ref().coords();
            dist_slices(u, &project_detail(u, p).w)
        })
        .collect())
}

/// Sum of tropical distances between the observations and their
/// projections onto `p`. Summed in observation order.
pub fn objective<T: AsRef<TorusPoint> + Sync>(sample: &[T], p: &TropicalPolytope) -> Result<f64> {
    Ok(residuals(sample, p)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trop::trop_dist;

    fn tp(v: &[f64]) -> TorusPoint {
        TorusPoint::new(v.to_vec()).unwrap()
    }

    fn line() -> TropicalPolytope {
        TropicalPolytope::new(vec![tp(&[0.0, 0.0, 0.0]), tp(&[0.0, 1.0, 1.0])]).unwrap()
    }

    #[test]
    fn vertex_projects_to_itself() {
        let p = line();
        let (w, lambda) = project_to_polytope(&tp(&[0.0, 1.0, 1.0]), &p).unwrap();
        assert_eq!(w.coords(), &[0.0, 1.0, 1.0]);
        assert_eq!(lambda.0[1], 0.0);
    }

    #[test]
    fn interior_point() {
        let (w, lambda) = project_to_polytope(&tp(&[0.0, 0.5, 0.5]), &line()).unwrap();
        assert_eq!(lambda.0, vec![0.0, -0.5]);
        assert_eq!(w.coords(), &[0.0, 0.5, 0.5]);
    }

    #[test]
    fn exterior_point() {
        let u = tp(&[0.0, 2.0, 2.0]);
        let (w, lambda) = project_to_polytope(&u, &line()).unwrap();
        assert_eq!(lambda.0, vec![0.0, 0.0]);
        assert_eq!(w.coords(), &[0.0, 1.0, 1.0]);
        assert_eq!(trop_dist(&u, &w).unwrap(), 1.0);
    }

    #[test]
    fn objective_examples() {
        let p = line();
        assert_eq!(objective(p.vertices(), &p).unwrap(), 0.0);
        assert_eq!(objective(&[tp(&[0.0, 2.0, 2.0])], &p).unwrap(), 1.0);
        let sample = vec![tp(&[0.3, 2.0, -1.0]), tp(&[1.0, 0.0, 4.0])];
        let doubled: Vec<_> = sample.iter().chain(&sample).cloned().collect();
        assert_eq!(objective(&doubled, &p).unwrap(), 2.0 * objective(&sample, &p).unwrap());
    }

    #[test]
    fn dimension_errors() {
        let p = line();
        assert!(project_to_polytope(&tp(&[0.0, 1.0]), &p).is_err());
        assert!(objective(&[tp(&[0.0, 1.0])], &p).is_err());
        assert!(objective::<TorusPoint>(&[], &p).is_err());
        assert!(TropicalPolytope::new(vec![tp(&[0.0, 1.0]), tp(&[0.0, 1.0, 2.0])]).is_err());
    }
}
