//! Subgradients of the fitting objective with respect to the vertices.
//!
//! For one observation `u` with projection `w`, the objective term
//! `d_tr(u, w)` depends on the vertices only through `w`. Its derivative in
//! `w` is `e_t - e_t'` where `t` and `t'` index the max and min of `w - u`.
//! Each `w(l')` equals `λ_k + D^(k)(l')` for its owning vertex `k`, and
//! `λ_k = u(j*) - D^(k)(j*)` for the anchor `j*` of `k`, so
//! `∂w(l')/∂D^(k)(l)` is `-1` at `l = j*`, `+1` at `l = l'`, and the two
//! cancel when `l' = j*`. Ties are broken towards the lowest index.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::tpca::polytope::{check_sample, project_detail, TropicalPolytope};
use crate::trop::{argmax, argmin, TorusPoint};

/// Subgradient in `x` of `x ↦ d_tr(p, x)`: `e_t - e_t'` with `t`, `t'` the
/// lowest indices of the max and min of `x - p`. Zero when `x = p` in the
/// torus.
pub fn grad_dist(p: &TorusPoint, x: &TorusPoint) -> Result<Vec<f64>> {
    p.check_dim(x.dim())?;
    let mut g = vec![0.0; p.dim()];
    if let Some((t, t_min)) = extreme_pair(p.coords(), x.coords()) {
        g[t] = 1.0;
        g[t_min] = -1.0;
    }
    Ok(g)
}

/// Lowest argmax and argmin of `x - p`, or `None` when they coincide.
fn extreme_pair(p: &[f64], x: &[f64]) -> Option<(usize, usize)> {
    let diff = || x.iter().zip(p).map(|(a, b)| a - b);
    let t = argmax(diff());
    let t_min = argmin(diff());
    (t != t_min).then_some((t, t_min))
}

/// Sparse `∂w(l') / ∂D^(k)(l)` for one observation, keyed `(k, l, l')`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Jacobian {
    entries: BTreeMap<(usize, usize, usize), i8>,
}

impl Jacobian {
    pub fn get(&self, k: usize, l: usize, l_out: usize) -> i8 {
        self.entries.get(&(k, l, l_out)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(k, l, l')` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), i8)> + '_ {
        self.entries.iter().map(|(&key, &v)| (key, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Jacobian of the projection `w` of `u` with respect to the vertices.
pub fn jacobian_w(u: &TorusPoint, p: &TropicalPolytope) -> Result<Jacobian> {
    u.check_dim(p.dim())?;
    let detail = project_detail(u.coords(), p);
    let mut entries = BTreeMap::new();
    for (l_out, &k) in detail.owner.iter().enumerate() {
        let anchor = detail.anchor[k];
        if l_out != anchor {
            entries.insert((k, anchor, l_out), -1);
            entries.insert((k, l_out, l_out), 1);
        }
    }
    Ok(Jacobian { entries })
}

/// Contributions `(k, l, value)` of one observation to the subgradient.
fn observation_terms(u: &[f64], p: &TropicalPolytope) -> Vec<(usize, usize, f64)> {
    let detail = project_detail(u, p);
    let Some((t, t_min)) = extreme_pair(u, &detail.w) else {
        return Vec::new();
    };
    let mut terms = Vec::with_capacity(4);
    for (l_out, weight) in [(t, 1.0), (t_min, -1.0)] {
        let k = detail.owner[l_out];
        let anchor = detail.anchor[k];
        if l_out != anchor {
            terms.push((k, anchor, -weight));
            terms.push((k, l_out, weight));
        }
    }
    terms
}

/// Subgradient of the objective with respect to every vertex coordinate:
/// `g[k][l] = Σ_i Σ_l' ∂d_tr(u_i, w_i)/∂w_i(l') · ∂w_i(l')/∂D^(k)(l)`.
///
/// Observations are processed in parallel and accumulated in order, so the
/// result does not depend on the thread count.
pub fn subgradient<T: AsRef<TorusPoint> + Sync>(sample: &[T], p: &TropicalPolytope) -> Result<Vec<Vec<f64>>> {
    check_sample(sample, p)?;
    let per_obs: Vec<Vec<(usize, usize, f64)>> = sample
        .par_iter()
        .map(|u| observation_terms(u.as_ref().coords(), p))
        .collect();
    let mut g = vec![vec![0.0; p.dim()]; p.s()];
    for (k, l, v) in per_obs.into_iter().flatten() {
        g[k][l] += v;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(v: &[f64]) -> TorusPoint {
        TorusPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn grad_dist_examples() {
        let zero = tp(&[0.0, 0.0, 0.0]);
        assert_eq!(grad_dist(&zero, &tp(&[0.0, 1.0, 3.0])).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(grad_dist(&tp(&[0.0, 1.0, 3.0]), &zero).unwrap(), vec![1.0, 0.0, -1.0]);
        let p = tp(&[0.5, -1.0, 2.0]);
        assert_eq!(grad_dist(&p, &p.shifted(3.0)).unwrap(), vec![0.0; 3]);
        assert!(grad_dist(&p, &tp(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn jacobian_single_vertex() {
        let p = TropicalPolytope::new(vec![tp(&[0.0, 0.0, 0.0])]).unwrap();
        let j = jacobian_w(&tp(&[0.0, 1.0, 3.0]), &p).unwrap();
        let nonzero: Vec<_> = j.iter().collect();
        assert_eq!(
            nonzero,
            vec![((0, 0, 1), -1), ((0, 0, 2), -1), ((0, 1, 1), 1), ((0, 2, 2), 1)]
        );
        assert_eq!(j.get(0, 0, 0), 0);
    }

    #[test]
    fn jacobian_only_owner_rows() {
        let p = TropicalPolytope::new(vec![tp(&[0.0, 0.0, 0.0]), tp(&[0.0, 1.0, 1.0])]).unwrap();
        let u = tp(&[0.0, 2.0, 2.5]);
        let j = jacobian_w(&u, &p).unwrap();
        let detail = project_detail(u.coords(), &p);
        for ((k, _, l_out), _) in j.iter() {
            assert_eq!(detail.owner[l_out], k);
        }
    }

    #[test]
    fn subgradient_examples() {
        let p = TropicalPolytope::new(vec![tp(&[0.0, 0.0, 0.0])]).unwrap();
        let g = subgradient(&[tp(&[0.0, 1.0, 3.0])], &p).unwrap();
        assert_eq!(g, vec![vec![1.0, 0.0, -1.0]]);

        let q = TropicalPolytope::new(vec![tp(&[0.0, 2.0, 2.0]), tp(&[0.0, 1.0, 3.0])]).unwrap();
        let g = subgradient(q.vertices(), &q).unwrap();
        assert!(g.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn small_step_reduces_distance() {
        let p = TropicalPolytope::new(vec![tp(&[0.0, 0.0, 0.0])]).unwrap();
        let u = tp(&[0.0, 1.0, 3.0]);
        let g = subgradient(std::slice::from_ref(&u), &p).unwrap();
        let alpha = 0.1;
        let moved: Vec<f64> = p.vertices()[0].coords().iter().zip(&g[0]).map(|(d, gv)| d - alpha * gv).collect();
        let q = TropicalPolytope::new(vec![tp(&moved)]).unwrap();
        let before = crate::tpca::objective(std::slice::from_ref(&u), &p).unwrap();
        let after = crate::tpca::objective(&[u], &q).unwrap();
        assert_eq!(before, 3.0);
        assert!((after - (3.0 - 2.0 * alpha)).abs() < 1e-12);
    }
}
