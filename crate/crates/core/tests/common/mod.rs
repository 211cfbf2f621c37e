//! Test-only oracles, independent of the library's implementation paths.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troppca::tpca::{objective, project_to_polytope, TropicalPolytope};
use troppca::treespace::{enumerate_extreme_clades, leaf_count, pair_count, pair_index, random_ultrametric_with, UltrametricVector};
use troppca::trop::{sector_of, TorusPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_point<R: Rng>(e: usize, rng: &mut R) -> TorusPoint {
    TorusPoint::new((0..e).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

pub fn random_sample<R: Rng>(m: usize, n: usize, rng: &mut R) -> Vec<UltrametricVector> {
    (0..n).map(|_| random_ultrametric_with(m, rng).unwrap()).collect()
}

/// Subdominant ultrametric as a max over leaf cuts: for each proper subset
/// `sigma` with `2 <= |sigma| <= m-1`, every pair separated by the cut gets at
/// least the smallest weight crossing the cut.
pub fn cut_enumeration(x: &[f64]) -> Vec<f64> {
    let m = leaf_count(x.len()).unwrap();
    let mut out = vec![f64::NEG_INFINITY; x.len()];
    for clade in enumerate_extreme_clades(m).unwrap() {
        let crossing = |i: usize, j: usize| clade.contains(i) != clade.contains(j);
        let mut lambda = f64::INFINITY;
        for i in 0..m {
            for j in i + 1..m {
                if crossing(i, j) {
                    lambda = lambda.min(x[pair_index(i, j, m)]);
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if crossing(i, j) {
                    let p = pair_index(i, j, m);
                    out[p] = out[p].max(lambda);
                }
            }
        }
    }
    out
}

/// Minimax path weights by Floyd–Warshall.
pub fn minimax_floyd(x: &[f64]) -> Vec<f64> {
    let m = leaf_count(x.len()).unwrap();
    let mut d = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                d[i][j] = x[pair_index(i, j, m)];
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if i != j && i != k && j != k {
                    d[i][j] = d[i][j].min(d[i][k].max(d[k][j]));
                }
            }
        }
    }
    let mut out = vec![0.0; pair_count(m)];
    for i in 0..m {
        for j in i + 1..m {
            out[pair_index(i, j, m)] = d[i][j];
        }
    }
    out
}

/// Central finite differences of the objective in every vertex coordinate.
pub fn finite_difference_gradient<T: AsRef<TorusPoint> + Sync>(
    sample: &[T],
    p: &TropicalPolytope,
    h: f64,
) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; p.dim()]; p.s()];
    for k in 0..p.s() {
        for l in 0..p.dim() {
            let bump = |delta: f64| {
                let mut vs = p.vertices().to_vec();
                let mut c = vs[k].coords().to_vec();
                c[l] += delta;
                vs[k] = TorusPoint::new(c).unwrap();
                objective(sample, &TropicalPolytope::new(vs).unwrap()).unwrap()
            };
            out[k][l] = (bump(h) - bump(-h)) / (2.0 * h);
        }
    }
    out
}

/// True when the objective term of `u` is differentiable in the vertices
/// with every tie broken by more than `margin`: each vertex has a unique
/// minimising coordinate of `u - D^(k)`, each coordinate of the projection
/// has a unique maximising vertex, `w - u` has a unique minimum, and every
/// near-maximum of `w - u` is the anchoring coordinate of its vertex.
pub fn is_generic(u: &TorusPoint, p: &TropicalPolytope, margin: f64) -> bool {
    let neg_u = TorusPoint::new(u.coords().iter().map(|v| -v).collect()).unwrap();
    let mut anchors = Vec::new();
    for d in p.vertices() {
        let neg_d = TorusPoint::new(d.coords().iter().map(|v| -v).collect()).unwrap();
        let sec = sector_of(u, &neg_d, margin).unwrap();
        if sec.min_sector.len() != 1 {
            return false;
        }
        anchors.push(sec.min_sector[0]);
    }
    let (w, lambda) = project_to_polytope(u, p).unwrap();
    let mut owners = Vec::new();
    for l in 0..p.dim() {
        let vals: Vec<f64> = p.vertices().iter().zip(&lambda.0).map(|(d, lam)| lam + d.coords()[l]).collect();
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let near: Vec<usize> = (0..vals.len()).filter(|&k| hi - vals[k] <= margin).collect();
        if near.len() != 1 {
            return false;
        }
        owners.push(near[0]);
    }
    let sec = sector_of(&w, &neg_u, margin).unwrap();
    if sec.min_sector.len() != 1 {
        return false;
    }
    sec.max_sector.iter().all(|&l| anchors[owners[l]] == l)
}

/// A polytope with `s` random ultrametric vertices and `n` observations
/// drawn uniformly from the unit cube, each redrawn until [`is_generic`]
/// holds. (Ultrametric observations share tied coordinates with ultrametric
/// vertices almost surely, so they rarely give differentiable instances.)
pub fn generic_instance<R: Rng>(m: usize, n: usize, s: usize, margin: f64, rng: &mut R) -> (Vec<TorusPoint>, TropicalPolytope) {
    loop {
        let p = TropicalPolytope::from_ultrametrics(random_sample(m, s, rng)).unwrap();
        let mut sample = Vec::with_capacity(n);
        let mut attempts = 0;
        while sample.len() < n && attempts < 200 * n {
            attempts += 1;
            let u = uniform_point(pair_count(m), rng);
            if is_generic(&u, &p, margin) {
                sample.push(u);
            }
        }
        if sample.len() == n {
            return (sample, p);
        }
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
