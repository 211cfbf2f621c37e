use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tpca::{objective, TropicalPolytope};
use crate::treespace::UltrametricVector;

/// Best of `budget_evals` random `s`-subsets of the sample, used as vertex
/// sets. Returns the first subset attaining the smallest objective.
///
/// Each draw consumes the generator identically, so a larger budget with
/// the same seed evaluates a superset of candidates.
pub fn baseline_random_search(
    sample: &[UltrametricVector],
    s: usize,
    budget_evals: usize,
    seed: u64,
) -> Result<(TropicalPolytope, f64)> {
    if budget_evals == 0 {
        return Err(Error::InvalidConfig("budget must be at least 1".into()));
    }
    if s == 0 {
        return Err(Error::InvalidConfig("s must be at least 1".into()));
    }
    if sample.len() < s {
        return Err(Error::InsufficientSample { n: sample.len(), s });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(TropicalPolytope, f64)> = None;
    for _ in 0..budget_evals {
        let mut idx = sample_indices(&mut rng, sample.len(), s).into_vec();
        idx.sort_unstable();
        let p = TropicalPolytope::new(idx.iter().map(|&i| sample[i].point().clone()).collect())?;
        let se = objective(sample, &p)?;
        if best.as_ref().is_none_or(|(_, b)| se < *b) {
            best = Some((p, se));
        }
    }
    Ok(best.expect("budget is positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treespace::random_ultrametric;

    fn sample(n: u64) -> Vec<UltrametricVector> {
        (0..n).map(|i| random_ultrametric(5, 500 + i).unwrap()).collect()
    }

    #[test]
    fn single_draw() {
        let pts = sample(8);
        let (p, se) = baseline_random_search(&pts, 3, 1, 4).unwrap();
        assert_eq!(p.s(), 3);
        assert_eq!(se, objective(&pts, &p).unwrap());
    }

    #[test]
    fn exhaustive_budget_finds_global_best() {
        let pts = sample(6);
        let mut exhaustive = f64::INFINITY;
        for a in 0..6 {
            for b in a + 1..6 {
                let p = TropicalPolytope::new(vec![pts[a].point().clone(), pts[b].point().clone()]).unwrap();
                exhaustive = exhaustive.min(objective(&pts, &p).unwrap());
            }
        }
        let (_, se) = baseline_random_search(&pts, 2, 400, 11).unwrap();
        assert_eq!(se, exhaustive);
    }

    #[test]
    fn non_increasing_in_budget() {
        let pts = sample(15);
        let mut last = f64::INFINITY;
        for budget in 1..30 {
            let (_, se) = baseline_random_search(&pts, 3, budget, 21).unwrap();
            assert!(se <= last);
            last = se;
        }
    }

    #[test]
    fn errors() {
        let pts = sample(3);
        assert!(baseline_random_search(&pts, 2, 0, 0).is_err());
        assert!(baseline_random_search(&pts, 4, 5, 0).is_err());
    }
}
