use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tpca::{objective, subgradient, TropicalPolytope};
use crate::treespace::{pair_count, project_to_treespace, UltrametricVector};
use crate::trop::TorusPoint;

#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitStrategy {
    /// `s` distinct observations drawn uniformly with the configured seed.
    #[default]
    SamplePoints,
    UserSupplied(Vec<UltrametricVector>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateMode {
    /// Every vertex moves each iteration.
    #[default]
    Simultaneous,
    /// Vertex `t mod s` moves at iteration `t`.
    Cyclic,
}

impl fmt::Display for UpdateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateMode::Simultaneous => "simultaneous",
            UpdateMode::Cyclic => "cyclic",
        })
    }
}

impl FromStr for UpdateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simultaneous" => Ok(UpdateMode::Simultaneous),
            "cyclic" => Ok(UpdateMode::Cyclic),
            other => Err(Error::InvalidConfig(format!("unknown update mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Number of polytope vertices.
    pub s: usize,
    pub max_iters: usize,
    /// Step size of the first iteration.
    pub lr0: f64,
    /// Step size multiplier applied after every iteration.
    pub decay: f64,
    pub seed: u64,
    pub init: InitStrategy,
    pub update_mode: UpdateMode,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            s: 3,
            max_iters: 100,
            lr0: 0.01,
            decay: 0.999,
            seed: 42,
            init: InitStrategy::SamplePoints,
            update_mode: UpdateMode::Simultaneous,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    /// Step size used in this iteration.
    pub alpha: f64,
    /// Objective after the update.
    pub se: f64,
    /// Best objective seen so far, including the starting polytope.
    pub best_se: f64,
    pub improved: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitTrace {
    pub records: Vec<IterationRecord>,
    /// Objective of the starting polytope.
    pub initial_se: f64,
    pub best_se: f64,
    /// Iteration that produced the best polytope; `None` for the start.
    pub best_iter: Option<usize>,
    pub final_se: f64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct FitResult {
    /// Best polytope over all iterates.
    pub polytope: TropicalPolytope,
    /// Polytope after the last iteration.
    pub final_polytope: TropicalPolytope,
    pub trace: FitTrace,
}

/// Projected subgradient descent, one iteration per [`Fitter::step`].
pub struct Fitter<'a> {
    sample: &'a [UltrametricVector],
    update_mode: UpdateMode,
    decay: f64,
    vertices: Vec<UltrametricVector>,
    alpha: f64,
    iter: usize,
    initial_se: f64,
    best_se: f64,
    best_iter: Option<usize>,
    best: Vec<UltrametricVector>,
    records: Vec<IterationRecord>,
}

impl<'a> Fitter<'a> {
    pub fn new(sample: &'a [UltrametricVector], cfg: &FitConfig) -> Result<Self> {
        let m = validate(sample, cfg)?;
        let vertices = match &cfg.init {
            InitStrategy::SamplePoints => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                sample_indices(&mut rng, sample.len(), cfg.s)
                    .into_iter()
                    .map(|i| sample[i].clone())
                    .collect()
            }
            InitStrategy::UserSupplied(v) => {
                if v.len() != cfg.s {
                    return Err(Error::InvalidConfig(format!(
                        "{} initial vertices supplied for s = {}",
                        v.len(),
                        cfg.s
                    )));
                }
                if let Some(bad) = v.iter().find(|d| d.m() != m) {
                    return Err(Error::DimensionMismatch { expected: m, found: bad.m() });
                }
                v.clone()
            }
        };
        let initial_se = objective(sample, &polytope_of(&vertices)?)?;
        Ok(Self {
            sample,
            update_mode: cfg.update_mode,
            decay: cfg.decay,
            best: vertices.clone(),
            vertices,
            alpha: cfg.lr0,
            iter: 0,
            initial_se,
            best_se: initial_se,
            best_iter: None,
            records: Vec::with_capacity(cfg.max_iters),
        })
    }

    pub fn vertices(&self) -> &[UltrametricVector] {
        &self.vertices
    }

    /// One subgradient step followed by projection of the moved vertices
    /// back onto tree space.
    pub fn step(&mut self) -> Result<&IterationRecord> {
        let polytope = polytope_of(&self.vertices)?;
        let g = subgradient(self.sample, &polytope)?;
        let s = self.vertices.len();
        let moving: Vec<usize> = match self.update_mode {
            UpdateMode::Simultaneous => (0..s).collect(),
            UpdateMode::Cyclic => vec![self.iter % s],
        };
        for k in moving {
            let moved: Vec<f64> = self.vertices[k]
                .coords()
                .iter()
                .zip(&g[k])
                .map(|(d, gk)| d - self.alpha * gk)
                .collect();
            self.vertices[k] = project_to_treespace(&TorusPoint::new(moved)?)?;
        }
        let se = objective(self.sample, &polytope_of(&self.vertices)?)?;
        let improved = se < self.best_se;
        if improved {
            self.best_se = se;
            self.best_iter = Some(self.iter);
            self.best.clone_from(&self.vertices);
        }
        self.records.push(IterationRecord {
            iter: self.iter,
            alpha: self.alpha,
            se,
            best_se: self.best_se,
            improved,
        });
        self.iter += 1;
        self.alpha *= self.decay;
        Ok(self.records.last().expect("just pushed"))
    }

    pub fn finish(self, wall_time_s: f64) -> Result<FitResult> {
        let final_se = self.records.last().map_or(self.initial_se, |r| r.se);
        Ok(FitResult {
            polytope: polytope_of(&self.best)?,
            final_polytope: polytope_of(&self.vertices)?,
            trace: FitTrace {
                records: self.records,
                initial_se: self.initial_se,
                best_se: self.best_se,
                best_iter: self.best_iter,
                final_se,
                wall_time_s,
            },
        })
    }
}

fn polytope_of(vertices: &[UltrametricVector]) -> Result<TropicalPolytope> {
    TropicalPolytope::new(vertices.iter().map(|v| v.point().clone()).collect())
}

fn validate(sample: &[UltrametricVector], cfg: &FitConfig) -> Result<usize> {
    if cfg.s < 2 {
        return Err(Error::InvalidConfig(format!("s must be at least 2, got {}", cfg.s)));
    }
    if sample.len() < cfg.s {
        return Err(Error::InsufficientSample { n: sample.len(), s: cfg.s });
    }
    let m = sample[0].m();
    if let Some(bad) = sample.iter().find(|u| u.m() != m) {
        return Err(Error::DimensionMismatch { expected: m, found: bad.m() });
    }
    if cfg.s > pair_count(m) {
        return Err(Error::InvalidConfig(format!(
            "s = {} exceeds the dimension {} of tree space",
            cfg.s,
            pair_count(m)
        )));
    }
    if !(cfg.lr0.is_finite() && cfg.lr0 > 0.0) {
        return Err(Error::InvalidConfig(format!("lr0 must be positive, got {}", cfg.lr0)));
    }
    if !(cfg.decay > 0.0 && cfg.decay <= 1.0) {
        return Err(Error::InvalidConfig(format!("decay must lie in (0, 1], got {}", cfg.decay)));
    }
    Ok(m)
}

/// Fits the best-fit tropical polytope with `cfg.s` ultrametric vertices.
///
/// Runs `cfg.max_iters` projected subgradient steps with step size
/// `lr0 · decay^t` and returns the best iterate with the full trace.
/// Deterministic for a given sample and configuration.
pub fn fit(sample: &[UltrametricVector], cfg: &FitConfig) -> Result<FitResult> {
    let start = Instant::now();
    let mut fitter = Fitter::new(sample, cfg)?;
    for _ in 0..cfg.max_iters {
        fitter.step()?;
    }
    fitter.finish(start.elapsed().as_secs_f64())
}
