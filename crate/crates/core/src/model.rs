//! JSON persistence of fitted polytopes.
//!
//! Vertex coordinates are written with shortest round-trip precision so a
//! loaded model evaluates bit-identically to the in-memory one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tpca::{FitConfig, FitResult, InitStrategy, TropicalPolytope};
use crate::treespace::{default_tolerance, pair_count, three_point_violation, UltrametricVector};
use crate::trop::TorusPoint;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub s: usize,
    pub max_iters: usize,
    pub lr0: f64,
    pub decay: f64,
    pub seed: u64,
    pub init: String,
    pub update_mode: String,
    pub project_inputs: bool,
    pub normalize_height: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub iterations: usize,
    pub initial_se: f64,
    pub best_se: f64,
    pub best_iter: Option<usize>,
    pub final_se: f64,
}

/// Preprocessing applied to input trees before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InputOptions {
    pub project_inputs: bool,
    pub normalize_height: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub m: usize,
    pub s: usize,
    pub leaf_labels: Vec<String>,
    pub vertices: Vec<Vec<f64>>,
    pub config: ConfigEcho,
    pub trace: TraceSummary,
}

impl ModelFile {
    pub fn from_fit(leaf_labels: Vec<String>, cfg: &FitConfig, result: &FitResult, inputs: InputOptions) -> Self {
        let vertices: Vec<Vec<f64>> = result
            .polytope
            .vertices()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        Self {
            format_version: FORMAT_VERSION,
            m: leaf_labels.len(),
            s: vertices.len(),
            leaf_labels,
            vertices,
            config: ConfigEcho {
                s: cfg.s,
                max_iters: cfg.max_iters,
                lr0: cfg.lr0,
                decay: cfg.decay,
                seed: cfg.seed,
                init: match cfg.init {
                    InitStrategy::SamplePoints => "sample-points".into(),
                    InitStrategy::UserSupplied(_) => "user-supplied".into(),
                },
                update_mode: cfg.update_mode.to_string(),
                project_inputs: inputs.project_inputs,
                normalize_height: inputs.normalize_height,
            },
            trace: TraceSummary {
                iterations: result.trace.records.len(),
                initial_se: result.trace.initial_se,
                best_se: result.trace.best_se,
                best_iter: result.trace.best_iter,
                final_se: result.trace.final_se,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a model document.
    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if self.format_version != FORMAT_VERSION {
            return bad(format!("unsupported format_version {}", self.format_version));
        }
        if self.leaf_labels.len() != self.m {
            return bad(format!("{} leaf labels for m = {}", self.leaf_labels.len(), self.m));
        }
        if self.vertices.len() != self.s || self.s == 0 {
            return bad(format!("{} vertices for s = {}", self.vertices.len(), self.s));
        }
        let e = pair_count(self.m);
        for (k, v) in self.vertices.iter().enumerate() {
            if v.len() != e {
                return bad(format!("vertex {} has {} coordinates, expected {e}", k + 1, v.len()));
            }
            let tol = default_tolerance(v).max(1e-8);
            let violation = three_point_violation(v)?;
            if violation > tol {
                return bad(format!("vertex {} is not ultrametric (violation {violation:e})", k + 1));
            }
        }
        Ok(())
    }

    pub fn polytope(&self) -> Result<TropicalPolytope> {
        TropicalPolytope::new(
            self.vertices
                .iter()
                .map(|v| TorusPoint::new(v.clone()))
                .collect::<Result<_>>()?,
        )
    }

    /// Vertices as ultrametrics (validated on load).
    pub fn vertex_ultrametrics(&self) -> Result<Vec<UltrametricVector>> {
        self.vertices
            .iter()
            .map(|v| UltrametricVector::from_coords(v.clone(), default_tolerance(v).max(1e-8)))
            .collect()
    }

    pub fn input_options(&self) -> InputOptions {
        InputOptions {
            project_inputs: self.config.project_inputs,
            normalize_height: self.config.normalize_height,
        }
    }
}
