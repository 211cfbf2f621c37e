//! Tropical principal polytopes: the fitting objective, its subgradients,
//! and the projected subgradient descent fit.

mod baseline;
mod fit;
mod gradient;
mod polytope;

pub use baseline::baseline_random_search;
pub use fit::{fit, FitConfig, FitResult, FitTrace, Fitter, InitStrategy, IterationRecord, UpdateMode};
pub use gradient::{grad_dist, jacobian_w, subgradient, Jacobian};
pub use polytope::{objective, project_to_polytope, residuals, LambdaCoords, TropicalPolytope};
