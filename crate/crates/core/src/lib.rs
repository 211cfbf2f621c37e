//! Tropical principal polytopes for samples of equidistant phylogenetic trees.
//!
//! Trees with `m` leaves are encoded as vectors of their `m(m-1)/2` pairwise
//! distances and treated as points of the tropical projective torus. The
//! [`tpca`] module fits a tropical polytope with `s` ultrametric vertices that
//! minimises the summed tropical distance from each observation to its
//! projection, by projected subgradient descent.
//!
//! ```
//! use troppca::treespace::random_ultrametric;
//! use troppca::tpca::{fit, FitConfig};
//!
//! let sample: Vec<_> = (0..20).map(|seed| random_ultrametric(5, seed).unwrap()).collect();
//! let cfg = FitConfig { s: 3, max_iters: 10, ..FitConfig::default() };
//! let result = fit(&sample, &cfg).unwrap();
//! assert!(result.trace.best_se <= result.trace.initial_se);
//! ```

pub mod error;
pub mod format;
pub mod model;
pub mod tpca;
pub mod treespace;
pub mod trop;

pub use error::{Error, Result};
pub use trop::TorusPoint;
