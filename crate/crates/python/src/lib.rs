//! Python bindings. Points are plain lists of floats; trees, polytopes and fit
//! results are wrapped classes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use troppca::model::{InputOptions, ModelFile};
use troppca::tpca::{self, FitConfig, UpdateMode};
use troppca::treespace::{self, UltrametricVector};
use troppca::TorusPoint;

fn err(e: troppca::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn point(v: Vec<f64>) -> PyResult<TorusPoint> {
    TorusPoint::new(v).map_err(err)
}

fn points(vs: Vec<Vec<f64>>) -> PyResult<Vec<TorusPoint>> {
    vs.into_iter().map(point).collect()
}

/// Sample vectors checked against the three-point condition at `tol`.
fn ultrametrics(vs: Vec<Vec<f64>>, tol: f64) -> PyResult<Vec<UltrametricVector>> {
    vs.into_iter()
        .map(|v| {
            let t = tol.max(treespace::default_tolerance(&v));
            UltrametricVector::from_coords(v, t).map_err(err)
        })
        .collect()
}

#[pyfunction]
fn trop_dist(v: Vec<f64>, w: Vec<f64>) -> PyResult<f64> {
    troppca::trop::trop_dist(&point(v)?, &point(w)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (u, tol=0.0))]
fn is_ultrametric(u: Vec<f64>, tol: f64) -> PyResult<bool> {
    treespace::is_ultrametric(&u, tol).map_err(err)
}

/// Subdominant ultrametric (single-linkage closure) of `x`.
#[pyfunction]
fn project_to_treespace(x: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(treespace::project_to_treespace(&point(x)?).map_err(err)?.into_point().into_coords())
}

#[pyfunction]
fn random_ultrametric(m: usize, seed: u64) -> PyResult<Vec<f64>> {
    Ok(treespace::random_ultrametric(m, seed).map_err(err)?.into_point().into_coords())
}

#[pyclass(name = "PhyloTree", module = "troppca_py", skip_from_py_object)]
#[derive(Clone)]
struct PyPhyloTree {
    inner: treespace::PhyloTree,
}

#[pymethods]
impl PyPhyloTree {
    #[staticmethod]
    fn from_newick(text: &str) -> PyResult<Self> {
        Ok(Self { inner: treespace::parse_newick(text).map_err(err)? })
    }

    /// Equidistant tree realising the ultrametric `u`.
    #[staticmethod]
    #[pyo3(signature = (u, labels=None, tol=0.0))]
    fn from_ultrametric(u: Vec<f64>, labels: Option<Vec<String>>, tol: f64) -> PyResult<Self> {
        let u = UltrametricVector::from_coords(u, tol).map_err(err)?;
        let inner = match labels {
            Some(l) => treespace::reconstruct_tree_with_labels(&u, &l, tol),
            None => treespace::reconstruct_tree(&u, tol),
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn height(&self) -> f64 {
        self.inner.height()
    }

    fn cophenetic_vector(&self) -> Vec<f64> {
        self.inner.cophenetic_vector().into_coords()
    }

    fn equidistance_deviation(&self) -> f64 {
        self.inner.equidistance_deviation()
    }

    fn topology(&self) -> String {
        self.inner.topology_signature()
    }

    fn to_newick(&self) -> String {
        self.inner.to_newick()
    }

    fn __repr__(&self) -> String {
        format!("PhyloTree({:?})", self.inner.to_newick())
    }
}

#[pyclass(name = "TropicalPolytope", module = "troppca_py", skip_from_py_object)]
#[derive(Clone)]
struct PyPolytope {
    inner: tpca::TropicalPolytope,
}

#[pymethods]
impl PyPolytope {
    #[new]
    fn new(vertices: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self { inner: tpca::TropicalPolytope::new(points(vertices)?).map_err(err)? })
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<f64>> {
        self.inner.vertices().iter().map(|v| v.coords().to_vec()).collect()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// `(w, lambda)`: the projection of `u` and its tropical coefficients.
    fn project(&self, u: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let (w, lambda) = tpca::project_to_polytope(&point(u)?, &self.inner).map_err(err)?;
        Ok((w.into_coords(), lambda.0))
    }

    /// Sum of tropical distances from each sample point to its projection.
    fn objective(&self, sample: Vec<Vec<f64>>) -> PyResult<f64> {
        tpca::objective(&points(sample)?, &self.inner).map_err(err)
    }

    fn residuals(&self, sample: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
        tpca::residuals(&points(sample)?, &self.inner).map_err(err)
    }

    fn subgradient(&self, sample: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
        tpca::subgradient(&points(sample)?, &self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TropicalPolytope(s={}, dim={})", self.inner.s(), self.inner.dim())
    }
}

#[pyclass(name = "FitResult", module = "troppca_py")]
struct PyFitResult {
    result: tpca::FitResult,
    cfg: FitConfig,
}

#[pymethods]
impl PyFitResult {
    /// Best-so-far polytope.
    #[getter]
    fn polytope(&self) -> PyPolytope {
        PyPolytope { inner: self.result.polytope.clone() }
    }

    #[getter]
    fn final_polytope(&self) -> PyPolytope {
        PyPolytope { inner: self.result.final_polytope.clone() }
    }

    #[getter]
    fn initial_se(&self) -> f64 {
        self.result.trace.initial_se
    }

    #[getter]
    fn best_se(&self) -> f64 {
        self.result.trace.best_se
    }

    #[getter]
    fn final_se(&self) -> f64 {
        self.result.trace.final_se
    }

    #[getter]
    fn best_iter(&self) -> Option<usize> {
        self.result.trace.best_iter
    }

    /// `(iter, alpha, se, best_se)` per iteration.
    #[getter]
    fn trace(&self) -> Vec<(usize, f64, f64, f64)> {
        self.result.trace.records.iter().map(|r| (r.iter, r.alpha, r.se, r.best_se)).collect()
    }

    /// Model document as written by the command-line `fit`.
    #[pyo3(signature = (labels=None))]
    fn to_json(&self, labels: Option<Vec<String>>) -> PyResult<String> {
        let m = treespace::leaf_count(self.result.polytope.dim()).map_err(err)?;
        let labels = labels.unwrap_or_else(|| treespace::default_labels(m));
        if labels.len() != m {
            return Err(PyValueError::new_err(format!("expected {m} labels, got {}", labels.len())));
        }
        Ok(ModelFile::from_fit(labels, &self.cfg, &self.result, InputOptions::default()).to_json())
    }
}

/// Fits a tropical principal polytope with `s` vertices by projected
/// subgradient descent.
#[pyfunction]
#[pyo3(signature = (sample, s, max_iters=100, lr0=0.01, decay=0.999, seed=42, update_mode="simultaneous", tol=0.0))]
#[allow(clippy::too_many_arguments)]
fn fit(
    py: Python<'_>,
    sample: Vec<Vec<f64>>,
    s: usize,
    max_iters: usize,
    lr0: f64,
    decay: f64,
    seed: u64,
    update_mode: &str,
    tol: f64,
) -> PyResult<PyFitResult> {
    let sample = ultrametrics(sample, tol)?;
    let update_mode: UpdateMode = update_mode.parse().map_err(err)?;
    let cfg = FitConfig { s, max_iters, lr0, decay, seed, update_mode, ..FitConfig::default() };
    let result = py.detach(|| tpca::fit(&sample, &cfg)).map_err(err)?;
    Ok(PyFitResult { result, cfg })
}

#[pyfunction]
#[pyo3(signature = (sample, s, budget, seed=42, tol=0.0))]
fn baseline_random_search(
    sample: Vec<Vec<f64>>,
    s: usize,
    budget: usize,
    seed: u64,
    tol: f64,
) -> PyResult<(PyPolytope, f64)> {
    let sample = ultrametrics(sample, tol)?;
    let (p, se) = tpca::baseline_random_search(&sample, s, budget, seed).map_err(err)?;
    Ok((PyPolytope { inner: p }, se))
}

/// Reads the vertices of a saved model as a polytope.
#[pyfunction]
fn load_model(text: &str) -> PyResult<(Vec<String>, PyPolytope)> {
    let m = ModelFile::from_json(text).map_err(err)?;
    let p = m.polytope().map_err(err)?;
    Ok((m.leaf_labels, PyPolytope { inner: p }))
}

#[pymodule]
fn troppca_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPhyloTree>()?;
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyFitResult>()?;
    m.add_function(wrap_pyfunction!(trop_dist, m)?)?;
    m.add_function(wrap_pyfunction!(is_ultrametric, m)?)?;
    m.add_function(wrap_pyfunction!(project_to_treespace, m)?)?;
    m.add_function(wrap_pyfunction!(random_ultrametric, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(baseline_random_search, m)?)?;
    m.add_function(wrap_pyfunction!(load_model, m)?)?;
    Ok(())
}
