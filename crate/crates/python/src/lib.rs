//! Python module `qudit`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use qudit_core::{witnesses, Complex64, NgbsParams, PhaseSpaceGrid, WitnessKind};

fn to_py(e: qudit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A normalized finite superposition of Fock states.
#[pyclass(name = "QuditState", module = "qudit", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyQuditState {
    inner: qudit_core::QuditState,
}

impl From<qudit_core::QuditState> for PyQuditState {
    fn from(inner: qudit_core::QuditState) -> Self {
        PyQuditState { inner }
    }
}

#[pymethods]
impl PyQuditState {
    /// Amplitudes of |offset>, |offset+1>, ...; must already be normalized.
    #[new]
    #[pyo3(signature = (amplitudes, offset = 0))]
    fn new(amplitudes: Vec<Complex64>, offset: u32) -> PyResult<Self> {
        qudit_core::make_qudit(&amplitudes, offset).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn fock(n: u32) -> Self {
        qudit_core::QuditState::fock(n).into()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        qudit_core::QuditState::from_json(text).map(Into::into).map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn offset(&self) -> u32 {
        self.inner.offset()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    #[getter]
    fn probabilities(&self) -> Vec<f64> {
        self.inner.probabilities()
    }

    fn amplitude(&self, n: u32) -> Complex64 {
        self.inner.amplitude(n)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("QuditState(offset={}, dim={})", self.inner.offset(), self.inner.len())
    }

    fn add_photons(&self, r: u32) -> Self {
        qudit_core::add_photons(&self.inner, r).into()
    }

    fn subtract_photons(&self, t: u32) -> PyResult<Self> {
        qudit_core::subtract_photons(&self.inner, t).map(Into::into).map_err(to_py)
    }

    /// <a†^k a^l>
    fn moment(&self, k: u32, l: u32) -> Complex64 {
        qudit_core::moment(&self.inner, k, l)
    }

    #[pyo3(signature = (l = witnesses::DEFAULT_HOA_ORDER))]
    fn hoa(&self, l: u32) -> f64 {
        qudit_core::hoa(&self.inner, l).value
    }

    #[pyo3(signature = (l = witnesses::DEFAULT_HOS_ORDER))]
    fn hos(&self, l: u32) -> f64 {
        qudit_core::hos_hillery(&self.inner, l).value
    }

    /// `convention` is "definition" (default) or "literal".
    #[pyo3(signature = (l = witnesses::DEFAULT_HOSPS_ORDER, convention = "definition"))]
    fn hosps(&self, l: u32, convention: &str) -> PyResult<f64> {
        let kind = match convention {
            "definition" => WitnessKind::HospsDefinition,
            "literal" => WitnessKind::HospsLiteral,
            other => return Err(PyValueError::new_err(format!("unknown convention {other:?}"))),
        };
        Ok(witnesses::evaluate(kind, &self.inner, l).value)
    }

    fn wigner(&self, x: f64, p: f64) -> f64 {
        qudit_core::wigner(&self.inner, x, p)
    }

    /// Rows indexed by x, columns by p, on `[-extent, extent]²`.
    fn wigner_grid(&self, extent: f64, n: usize) -> PyResult<Vec<Vec<f64>>> {
        let grid = PhaseSpaceGrid::square(extent, n).map_err(to_py)?;
        let field = qudit_core::wigner_grid(&self.inner, &grid).map_err(to_py)?;
        Ok(field.values.chunks(grid.np).map(<[f64]>::to_vec).collect())
    }

    fn tomogram(&self, x: f64, theta: f64) -> f64 {
        qudit_core::tomogram(&self.inner, x, theta)
    }

    /// Dict with `value`, `error_estimate`, `radius`, `nodes_per_axis`, `converged`.
    #[pyo3(signature = (tolerance = 1e-5))]
    fn nonclassical_volume<'py>(&self, py: Python<'py>, tolerance: f64) -> PyResult<Bound<'py, PyDict>> {
        if !(tolerance > 0.0) {
            return Err(PyValueError::new_err("tolerance must be positive"));
        }
        let rep = py.detach(|| qudit_core::nonclassical_volume(&self.inner, tolerance));
        let d = PyDict::new(py);
        d.set_item("value", rep.value)?;
        d.set_item("error_estimate", rep.error_estimate)?;
        d.set_item("radius", rep.radius)?;
        d.set_item("nodes_per_axis", rep.nodes_per_axis)?;
        d.set_item("converged", rep.converged)?;
        Ok(d)
    }
}

/// Generalized binomial state with `M` trials.
#[pyfunction]
#[pyo3(name = "ngbs", signature = (m, p, q))]
fn py_ngbs(m: u32, p: f64, q: f64) -> PyResult<PyQuditState> {
    qudit_core::ngbs(&NgbsParams::new(m, p, q)).map(Into::into).map_err(to_py)
}

#[pyfunction]
#[pyo3(name = "binomial_state")]
fn py_binomial_state(m: u32, p: f64) -> PyResult<PyQuditState> {
    qudit_core::binomial_state(m, p).map(Into::into).map_err(to_py)
}

#[pymodule]
fn qudit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuditState>()?;
    m.add_function(wrap_pyfunction!(py_ngbs, m)?)?;
    m.add_function(wrap_pyfunction!(py_binomial_state, m)?)?;
    Ok(())
}
