use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use picard_cy::verifier::{self, RunOptions};
use picard_cy::{autgroup, ballmodel, divisor, hilbert, resgroup, variety};

fn value_error(e: picard_cy::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Element `a + b·ζ` of the Eisenstein integers.
#[pyclass(name = "EisensteinInt", eq, frozen, skip_from_py_object, module = "picard_cy_py")]
#[derive(Clone, PartialEq)]
struct PyEisenstein(picard_cy::EisensteinInt);

#[pymethods]
impl PyEisenstein {
    #[new]
    fn new(a: i64, b: i64) -> Self {
        Self(picard_cy::EisensteinInt::new(a, b))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(value_error)
    }

    fn norm(&self) -> String {
        self.0.norm().to_string()
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("EisensteinInt({})", self.0)
    }
}

/// Order of the mod-3 image of the six generating triflections.
#[pyfunction]
fn mod3_image_order() -> PyResult<usize> {
    Ok(resgroup::g_prime_image().map_err(value_error)?.order())
}

#[pyfunction]
fn covering_degree() -> PyResult<usize> {
    Ok(resgroup::covering_degree(&resgroup::g_prime_image().map_err(value_error)?))
}

/// Singular points of the cubic pair as `0|1|z|z2` token strings.
#[pyfunction]
fn singular_points() -> PyResult<Vec<String>> {
    let points = variety::singular_points().map_err(value_error)?;
    Ok(points.iter().map(|p| p.tokens().unwrap_or_else(|| p.to_string())).collect())
}

#[pyfunction]
fn is_node(tokens: &str) -> PyResult<bool> {
    let p = picard_cy::ProjPoint::parse_tokens(tokens).map_err(value_error)?;
    variety::is_node(&p).map_err(value_error)
}

#[pyfunction]
fn h_order() -> PyResult<usize> {
    Ok(autgroup::h_group().map_err(value_error)?.len())
}

/// `χ` of the monomial map `x_{σ(j)} ↦ ζ^{e} x_j` as a string such as `-z2`.
#[pyfunction]
fn chi(perm: [u8; 6], exps: [i64; 6]) -> PyResult<(String, String)> {
    let g = picard_cy::MonomialAut::new(perm, exps).map_err(value_error)?;
    let pulled = autgroup::chi_via_pullback(&g).map_err(value_error)?;
    Ok((autgroup::chi(&g).to_string(), pulled.to_string()))
}

/// Mirror multiplicities (labels 1..15) of the zero divisor of `C_i`.
#[pyfunction]
fn c_divisor(i: usize) -> PyResult<Vec<i64>> {
    Ok(divisor::divisor_of(&divisor::c_word(i).map_err(value_error)?).0.to_vec())
}

#[pyfunction]
fn ci_dim(k: u32) -> u64 {
    hilbert::ci_dim(k).try_into().expect("fits in u64 for reasonable k")
}

#[pyfunction]
fn ci_dim_oracle(k: u32) -> PyResult<u64> {
    if k > 12 {
        return Err(PyValueError::new_err("oracle is limited to k <= 12"));
    }
    Ok(hilbert::ci_dim_oracle(k).try_into().expect("small"))
}

#[pyfunction]
fn dim_g33(k: i64) -> PyResult<String> {
    Ok(hilbert::dim_g33(k).map_err(value_error)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (seed=1, samples=100))]
fn jacobian_errors(seed: u64, samples: usize) -> PyResult<Vec<f64>> {
    ballmodel::jacobian_lemma_sweep(seed, samples).map_err(value_error)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    verifier::CHECKS.iter().map(|c| c.id).collect()
}

/// Runs the selected checks (all when empty) and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (checks=Vec::new(), seed=verifier::DEFAULT_SEED, tol=verifier::DEFAULT_TOL, samples=verifier::DEFAULT_SAMPLES))]
fn run_checks(py: Python<'_>, checks: Vec<String>, seed: u64, tol: f64, samples: usize) -> PyResult<String> {
    let opts = RunOptions { seed, tol, samples };
    let report = py.detach(|| verifier::run(&checks, &opts)).map_err(value_error)?;
    Ok(report.to_json())
}

#[pymodule]
pub fn picard_cy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEisenstein>()?;
    m.add_function(wrap_pyfunction!(mod3_image_order, m)?)?;
    m.add_function(wrap_pyfunction!(covering_degree, m)?)?;
    m.add_function(wrap_pyfunction!(singular_points, m)?)?;
    m.add_function(wrap_pyfunction!(is_node, m)?)?;
    m.add_function(wrap_pyfunction!(h_order, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(c_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(ci_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ci_dim_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(dim_g33, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_errors, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
