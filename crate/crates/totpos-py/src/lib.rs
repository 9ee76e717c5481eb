//! Python bindings: the kernel zoo, minor-criterion classifiers,
//! entrywise-power probes, Loewner-order tests, Laplace transforms, and the
//! probe harness. Structured reports cross the boundary as plain Python
//! dicts/lists (via their JSON serialization), so no wrapper classes are
//! needed on the Python side.

use num::complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use std::str::FromStr;

use totpos::harness;
use totpos::kernels::{sample_matrix, IncreasingTuple, KernelSpec, KernelVariant};
use totpos::laplace;
use totpos::loewner;
use totpos::numerics::{Scalar, ToleranceProfile};
use totpos::probes;
use totpos::tptest;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.unbind().into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    json_to_py(py, &serde_json::to_value(value).map_err(err)?)
}

fn kernel_spec(kernel: &str, alpha: Option<f64>, q: f64, r: f64) -> PyResult<KernelSpec> {
    let variant = match kernel {
        "jks" => KernelVariant::Jks,
        "omega" => KernelVariant::Omega,
        "omega_qr" => KernelVariant::OmegaQr { q, r },
        "cosine_w" => KernelVariant::CosineW,
        "m_kernel" => KernelVariant::MKernel,
        "gaussian" => KernelVariant::Gaussian,
        "lambda_d" => KernelVariant::LambdaD { d: Scalar::ratio(1, 2) },
        other => return Err(err(format!("unknown kernel '{other}'"))),
    };
    match alpha {
        Some(a) => KernelSpec::powered(variant, a).map_err(err),
        None => KernelSpec::new(variant).map_err(err),
    }
}

fn tuple(values: Vec<f64>) -> PyResult<IncreasingTuple> {
    IncreasingTuple::from_f64s(&values).map_err(err)
}

/// Predicted class of the entrywise power map on order-p samples:
/// "tp", "tn_rank_<r>", or "not_tn".
#[pyfunction]
fn classify_power(p: usize, alpha: f64) -> PyResult<String> {
    Ok(match probes::classify_power(p, alpha) {
        probes::PredictedClass::TP => "tp".to_string(),
        probes::PredictedClass::TNRank(r) => format!("tn_rank_{r}"),
        probes::PredictedClass::NotTN => "not_tn".to_string(),
    })
}

/// Sample (1 + x_j y_k)^∘α and compare the observed minor classification
/// with the predicted trichotomy class.
#[pyfunction]
#[pyo3(signature = (xs, ys, alpha))]
fn power_probe(py: Python<'_>, xs: Vec<f64>, ys: Vec<f64>, alpha: f64) -> PyResult<PyObject> {
    let report = probes::jain_matrix_probe(&tuple(xs)?, &tuple(ys)?, alpha, &ToleranceProfile::default())
        .map_err(err)?;
    to_py(py, &report)
}

/// Sample a kernel on two increasing tuples; returns a list of rows.
#[pyfunction]
#[pyo3(signature = (kernel, xs, ys, alpha=None, q=1.0, r=2.0))]
fn sample(
    py: Python<'_>,
    kernel: &str,
    xs: Vec<f64>,
    ys: Vec<f64>,
    alpha: Option<f64>,
    q: f64,
    r: f64,
) -> PyResult<PyObject> {
    let spec = kernel_spec(kernel, alpha, q, r)?;
    let m = sample_matrix(&spec, &tuple(xs)?, &tuple(ys)?).map_err(err)?;
    let rows: Vec<Vec<f64>> = (0..m.nrows)
        .map(|i| (0..m.ncols).map(|j| m.get(i, j).to_f64()).collect())
        .collect();
    to_py(py, &rows)
}

/// Full minor scan of a kernel sample: status "TP" / "TNNotTP" / "NotTN",
/// with the witness minor when one exists.
#[pyfunction]
#[pyo3(signature = (kernel, xs, ys, alpha=None, q=1.0, r=2.0))]
fn classify_sample(
    py: Python<'_>,
    kernel: &str,
    xs: Vec<f64>,
    ys: Vec<f64>,
    alpha: Option<f64>,
    q: f64,
    r: f64,
) -> PyResult<PyObject> {
    let spec = kernel_spec(kernel, alpha, q, r)?;
    let xt = tuple(xs)?;
    let yt = tuple(ys)?;
    let m = sample_matrix(&spec, &xt, &yt).map_err(err)?;
    let c = tptest::minor_scan(&m, xt.len().min(yt.len()), &ToleranceProfile::default()).map_err(err)?;
    to_py(py, &c)
}

/// Predicted per-order minor sign signature of hinge-kernel powers
/// (+1, 0, or −1 for orders 1..n).
#[pyfunction]
fn predicted_signature(n: usize, alpha: f64) -> Vec<i8> {
    tptest::predicted_signature(n, alpha).0
}

/// Positivity violations along the straight-line homotopy from x to ε·y,
/// plus the certified always-positive ε threshold.
#[pyfunction]
#[pyo3(signature = (xs, ys, epsilon=1.0, grid=1000))]
fn homotopy(py: Python<'_>, xs: Vec<f64>, ys: Vec<f64>, epsilon: f64, grid: usize) -> PyResult<PyObject> {
    let report = probes::homotopy_violations(&xs, &ys, epsilon, grid).map_err(err)?;
    let delta = probes::homotopy_delta(&xs, &ys).map_err(err)?;
    let doc = serde_json::json!({ "violations": report, "certified_epsilon": delta });
    json_to_py(py, &doc)
}

/// Loewner-order test of the entrywise power map on (1 + x_j x_k):
/// property is "positivity", "monotonicity", or "convexity".
#[pyfunction]
#[pyo3(signature = (property, xs, alpha))]
fn loewner_test(py: Python<'_>, property: &str, xs: Vec<f64>, alpha: f64) -> PyResult<PyObject> {
    let profile = ToleranceProfile::default();
    let report = match property {
        "positivity" => loewner::jain_positivity_test(&xs, alpha, &profile),
        "monotonicity" => loewner::jain_monotonicity_test(&xs, alpha, &profile),
        "convexity" => loewner::jain_convexity_test(&xs, alpha, None, &profile),
        other => return Err(err(format!("unknown property '{other}'"))),
    }
    .map_err(err)?;
    to_py(py, &report)
}

/// Bilateral Laplace transform of a kernel at s = s_re + i·s_im, by closed
/// form (when one exists) and adaptive quadrature.
#[pyfunction]
#[pyo3(signature = (kernel, s_re=0.0, s_im=0.0, alpha=None, q=1.0, r=2.0, refinement=2))]
fn laplace_transform(
    py: Python<'_>,
    kernel: &str,
    s_re: f64,
    s_im: f64,
    alpha: Option<f64>,
    q: f64,
    r: f64,
    refinement: u32,
) -> PyResult<PyObject> {
    let spec = kernel_spec(kernel, alpha, q, r)?;
    let s = Complex64::new(s_re, s_im);
    let closed = laplace::closed_form_transform(&spec, s).ok();
    let quad = laplace::quadrature_transform(&spec, s, refinement).map_err(err)?;
    let doc = serde_json::json!({ "closed_form": closed, "quadrature": quad });
    json_to_py(py, &doc)
}

/// Order-3 total-nonnegativity of the entrywise power map for a single α:
/// either "preserves" or an explicit counterexample.
#[pyfunction]
fn tn3_power_probe(py: Python<'_>, alpha: f64) -> PyResult<PyObject> {
    let verdict = probes::tn3_power_probe(alpha).map_err(err)?;
    to_py(py, &verdict)
}

/// Run probe suites (all by default) and return the full report as a dict.
#[pyfunction]
#[pyo3(signature = (suites=None, seed=7))]
fn run_probes(py: Python<'_>, suites: Option<Vec<String>>, seed: u64) -> PyResult<PyObject> {
    let mut cfg = harness::ProbeConfig::default();
    cfg.seed = seed;
    if let Some(names) = suites {
        cfg.suites = names
            .iter()
            .map(|s| harness::Suite::from_str(s))
            .collect::<Result<_, _>>()
            .map_err(err)?;
    }
    cfg.validate().map_err(err)?;
    to_py(py, &harness::run_suite(&cfg))
}

#[pymodule]
fn totpos_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify_power, m)?)?;
    m.add_function(wrap_pyfunction!(power_probe, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(classify_sample, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_signature, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy, m)?)?;
    m.add_function(wrap_pyfunction!(loewner_test, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_transform, m)?)?;
    m.add_function(wrap_pyfunction!(tn3_power_probe, m)?)?;
    m.add_function(wrap_pyfunction!(run_probes, m)?)?;
    Ok(())
}
