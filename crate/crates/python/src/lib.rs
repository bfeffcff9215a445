//! Python bindings for the ambiguity toolkit.
//!
//! Specs (statistics, maps, models) cross the boundary as JSON text or as
//! plain dicts, which are serialised with the standard `json` module.

use ate_core::oracles::{self, Budget, TheoremId};
use ate_core::{
    Act, AmbiguityModel, DiscreteDistribution, Error, Event, FiniteCapacity, ProbabilityVector,
    Scenario, StatisticSpec,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};
use serde::de::DeserializeOwned;

create_exception!(
    ate,
    AteError,
    PyValueError,
    "Invalid input to the ambiguity toolkit."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => AteError::new_err(e.to_string()),
    }
}

/// Accepts JSON text or any object `json.dumps` understands.
fn from_spec<T: DeserializeOwned>(spec: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if let Ok(s) = spec.cast::<PyString>() {
        s.to_str()?.to_owned()
    } else {
        let json = spec.py().import("json")?;
        json.call_method1("dumps", (spec,))?.extract()?
    };
    serde_json::from_str(&text).map_err(|e| AteError::new_err(format!("parse error: {e}")))
}

fn act(outcomes: Vec<f64>) -> PyResult<Act> {
    Act::new(outcomes).map_err(err)
}

fn event(key: &str, n: usize) -> PyResult<Event> {
    Event::parse_key(key, n).map_err(err)
}

/// A monotone set function on `n` states.
#[pyclass(module = "ate", name = "Capacity", frozen)]
struct PyCapacity {
    inner: FiniteCapacity,
}

#[pymethods]
impl PyCapacity {
    /// Builds a capacity from a literal such as
    /// `{"n": 2, "table": {"10": 0.3, "01": 0.4}}`.
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner: FiniteCapacity = from_spec(spec)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_probability(weights: Vec<f64>) -> PyResult<Self> {
        let p = ProbabilityVector::new(weights).map_err(err)?;
        Ok(Self {
            inner: FiniteCapacity::from_probability(&p).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn value(&self, key: &str) -> PyResult<f64> {
        Ok(self.inner.value(event(key, self.inner.n())?))
    }

    fn is_supermodular(&self) -> bool {
        self.inner.is_supermodular()
    }

    fn is_submodular(&self) -> bool {
        self.inner.is_submodular()
    }

    fn is_balanced(&self) -> PyResult<bool> {
        self.inner.is_balanced().map_err(err)
    }

    fn is_exact(&self) -> PyResult<bool> {
        self.inner.is_exact().map_err(err)
    }

    fn core_vertices(&self) -> PyResult<Vec<Vec<f64>>> {
        let vs = self.inner.core_vertices_supermodular().map_err(err)?;
        Ok(vs.into_iter().map(|p| p.weights().to_vec()).collect())
    }

    fn distort(&self, distortion: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.distort(&from_spec(distortion)?).map_err(err)?,
        })
    }

    fn choquet_integral(&self, outcomes: Vec<f64>) -> PyResult<f64> {
        ate_core::choquet_integral(&self.inner, &act(outcomes)?).map_err(err)
    }

    /// Distribution of an act under the Choquet mapping.
    fn act_to_dist(&self, outcomes: Vec<f64>) -> PyResult<PyDistribution> {
        let map = ate_core::ActToDistMap::Choquet {
            capacity: self.inner.clone(),
        };
        Ok(PyDistribution {
            inner: map.act_to_dist(&act(outcomes)?).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Capacity({})", self.inner)
    }
}

/// A finitely supported distribution on the real line.
#[pyclass(module = "ate", name = "Distribution", frozen)]
struct PyDistribution {
    inner: DiscreteDistribution,
}

#[pymethods]
impl PyDistribution {
    /// `atoms` is a list of `(value, weight)` pairs with weights summing to one.
    #[new]
    fn new(atoms: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(Self {
            inner: DiscreteDistribution::new(atoms).map_err(err)?,
        })
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn survival_levels(&self) -> Vec<f64> {
        self.inner.survival_levels().to_vec()
    }

    fn atoms(&self) -> Vec<(f64, f64)> {
        self.inner.atoms().collect()
    }

    fn expectation(&self) -> f64 {
        self.inner.expectation()
    }

    fn quantile(&self, alpha: f64) -> PyResult<f64> {
        self.inner.quantile_at(alpha).map_err(err)
    }

    fn oplus(&self, other: PyRef<'_, PyDistribution>) -> Self {
        Self {
            inner: self.inner.oplus(&other.inner),
        }
    }

    fn otimes(&self, factor: f64) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.otimes(factor).map_err(err)?,
        })
    }

    /// `"GE"`, `"LE"`, `"EQ"` or `"INCOMPARABLE"`.
    fn fsd_compare(&self, other: PyRef<'_, PyDistribution>) -> String {
        self.inner.fsd_compare(&other.inner).to_string()
    }

    fn ssd_compare(&self, other: PyRef<'_, PyDistribution>) -> String {
        self.inner.ssd_compare(&other.inner).to_string()
    }

    /// Certainty equivalent under a statistic spec.
    fn certainty_equivalent(&self, statistic: &Bound<'_, PyAny>) -> PyResult<f64> {
        let s: StatisticSpec = from_spec(statistic)?;
        s.validate().map_err(err)?;
        s.certainty_equivalent(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Distribution({:?})", self.inner.atoms().collect::<Vec<_>>())
    }
}

/// An ATE or ETA preference over acts.
#[pyclass(module = "ate", name = "Model", frozen)]
struct PyModel {
    inner: AmbiguityModel,
}

#[pymethods]
impl PyModel {
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner: AmbiguityModel = from_spec(spec)?;
        inner.validate().map_err(err)?;
        Ok(Self { inner })
    }

    /// Choquet ATE model with the given statistic.
    #[staticmethod]
    fn choquet(capacity: PyRef<'_, PyCapacity>, statistic: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = AmbiguityModel::choquet(capacity.inner.clone(), from_spec(statistic)?);
        inner.validate().map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn evaluate(&self, outcomes: Vec<f64>) -> PyResult<f64> {
        self.inner.evaluate(&act(outcomes)?).map_err(err)
    }

    /// Ranks `(name, outcomes)` pairs; returns `(name, value, class)` triples.
    fn rank(&self, acts: Vec<(String, Vec<f64>)>) -> PyResult<Vec<(String, f64, usize)>> {
        let acts = acts
            .into_iter()
            .map(|(name, x)| Ok((name, act(x)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let ranked = self.inner.rank(&acts).map_err(err)?;
        Ok(ranked
            .into_iter()
            .map(|r| (r.name, r.value, r.class))
            .collect())
    }

    fn matching_probability(&self, key: &str) -> PyResult<f64> {
        self.inner
            .matching_probability(event(key, self.inner.n())?)
            .map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }
}

/// Loads a scenario file and ranks its acts: `[(name, value, class), ...]`.
#[pyfunction]
#[pyo3(signature = (path, statistic=None))]
fn rank_scenario(
    path: &str,
    statistic: Option<&Bound<'_, PyAny>>,
) -> PyResult<Vec<(String, f64, usize)>> {
    let mut s = Scenario::load(path).map_err(err)?;
    if let Some(spec) = statistic {
        s = s.with_statistic(from_spec(spec)?).map_err(err)?;
    }
    let ranked = s
        .model
        .rank_with_tolerance(&s.act_list(), s.options.tolerance)
        .map_err(err)?;
    Ok(ranked
        .into_iter()
        .map(|r| (r.name, r.value, r.class))
        .collect())
}

/// Runs a property suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (theorem, instances=None, seed=None, n_max=None))]
fn verify<'py>(
    py: Python<'py>,
    theorem: &str,
    instances: Option<usize>,
    seed: Option<u64>,
    n_max: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let id: TheoremId = theorem.parse().map_err(err)?;
    let d = id.default_budget();
    let budget = Budget {
        instances: instances.unwrap_or(d.instances),
        seed: seed.unwrap_or(d.seed),
        n_max: n_max.unwrap_or(d.n_max),
    };
    let report = py.detach(|| oracles::verify(id, budget)).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("theorem_id", id.as_str())?;
    out.set_item("instances_checked", report.instances_checked)?;
    out.set_item("passed", report.passed)?;
    out.set_item("witness", report.witness)?;
    out.set_item("notes", report.notes)?;
    out.set_item("elapsed", report.elapsed.as_secs_f64())?;
    Ok(out)
}

#[pymodule]
pub fn ate(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AteError", m.py().get_type::<AteError>())?;
    m.add_class::<PyCapacity>()?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(rank_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
