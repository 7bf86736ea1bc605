//! Python bindings. Points and rationals cross the boundary as exact text
//! (`"3/5,1/5"`, `"1/1000000"`); structured results come back as dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use farey_bary::algebraic::{periodic_to_cubic as cubic, periodic_to_rational as rational, PeriodicSpec};
use farey_bary::bary::{bary_expand, bary_replay};
use farey_bary::exact::{minkowski_q as question_mark, parse_rational};
use farey_bary::render::{render_partition, PartitionKind};
use farey_bary::sequence::Termination;
use farey_bary::{delta as dm, farey, singular, Error, ExpansionSequence, PlanePoint, TriangleState};

create_exception!(farey_bary_py, NotDominantError, PyValueError);

fn err(e: Error) -> PyErr {
    match e {
        Error::NotDominant => NotDominantError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<Value> {
    serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any().unbind()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any().unbind()
        }
    })
}

fn parse_point(s: &str) -> PyResult<PlanePoint> {
    PlanePoint::parse(s).map_err(err)
}

fn termination(t: Termination) -> Value {
    match t {
        Termination::Running => serde_json::json!({"kind": "running"}),
        Termination::VertexHit(d) => serde_json::json!({"kind": "vertex_hit", "depth": d}),
        Termination::DepthLimit => serde_json::json!({"kind": "depth_limit"}),
    }
}

fn vertices(t: &TriangleState) -> PyResult<Vec<String>> {
    Ok(t.points().map_err(err)?.iter().map(ToString::to_string).collect())
}

/// An expansion sequence in compressed notation, e.g. `Sequence("2(III),2(II)")`.
#[pyclass(name = "Sequence", frozen)]
struct PySequence {
    inner: ExpansionSequence,
}

#[pymethods]
impl PySequence {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PySequence {
            inner: ExpansionSequence::parse(text).map_err(err)?,
        })
    }

    /// Raw cases, one per refinement step.
    fn raw(&self) -> Vec<String> {
        self.inner.raw_cases().map(|c| c.to_string()).collect()
    }

    fn raw_len(&self) -> u64 {
        self.inner.raw_len()
    }

    /// Vertices of the Farey triangle reached by the sequence.
    fn farey_triangle(&self) -> PyResult<Vec<String>> {
        vertices(&farey::replay(&self.inner))
    }

    /// Vertices of the barycentric triangle reached by the sequence.
    fn bary_triangle(&self) -> PyResult<Vec<String>> {
        vertices(bary_replay(&self.inner).triangle())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Sequence('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Expansion of a point in the Farey (default) or barycentric partition.
#[pyfunction]
#[pyo3(signature = (point, kind = "farey", max_depth = 64))]
fn expand(py: Python<'_>, point: &str, kind: &str, max_depth: u64) -> PyResult<Py<PyAny>> {
    let p = parse_point(point)?;
    let kind: PartitionKind = kind.parse().map_err(err)?;
    let s = match kind {
        PartitionKind::Farey => farey::expand(&p, max_depth),
        PartitionKind::Bary => bary_expand(&p, max_depth),
    }
    .map_err(err)?;
    let v = serde_json::json!({
        "sequence": s.to_string(),
        "raw_depth": s.raw_len(),
        "termination": termination(s.termination),
    });
    to_py(py, &v)
}

#[pyfunction]
fn delta(py: Python<'_>, point: &str, tol: &str) -> PyResult<Py<PyAny>> {
    let tol = parse_rational(tol).map_err(err)?;
    to_py(py, &json(&dm::delta(&parse_point(point)?, &tol).map_err(err)?)?)
}

#[pyfunction]
fn delta_inverse(py: Python<'_>, point: &str, tol: &str) -> PyResult<Py<PyAny>> {
    let tol = parse_rational(tol).map_err(err)?;
    to_py(py, &json(&dm::delta_inverse(&parse_point(point)?, &tol).map_err(err)?)?)
}

#[pyfunction]
fn delta_n(point: &str, n: u64) -> PyResult<String> {
    Ok(dm::delta_n(&parse_point(point)?, n).map_err(err)?.to_string())
}

#[pyfunction]
fn delta_inverse_n(point: &str, n: u64) -> PyResult<String> {
    Ok(dm::delta_inverse_n(&parse_point(point)?, n).map_err(err)?.to_string())
}

/// Minimal polynomials and isolating intervals of the cubic limit point.
#[pyfunction]
#[pyo3(signature = (period, preperiod = ""))]
fn periodic_to_cubic(py: Python<'_>, period: &str, preperiod: &str) -> PyResult<Py<PyAny>> {
    let spec = PeriodicSpec::parse(preperiod, period).map_err(err)?;
    let c = cubic(&spec).map_err(err)?;
    let mut v = c.to_json();
    let (x, y) = c.point.to_f64();
    v["approx"] = serde_json::json!([x, y]);
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (period, preperiod = ""))]
fn periodic_to_rational(period: &str, preperiod: &str) -> PyResult<String> {
    let spec = PeriodicSpec::parse(preperiod, period).map_err(err)?;
    Ok(rational(&spec).map_err(err)?.to_string())
}

#[pyfunction]
fn ratio_series(py: Python<'_>, sequence: &str) -> PyResult<Py<PyAny>> {
    let s = ExpansionSequence::parse(sequence).map_err(err)?;
    to_py(py, &json(&singular::ratio_series(&s))?)
}

#[pyfunction]
fn monte_carlo(py: Python<'_>, samples: u64, depth: u64, seed: u64) -> PyResult<Py<PyAny>> {
    let summary = py
        .detach(|| singular::monte_carlo(samples, depth, seed))
        .map_err(err)?;
    to_py(py, &json(&summary)?)
}

#[pyfunction]
#[pyo3(signature = (x, y, z, l))]
fn lemma_check(x: u64, y: u64, z: u64, l: &str) -> PyResult<bool> {
    let l = parse_rational(l).map_err(err)?;
    Ok(singular::lemma_inequality_check(&x.into(), &y.into(), &z.into(), &l))
}

/// SVG document of a partition.
#[pyfunction]
#[pyo3(signature = (kind, depth, scale = 600))]
fn render(kind: &str, depth: u32, scale: u32) -> PyResult<String> {
    let kind: PartitionKind = kind.parse().map_err(err)?;
    render_partition(kind, depth, scale).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, depth = 64))]
fn minkowski_q(x: &str, depth: u32) -> PyResult<String> {
    let x = parse_rational(x).map_err(err)?;
    Ok(question_mark(&x, depth).map_err(err)?.to_string())
}

#[pymodule]
pub fn farey_bary_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NotDominantError", m.py().get_type::<NotDominantError>())?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(delta_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(delta_n, m)?)?;
    m.add_function(wrap_pyfunction!(delta_inverse_n, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_to_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_to_rational, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_series, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_check, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski_q, m)?)?;
    Ok(())
}
