//! Python bindings. Rationals cross the boundary as strings such as `"-3/4"`; ints and
//! `fractions.Fraction` are accepted on input. Structured reports come back as dicts with
//! the same layout as the command-line JSON.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyString};
use serde_json::Value;

use atinfinity::bridge::{build_bridge, normalize_path, qp_bridge as qp_bridge_impl, Target};
use atinfinity::classifier::{classify_with, homogenize_map, Mode, NumericConfig};
use atinfinity::cli::{corpus, error_kind};
use atinfinity::parser::{self, RationalPath, RegularMap, SemialgebraicSet};
use atinfinity::polyring::{parse_rat, rat_to_string, ratio, Rat};
use atinfinity::projective::{self, path_limit};
use atinfinity::sampler::{polynomial_image_obstruction, SampleConfig, Subject};

create_exception!(atinfinity_py, AtInfinityError, PyException);

fn err(e: atinfinity::Error) -> PyErr {
    AtInfinityError::new_err(format!("{}: {e}", error_kind(&e)))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn rat_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(s) = obj.extract::<String>() {
        return parse_rat(s.trim()).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s:?}")));
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(ratio(n, 1));
    }
    if obj.hasattr("numerator")? && obj.hasattr("denominator")? {
        let n: i64 = obj.getattr("numerator")?.extract()?;
        let d: i64 = obj.getattr("denominator")?.extract()?;
        if d != 0 {
            return Ok(ratio(n, d));
        }
    }
    Err(PyValueError::new_err("expected an int, a Fraction or a string like \"3/4\""))
}

fn rats_arg(items: &Bound<'_, PyAny>) -> PyResult<Vec<Rat>> {
    items.try_iter()?.map(|x| rat_arg(&x?)).collect()
}

fn strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

/// Regular map `x -> (f1/f0, ..., fm/f0)`.
#[pyclass(frozen, from_py_object, eq, module = "atinfinity_py")]
#[derive(Clone, PartialEq)]
struct Map {
    inner: RegularMap,
}

#[pymethods]
impl Map {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Map {
            inner: parser::parse_map(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn is_polynomial(&self) -> bool {
        self.inner.is_polynomial()
    }

    /// Exact value at a rational point, or `None` where the denominator vanishes.
    fn eval(&self, point: &Bound<'_, PyAny>) -> PyResult<Option<Vec<String>>> {
        let x = rats_arg(point)?;
        if x.len() != self.inner.n() {
            return Err(err(atinfinity::Error::Arity {
                expected: self.inner.n(),
                found: x.len(),
            }));
        }
        Ok(self.inner.eval(&x).map(|v| strings(&v)))
    }

    fn eval_float(&self, point: Vec<f64>) -> PyResult<Vec<f64>> {
        if point.len() != self.inner.n() {
            return Err(PyValueError::new_err(format!("expected {} coordinates", self.inner.n())));
        }
        Ok(self.inner.eval_f64(&point))
    }

    /// `self ∘ inner`.
    fn compose(&self, inner: &Map) -> PyResult<Map> {
        Ok(Map {
            inner: self.inner.compose(&inner.inner).map_err(err)?,
        })
    }

    fn ast<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &parser::map_ast(&self.inner))
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Map({:?})", self.inner.to_text())
    }
}

/// Tuple of Laurent polynomials in `t`.
#[pyclass(frozen, from_py_object, eq, module = "atinfinity_py")]
#[derive(Clone, PartialEq)]
struct Path {
    inner: RationalPath,
}

#[pymethods]
impl Path {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Path {
            inner: parser::parse_path(text).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Order of each component at `t = 0`; `None` for a zero component.
    fn orders(&self) -> Vec<Option<i64>> {
        self.inner.orders()
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Path({:?})", self.inner.to_text())
    }
}

/// Semialgebraic set given by a quantifier-free formula.
#[pyclass(frozen, from_py_object, module = "atinfinity_py")]
#[derive(Clone)]
struct Set {
    inner: SemialgebraicSet,
}

#[pymethods]
impl Set {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Set {
            inner: parser::parse_set(text).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    fn __contains__(&self, point: &Bound<'_, PyAny>) -> PyResult<bool> {
        let x = rats_arg(point)?;
        if x.len() != self.inner.n {
            return Err(PyValueError::new_err(format!("expected {} coordinates", self.inner.n)));
        }
        Ok(self.inner.contains(&x))
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Set({:?})", self.inner.to_text())
    }
}

/// Point of real projective space, stored with first nonzero coordinate 1.
#[pyclass(frozen, from_py_object, eq, hash, module = "atinfinity_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct ProjPoint {
    inner: projective::ProjPoint,
}

#[pymethods]
impl ProjPoint {
    /// From a string `"0:4:1"` or a sequence of rationals.
    #[new]
    fn new(coords: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(s) = coords.cast::<PyString>() {
            let s = s.to_str()?;
            return projective::ProjPoint::parse(s)
                .map(|inner| ProjPoint { inner })
                .ok_or_else(|| PyValueError::new_err(format!("not a projective point: {s:?}")));
        }
        let raw = rats_arg(coords)?;
        Ok(ProjPoint {
            inner: projective::ProjPoint::normalize(&raw).map_err(err)?,
        })
    }

    #[getter]
    fn coords(&self) -> Vec<String> {
        self.inner.coord_strings()
    }

    /// Primitive integer representative, e.g. `(0:4:1)`.
    #[getter]
    fn integral(&self) -> String {
        self.inner.integral_string()
    }

    #[getter]
    fn at_infinity(&self) -> bool {
        self.inner.at_infinity()
    }

    /// Unit direction in the affine coordinates, for points at infinity.
    fn direction(&self) -> Vec<f64> {
        self.inner.direction()
    }

    fn distance(&self, other: &ProjPoint) -> PyResult<f64> {
        projective::proj_distance(&self.inner, &other.inner).map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ProjPoint({:?})", self.inner.to_string())
    }
}

#[pyclass(frozen, get_all, module = "atinfinity_py")]
struct Limit {
    point: ProjPoint,
    nu: i64,
    leading: Vec<String>,
}

#[pymethods]
impl Limit {
    fn __repr__(&self) -> String {
        format!("Limit(point={}, nu={})", self.point.inner, self.nu)
    }
}

fn mode_arg(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(PyValueError::new_err)
}

/// Quasi-polynomial verdict as a dict.
#[pyfunction]
#[pyo3(signature = (map, mode = "auto", starts = None, seed = None))]
fn classify<'py>(
    py: Python<'py>,
    map: &Map,
    mode: &str,
    starts: Option<usize>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = NumericConfig::default();
    if let Some(s) = starts {
        cfg.starts = s;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let v = classify_with(&map.inner, mode_arg(mode)?, &cfg).map_err(err)?;
    to_py(py, &serde_json::to_value(&v).expect("verdict serializes"))
}

/// `{"d", "e", "F0", "F0prime", "F"}` for the homogenized map.
#[pyfunction]
fn homogenize<'py>(py: Python<'py>, map: &Map) -> PyResult<Bound<'py, PyAny>> {
    let h = homogenize_map(&map.inner).map_err(err)?;
    let v = serde_json::json!({
        "d": h.d,
        "e": h.e,
        "F0": h.f0.to_string(),
        "F0prime": h.f0prime.to_string(),
        "F": h.fs.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    to_py(py, &v)
}

/// Exact limit of `map` along `path` as `t -> 0+`.
#[pyfunction]
fn limit(map: &Map, path: &Path) -> PyResult<Limit> {
    let l = path_limit(&map.inner, &path.inner).map_err(err)?;
    Ok(Limit {
        point: ProjPoint { inner: l.point },
        nu: l.nu,
        leading: strings(&l.leading),
    })
}

/// Bridge with `h(t, 1/t) = alpha`, `h(t, -1/t) = beta`.
#[pyfunction]
fn bridge<'py>(py: Python<'py>, map: &Map, alpha: &Path, beta: &Path) -> PyResult<Bound<'py, PyAny>> {
    let a = normalize_path(&alpha.inner, Target::Simple).map_err(err)?;
    let b = normalize_path(&beta.inner, Target::Simple).map_err(err)?;
    let r = build_bridge(&map.inner, &a, &b).map_err(err)?;
    to_py(py, &r.to_json())
}

#[pyfunction]
#[pyo3(signature = (map, alpha, ell = None))]
fn qp_bridge<'py>(py: Python<'py>, map: &Map, alpha: &Path, ell: Option<u32>) -> PyResult<Bound<'py, PyAny>> {
    let r = qp_bridge_impl(&map.inner, &alpha.inner, ell).map_err(err)?;
    to_py(py, &r.to_json())
}

fn config_arg(py: Python<'_>, config: Option<&Bound<'_, PyAny>>) -> PyResult<SampleConfig> {
    let Some(c) = config else {
        return Ok(SampleConfig::default());
    };
    let text: String = if c.is_instance_of::<PyDict>() {
        py.import("json")?.call_method1("dumps", (c,))?.extract()?
    } else {
        c.extract()?
    };
    SampleConfig::from_json(&text).map_err(err)
}

/// Samples the set at infinity of a map image or a set and runs the connectivity test.
#[pyfunction]
#[pyo3(signature = (map = None, set = None, config = None))]
fn sample_infinity<'py>(
    py: Python<'py>,
    map: Option<&Map>,
    set: Option<&Set>,
    config: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config_arg(py, config)?;
    let subject = match (map, set) {
        (Some(m), None) => Subject::Map(&m.inner),
        (None, Some(s)) => Subject::Set(&s.inner),
        _ => return Err(PyValueError::new_err("give exactly one of map= and set=")),
    };
    let (verdict, report) = py
        .detach(|| polynomial_image_obstruction(subject, &cfg))
        .map_err(err)?;
    let v = serde_json::json!({"obstruction": verdict, "report": report.to_json()});
    to_py(py, &v)
}

/// The bundled corpus: a list of dicts with id, file, citation and source.
#[pyfunction]
fn examples<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let v: Vec<Value> = corpus::cases()
        .iter()
        .map(|c| serde_json::json!({"id": c.id, "file": c.file, "citation": c.citation, "source": c.source()}))
        .collect();
    to_py(py, &Value::Array(v))
}

/// Runs the checks of one corpus case.
#[pyfunction]
#[pyo3(signature = (id, sample = true))]
fn run_example<'py>(py: Python<'py>, id: &str, sample: bool) -> PyResult<Bound<'py, PyAny>> {
    let case = corpus::find(id).ok_or_else(|| PyValueError::new_err(format!("no corpus entry {id:?}")))?;
    let out = py
        .detach(|| corpus::run_case(&case, &SampleConfig::default(), sample))
        .map_err(err)?;
    let checks: Vec<Value> = out
        .checks
        .iter()
        .map(|c| serde_json::json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let v = serde_json::json!({"id": case.id, "citation": case.citation, "passed": out.passed(), "checks": checks});
    to_py(py, &v)
}

#[pyfunction]
fn random_polynomial_map(seed: u64, n: usize, m: usize, max_degree: u32) -> PyResult<Map> {
    if n == 0 || m == 0 || max_degree == 0 {
        return Err(PyValueError::new_err("n, m and max_degree must be positive"));
    }
    Ok(Map {
        inner: parser::random_polynomial_map(seed, n, m, max_degree),
    })
}

#[pymodule]
fn atinfinity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AtInfinityError", m.py().get_type::<AtInfinityError>())?;
    m.add_class::<Map>()?;
    m.add_class::<Path>()?;
    m.add_class::<Set>()?;
    m.add_class::<ProjPoint>()?;
    m.add_class::<Limit>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(homogenize, m)?)?;
    m.add_function(wrap_pyfunction!(limit, m)?)?;
    m.add_function(wrap_pyfunction!(bridge, m)?)?;
    m.add_function(wrap_pyfunction!(qp_bridge, m)?)?;
    m.add_function(wrap_pyfunction!(sample_infinity, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(run_example, m)?)?;
    m.add_function(wrap_pyfunction!(random_polynomial_map, m)?)?;
    Ok(())
}
