//! Python bindings: a `NegaBeta` system object plus the interval-map examples.
//! Structured results come back as plain dicts and lists; ±inf travels as float.

use negabeta::algebraic::BetaSpec;
use negabeta::intervalmaps::{circle_mc_deviation, circle_nonwandering, example31_measure_bounds, CircleMap};
use negabeta::ldp::{compare_rate_functions, level1_rate, mc_deviation, pressure, typical_mean, Observable, Window};
use negabeta::measures::{cylinder_measure, GBeta};
use negabeta::negabeta::{format_word, parse_word, rational_point, MinusBetaSystem};
use negabeta::shiftgraph::{chain_entropy, cross_validate, decompose, presentation, ComponentChain, FoldedAutomaton};
use negabeta::specprop::{gluing_trials, spec_bound, spec_bound_w, spec_bruteforce, SoficPresentation};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => match s.as_str() {
            "inf" => f64::INFINITY.into_pyobject(py)?.into_any(),
            "-inf" => f64::NEG_INFINITY.into_pyobject(py)?.into_any(),
            "nan" => f64::NAN.into_pyobject(py)?.into_any(),
            _ => s.into_pyobject(py)?.into_any(),
        },
        Value::Array(a) => PyList::new(py, a.iter().map(|x| value_to_py(py, x)).collect::<PyResult<Vec<_>>>()?)?.into_any(),
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, value_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    value_to_py(py, &serde_json::to_value(v).map_err(err)?)
}

/// The (−β)-transformation for one β, with its presentation when β is Yrrap.
#[pyclass(name = "NegaBeta", module = "pynegabeta")]
struct PyNegaBeta {
    sys: MinusBetaSystem,
    chain: Option<(FoldedAutomaton, ComponentChain, SoficPresentation)>,
}

impl PyNegaBeta {
    fn from_system(sys: MinusBetaSystem) -> PyResult<Self> {
        let chain = match sys.expansion() {
            Ok(s) => {
                let a = presentation(s).map_err(err)?;
                let c = decompose(&a);
                let p = SoficPresentation::from_chain(&a, &c).map_err(err)?;
                Some((a, c, p))
            }
            Err(_) => None,
        };
        Ok(Self { sys, chain })
    }

    fn chain(&self) -> PyResult<&(FoldedAutomaton, ComponentChain, SoficPresentation)> {
        self.chain.as_ref().ok_or_else(|| err("needs an exact beta whose expansion of 1 is eventually periodic"))
    }

    fn observable(&self, obs: &str) -> PyResult<Observable> {
        Observable::parse(obs, self.sys.b()).ok_or_else(|| err(format!("unknown observable {obs:?}")))
    }
}

#[pymethods]
impl PyNegaBeta {
    /// `beta` uses the `poly:...;interval:...` or `decimal:...;precision:...` grammar.
    #[new]
    #[pyo3(signature = (beta, max_steps = 256))]
    fn new(beta: &str, max_steps: usize) -> PyResult<Self> {
        let spec: BetaSpec = beta.parse().map_err(err)?;
        let exact = spec.is_exact();
        let mut sys = MinusBetaSystem::new(spec).map_err(err)?;
        if exact {
            sys.expansion_of_one(max_steps).map_err(err)?;
        }
        Self::from_system(sys)
    }

    #[staticmethod]
    fn minimal_pisot() -> PyResult<Self> {
        Self::from_system(MinusBetaSystem::minimal_pisot())
    }

    #[staticmethod]
    fn integer(n: i64) -> PyResult<Self> {
        if n < 2 {
            return Err(err("integer beta must be at least 2"));
        }
        Self::from_system(MinusBetaSystem::integer(n))
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.sys.beta_approx()
    }

    #[getter]
    fn b(&self) -> u8 {
        self.sys.b()
    }

    #[getter]
    fn is_exact(&self) -> bool {
        self.sys.is_exact()
    }

    /// i'(1) written as `preperiod(period)`.
    #[getter]
    fn expansion(&self) -> PyResult<String> {
        self.sys.expansion().map(|s| s.to_string()).map_err(err)
    }

    #[getter]
    fn case(&self) -> String {
        format!("{:?}", self.sys.case_tag())
    }

    fn __repr__(&self) -> String {
        match self.sys.expansion() {
            Ok(s) => format!("NegaBeta(beta≈{:.12}, i'(1)={s})", self.sys.beta_approx()),
            Err(_) => format!("NegaBeta(beta≈{:.12}, inexact)", self.sys.beta_approx()),
        }
    }

    /// First n digits of the exact orbit of p/q.
    fn itinerary(&self, p: i64, q: i64, n: usize) -> PyResult<Vec<u8>> {
        let x = rational_point(&self.sys, p, q).map_err(err)?;
        self.sys.itinerary(&x, n).map_err(err)
    }

    fn admissible(&self, word: &str) -> PyResult<bool> {
        self.sys.word_admissible(&parse_word(word).map_err(err)?).map_err(err)
    }

    /// Folded automaton edges as (from, label, to).
    fn edges(&self) -> PyResult<Vec<(usize, u8, usize)>> {
        Ok(self.chain()?.0.graph.edges().map(|e| (e.from, e.label, e.to)).collect())
    }

    fn components(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.chain()?.1.vertex_sets())
    }

    fn entropy(&self) -> PyResult<f64> {
        let (a, c, _) = self.chain()?;
        Ok(chain_entropy(a, c).iter().map(|e| e.entropy).fold(0.0, f64::max))
    }

    fn gbeta(&self, nmax: usize) -> PyResult<Vec<usize>> {
        Ok(GBeta::from_automaton(&self.chain()?.0).map_err(err)?.profile(nmax).values)
    }

    fn cross_validate<'py>(&self, py: Python<'py>, maxlen: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &cross_validate(&self.chain()?.0, &self.sys, maxlen).map_err(err)?)
    }

    /// Exact cylinder of a word with the length bounds checked.
    fn cylinder<'py>(&self, py: Python<'py>, word: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = cylinder_measure(&self.sys, &parse_word(word).map_err(err)?).map_err(err)?;
        let d = to_py(py, &r.row(self.sys.b()))?;
        d.set_item("length_float", r.length.to_f64())?;
        Ok(d)
    }

    /// Strong certificate (or W fallback), the W certificate, and optional brute force.
    #[pyo3(signature = (maxlen = None))]
    fn spec<'py>(&self, py: Python<'py>, maxlen: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let p = &self.chain()?.2;
        let mut cert = spec_bound(p).map_err(err)?;
        let mut w = spec_bound_w(p).map_err(err)?;
        if let Some(m) = maxlen {
            let t = spec_bruteforce(p, m).map_err(err)?;
            cert = cert.with_exact_min(&t);
            w = w.with_exact_min(&t);
        }
        to_py(py, &serde_json::json!({ "certificate": cert, "w_certificate": w }))
    }

    /// Passed trials out of `trials` k-fold gluings for each certificate.
    #[pyo3(signature = (trials, seed, k = 3, word_len = 6))]
    fn gluing(&self, trials: usize, seed: u64, k: usize, word_len: usize) -> PyResult<(usize, usize)> {
        let p = &self.chain()?.2;
        let strong = gluing_trials(p, &spec_bound(p).map_err(err)?, k, trials, word_len, seed);
        let weak = gluing_trials(p, &spec_bound_w(p).map_err(err)?, k, trials, word_len, seed);
        Ok((strong.passed, weak.passed))
    }

    #[pyo3(signature = (t, obs = "digit1"))]
    fn pressure(&self, t: f64, obs: &str) -> PyResult<f64> {
        Ok(pressure(&self.chain()?.2, &self.observable(obs)?, t).value)
    }

    #[pyo3(signature = (obs = "digit1"))]
    fn typical_mean(&self, obs: &str) -> PyResult<f64> {
        typical_mean(&self.chain()?.2, &self.observable(obs)?).map_err(err)
    }

    /// Level-1 rate at a with φ ≡ log β.
    #[pyo3(signature = (a, obs = "digit1"))]
    fn rate<'py>(&self, py: Python<'py>, a: f64, obs: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = level1_rate(&self.chain()?.2, &self.observable(obs)?, a, self.sys.beta_approx().ln()).map_err(err)?;
        to_py(py, &r)
    }

    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (lo, hi, n, samples, seed, obs = "digit1"))]
    fn mc<'py>(&self, py: Python<'py>, lo: f64, hi: f64, n: usize, samples: u64, seed: u64, obs: &str) -> PyResult<Bound<'py, PyAny>> {
        let psi = self.observable(obs)?;
        let e = py.detach(|| mc_deviation(&self.sys, &psi, Window { lo, hi }, n, samples, seed)).map_err(err)?;
        to_py(py, &e)
    }

    fn compare_rates<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &compare_rate_functions(&self.sys).map_err(err)?)
    }
}

/// Measure bounds of the slope-3 five-branch example up to maxlen.
#[pyfunction]
fn example31_bounds(py: Python<'_>, maxlen: usize) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &example31_measure_bounds(maxlen).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (grid = 1000, iters = 2000, amplitude = 0.1))]
fn circle_omega(grid: usize, iters: usize, amplitude: f64) -> Vec<f64> {
    circle_nonwandering(&CircleMap { amplitude }, grid, iters).points
}

/// Occupation deviation of the circle map for the window [a, 1].
#[pyfunction]
#[pyo3(signature = (a, n, samples, seed, epsilon = 0.05, amplitude = 0.1))]
fn circle_mc(py: Python<'_>, a: f64, n: usize, samples: u64, seed: u64, epsilon: f64, amplitude: f64) -> PyResult<Bound<'_, PyAny>> {
    let d = py.detach(|| circle_mc_deviation(&CircleMap { amplitude }, Window { lo: a, hi: 1.0 }, n, samples, epsilon, seed)).map_err(err)?;
    to_py(py, &d)
}

/// Digits of a word as the library prints them.
#[pyfunction]
#[pyo3(signature = (digits, bound = 1))]
fn format_digits(digits: Vec<u8>, bound: u8) -> String {
    format_word(&digits, bound)
}

#[pymodule]
fn pynegabeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNegaBeta>()?;
    m.add_function(wrap_pyfunction!(example31_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(circle_omega, m)?)?;
    m.add_function(wrap_pyfunction!(circle_mc, m)?)?;
    m.add_function(wrap_pyfunction!(format_digits, m)?)?;
    Ok(())
}
