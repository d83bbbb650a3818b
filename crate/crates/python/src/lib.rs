//! Python bindings for `futaki-core`.
//!
//! Rational inputs accept `int`, `str` such as `"-7/2"`, or `fractions.Fraction`.
//! Exact outputs are returned as `Fraction`, numerical ones as decimal strings.

use futaki_core::exactalg::{ExpPoly as CoreExpPoly, Real};
use futaki_core::geometry::{CompleteIntersection, DiagonalField, Support};
use futaki_core::{futaki as fut, quantize, soliton};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rug::Rational;

create_exception!(futaki, FutakiError, PyValueError);

const DEFAULT_PRECISION: u32 = 256;

fn err(e: futaki_core::Error) -> PyErr {
    FutakiError::new_err(e.to_string())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    s.parse::<Rational>().ok()
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = obj.str()?.to_string();
    parse_rational(&s).ok_or_else(|| PyValueError::new_err(format!("not a rational number: {s:?}")))
}

fn to_rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(to_rational).collect()
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn decimal(r: &Real) -> String {
    r.to_decimal()
}

/// A complete intersection `X ⊂ P^N` of the given degrees.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Variety {
    inner: CompleteIntersection,
}

#[pymethods]
impl Variety {
    #[new]
    #[pyo3(signature = (ambient_dim, degrees, supports=None))]
    fn new(ambient_dim: usize, degrees: Vec<u32>, supports: Option<Vec<Support>>) -> PyResult<Self> {
        CompleteIntersection::new(ambient_dim, degrees, supports)
            .map(|inner| Variety { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn projective_space(ambient_dim: usize) -> PyResult<Self> {
        CompleteIntersection::projective_space(ambient_dim)
            .map(|inner| Variety { inner })
            .map_err(err)
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn degrees(&self) -> Vec<u32> {
        self.inner.degrees().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn fano_index(&self) -> i64 {
        self.inner.fano_index()
    }

    #[getter]
    fn anticanonical_degree(&self) -> String {
        self.inner.anticanonical_degree().to_string()
    }

    /// Number of sections `N_k` of `O(km)`.
    fn nk(&self, k: u32) -> String {
        quantize::nk(&self.inner, k).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Variety(ambient_dim={}, degrees={:?})", self.inner.ambient_dim(), self.inner.degrees())
    }
}

/// A diagonal holomorphic vector field with eigenvalues `λ` and weights `α`.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Field {
    inner: DiagonalField,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (variety, eigenvalues, weights=None))]
    fn new(
        variety: &Variety,
        eigenvalues: Vec<Bound<'_, PyAny>>,
        weights: Option<Vec<Bound<'_, PyAny>>>,
    ) -> PyResult<Self> {
        let eig = to_rationals(&eigenvalues)?;
        let wts = weights.as_deref().map(to_rationals).transpose()?;
        DiagonalField::new(&variety.inner, eig, wts)
            .map(|inner| Field { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn zero(variety: &Variety) -> Self {
        Field {
            inner: DiagonalField::zero(&variety.inner),
        }
    }

    fn eigenvalues<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.eigenvalues().iter().map(|r| fraction(py, r)).collect()
    }

    fn weights<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.weights().iter().map(|r| fraction(py, r)).collect()
    }

    fn __repr__(&self) -> String {
        let show = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
        format!(
            "Field(eigenvalues=[{}], weights=[{}])",
            show(self.inner.eigenvalues()),
            show(self.inner.weights())
        )
    }
}

/// `Σ_μ c_μ(t) e^{μt}` with rational data.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct ExpPoly {
    inner: CoreExpPoly,
}

#[pymethods]
impl ExpPoly {
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        CoreExpPoly::parse(s).map(|inner| ExpPoly { inner }).map_err(err)
    }

    /// Value at rational `t` as a decimal string.
    #[pyo3(signature = (t, precision=DEFAULT_PRECISION))]
    fn eval(&self, t: &Bound<'_, PyAny>, precision: u32) -> PyResult<String> {
        let t = to_rational(t)?;
        self.inner.eval(&t, precision).map(|r| decimal(&r)).map_err(err)
    }

    fn limit_at_zero<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let l = self.inner.limit_at_zero().map_err(err)?;
        fraction(py, &l)
    }

    /// `t d/dt`.
    fn euler_derivative(&self) -> Self {
        ExpPoly {
            inner: self.inner.euler_derivative(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ExpPoly.parse({:?})", self.inner.to_string())
    }
}

/// Exact `F(V)` as a function of `t`.
#[pyfunction]
fn f_function(variety: &Variety, field: &Field) -> ExpPoly {
    ExpPoly {
        inner: fut::f_function(&variety.inner, &field.inner),
    }
}

/// Exact `Fut_V(W)(t)`.
#[pyfunction]
fn fut_derivative(variety: &Variety, field: &Field, direction: &Field) -> PyResult<ExpPoly> {
    fut::fut_derivative(&variety.inner, &field.inner, &direction.inner)
        .map(|inner| ExpPoly { inner })
        .map_err(err)
}

/// `F(V)(t)` through numerical divided differences.
#[pyfunction]
#[pyo3(signature = (variety, field, t, precision=DEFAULT_PRECISION))]
fn f_numeric(variety: &Variety, field: &Field, t: &Bound<'_, PyAny>, precision: u32) -> PyResult<String> {
    let t = to_rational(t)?;
    Ok(decimal(&fut::f_numeric(&variety.inner, &field.inner, &t, precision)))
}

/// Quantized `F_k(V)(t)`.
#[pyfunction]
#[pyo3(signature = (variety, field, k, t, precision=DEFAULT_PRECISION))]
fn fk(variety: &Variety, field: &Field, k: u32, t: &Bound<'_, PyAny>, precision: u32) -> PyResult<String> {
    let t = to_rational(t)?;
    Ok(decimal(&quantize::fk(&variety.inner, &field.inner, k, &t, precision)))
}

/// Integer basis of the admissible diagonal torus.
#[pyfunction]
fn admissible_torus<'py>(py: Python<'py>, variety: &Variety) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
    let torus = soliton::admissible_torus(&variety.inner).map_err(err)?;
    torus
        .basis()
        .iter()
        .map(|v| v.iter().map(|r| fraction(py, r)).collect())
        .collect()
}

/// Critical point of `F` on the admissible torus, or `None` when only `V = 0` is admissible.
#[pyfunction]
#[pyo3(signature = (variety, tol=1e-10, max_iter=100, precision=DEFAULT_PRECISION))]
fn find_soliton<'py>(
    py: Python<'py>,
    variety: &Variety,
    tol: f64,
    max_iter: usize,
    precision: u32,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let outcome = soliton::find_soliton(&variety.inner, tol, max_iter, precision).map_err(err)?;
    let p = match outcome {
        soliton::SolitonOutcome::Trivial => return Ok(None),
        soliton::SolitonOutcome::Found(p) => p,
    };
    let strings = |v: &[Real]| v.iter().map(decimal).collect::<Vec<_>>();
    let d = PyDict::new(py);
    d.set_item("coefficients", strings(&p.coefficients))?;
    d.set_item("eigenvalues", strings(&p.eigenvalues))?;
    d.set_item("weights", strings(&p.weights))?;
    d.set_item("gradient", strings(&p.gradient))?;
    d.set_item("gradient_norm", p.gradient_norm)?;
    d.set_item("value", decimal(&p.value))?;
    d.set_item("iterations", p.iterations)?;
    Ok(Some(d))
}

#[pymodule]
pub fn futaki(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FutakiError", m.py().get_type::<FutakiError>())?;
    m.add_class::<Variety>()?;
    m.add_class::<Field>()?;
    m.add_class::<ExpPoly>()?;
    m.add_function(wrap_pyfunction!(f_function, m)?)?;
    m.add_function(wrap_pyfunction!(fut_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(f_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(fk, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_torus, m)?)?;
    m.add_function(wrap_pyfunction!(find_soliton, m)?)?;
    Ok(())
}
