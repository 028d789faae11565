//! Python bindings for `hochmod`.

use std::path::PathBuf;

use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hochmod::builders::{Bundle, PresentationFile, PRESETS};
use hochmod::hochschild::Complex;
use hochmod::hopf::{center_basis, dual_bimodule, twist_eps_ad, twist_eps_cad, twist_s2inv, BimodulePresentation, HopfPresentation};
use hochmod::linalg::Matrix;
use hochmod::modular::{act, sl2z_word, ModularCochains};
use hochmod::scalar::{Field, FieldSpec, PrimeField, Rationals};
use hochmod::Error;

#[cfg(feature = "cyclotomic")]
use hochmod::scalar::Cyclotomic;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceCap { .. } => PyMemoryError::new_err(e.to_string()),
        Error::Verification(_) | Error::InternalMismatch { .. } | Error::NotCentral => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn matrix_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    let f = m.field();
    m.to_dense().iter().map(|r| r.iter().map(|x| f.format(x)).collect()).collect()
}

fn module_for<F: Field>(h: &HopfPresentation<F>, name: &str) -> PyResult<BimodulePresentation<F>> {
    let reg = BimodulePresentation::regular(h.algebra());
    Ok(match name {
        "regular" => reg,
        "s2inv-dual" => dual_bimodule(&twist_s2inv(h)),
        "eps-ad" => twist_eps_ad(h, &reg),
        "eps-cad" => twist_eps_cad(h, &reg),
        other => return Err(PyValueError::new_err(format!("unknown module {other:?}; use regular, s2inv-dual, eps-ad or eps-cad"))),
    })
}

fn hh_dims<F: Field>(b: &Bundle<F>, degree: usize, module: &str) -> PyResult<Vec<usize>> {
    let m = module_for(&b.hopf, module)?;
    let c = Complex::new(b.hopf.algebra(), &m).map_err(py_err)?;
    (0..=degree).map(|n| c.cohomology(n).map(|s| s.dim()).map_err(py_err)).collect()
}

fn center<F: Field>(b: &Bundle<F>) -> Vec<Vec<String>> {
    let f = b.hopf.field();
    center_basis(b.hopf.algebra()).basis_dense().iter().map(|v| v.iter().map(|x| f.format(x)).collect()).collect()
}

fn cochains<F: Field>(b: &Bundle<F>) -> PyResult<ModularCochains<F>> {
    let data = b.ribbon.as_ref().ok_or_else(|| {
        PyRuntimeError::new_err(b.ribbon_error.clone().unwrap_or_else(|| "no R-matrix: modular data is unavailable".into()))
    })?;
    ModularCochains::new(&b.hopf, data).map_err(py_err)
}

fn modular<F: Field>(py: Python<'_>, b: &Bundle<F>, degree: usize) -> PyResult<Py<PyAny>> {
    let mc = cochains(b)?;
    let rep = mc.modular_rep(degree).map_err(py_err)?;
    let f = b.hopf.field();
    let fmt = |x: &Option<F::Elem>| x.as_ref().map(|s| f.format(s));
    let v = serde_json::json!({
        "degree": rep.degree,
        "dim": rep.dim,
        "s_bar": matrix_strings(&rep.s_bar),
        "t_bar": rep.t_bar.as_ref().map(matrix_strings),
        "sigma_sts": fmt(&rep.sigma_sts),
        "sigma_s4": fmt(&rep.sigma_s4),
        "omega": f.format(&mc.data.omega),
        "linear": rep.linear,
        "ok": rep.report.is_ok(),
        "failed": rep.report.failed_checks(),
    });
    json_to_py(py, &v)
}

fn apply_sl2z<F: Field>(b: &Bundle<F>, m: [[i64; 2]; 2], class: &[String], degree: usize) -> PyResult<(Vec<String>, String)> {
    let f = b.hopf.field();
    let class = class.iter().map(|s| f.parse(s).map_err(|e| py_err(e.into()))).collect::<PyResult<Vec<_>>>()?;
    let rep = cochains(b)?.modular_rep(degree).map_err(py_err)?;
    let (x, note) = act(m, &class, &rep).map_err(py_err)?;
    Ok((x.iter().map(|e| f.format(e)).collect(), note))
}

fn verify<F: Field>(py: Python<'_>, b: &Bundle<F>) -> PyResult<Py<PyAny>> {
    let checks: serde_json::Map<String, serde_json::Value> =
        b.reports.iter().map(|r| (r.name.clone(), serde_json::json!(r.failed_checks()))).collect();
    json_to_py(py, &serde_json::json!({ "ok": b.is_ok(), "failed": checks, "ribbon_error": b.ribbon_error }))
}

fn export<F: Field>(b: &Bundle<F>) -> String {
    let (v, rho) = match &b.ribbon {
        Some(d) => (d.twist.as_ref().map(|t| t.v.clone()), Some(d.rho.clone())),
        None => (None, None),
    };
    PresentationFile::encode(&b.hopf, b.r.as_deref(), v.as_deref(), rho.as_deref(), Some(&b.labels)).to_json_string()
}

enum Inner {
    Q(Bundle<Rationals>),
    P(Bundle<PrimeField>),
    #[cfg(feature = "cyclotomic")]
    C(Bundle<Cyclotomic>),
}

macro_rules! dispatch {
    ($inner:expr, $b:ident => $body:expr) => {
        match $inner {
            Inner::Q($b) => $body,
            Inner::P($b) => $body,
            #[cfg(feature = "cyclotomic")]
            Inner::C($b) => $body,
        }
    };
}

fn load(spec: FieldSpec, preset: Option<&str>, path: Option<&PathBuf>) -> PyResult<Inner> {
    fn one<F: Field>(field: F, preset: Option<&str>, path: Option<&PathBuf>) -> hochmod::Result<Bundle<F>> {
        match (preset, path) {
            (Some(name), _) => Bundle::from_preset(name, &field),
            (None, Some(p)) => Bundle::from_file(p, &field),
            (None, None) => unreachable!("caller supplies one source"),
        }
    }
    let spec = spec.validate().map_err(|e| py_err(e.into()))?;
    Ok(match spec {
        FieldSpec::Rationals => Inner::Q(one(Rationals, preset, path).map_err(py_err)?),
        FieldSpec::Prime(p) => Inner::P(one(PrimeField::new(p).map_err(|e| py_err(e.into()))?, preset, path).map_err(py_err)?),
        #[cfg(feature = "cyclotomic")]
        FieldSpec::Cyclotomic(n) => Inner::C(one(Cyclotomic::new(n).map_err(|e| py_err(e.into()))?, preset, path).map_err(py_err)?),
        #[allow(unreachable_patterns)]
        other => return Err(PyValueError::new_err(format!("field {other} is not compiled in"))),
    })
}

fn parse_field(field: &str) -> PyResult<FieldSpec> {
    FieldSpec::parse(field).map_err(|e| py_err(e.into()))
}

/// A finite-dimensional Hopf algebra with optional R-matrix, verified on load.
#[pyclass(module = "hochmod_py")]
struct HopfAlgebra {
    inner: Inner,
    field: String,
}

#[pymethods]
impl HopfAlgebra {
    /// A built-in example over `field` (`Q`, `F5`, `cyclotomic-8`, ...).
    #[staticmethod]
    #[pyo3(signature = (name, field = "Q"))]
    fn preset(name: &str, field: &str) -> PyResult<Self> {
        let spec = parse_field(field)?;
        Ok(HopfAlgebra { inner: load(spec, Some(name), None)?, field: spec.to_string() })
    }

    /// A presentation file; the field defaults to the one it declares.
    #[staticmethod]
    #[pyo3(signature = (path, field = None))]
    fn from_file(path: PathBuf, field: Option<&str>) -> PyResult<Self> {
        let declared = PresentationFile::read(&path).and_then(|f| f.field_spec()).map_err(py_err)?;
        let spec = match field {
            Some(s) => parse_field(s)?,
            None => declared,
        };
        if spec != declared {
            return Err(PyValueError::new_err(format!("{} is over {declared}, not {spec}", path.display())));
        }
        Ok(HopfAlgebra { inner: load(spec, None, Some(&path))?, field: spec.to_string() })
    }

    #[getter]
    fn dim(&self) -> usize {
        dispatch!(&self.inner, b => b.hopf.dim())
    }

    #[getter]
    fn field(&self) -> String {
        self.field.clone()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        dispatch!(&self.inner, b => b.labels.clone())
    }

    /// Failed checks per verifier, plus why modular data is missing if it is.
    fn verify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        dispatch!(&self.inner, b => verify(py, b))
    }

    /// `dim HH^n(A, M)` for `n = 0..=degree`.
    #[pyo3(signature = (degree = 2, module = "regular"))]
    fn hh_dims(&self, py: Python<'_>, degree: usize, module: &str) -> PyResult<Vec<usize>> {
        py.detach(|| dispatch!(&self.inner, b => hh_dims(b, degree, module)))
    }

    /// Basis of the center, as coordinate strings.
    fn center(&self) -> Vec<Vec<String>> {
        dispatch!(&self.inner, b => center(b))
    }

    /// The induced S- and T-maps on `HH^degree(A, A)` and the scalars of
    /// their projective relations.
    #[pyo3(signature = (degree = 0))]
    fn modular(&self, py: Python<'_>, degree: usize) -> PyResult<Py<PyAny>> {
        dispatch!(&self.inner, b => modular(py, b, degree))
    }

    /// Image of a class under `[[a, b], [c, d]]` in `SL(2, Z)`.
    #[pyo3(signature = (matrix, class_, degree = 0))]
    fn act(&self, matrix: [[i64; 2]; 2], class_: Vec<String>, degree: usize) -> PyResult<(Vec<String>, String)> {
        dispatch!(&self.inner, b => apply_sl2z(b, matrix, &class_, degree))
    }

    /// The presentation file text.
    fn export(&self) -> String {
        dispatch!(&self.inner, b => export(b))
    }

    fn __repr__(&self) -> String {
        let name = dispatch!(&self.inner, b => b.provenance.input.clone());
        format!("HopfAlgebra({name}, dim={}, field={})", self.dim(), self.field)
    }
}

/// Names of the built-in examples.
#[pyfunction]
fn presets() -> Vec<&'static str> {
    PRESETS.to_vec()
}

/// A word in `s`, `t` and their inverses multiplying to `matrix`.
#[pyfunction]
fn sl2z_decompose(matrix: [[i64; 2]; 2]) -> PyResult<Vec<String>> {
    Ok(sl2z_word(matrix).map_err(py_err)?.iter().map(|l| l.to_string()).collect())
}

/// Runs the command line with `args` (without the program name) and
/// returns the exit code and the parsed report.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> PyResult<(i32, Py<PyAny>)> {
    use hochmod::cli::{execute, Cli};
    let cli = <Cli as clap::Parser>::try_parse_from(std::iter::once("hochmod".to_string()).chain(args))
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let out = py.detach(|| execute(&cli));
    Ok((out.code, py.import("json")?.call_method1("loads", (out.report,))?.unbind()))
}

#[pymodule]
fn hochmod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<HopfAlgebra>()?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(sl2z_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
