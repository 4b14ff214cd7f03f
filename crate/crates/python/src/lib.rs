use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use pdakit_core::constructions::{self, ConstructionSpec, Family, NamedDesign};
use pdakit_core::designs::resolve_design;
use pdakit_core::pda::{self, Entry, Orientation, PdaParams};
use pdakit_core::sim::{verify_scheme, FileLibrary, VerifyMode, DEFAULT_PACKET_SIZE, DEFAULT_SEED};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn loads<'py>(py: Python<'py>, json: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

/// A placement delivery array.
#[pyclass(name = "Pda", module = "pdakit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPda(pda::Pda);

#[pymethods]
impl PyPda {
    /// Build from a header (K, F, Q, S) and rows of symbols, with None for stars.
    #[new]
    fn new(k: usize, f: usize, q: usize, s: usize, rows: Vec<Vec<Option<u32>>>) -> PyResult<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|e| e.map_or(Entry::Star, Entry::Symbol)).collect())
            .collect();
        pda::Pda::new(PdaParams::new(k, f, q, s), rows).map(Self).map_err(value_error)
    }

    /// Parse the text grid or the JSON envelope.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        pda::Pda::parse(text).map(Self).map_err(value_error)
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn f(&self) -> usize {
        self.0.f()
    }

    #[getter]
    fn q(&self) -> usize {
        self.0.q()
    }

    #[getter]
    fn s(&self) -> usize {
        self.0.s()
    }

    fn rows(&self) -> Vec<Vec<Option<u32>>> {
        (0..self.0.f()).map(|j| self.0.row(j).iter().map(|e| e.symbol()).collect()).collect()
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    /// Raise ValueError naming the first violated condition.
    fn validate(&self) -> PyResult<()> {
        self.0.validate().map(|_| ()).map_err(value_error)
    }

    /// Memory ratio M/N as a fraction string.
    #[getter]
    fn memory_ratio(&self) -> String {
        self.0.scheme_parameters().memory_ratio.to_string()
    }

    /// Transmission rate R = S/F as a fraction string.
    #[getter]
    fn rate(&self) -> String {
        self.0.scheme_parameters().rate.to_string()
    }

    fn canonical(&self) -> Self {
        Self(self.0.canonical())
    }

    fn equivalent(&self, other: &Self) -> bool {
        self.0.equivalent(&other.0)
    }

    fn product(&self, other: &Self) -> PyResult<Self> {
        pda::direct_product(&self.0, &other.0).map(Self).map_err(value_error)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Pda({})", self.0.params())
    }
}

#[allow(clippy::too_many_arguments)]
fn family(
    name: &str,
    q: Option<u32>,
    k: Option<usize>,
    m: Option<usize>,
    t: Option<usize>,
    design: Option<String>,
    t0: Option<usize>,
    t1: Option<usize>,
    t2: Option<usize>,
) -> PyResult<Family> {
    fn need<T>(v: Option<T>, flag: &str, name: &str) -> PyResult<T> {
        v.ok_or_else(|| PyValueError::new_err(format!("{name} requires {flag}")))
    }
    let named = |spec: Option<String>| -> PyResult<NamedDesign> {
        let spec = need(spec, "design", name)?;
        let d = resolve_design(&spec).map_err(value_error)?;
        Ok(NamedDesign::new(spec, d))
    };
    Ok(match name {
        "pg" => Family::ProjectiveGeometry {
            q: need(q, "q", name)?,
            k: need(k, "k", name)?,
            m: need(m, "m", name)?,
            t: need(t, "t", name)?,
        },
        "config" => Family::Configuration { design: named(design)? },
        "tdesign-a" => Family::TDesignA { design: named(design)?, t0: need(t0, "t0", name)? },
        "tdesign-b" => Family::TDesignB { design: named(design)?, t1: need(t1, "t1", name)?, t2: need(t2, "t2", name)? },
        "tdesign-lambda" => {
            let (t1, t2) = (need(t1, "t1", name)?, need(t2, "t2", name)?);
            Family::TDesignLambda { design: named(design)?, t0: t0.unwrap_or(t1 + t2), t1, t2 }
        }
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    })
}

/// Construct a PDA; returns (pda, parameter row as dict).
#[pyfunction]
#[pyo3(signature = (name, set=1, *, q=None, k=None, m=None, t=None, design=None, t0=None, t1=None, t2=None))]
#[allow(clippy::too_many_arguments)]
fn construct<'py>(
    py: Python<'py>,
    name: &str,
    set: u8,
    q: Option<u32>,
    k: Option<usize>,
    m: Option<usize>,
    t: Option<usize>,
    design: Option<String>,
    t0: Option<usize>,
    t1: Option<usize>,
    t2: Option<usize>,
) -> PyResult<(PyPda, Bound<'py, PyAny>)> {
    let fam = family(name, q, k, m, t, design, t0, t1, t2)?;
    let orientation = Orientation::from_index(set).ok_or_else(|| PyValueError::new_err("set must be 1, 2 or 3"))?;
    let c = constructions::construct(&ConstructionSpec::new(fam, orientation)).map_err(value_error)?;
    let row = loads(py, &c.row.to_json().to_string())?;
    Ok((PyPda(c.pda), row))
}

/// Closed-form rows for PG(q) over an inclusive range of ambient dimensions.
#[pyfunction]
fn tabulate_pg<'py>(py: Python<'py>, q: u32, k_min: usize, k_max: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let rows = constructions::tabulate_pg(q, k_min..=k_max).map_err(value_error)?;
    rows.iter().map(|r| loads(py, &r.to_json().to_string())).collect()
}

/// Closed-form rows for a design-based family.
#[pyfunction]
fn tabulate_design<'py>(py: Python<'py>, name: &str, design: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let d = NamedDesign::new(design, resolve_design(design).map_err(value_error)?);
    let rows = constructions::tabulate_design(name, &d).map_err(value_error)?;
    rows.iter().map(|r| loads(py, &r.to_json().to_string())).collect()
}

/// Resolve a design spec (catalog name, complete:v:k, sts:v, td:k:n, or path) to a dict.
#[pyfunction]
fn design<'py>(py: Python<'py>, spec: &str) -> PyResult<Bound<'py, PyAny>> {
    loads(py, &resolve_design(spec).map_err(value_error)?.to_json())
}

/// Run the coded caching scheme and return the verification report as a dict.
#[pyfunction]
#[pyo3(signature = (p, files=None, mode="auto", samples=200, seed=DEFAULT_SEED, packet_size=DEFAULT_PACKET_SIZE))]
fn simulate<'py>(
    py: Python<'py>,
    p: &PyPda,
    files: Option<usize>,
    mode: &str,
    samples: usize,
    seed: u64,
    packet_size: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match mode {
        "auto" => VerifyMode::Auto { samples, seed },
        "exhaustive" => VerifyMode::Exhaustive,
        "sampled" => VerifyMode::Sampled { samples, seed },
        "adversarial" => VerifyMode::Adversarial,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let n = files.unwrap_or(p.0.k().min(4));
    let lib = FileLibrary::random(n, p.0.f(), packet_size, seed).map_err(value_error)?;
    let report = py
        .detach(|| verify_scheme(&p.0, &lib, mode))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(loads(py, &report.to_json())?.cast_into::<PyDict>()?)
}

#[pymodule]
fn pdakit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPda>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(tabulate_pg, m)?)?;
    m.add_function(wrap_pyfunction!(tabulate_design, m)?)?;
    m.add_function(wrap_pyfunction!(design, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
