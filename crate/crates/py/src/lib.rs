//! Python bindings. Scalars cross the boundary as strings in the `num / den`
//! text form; reports come back as plain dicts and lists.

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qcoideal::catalog::{self, find_entry, load_catalog, verify_all};
use qcoideal::expr::{parse_element, print_monomial, Substitution};
use qcoideal::hopf::coproduct;
use qcoideal::json::{element_from_str, element_to_string};
use qcoideal::leading::{e_degrees, eta_split, f_degrees, reduce_system};
use qcoideal::rcs::{homogeneous_rcs as build_homogeneous, Lattice};
use qcoideal::repr::build_simple_module;
use qcoideal::subalgebra::{is_right_coideal, torus_check, GeneratorSet};
use qcoideal::{Algebra, QRat, RootSystem, SystemKind, UElement, WeylWord};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system_of(s: &str) -> PyResult<SystemKind> {
    s.parse().map_err(err)
}

fn substitution(system: SystemKind, subs: Option<HashMap<String, String>>) -> PyResult<Substitution> {
    let mut out = Substitution::new();
    for (k, v) in subs.unwrap_or_default() {
        // the `num / den` text form first, then any scalar expression
        let c = match v.parse::<QRat>() {
            Ok(c) => c,
            Err(_) => parse_element(system, &v, &Substitution::new())
                .map_err(err)?
                .as_scalar()
                .ok_or_else(|| err(format!("parameter {k} is not a scalar")))?,
        };
        out.insert(k, c);
    }
    Ok(out)
}

fn generator_set(system: SystemKind, gens: &[String], subs: &Substitution) -> PyResult<GeneratorSet> {
    let gens = gens
        .iter()
        .map(|g| parse_element(system, g, subs))
        .collect::<qcoideal::Result<Vec<_>>>()
        .map_err(err)?;
    GeneratorSet::new("input", gens).map_err(err)
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Element of U_q(sl2) (system "A1") or U_q(sl3) (system "A2") in PBW normal form.
#[pyclass(name = "Element", module = "qcoideal_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: UElement,
}

impl PyElement {
    fn wrap(inner: UElement) -> PyElement {
        PyElement { inner }
    }

    fn alg(&self) -> &'static Algebra {
        Algebra::get(self.inner.system())
    }
}

#[pymethods]
impl PyElement {
    #[new]
    #[pyo3(signature = (text, system = "A2", subs = None))]
    fn new(text: &str, system: &str, subs: Option<HashMap<String, String>>) -> PyResult<Self> {
        let sys = system_of(system)?;
        let subs = substitution(sys, subs)?;
        parse_element(sys, text, &subs).map(PyElement::wrap).map_err(err)
    }

    #[getter]
    fn system(&self) -> String {
        self.inner.system().to_string()
    }

    #[getter]
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?}, system={:?})", self.inner.to_string(), self.system())
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.inner.try_add(&other.inner).map(PyElement::wrap).map_err(err)
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.inner.try_add(&(-&other.inner)).map(PyElement::wrap).map_err(err)
    }

    fn __neg__(&self) -> PyElement {
        PyElement::wrap(-&self.inner)
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        self.alg()
            .multiply(&self.inner, &other.inner)
            .map(PyElement::wrap)
            .map_err(err)
    }

    /// xy − c·yx.
    #[pyo3(signature = (other, c = "1"))]
    fn q_commutator(&self, other: &PyElement, c: &str) -> PyResult<PyElement> {
        let c = parse_element(self.inner.system(), c, &Substitution::new())
            .map_err(err)?
            .as_scalar()
            .ok_or_else(|| err("c is not a scalar"))?;
        self.alg()
            .q_commutator(&self.inner, &other.inner, &c)
            .map(PyElement::wrap)
            .map_err(err)
    }

    /// The scalar value, or None when the element is not a multiple of 1.
    fn scalar(&self) -> Option<String> {
        self.inner.as_scalar().map(|c| c.to_string())
    }

    fn counit(&self) -> String {
        self.inner.counit().to_string()
    }

    /// Coproduct as a list of (coefficient, left, right) triples.
    fn coproduct(&self) -> PyResult<Vec<(String, String, String)>> {
        let t = coproduct(&self.inner).map_err(err)?;
        let sys = self.inner.system();
        Ok(t.terms()
            .iter()
            .map(|((l, r), c)| (c.to_string(), print_monomial(sys, l), print_monomial(sys, r)))
            .collect())
    }

    /// (U≥0 part, U≤0 part, mixed part).
    fn parts(&self) -> (PyElement, PyElement, PyElement) {
        let (a, b, c) = self.inner.parts();
        (PyElement::wrap(a), PyElement::wrap(b), PyElement::wrap(c))
    }

    fn omega(&self) -> PyResult<PyElement> {
        self.alg().omega(&self.inner).map(PyElement::wrap).map_err(err)
    }

    fn antipode(&self) -> PyResult<PyElement> {
        self.alg().antipode(&self.inner).map(PyElement::wrap).map_err(err)
    }

    fn e_degrees(&self) -> Vec<String> {
        e_degrees(&self.inner).iter().map(|w| w.to_string()).collect()
    }

    fn f_degrees(&self) -> Vec<String> {
        f_degrees(&self.inner).iter().map(|w| w.to_string()).collect()
    }

    fn eta_split(&self) -> HashMap<String, PyElement> {
        eta_split(&self.inner)
            .into_iter()
            .map(|(eta, p)| (eta.to_string(), PyElement::wrap(p)))
            .collect()
    }

    fn to_json(&self) -> String {
        element_to_string(&self.inner)
    }

    #[staticmethod]
    #[pyo3(signature = (text, system = "A2"))]
    fn from_json(text: &str, system: &str) -> PyResult<PyElement> {
        element_from_str(system_of(system)?, text)
            .map(PyElement::wrap)
            .map_err(err)
    }
}

/// Bounded-degree right coideal check; returns a dict with `status`, `witnesses` and `torus_subhopf`.
#[pyfunction]
#[pyo3(signature = (gens, system = "A2", degree = 3, margin = catalog::DEFAULT_MARGIN, subs = None))]
fn check(
    py: Python<'_>,
    gens: Vec<String>,
    system: &str,
    degree: usize,
    margin: usize,
    subs: Option<HashMap<String, String>>,
) -> PyResult<Py<PyAny>> {
    let sys = system_of(system)?;
    let z = generator_set(sys, &gens, &substitution(sys, subs)?)?;
    let (report, torus) = py.detach(|| (is_right_coideal(&z, degree, margin), torus_check(&z, degree, margin)));
    let witnesses: Vec<serde_json::Value> = report
        .witnesses
        .iter()
        .map(|w| {
            serde_json::json!({
                "element": w.element.to_string(),
                "right_leg": print_monomial(sys, &w.right_leg),
                "left": w.left.to_string(),
            })
        })
        .collect();
    to_py(
        py,
        &serde_json::json!({
            "status": report.status,
            "checked": report.checked,
            "witnesses": witnesses,
            "torus_subhopf": torus.is_subhopf(),
        }),
    )
}

/// Removes mixed leading terms; returns the new generators.
#[pyfunction]
#[pyo3(signature = (gens, system = "A2", degree = 3, subs = None))]
fn reduce(
    gens: Vec<String>,
    system: &str,
    degree: usize,
    subs: Option<HashMap<String, String>>,
) -> PyResult<Vec<String>> {
    let sys = system_of(system)?;
    let z = generator_set(sys, &gens, &substitution(sys, subs)?)?;
    let r = reduce_system(&z, degree).map_err(err)?;
    Ok(r.gens.gens().iter().map(|g| g.to_string()).collect())
}

/// Generators of U⁺[w⁺]·T_L·U⁻[w⁻]; words like "sa sb", lattice generators like "2a".
#[pyfunction]
fn homogeneous_rcs(system: &str, wplus: &str, lattice: Vec<String>, wminus: &str) -> PyResult<Vec<String>> {
    let sys = system_of(system)?;
    let rs = RootSystem::get(sys);
    let basis = lattice
        .iter()
        .map(|w| rs.parse_weight(w))
        .collect::<qcoideal::Result<Vec<_>>>()
        .map_err(err)?;
    let wp = WeylWord::parse(wplus).map_err(err)?;
    let wm = WeylWord::parse(wminus).map_err(err)?;
    let z = build_homogeneous(sys, &wp, &Lattice::generated_by(&basis), &wm).map_err(err)?;
    Ok(z.gens().iter().map(|g| g.to_string()).collect())
}

#[pyfunction]
fn catalog_ids() -> PyResult<Vec<String>> {
    Ok(load_catalog().map_err(err)?.into_iter().map(|e| e.id).collect())
}

/// Verification reports for every instantiation of one catalog entry.
#[pyfunction]
#[pyo3(signature = (id, degree = 3))]
fn verify_entry(py: Python<'_>, id: &str, degree: usize) -> PyResult<Py<PyAny>> {
    let entries = load_catalog().map_err(err)?;
    let entry = find_entry(&entries, id).map_err(err)?;
    let reports = py.detach(|| verify_all(std::slice::from_ref(&entry), degree));
    to_py(py, &serde_json::to_value(&reports).map_err(err)?)
}

/// Matrices of the given A1 elements on the simple module L(m), entries as strings.
#[pyfunction]
#[pyo3(signature = (m, gens, subs = None))]
fn repr_matrices(
    m: usize,
    gens: Vec<String>,
    subs: Option<HashMap<String, String>>,
) -> PyResult<Vec<Vec<Vec<String>>>> {
    let subs = substitution(SystemKind::A1, subs)?;
    let module = build_simple_module(m);
    gens.iter()
        .map(|g| {
            let x = parse_element(SystemKind::A1, g, &subs).map_err(err)?;
            let mat = module.matrix_of(&x).map_err(err)?;
            Ok(mat
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect())
        })
        .collect()
}

#[pyfunction]
fn borel_constant() -> String {
    catalog::borel_constant().to_string()
}

#[pymodule]
fn qcoideal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(homogeneous_rcs, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify_entry, m)?)?;
    m.add_function(wrap_pyfunction!(repr_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(borel_constant, m)?)?;
    Ok(())
}
