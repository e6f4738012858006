//! Python module `codegree`: presentations, catalog groups, character
//! tables, the closed-form codegree formulas and the verification suites.
//!
//! Structured results (reports, profiles, verification output) are returned
//! as plain dicts and lists decoded from the library's JSON.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use codeg::catalog::{self, BuildOptions, GroupId};
use codeg::chartab;
use codeg::formulas;
use codeg::pc::{self, StructuralProfile};
use codeg::verify::{self, Format, MethodChoice, RunConfig, Suite};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn from_json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A power-commutator presentation over `p` with `n` generators.
#[pyclass(module = "codegree", skip_from_py_object)]
#[derive(Clone)]
struct Presentation {
    inner: pc::PcPresentation,
}

#[pymethods]
impl Presentation {
    #[new]
    fn new(p: u32, n: usize) -> PyResult<Self> {
        Ok(Presentation {
            inner: pc::PcPresentation::new(p, n).map_err(err)?,
        })
    }

    /// Parses the presentation JSON format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Presentation {
            inner: pc::PcPresentation::from_json_str(text).map_err(err)?,
        })
    }

    /// The catalog presentation of `family` at `p`.
    #[staticmethod]
    #[pyo3(signature = (family, p, allow_p3 = false))]
    fn from_catalog(family: &str, p: u32, allow_p3: bool) -> PyResult<Self> {
        let id = GroupId::parse(family, p).map_err(err)?;
        Ok(Presentation {
            inner: catalog::build(&id, BuildOptions { allow_p3 }).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Sets `g_i^p` to the normal form with exponent vector `rhs`.
    fn set_power(&mut self, i: usize, rhs: Vec<u32>) -> PyResult<()> {
        self.inner.set_power(i, rhs).map_err(err)
    }

    /// Sets `[g_j, g_i]` (`j > i`) to the normal form with exponents `rhs`.
    fn set_commutator(&mut self, j: usize, i: usize, rhs: Vec<u32>) -> PyResult<()> {
        self.inner.set_commutator(j, i, rhs).map_err(err)
    }

    fn direct_product(&self, other: &Presentation) -> PyResult<Self> {
        Ok(Presentation {
            inner: self.inner.direct_product(&other.inner).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.generator_count()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Presentation(p={}, n={})", self.inner.p(), self.inner.generator_count())
    }
}

/// A finite p-group built from a consistent presentation.
#[pyclass(module = "codegree")]
struct Group {
    inner: pc::PcGroup,
    name: String,
}

#[pymethods]
impl Group {
    #[new]
    #[pyo3(signature = (presentation, order_guard = pc::DEFAULT_ORDER_GUARD))]
    fn new(presentation: &Presentation, order_guard: u64) -> PyResult<Self> {
        Ok(Group {
            inner: pc::PcGroup::new(presentation.inner.clone(), order_guard).map_err(err)?,
            name: "presentation".into(),
        })
    }

    /// A catalog group such as `"phi2_31"` or `"abelian:2,1"`.
    #[staticmethod]
    #[pyo3(signature = (family, p, allow_p3 = false, order_guard = pc::DEFAULT_ORDER_GUARD))]
    fn from_catalog(family: &str, p: u32, allow_p3: bool, order_guard: u64) -> PyResult<Self> {
        let id = GroupId::parse(family, p).map_err(err)?;
        let inner = catalog::build_group(&id, BuildOptions { allow_p3 }, order_guard).map_err(err)?;
        Ok(Group {
            inner,
            name: id.family.to_string(),
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn nilpotency_class(&self) -> u32 {
        self.inner.nilpotency_class()
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    /// Center type, derived type, class count and the VZ, extraspecial and
    /// Camina flags, as a dict.
    fn profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let profile = py.detach(|| StructuralProfile::of(&self.inner)).map_err(err)?;
        from_json(py, &serde_json::to_string(&profile).map_err(err)?)
    }

    fn is_vz(&self, py: Python<'_>) -> bool {
        py.detach(|| formulas::is_vz(&self.inner, None))
    }

    fn is_extraspecial(&self) -> bool {
        formulas::is_extraspecial(&self.inner)
    }

    /// `cod(G)` by the closed forms; raises `ValueError` when none applies.
    fn codegrees_formula(&self, py: Python<'_>) -> PyResult<Vec<u64>> {
        Ok(py.detach(|| formulas::codegrees_formula(&self.inner)).map_err(err)?.cod)
    }

    /// `cod(G)` read off the character table.
    #[pyo3(signature = (seed = 0))]
    fn codegrees_bruteforce(&self, py: Python<'_>, seed: u64) -> PyResult<Vec<u64>> {
        let table = py.detach(|| chartab::character_table(&self.inner, seed)).map_err(err)?;
        Ok(table.codegree_set())
    }

    /// Formula and brute-force reports with provenance, as a dict.
    #[pyo3(signature = (method = "both", seed = 0))]
    fn compute<'py>(&self, py: Python<'py>, method: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let config = RunConfig {
            seed,
            method: method.parse::<MethodChoice>().map_err(err)?,
            ..RunConfig::default()
        };
        let out = py
            .detach(|| verify::compute_group(&self.inner, self.name.clone(), &config))
            .map_err(err)?;
        from_json(py, &out.render(Format::Json))
    }

    #[pyo3(signature = (seed = 0))]
    fn character_table(&self, py: Python<'_>, seed: u64) -> PyResult<CharacterTable> {
        let inner = py.detach(|| chartab::character_table(&self.inner, seed)).map_err(err)?;
        Ok(CharacterTable { inner })
    }

    fn __repr__(&self) -> String {
        format!("Group({}, p={}, order={})", self.name, self.inner.p(), self.inner.order())
    }
}

/// Character table with exact cyclotomic values.
#[pyclass(module = "codegree")]
struct CharacterTable {
    inner: chartab::CharacterTable,
}

#[pymethods]
impl CharacterTable {
    fn __len__(&self) -> usize {
        self.inner.rows().len()
    }

    fn degrees(&self) -> Vec<u64> {
        self.inner.degrees()
    }

    /// Codegree of each row, in row order.
    fn codegrees(&self) -> Vec<u64> {
        self.inner.rows().iter().map(|r| r.codegree).collect()
    }

    fn codegree_set(&self) -> Vec<u64> {
        self.inner.codegree_set()
    }

    fn class_sizes(&self) -> Vec<usize> {
        self.inner.classes().sizes()
    }

    /// `None` when all rows are orthogonal, else the first failing pair.
    fn check_orthogonality(&self, py: Python<'_>) -> Option<(usize, usize)> {
        py.detach(|| self.inner.check_orthogonality())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_json(py, &self.inner.to_json())
    }
}

/// Catalog templates and expected-value rows, as a list of dicts.
#[pyfunction]
fn catalog_entries(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    from_json(py, &catalog::catalog_json())
}

/// Published `cod(G)` for a catalog group, or `None`.
#[pyfunction]
fn expected_codegrees(family: &str, p: u32) -> PyResult<Option<Vec<u64>>> {
    let id = GroupId::parse(family, p).map_err(err)?;
    Ok(verify::expected_for(&id))
}

#[pyfunction]
fn cod_abelian(p: u32, parts: Vec<u32>) -> PyResult<Vec<u64>> {
    Ok(formulas::cod_abelian(p, &parts).map_err(err)?.cod)
}

#[pyfunction]
fn cod_extraspecial(p: u32, order: u64) -> PyResult<Vec<u64>> {
    Ok(formulas::cod_extraspecial(p, order).map_err(err)?.cod)
}

#[pyfunction]
fn quadratic_nonresidue(p: u32) -> PyResult<u32> {
    catalog::quadratic_nonresidue(p).map_err(err)
}

/// Runs a verification suite (`p3`, `p4`, `p5`, `3groups` or `all`).
#[pyfunction]
#[pyo3(signature = (suite, primes = None, method = "both", seed = 0, supply = None))]
fn verify_suite<'py>(
    py: Python<'py>,
    suite: &str,
    primes: Option<Vec<u32>>,
    method: &str,
    seed: u64,
    supply: Option<BTreeMap<String, std::path::PathBuf>>,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let config = RunConfig {
        seed,
        primes,
        method: method.parse::<MethodChoice>().map_err(err)?,
        supplied: supply.unwrap_or_default(),
        ..RunConfig::default()
    };
    let result = py.detach(|| verify::verify(suite, &config));
    from_json(py, &result.to_json())
}

#[pymodule]
fn codegree(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Group>()?;
    m.add_class::<CharacterTable>()?;
    m.add_function(wrap_pyfunction!(catalog_entries, m)?)?;
    m.add_function(wrap_pyfunction!(expected_codegrees, m)?)?;
    m.add_function(wrap_pyfunction!(cod_abelian, m)?)?;
    m.add_function(wrap_pyfunction!(cod_extraspecial, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_nonresidue, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
