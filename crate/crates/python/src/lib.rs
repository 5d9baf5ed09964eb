use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use actkit::act::{decompose_indecomposable, tensor};
use actkit::bicyclic::left_divisors;
use actkit::colimit::{colimit, directed_colimit, DirectSystem};
use actkit::congruence::all_congruences;
use actkit::corpus::{generate_corpus, CorpusSpec};
use actkit::cover;
use actkit::flatness::check_class;
use actkit::purity::{is_n_pure, is_pure_epi};
use actkit::{json, suite, ActMap, BicyclicElement, ClassId, Congruence, FiniteAct, FiniteMonoid, Verdict};

fn err(e: actkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn class(name: &str) -> PyResult<ClassId> {
    name.parse().map_err(err)
}

#[pyclass(name = "Monoid", frozen, from_py_object)]
#[derive(Clone)]
struct PyMonoid(Arc<FiniteMonoid>);

#[pymethods]
impl PyMonoid {
    #[new]
    #[pyo3(signature = (table, identity = 0))]
    fn new(table: Vec<Vec<usize>>, identity: usize) -> PyResult<Self> {
        Ok(PyMonoid(Arc::new(FiniteMonoid::new(table, identity).map_err(err)?)))
    }

    /// A monoid from a named builder such as `"cyclic_group"` with `[3]`.
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new()))]
    fn standard(name: &str, params: Vec<usize>) -> PyResult<Self> {
        Ok(PyMonoid(Arc::new(actkit::monoid::standard_monoid(name, &params).map_err(err)?)))
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.0.identity()
    }

    fn mul(&self, s: usize, t: usize) -> PyResult<usize> {
        if s >= self.0.size() || t >= self.0.size() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.0.mul(s, t))
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn is_group(&self) -> bool {
        self.0.is_group()
    }

    fn is_inverse(&self) -> bool {
        self.0.is_inverse_monoid().is_ok()
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }

    fn idempotents(&self) -> Vec<usize> {
        self.0.elements().filter(|&e| self.0.mul(e, e) == e).collect()
    }

    /// Class labels of the least congruence with a group quotient.
    fn min_group_congruence(&self) -> PyResult<Vec<usize>> {
        Ok(self.0.min_group_congruence().map_err(err)?.class_map().to_vec())
    }

    fn to_json(&self) -> String {
        json::to_value(&json::monoid_to_doc(&self.0)).to_string()
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Monoid(size={}, identity={})", self.0.size(), self.0.identity())
    }
}

#[pyclass(name = "Act", frozen, from_py_object)]
#[derive(Clone)]
struct PyAct(Arc<FiniteAct>);

#[pymethods]
impl PyAct {
    /// `action[a][s]` is `a.s`.
    #[new]
    fn new(monoid: &PyMonoid, action: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyAct(Arc::new(FiniteAct::new(&monoid.0, action).map_err(err)?)))
    }

    #[staticmethod]
    fn regular(monoid: &PyMonoid) -> Self {
        PyAct(Arc::new(FiniteAct::regular(&monoid.0)))
    }

    #[staticmethod]
    fn theta(monoid: &PyMonoid) -> Self {
        PyAct(Arc::new(FiniteAct::theta(&monoid.0)))
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn monoid(&self) -> PyMonoid {
        PyMonoid(self.0.monoid().clone())
    }

    fn act(&self, a: usize, s: usize) -> PyResult<usize> {
        if a >= self.0.size() || s >= self.0.monoid().size() {
            return Err(PyValueError::new_err("element out of range"));
        }
        Ok(self.0.act(a, s))
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.0.rows()
    }

    fn fixed_points(&self) -> Vec<usize> {
        self.0.fixed_points()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        decompose_indecomposable(&self.0).components
    }

    /// Membership in one of `Pr`, `SF`, `CP`, `E`, `LC`.
    fn in_class(&self, name: &str) -> PyResult<bool> {
        Ok(check_class(&self.0, class(name)?).holds())
    }

    /// `None` when the act is in the class, otherwise the witness as JSON.
    fn check(&self, name: &str) -> PyResult<Option<String>> {
        Ok(match check_class(&self.0, class(name)?) {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(json::to_value(&w).to_string()),
        })
    }

    /// Number of classes of `self ⊗ left`, with `left` a right act over the
    /// opposite monoid.
    fn tensor_size(&self, left: &PyAct) -> PyResult<usize> {
        Ok(tensor(&self.0, &left.0).map_err(err)?.classes)
    }

    fn to_json(&self) -> String {
        json::to_value(&json::act_to_doc(&self.0)).to_string()
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __repr__(&self) -> String {
        format!("Act(size={}, monoid_size={})", self.0.size(), self.0.monoid().size())
    }
}

#[pyclass(name = "Map", frozen, from_py_object)]
#[derive(Clone)]
struct PyMap(ActMap);

#[pymethods]
impl PyMap {
    #[new]
    fn new(domain: &PyAct, codomain: &PyAct, values: Vec<usize>) -> PyResult<Self> {
        Ok(PyMap(ActMap::new(&domain.0, &codomain.0, values).map_err(err)?))
    }

    #[getter]
    fn domain(&self) -> PyAct {
        PyAct(self.0.domain().clone())
    }

    #[getter]
    fn codomain(&self) -> PyAct {
        PyAct(self.0.codomain().clone())
    }

    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    fn is_epi(&self) -> bool {
        self.0.is_epi()
    }

    fn is_mono(&self) -> bool {
        self.0.is_mono()
    }

    /// Full purity by default; `n`-purity when `n` is given.
    #[pyo3(signature = (n = None))]
    fn is_pure(&self, n: Option<usize>) -> PyResult<bool> {
        let verdict = match n {
            Some(n) => is_n_pure(&self.0, n),
            None => is_pure_epi(&self.0),
        };
        Ok(verdict.map_err(err)?.holds())
    }

    fn is_cover(&self, name: &str) -> PyResult<bool> {
        Ok(cover::is_cover(&self.0, class(name)?).map_err(err)?.holds())
    }

    fn then(&self, next: &PyMap) -> PyResult<PyMap> {
        Ok(PyMap(self.0.then(&next.0).map_err(err)?))
    }

    fn to_json(&self) -> String {
        json::to_value(&json::map_to_doc(&self.0)).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Map({:?})", self.0.values())
    }
}

#[pyfunction]
fn homs(x: &PyAct, y: &PyAct) -> PyResult<Vec<PyMap>> {
    Ok(actkit::hom::homs(&x.0, &y.0).map_err(err)?.into_iter().map(PyMap).collect())
}

#[pyfunction]
fn is_isomorphic(x: &PyAct, y: &PyAct) -> bool {
    actkit::hom::find_iso(&x.0, &y.0).is_some()
}

/// Every congruence of the act, as class label vectors.
#[pyfunction]
fn congruences(act: &PyAct) -> PyResult<Vec<Vec<usize>>> {
    Ok(all_congruences(&act.0).map_err(err)?.iter().map(|c| c.class_map().to_vec()).collect())
}

/// The quotient by the congruence generated by `pairs`, with its projection.
#[pyfunction]
fn quotient(act: &PyAct, pairs: Vec<(usize, usize)>) -> PyResult<(PyAct, PyMap)> {
    let rho = Congruence::generated(&act.0, &pairs).map_err(err)?;
    let (q, f) = rho.quotient_act();
    Ok((PyAct(q), PyMap(f)))
}

#[pyfunction]
fn find_cover(act: &PyAct, name: &str) -> PyResult<PyMap> {
    Ok(PyMap(cover::find_cover(&act.0, class(name)?).map_err(err)?.map))
}

/// Colimit of the chain `A0 -> A1 -> ...` given by consecutive maps, with
/// the directed formula checked against the generated congruence.
#[pyfunction]
fn chain_colimit(maps: Vec<PyMap>) -> PyResult<(PyAct, Vec<PyMap>)> {
    let maps: Vec<ActMap> = maps.into_iter().map(|m| m.0).collect();
    let system = DirectSystem::chain(&maps).map_err(err)?;
    let cone = directed_colimit(&system).map_err(err)?;
    if actkit::hom::find_iso(&colimit(&system).map_err(err)?.apex, &cone.apex).is_none() {
        return Err(PyValueError::new_err("colimit constructions disagree"));
    }
    Ok((PyAct(cone.apex), cone.legs.into_iter().map(PyMap).collect()))
}

/// Runs a named suite and returns the JSON report. Without `corpus` the
/// default corpus is generated.
#[pyfunction]
#[pyo3(signature = (suite_id, corpus = None))]
fn run_suite(py: Python<'_>, suite_id: &str, corpus: Option<&str>) -> PyResult<String> {
    let report = py.detach(|| {
        let corpus = match corpus {
            Some(path) => json::read_corpus(std::path::Path::new(path))?,
            None => generate_corpus(&CorpusSpec::default())?,
        };
        suite::run_suite(suite_id, &corpus)
    });
    Ok(json::to_value(&report.map_err(err)?).to_string())
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    suite::SUITES.to_vec()
}

/// Every `(p, q)` with `(p, q)(s, t) = (m, n)` in the bicyclic monoid.
#[pyfunction]
#[pyo3(signature = (m, n, s, t, search_bound = None))]
fn bicyclic_left_divisors(m: u64, n: u64, s: u64, t: u64, search_bound: Option<u64>) -> PyResult<Vec<(u64, u64)>> {
    let bound = search_bound.unwrap_or(m.max(n) + s.max(t));
    let found = left_divisors(&BicyclicElement::new(m, n), &BicyclicElement::new(s, t), bound).map_err(err)?;
    found
        .into_iter()
        .map(|x| {
            let p = u64::try_from(&x.p).map_err(|e| PyValueError::new_err(e.to_string()))?;
            let q = u64::try_from(&x.q).map_err(|e| PyValueError::new_err(e.to_string()))?;
            Ok((p, q))
        })
        .collect()
}

#[pymodule]
fn actkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMonoid>()?;
    m.add_class::<PyAct>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(homs, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(congruences, m)?)?;
    m.add_function(wrap_pyfunction!(quotient, m)?)?;
    m.add_function(wrap_pyfunction!(find_cover, m)?)?;
    m.add_function(wrap_pyfunction!(chain_colimit, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(bicyclic_left_divisors, m)?)?;
    Ok(())
}
