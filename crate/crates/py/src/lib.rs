//! Python bindings. Terms cross the boundary as strings in the usual
//! `w(x,y,z)` syntax; reports cross as JSON text.

use std::collections::HashMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wnu_core::maltsev::{self, parse_condition, MaltsevCondition, Slemc};
use wnu_core::{ClosureBudget, NormalTerm, PairGeneratorSet};

create_exception!(pywnu, WnuError, PyValueError);

fn err(e: wnu_core::Error) -> PyErr {
    WnuError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn condition(text: &str) -> PyResult<MaltsevCondition> {
    parse_condition(text).map_err(err)
}

fn budget(max_w: u64, max_rounds: usize, max_pairs: usize) -> ClosureBudget {
    ClosureBudget {
        max_rounds,
        max_pairs,
        max_w_per_coordinate: max_w,
    }
}

/// The free algebra of the k-ary wnu variety over countably many variables.
#[pyclass(frozen, name = "FreeAlgebra")]
struct PyFreeAlgebra {
    inner: wnu_core::FreeAlgebra,
}

impl PyFreeAlgebra {
    fn normal(&self, text: &str) -> PyResult<NormalTerm> {
        self.inner.parse_normal(text).map_err(err)
    }
}

#[pymethods]
impl PyFreeAlgebra {
    #[new]
    #[pyo3(signature = (k = 3))]
    fn new(k: usize) -> PyResult<Self> {
        Ok(PyFreeAlgebra {
            inner: wnu_core::FreeAlgebra::with_arity(k).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn normalize(&self, term: &str) -> PyResult<String> {
        let t = self.inner.parse(term).map_err(err)?;
        Ok(self.inner.render(self.inner.normalize(t)))
    }

    fn is_normal(&self, term: &str) -> PyResult<bool> {
        Ok(self.inner.is_normal(self.inner.parse(term).map_err(err)?))
    }

    fn free_equal(&self, s: &str, t: &str) -> PyResult<bool> {
        let s = self.inner.parse(s).map_err(err)?;
        let t = self.inner.parse(t).map_err(err)?;
        Ok(self.inner.free_equal(s, t))
    }

    fn w_count(&self, term: &str) -> PyResult<u64> {
        Ok(self.inner.w_count(self.inner.parse(term).map_err(err)?))
    }

    /// The basic operation applied to k normal terms.
    fn wa(&self, args: Vec<String>) -> PyResult<String> {
        let args = args.iter().map(|a| self.normal(a)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.render(self.inner.wa(&args).map_err(err)?))
    }

    fn is_subterm(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.is_subterm(self.normal(a)?, self.normal(b)?))
    }

    fn in_s(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.in_s(self.normal(a)?, self.normal(b)?))
    }

    fn enumerate_normal(&self, vars: Vec<String>, max_w: usize) -> PyResult<Vec<String>> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        Ok(self
            .inner
            .enumerate_normal(&names, max_w)
            .map_err(err)?
            .map(|t| self.inner.render(t))
            .collect())
    }

    /// Closure report as JSON. Generators are `(a, b)` pairs of normal terms
    /// plus every ordered pair of distinct names in `vars`.
    #[pyo3(signature = (gens = Vec::new(), vars = Vec::new(), max_w = 2, max_rounds = 64, max_pairs = 100_000, list_pairs = false))]
    fn closure(
        &self,
        gens: Vec<(String, String)>,
        vars: Vec<String>,
        max_w: u64,
        max_rounds: usize,
        max_pairs: usize,
        list_pairs: bool,
    ) -> PyResult<String> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let mut pairs: Vec<_> = PairGeneratorSet::distinct_variables(&self.inner, &names)
            .map_err(err)?
            .pairs()
            .to_vec();
        for (a, b) in &gens {
            pairs.push((self.normal(a)?, self.normal(b)?));
        }
        let gens = PairGeneratorSet::new(pairs);
        let report = wnu_core::closure_report(&self.inner, &gens, &budget(max_w, max_rounds, max_pairs), list_pairs)
            .map_err(err)?;
        Ok(to_json(&report))
    }

    /// Bounded witness search for `t(x̄) = t(ȳ)`, as a JSON report.
    #[pyo3(signature = (condition, max_w = 2))]
    fn search(&self, condition: &str, max_w: usize) -> PyResult<String> {
        let slemc = Slemc::from_condition(&self::condition(condition)?).map_err(err)?;
        let r = maltsev::search_report(&self.inner, &slemc, max_w).map_err(err)?;
        Ok(to_json(&r.without_timing()))
    }

    /// Refutation of `t(x̄) = t(ȳ)` through the relation S, as a JSON report.
    #[pyo3(signature = (condition, max_w = 2, max_rounds = 64, max_pairs = 100_000))]
    fn refute(&self, condition: &str, max_w: u64, max_rounds: usize, max_pairs: usize) -> PyResult<String> {
        let slemc = Slemc::from_condition(&self::condition(condition)?).map_err(err)?;
        let r = maltsev::refute_via_s(&self.inner, &slemc, &budget(max_w, max_rounds, max_pairs)).map_err(err)?;
        Ok(to_json(&r.without_timing()))
    }

    fn __repr__(&self) -> String {
        format!("FreeAlgebra(k={})", self.inner.k())
    }
}

/// Classification of a single linear identity, as JSON.
#[pyfunction]
fn classify(condition: &str) -> PyResult<String> {
    Ok(to_json(
        &maltsev::classify_slemc(&self::condition(condition)?).map_err(err)?,
    ))
}

/// A projection assignment satisfying the condition, or None.
#[pyfunction]
fn is_trivial(condition: &str) -> PyResult<Option<HashMap<String, usize>>> {
    Ok(maltsev::is_trivial(&self::condition(condition)?).map(|a| a.entries().iter().cloned().collect()))
}

#[pymodule]
fn pywnu(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFreeAlgebra>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(is_trivial, m)?)?;
    m.add("WnuError", m.py().get_type::<WnuError>())?;
    Ok(())
}
