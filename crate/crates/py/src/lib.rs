use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use symcoh::catalog::{builtin_group, k_cohomology_crosscheck, GroupSpec};
use symcoh::ce::{ncz_from_relative, ComputeConfig, FullComplex, RelativeComplex};
use symcoh::chern_weil::{epsilon_with, ChernWeil};
use symcoh::lie::{CartanDecomposition, CoefficientModule};
use symcoh::reports::{full_report, FullReport};

create_exception!(symcoh, SymcohError, PyException);

fn err(e: symcoh::Error) -> PyErr {
    SymcohError::new_err(format!("{}: {}", e.kind(), e))
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn dumps<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn config(max_exterior_dim: Option<u128>) -> ComputeConfig {
    let mut c = ComputeConfig::from_env();
    if let Some(m) = max_exterior_dim {
        c.max_exterior_dim = m;
    }
    c
}

/// A finite-dimensional real Lie algebra with rational structure constants.
#[pyclass(frozen)]
struct LieAlgebra {
    inner: symcoh::lie::LieAlgebra,
}

#[pymethods]
impl LieAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: symcoh::lie::LieAlgebra::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn killing_signature(&self) -> (usize, usize, usize) {
        self.inner.killing_signature()
    }

    /// Betti numbers of H^*(g; R) up to `max_degree`.
    #[pyo3(signature = (max_degree, max_exterior_dim=None))]
    fn betti(&self, py: Python<'_>, max_degree: usize, max_exterior_dim: Option<u128>) -> PyResult<Vec<usize>> {
        let m = CoefficientModule::trivial(&self.inner, 1);
        let top = max_degree.min(self.inner.dim());
        let h = py
            .detach(|| FullComplex::with_config(&self.inner, &m, config(max_exterior_dim)).cohomology(top))
            .map_err(err)?;
        Ok(h.betti())
    }

    /// Relative Betti numbers for a decomposition given as JSON.
    #[pyo3(signature = (decomposition, max_degree))]
    fn relative_betti(&self, decomposition: &str, max_degree: usize) -> PyResult<Vec<usize>> {
        let dec = CartanDecomposition::from_json(&self.inner, decomposition).map_err(err)?;
        let m = CoefficientModule::trivial(&self.inner, 1);
        let h = RelativeComplex::from_decomposition(&dec, &m).and_then(|r| r.cohomology(max_degree)).map_err(err)?;
        Ok(h.betti())
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra(dim={})", self.inner.dim())
    }
}

/// A builtin semisimple group with its Cartan decomposition.
#[pyclass(frozen)]
struct Group {
    spec: GroupSpec,
}

#[pymethods]
impl Group {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(Self { spec: builtin_group(name).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.spec.name.clone()
    }

    #[getter]
    fn k_name(&self) -> String {
        self.spec.k_name.clone()
    }

    #[getter]
    fn dual_name(&self) -> String {
        self.spec.dual_name.clone()
    }

    fn algebra(&self) -> LieAlgebra {
        LieAlgebra { inner: self.spec.g.clone() }
    }

    fn compact_dual(&self) -> PyResult<LieAlgebra> {
        Ok(LieAlgebra { inner: self.spec.dec.checked_compact_dual().map_err(err)? })
    }

    fn relative_betti(&self, py: Python<'_>, max_degree: usize) -> PyResult<Vec<usize>> {
        let m = CoefficientModule::trivial(&self.spec.g, 1);
        let h = py
            .detach(|| RelativeComplex::from_decomposition(&self.spec.dec, &m).and_then(|r| r.cohomology(max_degree)))
            .map_err(err)?;
        Ok(h.betti())
    }

    /// The n.c.z. report as a dict.
    fn ncz<'py>(&self, py: Python<'py>, max_degree: usize) -> PyResult<Bound<'py, PyAny>> {
        let cfg = config(None);
        let m = CoefficientModule::trivial(&self.spec.g, 1);
        let r = py
            .detach(|| {
                let rel = RelativeComplex::from_decomposition(&self.spec.dec, &m)?.with_config(cfg.clone());
                ncz_from_relative(&rel, max_degree, &cfg)
            })
            .map_err(err)?;
        loads(py, &dumps(&r))
    }

    /// The characteristic morphism in degree `n` as a dict.
    fn epsilon<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        let e = py
            .detach(|| {
                let cw = ChernWeil::new(&self.spec.dec)?;
                let rel = cw.complex().cohomology(n)?;
                epsilon_with(&self.spec, &cw, &rel, n)
            })
            .map_err(err)?;
        loads(py, &dumps(&e))
    }

    fn crosscheck<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = py.detach(|| k_cohomology_crosscheck(&self.spec, &config(None))).map_err(err)?;
        loads(py, &dumps(&c))
    }

    /// Full report; `format` is "dict", "json" or "text".
    #[pyo3(signature = (max_degree, format="dict"))]
    fn report<'py>(&self, py: Python<'py>, max_degree: usize, format: &str) -> PyResult<Bound<'py, PyAny>> {
        let r: FullReport = py.detach(|| full_report(&self.spec, max_degree, &config(None))).map_err(err)?;
        match format {
            "dict" => loads(py, &r.to_json()),
            "json" => Ok(r.to_json().into_pyobject(py)?.into_any()),
            "text" => Ok(r.to_text().into_pyobject(py)?.into_any()),
            other => Err(SymcohError::new_err(format!("unknown format {other:?}"))),
        }
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.spec.name)
    }
}

#[pymodule]
#[pyo3(name = "symcoh")]
fn symcoh_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SymcohError", m.py().get_type::<SymcohError>())?;
    m.add_class::<LieAlgebra>()?;
    m.add_class::<Group>()?;
    Ok(())
}
