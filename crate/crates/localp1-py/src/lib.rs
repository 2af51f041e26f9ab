//! Python bindings: complexes, homology, and the first Pontryagin class.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use localp1::format::{parse_any, write_facet_list, write_structured};
use localp1::pipeline::{local_formula_value, OutputDocument, PipelineConfig};
use localp1::{ReducerConfig, SimplicialComplex};

fn err(e: localp1::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(seed: u64, jobs: usize) -> PipelineConfig {
    PipelineConfig {
        reducer: ReducerConfig {
            seed,
            ..ReducerConfig::default()
        },
        jobs,
        ..PipelineConfig::default()
    }
}

/// A finite pure simplicial complex given by its facets.
#[pyclass(name = "Complex", frozen)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(facets: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: SimplicialComplex::build(&facets).map_err(err)?,
        })
    }

    /// Parses facet-list or structured JSON text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: parse_any(text).map_err(err)?,
        })
    }

    /// One of the built-in complexes, e.g. `"M8_15"` or `"boundary_simplex:4"`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: localp1::builders::builtin(name).map_err(err)?,
        })
    }

    #[getter]
    fn dimension(&self) -> isize {
        self.inner.dim()
    }

    fn facets(&self) -> Vec<Vec<u32>> {
        self.inner.facets().iter().map(|f| f.vertices().to_vec()).collect()
    }

    fn vertices(&self) -> Vec<u32> {
        self.inner.vertices()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn is_closed_pseudomanifold(&self) -> bool {
        self.inner.is_closed_pseudomanifold()
    }

    fn is_orientable(&self) -> bool {
        self.inner.orient().is_ok()
    }

    /// `(rank, torsion coefficients)` of `H_k(K; Z)`.
    fn homology(&self, k: usize) -> PyResult<(usize, Vec<String>)> {
        let h = localp1::homology(&self.inner, k).map_err(err)?;
        Ok((h.betti, h.torsion.iter().map(|t| t.to_string()).collect()))
    }

    fn to_facet_list(&self) -> String {
        write_facet_list(&self.inner)
    }

    fn to_json(&self) -> String {
        write_structured(&self.inner)
    }

    /// Runs the Pontryagin computation and returns the output document as JSON.
    #[pyo3(signature = (seed=0, jobs=1))]
    fn p1(&self, py: Python<'_>, seed: u64, jobs: usize) -> PyResult<String> {
        let k = self.inner.clone();
        py.detach(move || OutputDocument::compute(&k, &config(seed, jobs)))
            .map(|(doc, _)| doc.to_json())
            .map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.num_facets()
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(dimension={}, vertices={}, facets={})",
            self.inner.dim(),
            self.inner.vertices().len(),
            self.inner.num_facets()
        )
    }
}

/// `f(L)` of a 3-sphere given by facets (oriented coherently from the first
/// facet's vertex order), as an exact rational string.
#[pyfunction]
#[pyo3(signature = (facets, seed=0))]
fn local_formula(facets: Vec<Vec<u32>>, seed: u64) -> PyResult<String> {
    let k = SimplicialComplex::build(&facets).map_err(err)?;
    let l = k.orient().map_err(err)?;
    local_formula_value(&l, &config(seed, 1))
        .map(|v| v.to_string())
        .map_err(err)
}

#[pymodule]
fn localp1_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(local_formula, m)?)?;
    Ok(())
}
