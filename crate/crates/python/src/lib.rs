//! Python bindings: workspaces, convolution algebras, composites and the
//! command line, with elements passed as `{symbol: "p/q"}` dictionaries.

use std::collections::BTreeMap;

use convkit::convolution::{build_convolution, ConvolutionAlgebra, Order};
use convkit::linalg::scalar::{format_scalar, parse_scalar};
use convkit::linalg::{GradedSpace, Vector};
use convkit::slinf::check_generalized_jacobi;
use convkit::workspace::Workspace;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

pub type Terms = BTreeMap<String, String>;

pub fn to_vector(space: &GradedSpace, terms: &Terms) -> convkit::Result<Vector> {
    let mut v = Vector::zero();
    for (sym, c) in terms {
        v.add_term(space.require(sym)?, parse_scalar(c)?);
    }
    Ok(v)
}

pub fn to_terms(space: &GradedSpace, v: &Vector) -> Terms {
    v.iter().map(|(i, c)| (space.symbol(i).to_string(), format_scalar(c))).collect()
}

fn err(e: convkit::Error) -> PyErr {
    match e {
        convkit::Error::Reference(n) | convkit::Error::UnknownSymbol(n) => PyKeyError::new_err(n),
        e => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Workspace", module = "convkit", frozen)]
struct PyWorkspace {
    inner: Workspace,
}

#[pymethods]
impl PyWorkspace {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        Ok(PyWorkspace { inner: convkit::workspace::builtin(name).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyWorkspace { inner: Workspace::load(path).map_err(err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyWorkspace { inner: Workspace::parse(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Object names per section.
    fn names(&self) -> BTreeMap<&'static str, Vec<String>> {
        let ws = &self.inner;
        BTreeMap::from([
            ("spaces", ws.spaces.keys().cloned().collect()),
            ("operads", ws.operads.keys().cloned().collect()),
            ("cooperads", ws.cooperads.keys().cloned().collect()),
            ("twisting", ws.twisting.keys().cloned().collect()),
            ("algebras", ws.algebras.keys().cloned().collect()),
            ("coalgebras", ws.coalgebras.keys().cloned().collect()),
            ("maps", ws.maps.keys().cloned().collect()),
        ])
    }

    fn convolution(&self, twisting: &str, coalgebra: &str, algebra: &str) -> PyResult<PyConvolution> {
        let ws = &self.inner;
        let missing = |n: &str| PyKeyError::new_err(n.to_string());
        let t = ws.twisting.get(twisting).ok_or_else(|| missing(twisting))?;
        let c = ws.coalgebras.get(coalgebra).ok_or_else(|| missing(coalgebra))?;
        let a = ws.algebras.get(algebra).ok_or_else(|| missing(algebra))?;
        let inner = build_convolution(t.clone(), c.clone(), a.clone()).map_err(err)?;
        Ok(PyConvolution { inner })
    }

    /// A map of the workspace as an element of a convolution algebra.
    fn element(&self, conv: &PyConvolution, map: &str) -> PyResult<Terms> {
        let m = self.inner.maps.get(map).ok_or_else(|| PyKeyError::new_err(map.to_string()))?;
        let v = conv.inner.from_map(m).map_err(err)?;
        Ok(to_terms(conv.inner.space(), &v))
    }

    /// Nonzero components of both composite orders, keyed `ℓ∘r` and `r∘ℓ`,
    /// each a list of `(arity, inputs, value)`.
    #[pyo3(signature = (phi = "phi", psi = "psi"))]
    fn compose(&self, phi: &str, psi: &str) -> PyResult<BTreeMap<&'static str, Vec<(usize, Vec<String>, Terms)>>> {
        let s = self.inner.action_setup(phi, psi).map_err(err)?;
        let mut out = BTreeMap::new();
        for order in [Order::LeftFirst, Order::RightFirst] {
            let m = s.compose_action(order).map_err(err)?;
            let mut rows = Vec::new();
            for (i, t) in m.components().iter().enumerate() {
                for (key, v) in t.entries() {
                    let inputs = key.iter().map(|&k| s.hom_c_a.space().symbol(k).to_string()).collect();
                    rows.push((i + 1, inputs, to_terms(s.hom_cp_ap.space(), v)));
                }
            }
            out.insert(order.label(), rows);
        }
        Ok(out)
    }
}

#[pyclass(name = "Convolution", module = "convkit", frozen)]
struct PyConvolution {
    inner: ConvolutionAlgebra,
}

#[pymethods]
impl PyConvolution {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.space().dim()
    }

    /// `(symbol, degree)` for each basis map `a←c`.
    fn basis(&self) -> Vec<(String, i64)> {
        self.inner.space().basis().map(|(_, s, d)| (s.to_string(), d)).collect()
    }

    fn bracket(&self, args: Vec<Terms>) -> PyResult<Terms> {
        let sp = self.inner.space();
        let vs = args.iter().map(|t| to_vector(sp, t)).collect::<convkit::Result<Vec<_>>>().map_err(err)?;
        let refs: Vec<&Vector> = vs.iter().collect();
        let v = self.inner.family().eval_bracket(refs.len(), &refs).map_err(err)?;
        Ok(to_terms(sp, &v))
    }

    fn mc_residual(&self, x: Terms) -> PyResult<Terms> {
        let sp = self.inner.space();
        let v = self.inner.family().mc_residual(&to_vector(sp, &x).map_err(err)?).map_err(err)?;
        Ok(to_terms(sp, &v))
    }

    fn is_mc(&self, x: Terms) -> PyResult<bool> {
        Ok(self.mc_residual(x)?.is_empty())
    }

    /// Generalized Jacobi relations up to `up_to`, on the symmetrized
    /// family unless `planar`.
    #[pyo3(signature = (up_to = 4, planar = false))]
    fn jacobi(&self, up_to: usize, planar: bool) -> PyResult<bool> {
        let report = if planar {
            check_generalized_jacobi(self.inner.family(), up_to)
        } else {
            check_generalized_jacobi(&self.inner.symmetric_family().map_err(err)?, up_to)
        };
        Ok(report.holds())
    }
}

/// Runs a command line (without the program name) and returns the JSON
/// report.
#[pyfunction]
fn run(args: Vec<String>) -> PyResult<String> {
    let argv = std::iter::once("convkit".to_string()).chain(args);
    let cli = convkit::cli::Cli::try_parse_from_args(argv).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let report = convkit::cli::run(&cli).map_err(err)?;
    Ok(report.render(true))
}

#[pymodule]
#[pyo3(name = "convkit")]
fn convkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWorkspace>()?;
    m.add_class::<PyConvolution>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
