//! Python bindings for the quadratic-form toolkit.
//!
//! Exposes the lattice type ([`QForm`]), the embedded 152-form corpus, and
//! the verification suites. Build as a `cdylib` and import as `qform_py`.

use pyo3::exceptions::{PyKeyError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qform_core::enumerate::{exception_scan, Enumerator};
use qform_core::forms::{
    corpus_record, embedded_corpus, gram_from_sextuple, parse_sextuple, FormRecord, GramLattice,
    Sextuple,
};
use qform_core::isometry::is_isometric;
use qform_core::local::{
    genus_represents, primitively_represented_over_zp, represented_over_zp,
    satisfies_reduction_hypothesis,
};
use qform_core::transform::{core_decomposition, lambda2, lambda2_sublattice};
use qform_core::verify::{run_suite, Suite, SuiteConfig};
use qform_core::Error;

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(m) | Error::InvalidForm(m) => PyValueError::new_err(m),
        Error::Corpus(m) => PyKeyError::new_err(m),
        Error::Overflow(m) => PyOverflowError::new_err(m),
        Error::CoreNotFound(m) | Error::Recipe(m) => PyRuntimeError::new_err(m),
    }
}

fn record_to_dict<'py>(py: Python<'py>, record: &FormRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("id", record.id.to_string())?;
    d.set_item("sextuple", record.sextuple.coefficients().to_vec())?;
    let status = serde_json::to_value(record.status)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    d.set_item("status", status.as_str())?;
    let core = record
        .core_label
        .map(|c| {
            serde_json::to_value(c)
                .map(|v| v.as_str().map(str::to_string))
                .map_err(|e| PyRuntimeError::new_err(e.to_string()))
        })
        .transpose()?
        .flatten();
    d.set_item("core", core)?;
    d.set_item("exceptions", record.exception_set.clone())?;
    d.set_item(
        "primitively_universal",
        record.status.is_primitively_universal(),
    )?;
    Ok(d)
}

/// A positive-definite integral quadratic form (lattice with Gram matrix).
#[pyclass(frozen)]
struct QForm {
    label: String,
    lattice: GramLattice,
}

impl QForm {
    fn wrap(label: String, lattice: GramLattice) -> QForm {
        QForm { label, lattice }
    }
}

#[pymethods]
impl QForm {
    /// Look a form up in the embedded corpus by id, e.g. "Q34^3".
    #[staticmethod]
    fn from_id(id: &str) -> PyResult<QForm> {
        let record = corpus_record(id)
            .ok_or_else(|| PyKeyError::new_err(format!("no corpus record named {id:?}")))?;
        Ok(QForm::wrap(id.to_string(), record.lattice()))
    }

    /// Build `x² + ay² + bz² + cw² + d·zw + e·yw + f·yz` from (a,b,c,d,e,f).
    #[staticmethod]
    fn from_sextuple(coefficients: [i64; 6]) -> PyResult<QForm> {
        let [a, b, c, d, e, f] = coefficients;
        let text = format!("{a},{b},{c},{d},{e},{f}");
        let sextuple: Sextuple = parse_sextuple(&text).map_err(to_py_err)?;
        Ok(QForm::wrap(text, gram_from_sextuple(sextuple)))
    }

    /// Label: the corpus id or the coefficient list this form was built from.
    #[getter]
    fn label(&self) -> String {
        self.label.clone()
    }

    /// Rank of the lattice.
    #[getter]
    fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Gram matrix rows.
    fn gram(&self) -> Vec<Vec<i64>> {
        self.lattice.gram().clone()
    }

    /// Determinant of the Gram matrix.
    fn det(&self) -> i128 {
        self.lattice.discriminant()
    }

    /// Evaluate the form at integer coordinates.
    fn value(&self, coords: Vec<i64>) -> PyResult<i128> {
        self.lattice.quadratic(&coords).map_err(to_py_err)
    }

    /// All vectors of norm `n` as (coords, primitive) pairs, sorted.
    #[pyo3(signature = (n, primitive_only = false))]
    fn enumerate(&self, n: i64, primitive_only: bool) -> PyResult<Vec<(Vec<i64>, bool)>> {
        let enumerator = Enumerator::new(&self.lattice).map_err(to_py_err)?;
        let witnesses = enumerator.vectors_with_norm(n).map_err(to_py_err)?;
        Ok(witnesses
            .into_iter()
            .filter(|w| !primitive_only || w.primitive)
            .map(|w| (w.coords, w.primitive))
            .collect())
    }

    /// The first primitive vector of norm `n` in canonical search order,
    /// or None.
    fn first_primitive(&self, n: i64) -> PyResult<Option<Vec<i64>>> {
        let enumerator = Enumerator::new(&self.lattice).map_err(to_py_err)?;
        Ok(enumerator
            .first_primitive(n)
            .map_err(to_py_err)?
            .map(|w| w.coords))
    }

    /// Integers in [1, bound] with no primitive representation.
    fn exceptions(&self, bound: i64) -> PyResult<Vec<i64>> {
        Ok(exception_scan(&self.lattice, bound)
            .map_err(to_py_err)?
            .missing)
    }

    /// The index-2 halving transform λ₂ as a new form.
    fn lambda2(&self) -> PyResult<QForm> {
        let halved = lambda2(&self.lattice).map_err(to_py_err)?;
        Ok(QForm::wrap(format!("lambda2({})", self.label), halved))
    }

    /// Index of the even-parity sublattice Λ₂ (1 or 2).
    fn lambda2_index(&self) -> PyResult<i128> {
        let sub = lambda2_sublattice(&self.lattice).map_err(to_py_err)?;
        sub.index_in(&self.lattice).map_err(to_py_err)
    }

    /// True when the 2-adic unimodular Jordan block has rank ≤ 2 (the
    /// hypothesis under which λ₂ halves primitive exception sets).
    fn reduction_hypothesis(&self) -> bool {
        satisfies_reduction_hypothesis(&self.lattice)
    }

    /// Isometry witness rows U (with Uᵀ·G·U = G') against another form,
    /// or None when the forms are not isometric.
    fn is_isometric(&self, other: &QForm) -> PyResult<Option<Vec<Vec<i64>>>> {
        is_isometric(&self.lattice, &other.lattice).map_err(to_py_err)
    }

    /// Decide representability of `n` over ℤ_p (primitively, if asked).
    #[pyo3(signature = (n, p, primitive = false))]
    fn localrep(&self, n: i64, p: i64, primitive: bool) -> PyResult<bool> {
        if primitive {
            primitively_represented_over_zp(&self.lattice, n, p).map_err(to_py_err)
        } else {
            represented_over_zp(&self.lattice, n, p).map_err(to_py_err)
        }
    }

    /// True when the genus of the form represents `n`.
    fn genus_represents(&self, n: i64) -> PyResult<bool> {
        genus_represents(&self.lattice, n).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("QForm({})", self.label)
    }
}

/// The embedded corpus as a list of dicts.
#[pyfunction]
fn corpus(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    let out = PyList::empty_bound(py);
    for record in embedded_corpus() {
        out.append(record_to_dict(py, record)?)?;
    }
    Ok(out)
}

/// One corpus record as a dict (KeyError when the id is unknown).
#[pyfunction]
#[pyo3(name = "corpus_record")]
fn corpus_record_py<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
    let record = corpus_record(id)
        .ok_or_else(|| PyKeyError::new_err(format!("no corpus record named {id:?}")))?;
    record_to_dict(py, record)
}

/// The orthogonal core/complement splitting of a corpus form, as a dict
/// with the core label, core basis rows, complement generator, and its norm.
#[pyfunction]
fn core_split<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
    let record = corpus_record(id)
        .ok_or_else(|| PyKeyError::new_err(format!("no corpus record named {id:?}")))?;
    let dec = core_decomposition(record).map_err(to_py_err)?;
    let d = PyDict::new_bound(py);
    let label = dec
        .label
        .map(|c| {
            serde_json::to_value(c)
                .map(|v| v.as_str().map(str::to_string))
                .map_err(|e| PyRuntimeError::new_err(e.to_string()))
        })
        .transpose()?
        .flatten();
    d.set_item("core", label)?;
    d.set_item("core_basis", dec.core.basis.clone())?;
    d.set_item("core_gram", dec.core.gram.clone())?;
    d.set_item("complement_gen", dec.complement_gen.clone())?;
    d.set_item("complement_norm", dec.complement_norm)?;
    Ok(d)
}

/// Run a verification suite ("watson", "lemmas", "recipes", "tables",
/// "all") and return its reports as dicts.
#[pyfunction]
#[pyo3(name = "run_suite", signature = (suite, bound = None, window = None))]
fn run_suite_py<'py>(
    py: Python<'py>,
    suite: &str,
    bound: Option<i64>,
    window: Option<(i64, i64)>,
) -> PyResult<Bound<'py, PyList>> {
    let suite: Suite = suite.parse().map_err(to_py_err)?;
    let config = SuiteConfig { bound, window };
    let reports = run_suite(suite, &config).map_err(to_py_err)?;
    let out = PyList::empty_bound(py);
    for r in reports {
        let d = PyDict::new_bound(py);
        d.set_item("check_id", r.check_id)?;
        d.set_item("params", r.params)?;
        d.set_item("passed", r.passed)?;
        d.set_item("counterexamples", r.counterexamples)?;
        d.set_item("notes", r.notes)?;
        d.set_item("wall_time_ms", r.wall_time_ms)?;
        out.append(d)?;
    }
    Ok(out)
}

/// The 18 halving-transform relations as (source, target) corpus id pairs.
#[pyfunction]
fn watson_pairs() -> Vec<(String, String)> {
    qform_core::verify::WATSON_PAIRS
        .iter()
        .map(|&(s, t)| (s.to_string(), t.to_string()))
        .collect()
}

#[pymodule]
fn qform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<QForm>()?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_record_py, m)?)?;
    m.add_function(wrap_pyfunction!(core_split, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite_py, m)?)?;
    m.add_function(wrap_pyfunction!(watson_pairs, m)?)?;
    Ok(())
}
