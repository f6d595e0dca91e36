use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use mcg_core::classification::{self, CountMode};
use mcg_core::embedding::embeds_in;
use mcg_core::fpgroup::{todd_coxeter, FpGroupError, Presentation, DEFAULT_MAX_COSETS};
use mcg_core::hyperelliptic::{self, ClassCountMode, LiftName, LiftRecord};
use mcg_core::permgroup::GroupName;
use mcg_core::sphere_actions::{self, ActionDescriptor, MaximalMode, RotationType};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rotation(text: &str) -> PyResult<RotationType> {
    let name: GroupName = text.parse().map_err(value_error)?;
    RotationType::from_group_name(&name).ok_or_else(|| value_error(format!("{text} is not a rotation group")))
}

fn group_name(text: &str) -> PyResult<GroupName> {
    text.parse().map_err(value_error)
}

/// A finite action on the sphere with r marked points.
#[pyclass(frozen, skip_from_py_object, module = "sphere_mcg")]
#[derive(Clone)]
struct Descriptor {
    inner: ActionDescriptor,
}

#[pymethods]
impl Descriptor {
    /// `group` is a label such as "Z5", "D6", "A4", "S4", "A5"; bit i of
    /// `mask` marks exceptional orbit i.
    #[new]
    fn new(r: usize, group: &str, mask: u8) -> PyResult<Self> {
        let inner = ActionDescriptor::new(r, rotation(group)?, mask).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.rotation().group_name().label()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.inner.group_order()
    }

    #[getter]
    fn marked(&self) -> Vec<&'static str> {
        self.inner.marked_slots().map(|s| s.kind.name()).collect()
    }

    #[getter]
    fn free_orbits(&self) -> usize {
        self.inner.free_orbits()
    }

    #[getter]
    fn table_row(&self) -> Option<char> {
        self.inner.table_row()
    }

    fn is_maximal(&self) -> bool {
        sphere_actions::is_maximal(&self.inner)
    }

    fn maximal_extension(&self) -> Option<Descriptor> {
        sphere_actions::maximal_extension(&self.inner).map(|inner| Descriptor { inner })
    }

    /// (iso label, sorted marked (length, stabilizer order) pairs, free orbits)
    fn invariant(&self) -> (String, Vec<(usize, usize)>, usize) {
        let inv = classification::conjugacy_invariant(&self.inner);
        (inv.iso_label.label(), inv.marked_profile, inv.free_count)
    }

    /// Orbit lengths and stabilizer orders of the realized permutation action.
    fn orbit_profile(&self) -> PyResult<Vec<(usize, usize)>> {
        let real = sphere_actions::realize(&self.inner).map_err(value_error)?;
        let mut p: Vec<(usize, usize)> = real
            .group
            .orbits_and_stabilizers()
            .iter()
            .map(|o| (o.points.len(), o.stabilizer_order))
            .collect();
        p.sort_unstable();
        Ok(p)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_record()).expect("serializable")
    }

    fn __repr__(&self) -> String {
        format!("Descriptor({})", self.inner)
    }

    fn __eq__(&self, other: &Descriptor) -> bool {
        self.inner == other.inner
    }
}

#[pyfunction]
#[pyo3(signature = (r, group=None))]
fn descriptors(r: usize, group: Option<&str>) -> PyResult<Vec<Descriptor>> {
    let rot = group.map(rotation).transpose()?;
    Ok(sphere_actions::enumerate_descriptors(r, rot)
        .into_iter()
        .map(|inner| Descriptor { inner })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (r, mode="derived"))]
fn maximal_types(r: usize, mode: &str) -> PyResult<Vec<String>> {
    let mode = match mode {
        "derived" => MaximalMode::Derived,
        "congruence" => MaximalMode::Congruence,
        other => return Err(value_error(format!("unknown mode {other:?}"))),
    };
    Ok(sphere_actions::maximal_types(r, mode).iter().map(GroupName::label).collect())
}

#[pyfunction]
fn order_n_element_exists(r: usize, n: usize) -> bool {
    sphere_actions::order_n_element_exists(r, n)
}

#[pyfunction]
fn are_conjugate(a: &Descriptor, b: &Descriptor) -> PyResult<bool> {
    classification::are_conjugate(&a.inner, &b.inner).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (r, group, mode="enumerative"))]
fn count_classes(r: usize, group: &str, mode: &str) -> PyResult<usize> {
    let mode = match mode {
        "enumerative" => CountMode::Enumerative,
        "closed_form" => CountMode::ClosedForm,
        other => return Err(value_error(format!("unknown mode {other:?}"))),
    };
    Ok(classification::count_classes(r, &group_name(group)?, mode))
}

/// Whether the action of `small` is contained in that of `large` after
/// relabeling marked points.
#[pyfunction]
fn embeds(small: &Descriptor, large: &Descriptor) -> PyResult<bool> {
    let a = sphere_actions::realize(&small.inner).map_err(value_error)?;
    let b = sphere_actions::realize(&large.inner).map_err(value_error)?;
    Ok(embeds_in(&a.group, &b.group))
}

/// Order of a finitely presented group, e.g. "<x,y | x^2, y^3, (x*y)^5>".
#[pyfunction]
#[pyo3(signature = (presentation, max_cosets=DEFAULT_MAX_COSETS))]
fn group_order(py: Python<'_>, presentation: &str, max_cosets: usize) -> PyResult<usize> {
    let p: Presentation = presentation.parse().map_err(value_error)?;
    py.detach(|| todd_coxeter(&p, max_cosets))
        .map(|(order, _)| order)
        .map_err(|e| match e {
            FpGroupError::CosetLimitExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
            other => value_error(other),
        })
}

/// One maximal finite subgroup of the hyperelliptic mapping class group.
#[pyclass(frozen, get_all, module = "sphere_mcg")]
struct Lift {
    name: String,
    g: u32,
    base: String,
    order: usize,
    presentation: String,
    verified: bool,
    center_order: Option<usize>,
}

impl From<LiftRecord> for Lift {
    fn from(rec: LiftRecord) -> Self {
        Lift {
            name: rec.name.tag().to_string(),
            g: rec.g,
            base: rec.base.label(),
            order: rec.expected_order,
            presentation: rec.presentation_text,
            verified: rec.verification.is_some(),
            center_order: rec.verification.map(|v| v.center_order),
        }
    }
}

#[pymethods]
impl Lift {
    fn __repr__(&self) -> String {
        format!("Lift({} g={} base={} order={})", self.name, self.g, self.base, self.order)
    }
}

#[pyfunction]
fn lift_catalog(g: u32) -> Vec<Lift> {
    hyperelliptic::lift_catalog(g).into_iter().map(Lift::from).collect()
}

#[pyfunction]
#[pyo3(signature = (name, g, max_cosets=DEFAULT_MAX_COSETS))]
fn verify_lift(py: Python<'_>, name: &str, g: u32, max_cosets: usize) -> PyResult<Lift> {
    let name: LiftName = name.parse().map_err(PyValueError::new_err)?;
    py.detach(|| hyperelliptic::verify_lift(name, g, max_cosets))
        .map(Lift::from)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (g, mode="catalog"))]
fn count_maximal_classes(g: u32, mode: &str) -> PyResult<usize> {
    let mode = match mode {
        "catalog" => ClassCountMode::Catalog,
        "closed_form" => ClassCountMode::ClosedForm,
        other => return Err(value_error(format!("unknown mode {other:?}"))),
    };
    Ok(hyperelliptic::count_maximal_classes(g, mode))
}

#[pymodule]
fn sphere_mcg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Descriptor>()?;
    m.add_class::<Lift>()?;
    m.add_function(wrap_pyfunction!(descriptors, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_types, m)?)?;
    m.add_function(wrap_pyfunction!(order_n_element_exists, m)?)?;
    m.add_function(wrap_pyfunction!(are_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(embeds, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(lift_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lift, m)?)?;
    m.add_function(wrap_pyfunction!(count_maximal_classes, m)?)?;
    Ok(())
}
