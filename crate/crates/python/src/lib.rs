//! Python bindings for `smp_core`.
//!
//! ```python
//! import smp_py
//! inst = smp_py.Instance(["g1", "g2"], ["b1", "b2"], {"g1": ["b1", "b2"]}, {"b1": ["g2"]})
//! res = smp_py.solve(inst)
//! res.status, res.assignment
//! ```

use std::collections::HashMap;

use indexmap::IndexMap;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use smp_core::cli::{self, Method, ResultFile, Status};
use smp_core::generators::{self, GenError, WorkforceParams};
use smp_core::hall::{self, SizeLimit};
use smp_core::instance::{cmp_to_smp, preprocess_refusals, InstanceError, RawInstance};
use smp_core::{HallViolator, Side, SmpInstance};

create_exception!(smp_py, SmpError, PyValueError, "Invalid instance, parameters or file contents.");
create_exception!(smp_py, SizeLimitError, SmpError, "Input exceeds an exhaustive-search guard.");

fn err(e: impl std::fmt::Display) -> PyErr {
    SmpError::new_err(e.to_string())
}

fn size_err(e: SizeLimit) -> PyErr {
    SizeLimitError::new_err(e.to_string())
}

fn gen_err(e: GenError) -> PyErr {
    err(e)
}

/// A marriage instance. Members missing from `girl_lists`/`boy_lists` hold
/// no list. `refusers` are removed from every list before solving.
#[pyclass(module = "smp_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Instance {
    raw: RawInstance,
    /// `Err` holds the member whose list the refusals emptied.
    ready: Result<SmpInstance, String>,
}

impl Instance {
    fn from_raw(raw: RawInstance) -> PyResult<Self> {
        let ready = match preprocess_refusals(&raw) {
            Ok(inst) => Ok(inst),
            Err(InstanceError::Infeasible(m)) => Err(m),
            Err(e) => return Err(err(e)),
        };
        Ok(Instance { raw, ready })
    }

    fn from_smp(inst: SmpInstance) -> Self {
        Instance { raw: inst.to_raw(), ready: Ok(inst) }
    }

    fn inst(&self) -> PyResult<&SmpInstance> {
        self.ready.as_ref().map_err(|m| err(format!("instance is infeasible: refusals empty the list of {m}")))
    }
}

fn lists_to_index(lists: Option<HashMap<String, Vec<String>>>, order: &[String]) -> IndexMap<String, Vec<String>> {
    let mut lists = lists.unwrap_or_default();
    let mut out: IndexMap<String, Vec<String>> =
        order.iter().filter_map(|p| lists.remove(p).map(|l| (p.clone(), l))).collect();
    // Unknown owners are kept so validation can report them.
    let mut rest: Vec<_> = lists.into_iter().collect();
    rest.sort();
    out.extend(rest);
    out
}

#[pymethods]
impl Instance {
    #[new]
    #[pyo3(signature = (girls, boys, girl_lists=None, boy_lists=None, refusers=None))]
    fn new(
        girls: Vec<String>,
        boys: Vec<String>,
        girl_lists: Option<HashMap<String, Vec<String>>>,
        boy_lists: Option<HashMap<String, Vec<String>>>,
        refusers: Option<Vec<String>>,
    ) -> PyResult<Self> {
        let raw = RawInstance {
            girl_lists: lists_to_index(girl_lists, &girls),
            boy_lists: lists_to_index(boy_lists, &boys),
            girls,
            boys,
            refusers: refusers.unwrap_or_default(),
        };
        Instance::from_raw(raw)
    }

    /// Parses the JSON instance format used by the `smp` command.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Instance::from_raw(cli::parse_instance(text).map_err(err)?)
    }

    fn to_json(&self) -> String {
        let file = cli::InstanceFile::from_raw(&self.raw);
        let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
        s.push('\n');
        s
    }

    #[getter]
    fn girls(&self) -> Vec<String> {
        self.raw.girls.clone()
    }

    #[getter]
    fn boys(&self) -> Vec<String> {
        self.raw.boys.clone()
    }

    /// Lists after refusals, keyed by owner; wildcards are absent.
    #[getter]
    fn girl_lists(&self) -> PyResult<IndexMap<String, Vec<String>>> {
        Ok(named_lists(self.inst()?, Side::Girls))
    }

    #[getter]
    fn boy_lists(&self) -> PyResult<IndexMap<String, Vec<String>>> {
        Ok(named_lists(self.inst()?, Side::Boys))
    }

    /// Member whose list refusals emptied, if any.
    #[getter]
    fn infeasible_member(&self) -> Option<String> {
        self.ready.as_ref().err().cloned()
    }

    fn __repr__(&self) -> String {
        format!("Instance({} girls, {} boys)", self.raw.girls.len(), self.raw.boys.len())
    }
}

fn named_lists(inst: &SmpInstance, side: Side) -> IndexMap<String, Vec<String>> {
    let other = side.opposite();
    inst.listed(side)
        .into_iter()
        .map(|p| {
            let names = inst.list(side, p).iter().map(|&q| inst.name(other, q).to_owned()).collect();
            (inst.name(side, p).to_owned(), names)
        })
        .collect()
}

/// Hall violator: listed members of one side whose pared lists name fewer
/// than `len(members)` people.
#[pyclass(module = "smp_py", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct Violator {
    side: String,
    members: Vec<String>,
    union_size: usize,
}

impl Violator {
    fn new(inst: &SmpInstance, v: &HallViolator) -> Self {
        Violator { side: v.side.to_string(), members: v.member_names(inst), union_size: v.union_size }
    }
}

#[pymethods]
impl Violator {
    fn __repr__(&self) -> String {
        format!("Violator({}, {:?}, union_size={})", self.side, self.members, self.union_size)
    }
}

/// Outcome of `solve`: `status` is "solved", "unsolvable" or "infeasible".
#[pyclass(module = "smp_py", frozen)]
pub struct SolveResult {
    file: ResultFile,
}

#[pymethods]
impl SolveResult {
    #[getter]
    fn status(&self) -> &'static str {
        match self.file.status {
            Status::Solved => "solved",
            Status::Unsolvable => "unsolvable",
            Status::Infeasible => "infeasible",
        }
    }

    /// `(girl, boy)` pairs when solved.
    #[getter]
    fn assignment(&self) -> Option<Vec<(String, String)>> {
        self.file.assignment.as_ref().map(|a| a.iter().map(|[g, b]| (g.clone(), b.clone())).collect())
    }

    #[getter]
    fn violator(&self) -> Option<Violator> {
        self.file.violator.as_ref().map(|v| Violator {
            side: v.side.to_string(),
            members: v.members.clone(),
            union_size: v.union_size,
        })
    }

    #[getter]
    fn infeasible_member(&self) -> Option<String> {
        self.file.infeasible_member.clone()
    }

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("plain data serializes");
        s.push('\n');
        s
    }

    fn __bool__(&self) -> bool {
        self.file.status == Status::Solved
    }

    fn __repr__(&self) -> String {
        format!("SolveResult({})", self.status())
    }
}

fn parse_method(method: &str) -> PyResult<Method> {
    match method {
        "star" => Ok(Method::Star),
        "subproblems" => Ok(Method::Subproblems),
        "weight" => Ok(Method::Weight),
        other => Err(err(format!("unknown method {other:?}; expected star, subproblems or weight"))),
    }
}

/// Solves with `method` in {"star", "subproblems", "weight"}.
#[pyfunction]
#[pyo3(signature = (instance, method="star"))]
fn solve(py: Python<'_>, instance: &Instance, method: &str) -> PyResult<SolveResult> {
    let method = parse_method(method)?;
    let file = match &instance.ready {
        Err(m) => ResultFile::infeasible(m),
        Ok(inst) => {
            let outcome = py.detach(|| cli::solve_with(inst, method));
            ResultFile::from_outcome(inst, &outcome)
        }
    };
    Ok(SolveResult { file })
}

/// Exhaustive two-sided Hall check. Returns `None` when both sides pass.
#[pyfunction]
fn check(instance: &Instance) -> PyResult<Option<Violator>> {
    let inst = instance.inst()?;
    Ok(hall::hall_bicriteria(inst).map_err(size_err)?.map(|v| Violator::new(inst, &v)))
}

/// Backtracking search for small instances; `None` when unsolvable.
#[pyfunction]
fn oracle_solve(instance: &Instance) -> PyResult<Option<Vec<(String, String)>>> {
    let inst = instance.inst()?;
    Ok(hall::oracle_solve(inst).map_err(size_err)?.map(|a| a.named(inst)))
}

#[pyfunction]
fn solvable_via_weight(instance: &Instance) -> PyResult<bool> {
    Ok(smp_core::solvable_via_weight(instance.inst()?))
}

/// Re-checks a JSON result against an instance; returns the problems found.
#[pyfunction]
fn verify(instance: &Instance, result_json: &str) -> PyResult<Vec<String>> {
    let result = cli::parse_result(result_json).map_err(err)?;
    Ok(cli::verify_result(&instance.raw, &result))
}

#[pyfunction]
#[pyo3(signature = (n, seed=0))]
fn gen_tournament(n: usize, seed: u64) -> PyResult<Instance> {
    Ok(Instance::from_smp(cmp_to_smp(&generators::gen_tournament(n, seed).map_err(gen_err)?.cmp)))
}

#[pyfunction]
#[pyo3(signature = (n, seed=0))]
fn gen_rooks(n: usize, seed: u64) -> PyResult<Instance> {
    Ok(Instance::from_smp(cmp_to_smp(&generators::gen_rooks(n, seed).map_err(gen_err)?.cmp)))
}

#[pyfunction]
#[pyo3(signature = (n, seed=0))]
fn gen_chessboard(n: usize, seed: u64) -> PyResult<Instance> {
    Ok(Instance::from_smp(generators::gen_chessboard(n, seed).map_err(gen_err)?.instance))
}

#[pyfunction]
#[pyo3(signature = (workers, tasks, paid=0, mandatory=0, density=0.3, seed=0))]
fn gen_assignment(workers: usize, tasks: usize, paid: usize, mandatory: usize, density: f64, seed: u64) -> PyResult<Instance> {
    let params = WorkforceParams { workers, tasks, paid, mandatory, density };
    Ok(Instance::from_smp(generators::gen_assignment(params, seed).map_err(gen_err)?))
}

#[pymodule]
fn smp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SmpError", m.py().get_type::<SmpError>())?;
    m.add("SizeLimitError", m.py().get_type::<SizeLimitError>())?;
    m.add_class::<Instance>()?;
    m.add_class::<Violator>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_solve, m)?)?;
    m.add_function(wrap_pyfunction!(solvable_via_weight, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(gen_tournament, m)?)?;
    m.add_function(wrap_pyfunction!(gen_rooks, m)?)?;
    m.add_function(wrap_pyfunction!(gen_chessboard, m)?)?;
    m.add_function(wrap_pyfunction!(gen_assignment, m)?)?;
    Ok(())
}
