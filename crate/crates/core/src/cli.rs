//! `smp` command line: instance/result file formats and the `solve`,
//! `check`, `gen` and `verify` commands.
//!
//! Exit codes: 0 success, 1 unsolvable or invalid, 2 infeasible after
//! refusals, 3 size limit (check), 64 usage, 65 parse or validation error,
//! 66 unreadable input or unwritable output.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{gen_assignment, gen_chessboard, gen_rooks, gen_tournament, WorkforceParams};
use crate::hall::{hall_bicriteria, HallViolator};
use crate::instance::{
    cmp_to_smp, preprocess_refusals, validate_assignment, Assignment, InstanceError, RawInstance, Side, SmpInstance,
};
use crate::star::{solve, solve_via_subproblems, unsolvable_certificate, SolveOutcome};
use crate::weighted::weight_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSOLVABLE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk instance. A member without a key in `girl_lists`/`boy_lists`
/// holds no list; explicit empty arrays are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub girls: Vec<String>,
    pub boys: Vec<String>,
    #[serde(default)]
    pub girl_lists: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub boy_lists: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refusers: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Unsolvable,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolatorFile {
    pub side: Side,
    pub members: Vec<String>,
    pub union_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violator: Option<ViolatorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infeasible_member: Option<String>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("explicit empty list for {0}; omit the key to mean no list")]
    EmptyList(String),
    #[error("result payload does not match status {0:?}")]
    Payload(Status),
}

impl InstanceFile {
    pub fn from_raw(raw: &RawInstance) -> Self {
        let nonempty = |m: &IndexMap<String, Vec<String>>| {
            m.iter().filter(|(_, l)| !l.is_empty()).map(|(k, l)| (k.clone(), l.clone())).collect()
        };
        InstanceFile {
            version: FORMAT_VERSION,
            girls: raw.girls.clone(),
            boys: raw.boys.clone(),
            girl_lists: nonempty(&raw.girl_lists),
            boy_lists: nonempty(&raw.boy_lists),
            refusers: (!raw.refusers.is_empty()).then(|| raw.refusers.clone()),
        }
    }

    pub fn from_instance(inst: &SmpInstance) -> Self {
        Self::from_raw(&inst.to_raw())
    }

    pub fn into_raw(self) -> Result<RawInstance, FormatError> {
        if self.version != FORMAT_VERSION {
            return Err(FormatError::Version(self.version));
        }
        for (owner, list) in self.girl_lists.iter().chain(&self.boy_lists) {
            if list.is_empty() {
                return Err(FormatError::EmptyList(owner.clone()));
            }
        }
        Ok(RawInstance {
            girls: self.girls,
            boys: self.boys,
            girl_lists: self.girl_lists,
            boy_lists: self.boy_lists,
            refusers: self.refusers.unwrap_or_default(),
        })
    }
}

pub fn parse_instance(text: &str) -> Result<RawInstance, FormatError> {
    serde_json::from_str::<InstanceFile>(text)?.into_raw()
}

pub fn instance_to_string(inst: &SmpInstance) -> String {
    to_pretty(&InstanceFile::from_instance(inst))
}

pub fn parse_result(text: &str) -> Result<ResultFile, FormatError> {
    let r: ResultFile = serde_json::from_str(text)?;
    let ok = match r.status {
        Status::Solved => r.assignment.is_some() && r.violator.is_none() && r.infeasible_member.is_none(),
        Status::Unsolvable => r.assignment.is_none() && r.violator.is_some() && r.infeasible_member.is_none(),
        Status::Infeasible => r.assignment.is_none() && r.violator.is_none() && r.infeasible_member.is_some(),
    };
    if ok {
        Ok(r)
    } else {
        Err(FormatError::Payload(r.status))
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

impl ResultFile {
    pub fn solved(inst: &SmpInstance, a: &Assignment) -> Self {
        ResultFile {
            status: Status::Solved,
            assignment: Some(a.named(inst).into_iter().map(|(g, b)| [g, b]).collect()),
            violator: None,
            infeasible_member: None,
        }
    }

    pub fn unsolvable(inst: &SmpInstance, v: &HallViolator) -> Self {
        ResultFile {
            status: Status::Unsolvable,
            assignment: None,
            violator: Some(ViolatorFile { side: v.side, members: v.member_names(inst), union_size: v.union_size }),
            infeasible_member: None,
        }
    }

    pub fn infeasible(member: &str) -> Self {
        ResultFile { status: Status::Infeasible, assignment: None, violator: None, infeasible_member: Some(member.into()) }
    }

    pub fn from_outcome(inst: &SmpInstance, outcome: &SolveOutcome) -> Self {
        match outcome {
            SolveOutcome::Solved(a) => Self::solved(inst, a),
            SolveOutcome::Unsolvable(v) => Self::unsolvable(inst, v),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Solved => EXIT_OK,
            Status::Unsolvable => EXIT_UNSOLVABLE,
            Status::Infeasible => EXIT_INFEASIBLE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// One maximum matching of the star graph, then repair.
    Star,
    /// Girls' and boys' problems matched separately, combined, repaired.
    Subproblems,
    /// Maximum-weight threshold test.
    Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Tournament,
    Rooks,
    Chessboard,
    Assignment,
}

#[derive(Debug, Parser)]
#[command(name = "smp", version, about = "Symmetric marriage problem solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and write a result file.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "star")]
        method: Method,
        /// Result path; standard output when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check the two-sided Hall criteria by subset enumeration.
    Check { input: PathBuf },
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        tasks: Option<usize>,
        #[arg(long, default_value_t = 0)]
        paid: usize,
        #[arg(long, default_value_t = 0)]
        mandatory: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Re-check a result file against its instance.
    Verify { instance: PathBuf, result: PathBuf },
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve { input, method, output } => cmd_solve(&input, method, output.as_deref(), out),
        Command::Check { input } => cmd_check(&input, out),
        Command::Gen { kind, n, seed, workers, tasks, paid, mandatory, density, output } => {
            let params = GenParams { n, seed, workers, tasks, paid, mandatory, density };
            cmd_gen(kind, &params, output.as_deref(), out)
        }
        Command::Verify { instance, result } => cmd_verify(&instance, &result, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "smp: {e}");
            e.exit_code()
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{path}: {source}")]
    Instance { path: String, source: InstanceError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Format { .. } | CliError::Instance { .. } => EXIT_DATA,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

/// Either a usable instance or the member whose list refusals emptied.
enum Loaded {
    Ready(SmpInstance),
    Infeasible(String),
}

fn load_instance(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let raw = parse_instance(&text).map_err(|source| CliError::Format { path: path.display().to_string(), source })?;
    match preprocess_refusals(&raw) {
        Ok(inst) => Ok(Loaded::Ready(inst)),
        Err(InstanceError::Infeasible(m)) => Ok(Loaded::Infeasible(m)),
        Err(source) => Err(CliError::Instance { path: path.display().to_string(), source }),
    }
}

/// Solves with the chosen method. The weight method has no certificate of
/// its own; an unsolvable verdict is reported with the alternating-path
/// violator.
pub fn solve_with(inst: &SmpInstance, method: Method) -> SolveOutcome {
    match method {
        Method::Star => solve(inst),
        Method::Subproblems => solve_via_subproblems(inst),
        Method::Weight => {
            let check = weight_check(inst);
            if check.solvable() {
                SolveOutcome::Solved(check.positive_pairs)
            } else {
                SolveOutcome::Unsolvable(
                    unsolvable_certificate(inst).expect("weight deficit implies a Hall violator"),
                )
            }
        }
    }
}

pub fn cmd_solve(input: &Path, method: Method, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let result = match load_instance(input)? {
        Loaded::Infeasible(m) => ResultFile::infeasible(&m),
        Loaded::Ready(inst) => ResultFile::from_outcome(&inst, &solve_with(&inst, method)),
    };
    emit(&to_pretty(&result), output, out)?;
    Ok(result.exit_code())
}

pub fn cmd_check(input: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    let inst = match load_instance(input)? {
        Loaded::Infeasible(m) => {
            writeln!(out, "infeasible: list of {m} emptied by refusals").map_err(io)?;
            return Ok(EXIT_INFEASIBLE);
        }
        Loaded::Ready(inst) => inst,
    };
    match hall_bicriteria(&inst) {
        Err(limit) => {
            writeln!(out, "size limit: {limit}").map_err(io)?;
            Ok(EXIT_SIZE_LIMIT)
        }
        Ok(None) => {
            writeln!(out, "ok").map_err(io)?;
            Ok(EXIT_OK)
        }
        Ok(Some(v)) => {
            writeln!(
                out,
                "violator: {} [{}] union_size {}",
                v.side,
                v.member_names(&inst).join(", "),
                v.union_size
            )
            .map_err(io)?;
            Ok(EXIT_UNSOLVABLE)
        }
    }
}

/// Parameters shared by every generator kind; each kind reads what it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: Option<usize>,
    pub seed: u64,
    pub workers: Option<usize>,
    pub tasks: Option<usize>,
    pub paid: usize,
    pub mandatory: usize,
    pub density: f64,
}

pub fn generate(kind: GenKind, p: &GenParams) -> Result<SmpInstance, CliError> {
    let need_n = || p.n.ok_or_else(|| CliError::Usage("--n is required for this kind".into()));
    let usage = |e: crate::generators::GenError| CliError::Usage(e.to_string());
    Ok(match kind {
        GenKind::Tournament => cmp_to_smp(&gen_tournament(need_n()?, p.seed).map_err(usage)?.cmp),
        GenKind::Rooks => cmp_to_smp(&gen_rooks(need_n()?, p.seed).map_err(usage)?.cmp),
        GenKind::Chessboard => gen_chessboard(need_n()?, p.seed).map_err(usage)?.instance,
        GenKind::Assignment => {
            let workers = p.workers.ok_or_else(|| CliError::Usage("--workers is required".into()))?;
            let tasks = p.tasks.ok_or_else(|| CliError::Usage("--tasks is required".into()))?;
            let params = WorkforceParams { workers, tasks, paid: p.paid, mandatory: p.mandatory, density: p.density };
            gen_assignment(params, p.seed).map_err(usage)?
        }
    })
}

pub fn cmd_gen(kind: GenKind, p: &GenParams, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let inst = generate(kind, p)?;
    emit(&instance_to_string(&inst), output, out)?;
    Ok(EXIT_OK)
}

/// Independently re-checks a result against its instance. Returns the
/// problems found; empty means the result is valid.
pub fn verify_result(raw: &RawInstance, result: &ResultFile) -> Vec<String> {
    let inst = match preprocess_refusals(raw) {
        Ok(inst) => inst,
        Err(InstanceError::Infeasible(m)) => {
            return match (&result.status, &result.infeasible_member) {
                (Status::Infeasible, Some(claimed)) if *claimed == m => Vec::new(),
                _ => vec![format!("instance is infeasible at {m}")],
            };
        }
        Err(e) => return vec![e.to_string()],
    };
    match result.status {
        Status::Infeasible => vec!["instance is not infeasible".into()],
        Status::Solved => {
            let mut problems = Vec::new();
            let mut pairs = Vec::new();
            for [g, b] in result.assignment.as_deref().unwrap_or_default() {
                match (inst.girl_index(g), inst.boy_index(b)) {
                    (Some(gi), Some(bi)) => pairs.push((gi, bi)),
                    _ => problems.push(format!("unknown pair [{g}, {b}]")),
                }
            }
            problems.extend(validate_assignment(&inst, &Assignment::new(pairs)));
            problems
        }
        Status::Unsolvable => {
            let Some(v) = &result.violator else { return vec!["missing violator".into()] };
            let mut members = Vec::new();
            for m in &v.members {
                let idx = match v.side {
                    Side::Girls => inst.girl_index(m),
                    Side::Boys => inst.boy_index(m),
                };
                match idx {
                    Some(i) => members.push(i),
                    None => return vec![format!("unknown {} member {m}", v.side)],
                }
            }
            let violator = HallViolator { side: v.side, members, union_size: v.union_size };
            if violator.verify(&inst) {
                Vec::new()
            } else {
                vec!["violator does not re-verify against pared lists".into()]
            }
        }
    }
}

pub fn cmd_verify(instance: &Path, result: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let raw = parse_instance(&read(instance)?)
        .map_err(|source| CliError::Format { path: instance.display().to_string(), source })?;
    let res = parse_result(&read(result)?)
        .map_err(|source| CliError::Format { path: result.display().to_string(), source })?;
    let problems = verify_result(&raw, &res);
    let io = |source| CliError::Io { path: "<stdout>".into(), source };
    if problems.is_empty() {
        writeln!(out, "valid").map_err(io)?;
        Ok(EXIT_OK)
    } else {
        for p in &problems {
            writeln!(out, "invalid: {p}").map_err(io)?;
        }
        Ok(EXIT_UNSOLVABLE)
    }
}
