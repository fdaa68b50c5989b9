//! Seeded instance generators for the classic applications, each with a
//! structural checker that runs before the instance is returned.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`, with a
//! distinct stream per generator kind, so an instance depends only on its
//! parameters and seed.

use std::collections::{HashMap, HashSet};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{CmpInstance, SmpInstance};

/// Rejection-sampling budget for the chessboard generator.
pub const CHESSBOARD_RETRY_LIMIT: usize = 1000;

const STREAM_TOURNAMENT: u64 = 1;
const STREAM_ROOKS: u64 = 2;
const STREAM_CHESSBOARD: u64 = 3;
const STREAM_ASSIGNMENT: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no balanced placement found within {0} attempts")]
    RetryExhausted(usize),
    #[error("{0} must be assigned but has no capable partner")]
    NoCapability(String),
    #[error("generated structure failed its check: {0}")]
    CheckFailed(String),
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Round-robin schedule by the circle method: team 0 stays put while the
/// other `2n - 1` teams rotate. Each session is a list of `(home, away)`.
pub fn circle_schedule(n: usize) -> Vec<Vec<(usize, usize)>> {
    let rotating = 2 * n - 1;
    (0..rotating)
        .map(|r| {
            let mut session = vec![(0, 1 + r)];
            for i in 1..n {
                let a = 1 + (r + i) % rotating;
                let b = 1 + (r + rotating - i) % rotating;
                session.push((a, b));
            }
            session
        })
        .collect()
}

/// Every team plays once per session and every pair meets exactly once.
pub fn check_round_robin(teams: usize, schedule: &[Vec<(usize, usize)>]) -> Result<(), GenError> {
    if schedule.len() + 1 != teams {
        return Err(GenError::CheckFailed(format!("{} sessions for {teams} teams", schedule.len())));
    }
    let mut met = HashSet::new();
    for (s, session) in schedule.iter().enumerate() {
        let mut seen = vec![false; teams];
        for &(a, b) in session {
            if a == b || a >= teams || b >= teams {
                return Err(GenError::CheckFailed(format!("bad match ({a}, {b}) in session {s}")));
            }
            for t in [a, b] {
                if std::mem::replace(&mut seen[t], true) {
                    return Err(GenError::CheckFailed(format!("team {t} plays twice in session {s}")));
                }
            }
            if !met.insert((a.min(b), a.max(b))) {
                return Err(GenError::CheckFailed(format!("teams {a} and {b} meet twice")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GenError::CheckFailed(format!("a team sits out session {s}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    pub schedule: Vec<Vec<(usize, usize)>>,
    /// Winning teams per session, ascending.
    pub winners: Vec<Vec<usize>>,
    /// Sessions `s1..` against teams `t1..`, listing each session's winners.
    pub cmp: CmpInstance,
}

pub fn gen_tournament(n: usize, seed: u64) -> Result<Tournament, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("tournament needs n >= 1".into()));
    }
    let teams = 2 * n;
    let schedule = circle_schedule(n);
    check_round_robin(teams, &schedule)?;
    let mut rng = rng_for(seed, STREAM_TOURNAMENT);
    let winners: Vec<Vec<usize>> = schedule
        .iter()
        .map(|session| {
            let mut w: Vec<usize> = session.iter().map(|&(a, b)| if rng.random_bool(0.5) { a } else { b }).collect();
            w.sort_unstable();
            w
        })
        .collect();
    if let Some(s) = winners.iter().position(|w| w.len() != n) {
        return Err(GenError::CheckFailed(format!("session {s} has {} winners", winners[s].len())));
    }
    let cmp = CmpInstance::new(names("s", schedule.len()), names("t", teams), winners.clone())
        .map_err(|e| GenError::CheckFailed(e.to_string()))?;
    Ok(Tournament { schedule, winners, cmp })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rooks {
    /// `board[row][col]` is true where a rook stands; `2n x 2n`.
    pub board: Vec<Vec<bool>>,
    /// Rows `r1..` against columns `c1..`, listing each row's rook columns.
    pub cmp: CmpInstance,
}

/// Exactly `n` rooks in every row and every column.
pub fn check_rooks(n: usize, board: &[Vec<bool>]) -> Result<(), GenError> {
    let size = 2 * n;
    if board.len() != size || board.iter().any(|r| r.len() != size) {
        return Err(GenError::CheckFailed("board is not 2n x 2n".into()));
    }
    for (i, row) in board.iter().enumerate() {
        let c = row.iter().filter(|&&x| x).count();
        if c != n {
            return Err(GenError::CheckFailed(format!("row {i} holds {c} rooks")));
        }
    }
    for j in 0..size {
        let c = board.iter().filter(|r| r[j]).count();
        if c != n {
            return Err(GenError::CheckFailed(format!("column {j} holds {c} rooks")));
        }
    }
    Ok(())
}

/// Superposes the cyclic shifts `0..n` of order `2n`, then shuffles rows and
/// columns.
pub fn gen_rooks(n: usize, seed: u64) -> Result<Rooks, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("rooks needs n >= 1".into()));
    }
    let size = 2 * n;
    let mut rng = rng_for(seed, STREAM_ROOKS);
    let mut row_perm: Vec<usize> = (0..size).collect();
    let mut col_perm: Vec<usize> = (0..size).collect();
    row_perm.shuffle(&mut rng);
    col_perm.shuffle(&mut rng);
    let mut board = vec![vec![false; size]; size];
    for i in 0..size {
        for j in 0..size {
            if (j + size - i) % size < n {
                board[row_perm[i]][col_perm[j]] = true;
            }
        }
    }
    check_rooks(n, &board)?;
    let lists = board.iter().map(|row| (0..size).filter(|&j| row[j]).collect()).collect();
    let cmp = CmpInstance::new(names("r", size), names("c", size), lists)
        .map_err(|e| GenError::CheckFailed(e.to_string()))?;
    Ok(Rooks { board, cmp })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chessboard {
    pub n: usize,
    /// Row player's entries, `4n x 4n`, each in `{-1, 0, 1}`.
    pub row_player: Vec<Vec<i8>>,
    /// Column player's entries, indexed `[row][col]`.
    pub col_player: Vec<Vec<i8>>,
    /// Cell-wise sum of the two players' entries.
    pub cell_sums: Vec<Vec<i8>>,
    /// Rows `r1..` as girls, columns `c1..` as boys.
    pub instance: SmpInstance,
}

/// Fills the lines (rows for the row player) of a `size x size` grid.
/// Returns `lines[line][cross]`. At least `3n` lines are chosen, each with
/// at most `n` negative entries, and no crossing index collects more than
/// `n` negatives.
fn place_player(n: usize, rng: &mut ChaCha8Rng, attempts: &mut usize) -> Result<Vec<Vec<i8>>, GenError> {
    let size = 4 * n;
    let chosen_count = rng.random_range(3 * n..=size);
    let mut chosen = index::sample(rng, size, chosen_count).into_vec();
    chosen.sort_unstable();
    let mut lines = vec![vec![0i8; size]; size];
    let mut capacity = vec![n; size];
    for &line in &chosen {
        loop {
            let negatives = rng.random_range(0..=n);
            let open: Vec<usize> = (0..size).filter(|&c| capacity[c] > 0).collect();
            if open.len() < negatives {
                *attempts += 1;
                if *attempts > CHESSBOARD_RETRY_LIMIT {
                    return Err(GenError::RetryExhausted(CHESSBOARD_RETRY_LIMIT));
                }
                continue;
            }
            lines[line].iter_mut().for_each(|x| *x = 1);
            for k in index::sample(rng, open.len(), negatives) {
                let c = open[k];
                lines[line][c] = -1;
                capacity[c] -= 1;
            }
            break;
        }
    }
    Ok(lines)
}

/// Checks one player's placement, given as `lines[line][cross]`.
fn check_player(n: usize, lines: &[Vec<i8>], who: &str) -> Result<(), GenError> {
    let size = 4 * n;
    let active: Vec<&Vec<i8>> = lines.iter().filter(|l| l.iter().any(|&x| x != 0)).collect();
    if active.len() < 3 * n {
        return Err(GenError::CheckFailed(format!("{who} chose {} lines", active.len())));
    }
    for l in &active {
        let plus = l.iter().filter(|&&x| x == 1).count();
        if plus < 3 * n || l.contains(&0) {
            return Err(GenError::CheckFailed(format!("{who} line with {plus} positive entries")));
        }
    }
    for c in 0..size {
        let neg = lines.iter().filter(|l| l[c] == -1).count();
        if neg > n {
            return Err(GenError::CheckFailed(format!("{who} puts {neg} negatives across index {c}")));
        }
    }
    Ok(())
}

fn transpose(m: &[Vec<i8>]) -> Vec<Vec<i8>> {
    let size = m.len();
    (0..size).map(|j| (0..size).map(|i| m[i][j]).collect()).collect()
}

pub fn gen_chessboard(n: usize, seed: u64) -> Result<Chessboard, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParameter("chessboard needs n >= 1".into()));
    }
    let size = 4 * n;
    let mut rng = rng_for(seed, STREAM_CHESSBOARD);
    let mut attempts = 0;
    let row_player = place_player(n, &mut rng, &mut attempts)?;
    let col_player = transpose(&place_player(n, &mut rng, &mut attempts)?);
    check_player(n, &row_player, "row player")?;
    check_player(n, &transpose(&col_player), "column player")?;

    let cell_sums = (0..size).map(|i| (0..size).map(|j| row_player[i][j] + col_player[i][j]).collect()).collect();
    let girl_lists = row_player.iter().map(|row| (0..size).filter(|&j| row[j] == 1).collect()).collect();
    let boy_lists = (0..size).map(|j| (0..size).filter(|&i| col_player[i][j] == 1).collect()).collect();
    let instance = SmpInstance::from_lists(names("r", size), names("c", size), girl_lists, boy_lists)
        .map_err(|e| GenError::CheckFailed(e.to_string()))?;
    Ok(Chessboard { n, row_player, col_player, cell_sums, instance })
}

/// Workers and tasks with a capability relation. Paid workers must be put
/// to work and mandatory tasks must be staffed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workforce {
    pub workers: Vec<String>,
    pub tasks: Vec<String>,
    pub paid_workers: Vec<String>,
    pub mandatory_tasks: Vec<String>,
    /// `(worker, task)` pairs.
    pub capability: Vec<(String, String)>,
}

/// Workers become girls and tasks boys. Paid workers list the tasks they
/// can do and mandatory tasks list the workers who can do them; volunteers
/// and optional tasks hold no list.
pub fn assignment_instance(w: &Workforce) -> Result<SmpInstance, GenError> {
    let wi: HashMap<&str, usize> = w.workers.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let ti: HashMap<&str, usize> = w.tasks.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let lookup = |map: &HashMap<&str, usize>, id: &str, what: &str| {
        map.get(id).copied().ok_or_else(|| GenError::InvalidParameter(format!("unknown {what} {id}")))
    };
    let mut can_do = vec![Vec::new(); w.workers.len()];
    let mut done_by = vec![Vec::new(); w.tasks.len()];
    for (worker, task) in &w.capability {
        let (a, t) = (lookup(&wi, worker, "worker")?, lookup(&ti, task, "task")?);
        can_do[a].push(t);
        done_by[t].push(a);
    }
    let mut girl_lists = vec![Vec::new(); w.workers.len()];
    for p in &w.paid_workers {
        let a = lookup(&wi, p, "paid worker")?;
        if can_do[a].is_empty() {
            return Err(GenError::NoCapability(p.clone()));
        }
        girl_lists[a] = can_do[a].clone();
    }
    let mut boy_lists = vec![Vec::new(); w.tasks.len()];
    for m in &w.mandatory_tasks {
        let t = lookup(&ti, m, "mandatory task")?;
        if done_by[t].is_empty() {
            return Err(GenError::NoCapability(m.clone()));
        }
        boy_lists[t] = done_by[t].clone();
    }
    SmpInstance::from_lists(w.workers.clone(), w.tasks.clone(), girl_lists, boy_lists)
        .map_err(|e| GenError::InvalidParameter(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkforceParams {
    pub workers: usize,
    pub tasks: usize,
    pub paid: usize,
    pub mandatory: usize,
    /// Probability that a worker can do a given task.
    pub density: f64,
}

/// Random workforce: the first `paid` workers are paid, the first
/// `mandatory` tasks mandatory. Every paid worker and mandatory task gets at
/// least one capability.
pub fn gen_workforce(p: WorkforceParams, seed: u64) -> Result<Workforce, GenError> {
    if p.paid > p.workers || p.mandatory > p.tasks {
        return Err(GenError::InvalidParameter("more paid workers or mandatory tasks than exist".into()));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(GenError::InvalidParameter(format!("density {} outside [0, 1]", p.density)));
    }
    if (p.paid > 0 && p.tasks == 0) || (p.mandatory > 0 && p.workers == 0) {
        return Err(GenError::InvalidParameter("nobody to pair with".into()));
    }
    let mut rng = rng_for(seed, STREAM_ASSIGNMENT);
    let mut cap = vec![vec![false; p.tasks]; p.workers];
    for row in cap.iter_mut() {
        for c in row.iter_mut() {
            *c = rng.random_bool(p.density);
        }
    }
    for a in 0..p.paid {
        if !cap[a].iter().any(|&c| c) {
            let t = rng.random_range(0..p.tasks);
            cap[a][t] = true;
        }
    }
    for t in 0..p.mandatory {
        if !cap.iter().any(|row| row[t]) {
            let a = rng.random_range(0..p.workers);
            cap[a][t] = true;
        }
    }
    let workers = names("w", p.workers);
    let tasks = names("t", p.tasks);
    let capability = (0..p.workers)
        .flat_map(|a| (0..p.tasks).map(move |t| (a, t)))
        .filter(|&(a, t)| cap[a][t])
        .map(|(a, t)| (workers[a].clone(), tasks[t].clone()))
        .collect();
    Ok(Workforce {
        paid_workers: workers[..p.paid].to_vec(),
        mandatory_tasks: tasks[..p.mandatory].to_vec(),
        workers,
        tasks,
        capability,
    })
}

pub fn gen_assignment(p: WorkforceParams, seed: u64) -> Result<SmpInstance, GenError> {
    assignment_instance(&gen_workforce(p, seed)?)
}
