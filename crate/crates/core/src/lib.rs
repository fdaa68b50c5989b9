//! Decision and construction for the symmetric marriage problem: bipartite
//! matching where girls and boys may each hold a hard list of acceptable
//! partners or hold no list at all.
//!
//! * [`instance`]: instance model, list paring and reductions.
//! * [`bipartite`]: Hopcroft-Karp and Hall deficiency certificates.
//! * [`star`]: the four-group star graph, mismatch repair and [`star::solve`].
//! * [`hall`]: exhaustive Hall criteria and a backtracking oracle.
//! * [`weighted`]: the maximum-weight threshold cross-check.
//! * [`generators`]: seeded application instances.
//! * [`cli`]: file formats and the `smp` commands.

pub mod bipartite;
pub mod cli;
pub mod generators;
pub mod hall;
pub mod instance;
pub mod star;
pub mod weighted;

pub use bipartite::{max_matching, BipartiteGraph, DeficiencyCertificate, Matching};
pub use hall::{hall_bicriteria, oracle_solve, HallViolator};
pub use instance::{Assignment, CmpInstance, RawInstance, Side, SmpInstance};
pub use star::{solve, solve_via_subproblems, SolveOutcome};
pub use weighted::solvable_via_weight;
