//! Occurrence polarity, dependency graphs, chains and tightness relative
//! to a set of assumptions.

mod chains;
mod check;
mod graph;
mod occurrences;
mod refute;
mod tptp;

pub use chains::{chain_formula, chains, Chain, Chains};
pub use check::{check_gamma_tight, joint_signature, TightnessError, TightnessStatus, TightnessVerdict};
pub use graph::{chains_to_dot, is_tight, predicate_dependency_graph, PredicateDependencyGraph};
pub use occurrences::{classify_occurrences, positive_nonnegated, OccurrenceInfo};
pub use refute::{Refuter, RefuterBudget};
pub use tptp::export_tptp;
