//! Finite interpretations, grounding, reducts and the stable, supported and
//! tight-on checks built on them.

mod ground;
mod interpretation;
mod stable;
mod support;

use thiserror::Error;

pub use ground::{
    ground, ground_program, reduct, satisfies, GroundAtom, GroundFormula, GroundProgram,
    GroundRule, GroundedProgram, PropInterp,
};
pub use interpretation::{
    enumerate_interpretations, interpretation_count, sample_interpretation,
    sample_interpretations, Interpretation, InterpretationIter, Relation,
};
pub use stable::{is_p_stable_direct, is_sm_model, is_stable, is_stable_with};
pub use support::{is_supported, is_tight_on, parent_graph, pnn_nnn};

/// Environment variable overriding [`Limits::interpretation_ceiling`].
pub const GUARD_CEILING_VAR: &str = "LT_TIGHT_GUARD_CEILING";
/// Environment variable overriding [`Limits::stable_atom_cap`].
pub const ATOM_CAP_VAR: &str = "LT_TIGHT_ATOM_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("constant {0} has no denotation")]
    UnmappedConstant(String),
    #[error("variable {0} is free")]
    FreeVariable(String),
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("invalid interpretation literal: {0}")]
    InvalidLiteral(String),
    #[error("predicate {0} is not interpreted")]
    UnknownPredicate(String),
    #[error("predicate {predicate} has arity {expected}, interpreted with arity {found}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("resource guard: {what} needs {size}, limit is {limit}")]
    ResourceGuard {
        what: String,
        size: String,
        limit: String,
    },
    #[error("choice rule must be desugared before grounding: {0}")]
    ChoiceRule(String),
}

/// Ceilings on exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of interpretations an exhaustive enumeration may visit.
    pub interpretation_ceiling: u128,
    /// Largest number of atoms a minimality check may search over.
    pub stable_atom_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            interpretation_ceiling: 1 << 24,
            stable_atom_cap: 24,
        }
    }
}

impl Limits {
    /// Defaults overridden by `LT_TIGHT_GUARD_CEILING` and `LT_TIGHT_ATOM_CAP`
    /// when they hold valid numbers.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(GUARD_CEILING_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            limits.interpretation_ceiling = v;
        }
        if let Some(v) = std::env::var(ATOM_CAP_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            limits.stable_atom_cap = v;
        }
        limits
    }
}
