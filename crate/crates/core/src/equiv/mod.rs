//! Executable comparison of stable models with the completion, and the
//! built-in example programs.

mod check;
mod fixtures;
mod prop3;

pub use check::{check_equivalence, Disagreement, DisagreementKind, EquivError, EquivReport, Mode};
pub use fixtures::{
    builtin_fixture, moving_objects, moving_objects_gamma, Fixture, FixtureError, FIXTURE_NAMES,
};
pub use prop3::{
    check_proposition3, directed_interpretations, structured_interpretations,
    successor_state_axioms,
};
