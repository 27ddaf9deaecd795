//! Analysis of Lloyd-Topor logic programs: first-order completion,
//! tightness and tightness relative to a set of assumptions, and a
//! brute-force stable model checker over finite interpretations used to
//! confirm when the stable models coincide with the models of the
//! completion.

pub mod cli;
pub mod completion;
pub mod equiv;
pub mod semantics;
pub mod syntax;
pub mod tightness;
