//! Built-in example programs with their assumption sets.

use std::fmt::Write;

use thiserror::Error;

use crate::syntax::{parse_program, parse_sentences, ParseError, Program, Sentence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0}; known: {known}", known = FIXTURE_NAMES.join(", "))]
    Unknown(String),
    #[error("fixture {name} does not parse: {source}")]
    Parse { name: String, source: ParseError },
}

/// Names accepted by [`builtin_fixture`]; `M(k)` also accepts `Mk` and `M`
/// (meaning `M(1)`).
pub const FIXTURE_NAMES: &[&str] = &[
    "prog1", "prog2", "prog4", "ex1", "ex2", "example1", "example2", "example3", "M(k)",
];

/// A program together with the assumptions `Γ` it is studied under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub source: String,
    pub gamma_source: String,
    pub program: Program,
    pub gamma: Vec<Sentence>,
}

fn texts(name: &str) -> Option<(String, String)> {
    let (prog, gamma) = match name {
        "prog1" => ("p(a).\nq(b).\np(X) :- q(X).\n", ""),
        "prog2" => ("p(X) :- q(X).\nq(a) :- p(b).\n", ""),
        "prog4" => (
            "p(a) :- p(b).\nq(c) :- q(d).\n:- a = b.\n:- c = d.\n",
            "",
        ),
        "ex1" => ("p(a,b).\nq(X,Y) :- p(Y,X) & not p(X,Y).\n", ""),
        "ex2" => ("p(X) :- q(X).\nq(X) :- r(X).\nr(X) :- s(X).\n", ""),
        "example1" => ("p(a) :- p(X) & X != a.\n", ""),
        "example2" => ("p(a) :- p(b).\nq(c) :- q(d).\n", "a != b.\nc != d.\n"),
        "example3" => ("p(X) :- q(X).\nq(a) :- p(b).\n", "a != b.\n"),
        _ => {
            let k = step_bound(name)?;
            return Some((moving_objects(k), moving_objects_gamma(k)));
        }
    };
    Some((prog.to_string(), gamma.to_string()))
}

fn step_bound(name: &str) -> Option<usize> {
    if name == "M" {
        return Some(1);
    }
    let digits = name
        .strip_prefix("M(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| name.strip_prefix('M'))?;
    digits.parse().ok()
}

/// The moving-objects program with steps `0..=k`.
pub fn moving_objects(k: usize) -> String {
    let mut s = String::from(
        "#extensional object/1.\n#extensional place/1.\n#extensional move/3.\n",
    );
    for i in 0..=k {
        writeln!(s, "step({i}).").unwrap();
    }
    for i in 0..k {
        writeln!(s, "next({i},{}).", i + 1).unwrap();
    }
    for i in 0..=k {
        for j in i + 1..=k {
            writeln!(s, ":- {i} = {j}.").unwrap();
        }
    }
    s.push_str(
        ":- at(X,Y,Z) & not (object(X) & place(Y) & step(Z)).\n\
         :- move(X,Y,Z) & not (object(X) & place(Y) & step(Z)).\n\
         :- at(X,Y1,Z) & at(X,Y2,Z) & Y1 != Y2.\n\
         :- object(X) & step(Z) & not exists Y (at(X,Y,Z)).\n\
         at(X,Y,U) :- move(X,Y,Z) & next(Z,U).\n\
         {at(X,Y,0)} :- object(X) & place(Y).\n\
         {at(X,Y,U)} :- at(X,Y,Z) & next(Z,U).\n",
    );
    s
}

/// `H`: unique names for the steps and the closures of the argument,
/// uniqueness and existence conditions on locations.
pub fn moving_objects_gamma(k: usize) -> String {
    let mut s = String::new();
    for i in 0..=k {
        for j in i + 1..=k {
            writeln!(s, "{i} != {j}.").unwrap();
        }
    }
    s.push_str(
        "forall X, Y, Z (at(X,Y,Z) -> object(X) & place(Y) & step(Z)).\n\
         forall X, Y, Z (move(X,Y,Z) -> object(X) & place(Y) & step(Z)).\n\
         forall X, Y1, Y2, Z (at(X,Y1,Z) & at(X,Y2,Z) -> Y1 = Y2).\n\
         forall X, Z (object(X) & step(Z) -> exists Y (at(X,Y,Z))).\n",
    );
    s
}

/// Looks up a built-in program by name.
pub fn builtin_fixture(name: &str) -> Result<Fixture, FixtureError> {
    let (source, gamma_source) = texts(name).ok_or_else(|| FixtureError::Unknown(name.to_string()))?;
    let parse_error = |source| FixtureError::Parse {
        name: name.to_string(),
        source,
    };
    Ok(Fixture {
        name: name.to_string(),
        program: parse_program(&source).map_err(parse_error)?,
        gamma: parse_sentences(&gamma_source).map_err(parse_error)?,
        source,
        gamma_source,
    })
}
