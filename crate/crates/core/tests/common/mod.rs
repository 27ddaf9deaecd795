//! Oracles and generators shared by the integration tests.
//!
//! The oracles re-implement satisfaction, reducts and stability directly
//! from their definitions, by enumerating every subset, so that they share
//! no code with the checker under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use lt_tight::semantics::{GroundAtom, GroundFormula, GroundProgram, GroundRule, PropInterp};
use lt_tight::syntax::{Formula, Term};
use proptest::prelude::*;

pub fn oracle_sat(j: &BTreeSet<GroundAtom>, f: &GroundFormula) -> bool {
    match f {
        GroundFormula::Bot => false,
        GroundFormula::Atom(a) => j.contains(a),
        GroundFormula::And(fs) => fs.iter().all(|g| oracle_sat(j, g)),
        GroundFormula::Or(fs) => fs.iter().any(|g| oracle_sat(j, g)),
        GroundFormula::Implies(l, r) => !oracle_sat(j, l) || oracle_sat(j, r),
    }
}

pub fn oracle_reduct(f: &GroundFormula, j: &BTreeSet<GroundAtom>) -> GroundFormula {
    if !oracle_sat(j, f) {
        return GroundFormula::Bot;
    }
    match f {
        GroundFormula::Bot => GroundFormula::Bot,
        GroundFormula::Atom(_) => f.clone(),
        GroundFormula::And(fs) => GroundFormula::And(fs.iter().map(|g| oracle_reduct(g, j)).collect()),
        GroundFormula::Or(fs) => GroundFormula::Or(fs.iter().map(|g| oracle_reduct(g, j)).collect()),
        GroundFormula::Implies(l, r) => {
            GroundFormula::Implies(Box::new(oracle_reduct(l, j)), Box::new(oracle_reduct(r, j)))
        }
    }
}

/// Every subset of `atoms`, in order of the binary counter over them.
pub fn subsets(atoms: &[GroundAtom]) -> Vec<BTreeSet<GroundAtom>> {
    assert!(atoms.len() < 20, "oracle would enumerate too many subsets");
    (0u32..1 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect()
}

/// `j` is a model of `f` and no proper subset of `j` is a model of `f^j`.
pub fn oracle_stable(f: &GroundFormula, j: &BTreeSet<GroundAtom>) -> bool {
    if !oracle_sat(j, f) {
        return false;
    }
    let reduct = oracle_reduct(f, j);
    let atoms: Vec<GroundAtom> = j.iter().cloned().collect();
    subsets(&atoms)
        .into_iter()
        .all(|k| k.len() == j.len() || !oracle_sat(&k, &reduct))
}

/// All stable models of `f` among the subsets of `universe`.
pub fn oracle_stable_models(f: &GroundFormula, universe: &[GroundAtom]) -> Vec<BTreeSet<GroundAtom>> {
    subsets(universe)
        .into_iter()
        .filter(|j| oracle_stable(f, j))
        .collect()
}

pub fn prop(j: &BTreeSet<GroundAtom>) -> PropInterp {
    PropInterp(j.clone())
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    fn term(a: &Term, b: &Term, env: &[(String, String)]) -> bool {
        match (a, b) {
            (Term::Const(x), Term::Const(y)) => x == y,
            (Term::Var(x), Term::Var(y)) => {
                let bx = env.iter().rev().find(|(l, _)| l == x);
                let by = env.iter().rev().find(|(_, r)| r == y);
                match (bx, by) {
                    (Some((l, r)), Some((l2, r2))) => l == l2 && r == r2,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            _ => false,
        }
    }
    fn go(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
        match (a, b) {
            (Formula::Bot, Formula::Bot) => true,
            (Formula::Atom(x), Formula::Atom(y)) => {
                x.predicate == y.predicate
                    && x.args.len() == y.args.len()
                    && x.args.iter().zip(&y.args).all(|(s, t)| term(s, t, env))
            }
            (Formula::Eq(s1, t1), Formula::Eq(s2, t2)) => term(s1, s2, env) && term(t1, t2, env),
            (Formula::And(l1, r1), Formula::And(l2, r2))
            | (Formula::Or(l1, r1), Formula::Or(l2, r2))
            | (Formula::Implies(l1, r1), Formula::Implies(l2, r2)) => go(l1, l2, env) && go(r1, r2, env),
            (Formula::Forall(x, f), Formula::Forall(y, g)) | (Formula::Exists(x, f), Formula::Exists(y, g)) => {
                env.push((x.clone(), y.clone()));
                let ok = go(f, g, env);
                env.pop();
                ok
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

pub fn atom_pool(n: usize) -> Vec<GroundAtom> {
    (0..n).map(|i| GroundAtom::new(format!("a{i}"), vec![])).collect()
}

/// Ground formulas over `a0..a{atoms-1}` of depth at most `depth`.
pub fn arb_ground_formula(atoms: usize, depth: u32) -> BoxedStrategy<GroundFormula> {
    let leaf = prop_oneof![
        1 => Just(GroundFormula::Bot),
        4 => (0..atoms).prop_map(|i| GroundFormula::Atom(GroundAtom::new(format!("a{i}"), vec![]))),
    ];
    leaf.prop_recursive(depth, 32, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..=3).prop_map(GroundFormula::And),
            prop::collection::vec(inner.clone(), 0..=3).prop_map(GroundFormula::Or),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| GroundFormula::implies(l, r)),
            inner.prop_map(GroundFormula::not),
        ]
    })
    .boxed()
}

/// Ground programs: up to `rules` rules `a_i ← G` over `atoms` atoms, with
/// the conjunction of their implications.
pub fn arb_ground_program(atoms: usize, rules: usize) -> BoxedStrategy<(GroundProgram, GroundFormula)> {
    prop::collection::vec((0..atoms, arb_ground_formula(atoms, 3)), 0..=rules)
        .prop_map(|rs| {
            let rules: Vec<GroundRule> = rs
                .into_iter()
                .map(|(h, body)| GroundRule {
                    head: Some(GroundAtom::new(format!("a{h}"), vec![])),
                    body,
                })
                .collect();
            let formula = GroundFormula::And(
                rules
                    .iter()
                    .map(|r| {
                        GroundFormula::implies(
                            r.body.clone(),
                            GroundFormula::Atom(r.head.clone().expect("head")),
                        )
                    })
                    .collect(),
            );
            (GroundProgram { rules }, formula)
        })
        .boxed()
}

/// Fixture programs without choice rules, constraints or extensional
/// predicates.
pub const LLOYD_TOPOR_FIXTURES: &[&str] = &["prog1", "prog2", "ex1", "ex2", "example1", "example2"];

/// Every fixture small enough for exhaustive enumeration at size 2.
pub const SMALL_FIXTURES: &[&str] = &[
    "prog1", "prog2", "prog4", "ex1", "ex2", "example1", "example2", "example3",
];

/// Rules over `p/1`, `q/1`, `r/2`, `a`, `b` without choice rules,
/// constraints or extensional predicates.
pub const LT_RULES: &[&str] = &[
    "p(a).",
    "q(b).",
    "p(X) :- q(X).",
    "q(a) :- p(b).",
    "q(X) :- p(X) & not r(X, X).",
    "r(X, Y) :- p(X) & q(Y).",
    "p(X) :- exists Y (r(X, Y) & not q(Y)).",
    "r(X, a) :- not p(X) | q(X).",
    "p(X) :- forall Y (r(X, Y) -> q(Y)).",
    "q(X) :- p(X) & X != a.",
    "r(a, X) :- r(X, b).",
];

pub fn binding(pairs: &[(&str, Term)]) -> BTreeMap<String, Term> {
    pairs.iter().map(|(v, t)| (v.to_string(), t.clone())).collect()
}

/// Rules with choice heads, constraints and an extensional `e/1`.
pub const CHOICE_RULES: &[&str] = &[
    "{p(X)} :- e(X).",
    "q(X) :- p(X) & not e(X).",
    "p(a) :- q(a).",
    "{q(X)} :- p(X) | e(X).",
    ":- p(a) & q(a).",
    "p(X) :- e(X) & not q(X).",
    "{q(a)}.",
    "q(X) :- exists Y (p(Y) & e(X)).",
];

/// Terms over the variables `X`, `Y`, `Z` and the constants `a`, `b`.
pub fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop::sample::select(vec!["X", "Y", "Z"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ]
}

/// First-order formulas over `p/1`, `q/2`, `r/0` and equality, binding
/// only `X`, `Y` and `Z`.
pub fn arb_formula(depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::Bot),
        1 => Just(Formula::top()),
        1 => Just(Formula::atom("r", vec![])),
        3 => arb_term().prop_map(|t| Formula::atom("p", vec![t])),
        3 => (arb_term(), arb_term()).prop_map(|(s, t)| Formula::atom("q", vec![s, t])),
        2 => (arb_term(), arb_term()).prop_map(|(s, t)| Formula::eq(s, t)),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        let var = || prop::sample::select(vec!["X", "Y", "Z"]);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::iff(l, r)),
            inner.clone().prop_map(Formula::not),
            (var(), inner.clone()).prop_map(|(v, f)| Formula::forall(v, f)),
            (var(), inner).prop_map(|(v, f)| Formula::exists(v, f)),
        ]
    })
    .boxed()
}
