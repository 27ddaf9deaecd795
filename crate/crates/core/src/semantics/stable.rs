//! Stable models of ground formulas: `J` is stable for `F` iff `J` is a
//! minimal model of the reduct `F^J`.
//!
//! Minimality is decided exactly by a backtracking search for a proper
//! subset of `J` satisfying the reduct, pruned by three-valued evaluation.

use std::collections::{BTreeSet, HashMap};

use super::ground::{ground, ground_program, reduct, satisfies, GroundAtom, GroundFormula, PropInterp};
use super::interpretation::Interpretation;
use super::{Limits, SemanticsError};
use crate::completion::desugar;
use crate::syntax::{Program, Sentence};

/// Reduct compiled over the minimizable atoms of `J`.
enum Node {
    Const(bool),
    Var(usize),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
}

fn compile(f: &GroundFormula, index: &HashMap<&GroundAtom, usize>, j: &PropInterp) -> Node {
    match f {
        GroundFormula::Bot => Node::Const(false),
        GroundFormula::Atom(a) => match index.get(a) {
            Some(&i) => Node::Var(i),
            None => Node::Const(j.contains(a)),
        },
        GroundFormula::And(fs) => Node::And(fs.iter().map(|g| compile(g, index, j)).collect()),
        GroundFormula::Or(fs) => Node::Or(fs.iter().map(|g| compile(g, index, j)).collect()),
        GroundFormula::Implies(l, r) => Node::Implies(
            Box::new(compile(l, index, j)),
            Box::new(compile(r, index, j)),
        ),
    }
}

/// Kleene evaluation; `None` is unknown.
fn eval3(n: &Node, assign: &[Option<bool>]) -> Option<bool> {
    match n {
        Node::Const(b) => Some(*b),
        Node::Var(i) => assign[*i],
        Node::And(ns) => {
            let mut unknown = false;
            for m in ns {
                match eval3(m, assign) {
                    Some(false) => return Some(false),
                    None => unknown = true,
                    Some(true) => {}
                }
            }
            if unknown {
                None
            } else {
                Some(true)
            }
        }
        Node::Or(ns) => {
            let mut unknown = false;
            for m in ns {
                match eval3(m, assign) {
                    Some(true) => return Some(true),
                    None => unknown = true,
                    Some(false) => {}
                }
            }
            if unknown {
                None
            } else {
                Some(false)
            }
        }
        Node::Implies(l, r) => match (eval3(l, assign), eval3(r, assign)) {
            (Some(false), _) | (_, Some(true)) => Some(true),
            (Some(true), Some(false)) => Some(false),
            _ => None,
        },
    }
}

/// Searches for an assignment with at least one variable false that satisfies `n`.
fn smaller_model_exists(n: &Node, assign: &mut Vec<Option<bool>>, next: usize, any_false: bool) -> bool {
    match eval3(n, assign) {
        Some(false) => return false,
        Some(true) if any_false => return true,
        _ => {}
    }
    if next == assign.len() {
        return false;
    }
    for value in [false, true] {
        assign[next] = Some(value);
        if smaller_model_exists(n, assign, next + 1, any_false || !value) {
            assign[next] = None;
            return true;
        }
    }
    assign[next] = None;
    false
}

/// `J` is a stable model of `f`, minimizing over the atoms of `J` for which
/// `minimize` holds; the remaining atoms of `J` are held fixed.
pub fn is_stable_with(
    f: &GroundFormula,
    j: &PropInterp,
    minimize: impl Fn(&GroundAtom) -> bool,
    limits: &Limits,
) -> Result<bool, SemanticsError> {
    if !satisfies(j, f) {
        return Ok(false);
    }
    let candidates: Vec<&GroundAtom> = j.iter().filter(|a| minimize(a)).collect();
    if candidates.is_empty() {
        return Ok(true);
    }
    if candidates.len() > limits.stable_atom_cap {
        return Err(SemanticsError::ResourceGuard {
            what: "minimality check".to_string(),
            size: format!("{} atoms", candidates.len()),
            limit: format!("{} atoms", limits.stable_atom_cap),
        });
    }
    let index: HashMap<&GroundAtom, usize> =
        candidates.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let r = reduct(f, j);
    let node = compile(&r, &index, j);
    let mut assign = vec![None; candidates.len()];
    Ok(!smaller_model_exists(&node, &mut assign, 0, false))
}

/// `J` is a minimal model of `F^J`, every atom minimized.
pub fn is_stable(f: &GroundFormula, j: &PropInterp, limits: &Limits) -> Result<bool, SemanticsError> {
    is_stable_with(f, j, |_| true, limits)
}

/// `I ⊨ SM_p[Π]` where `p` are the intensional predicates of `prog`.
///
/// The program is desugared and grounded; `I^r` must be a stable model of
/// the result. Atoms of originally extensional predicates are not searched
/// over: their rules `q(x) ← ¬¬q(x)` reduce to facts for every true `q`
/// atom, so dropping them from the minimality search changes nothing.
pub fn is_sm_model(prog: &Program, interp: &Interpretation, limits: &Limits) -> Result<bool, SemanticsError> {
    interp.check_covers(&prog.signature)?;
    let desugared = desugar(prog);
    let grounded = ground_program(&desugared, interp)?;
    let intensional: &BTreeSet<String> = &prog.intensional;
    is_stable_with(
        &grounded.formula,
        &interp.atoms(),
        |a| intensional.contains(&a.predicate),
        limits,
    )
}

/// `SM_p` computed directly on the program's sentence (choice rules as
/// `G → p ∨ ¬p`) with extensional atoms held fixed, without desugaring.
pub fn is_p_stable_direct(
    prog: &Program,
    interp: &Interpretation,
    limits: &Limits,
) -> Result<bool, SemanticsError> {
    interp.check_covers(&prog.signature)?;
    let sentence = Sentence::new(prog.to_formula()).expect("program sentences are closed");
    let g = ground(&sentence, interp)?;
    is_stable_with(
        &g,
        &interp.atoms(),
        |a| prog.intensional.contains(&a.predicate),
        limits,
    )
}
