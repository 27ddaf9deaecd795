//! Lloyd-Topor completion.
//!
//! The definition of `p` in a program collects every rule `p(t) ← G` into
//! `p(x) ← ⋁ ∃y (x = t ∧ G)` where `x` are fresh variables and `y` the free
//! variables of the rule. The completed definition replaces `←` by `↔` and
//! closes over `x`. No Clark equality axioms are added.
//!
//! Choice rules and extensional predicates are first rewritten away by
//! [`desugar`], which turns `{p(t)} ← G` into `p(t) ← G ∧ ¬¬p(t)` and adds
//! `q(x) ← ¬¬q(x)` for every extensional `q`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{fresh_variables, Atom, Formula, Program, Rule, RuleKind, Sentence, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("predicate {0} is not in the signature")]
    UnknownPredicate(String),
    #[error("predicate {0} is defined by choice rules; desugar the program first")]
    NotDesugared(String),
}

/// Completed definitions, one per intensional predicate, plus the sentences
/// contributed by constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    pub definitions: BTreeMap<String, Sentence>,
    pub constraints: Vec<Sentence>,
}

impl CompletionResult {
    /// Definitions in predicate order followed by constraint sentences.
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.definitions.values().chain(self.constraints.iter())
    }

    pub fn simplified(&self) -> CompletionResult {
        let simp = |s: &Sentence| {
            Sentence::new(simplify(s.formula())).expect("simplification keeps sentences closed")
        };
        CompletionResult {
            definitions: self
                .definitions
                .iter()
                .map(|(p, s)| (p.clone(), simp(s)))
                .collect(),
            constraints: self.constraints.iter().map(simp).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.definitions.is_empty() && self.constraints.is_empty()
    }
}

fn definition_parts(prog: &Program, predicate: &str) -> Result<(Atom, Vec<String>, Formula), CompletionError> {
    let arity = prog
        .signature
        .arity(predicate)
        .ok_or_else(|| CompletionError::UnknownPredicate(predicate.to_string()))?;
    if prog
        .rules_for(predicate)
        .any(|r| r.kind == RuleKind::Choice)
    {
        return Err(CompletionError::NotDesugared(predicate.to_string()));
    }
    let fresh = fresh_variables(arity, &prog.variables());
    let head = Atom::new(
        predicate,
        fresh.iter().map(|x| Term::Var(x.clone())).collect(),
    );
    let disjuncts = prog.rules_for(predicate).map(|rule| {
        let rule_head = rule.head.as_ref().expect("rules_for yields headed rules");
        let equalities = fresh
            .iter()
            .zip(&rule_head.args)
            .map(|(x, t)| Formula::Eq(Term::Var(x.clone()), t.clone()));
        let body = (!rule.body.is_top()).then(|| rule.body.clone());
        let matrix = Formula::conjoin(equalities.chain(body));
        Formula::exists_many(rule.free_variables_ordered(), matrix)
    });
    let body = Formula::disjoin(disjuncts);
    Ok((head, fresh, body))
}

/// The definition of `predicate`: `p(x) ← ⋁_i ∃y^i (x = t^i ∧ G^i)`.
pub fn definition_of(prog: &Program, predicate: &str) -> Result<Rule, CompletionError> {
    let (head, _, body) = definition_parts(prog, predicate)?;
    Ok(Rule::basic(head, body))
}

/// The completed definition `∀x (p(x) ↔ ⋁_i ∃y^i (x = t^i ∧ G^i))`.
pub fn completed_definition(prog: &Program, predicate: &str) -> Result<Sentence, CompletionError> {
    let (head, fresh, body) = definition_parts(prog, predicate)?;
    let f = Formula::forall_many(fresh, Formula::iff(Formula::Atom(head), body));
    Ok(Sentence::new(f).expect("completed definitions are closed"))
}

/// `Comp[Π]` for the intensional predicates of `prog`, computed on the
/// desugared program, plus `∀̃¬G` for every constraint `← G`.
pub fn completion(prog: &Program) -> Result<CompletionResult, CompletionError> {
    let desugared = desugar(prog);
    let mut definitions = BTreeMap::new();
    for p in &prog.intensional {
        definitions.insert(p.clone(), completed_definition(&desugared, p)?);
    }
    let constraints = desugared
        .rules
        .iter()
        .filter(|r| r.kind == RuleKind::Constraint)
        .map(|r| Sentence::closure(Formula::not(r.body.clone())))
        .collect();
    Ok(CompletionResult {
        definitions,
        constraints,
    })
}

/// Rewrites choice rules into basic rules and makes every predicate intensional.
pub fn desugar(prog: &Program) -> Program {
    let mut rules: Vec<Rule> = prog
        .rules
        .iter()
        .map(|rule| match (rule.kind, &rule.head) {
            (RuleKind::Choice, Some(head)) => {
                let guard = Formula::not(Formula::not(Formula::Atom(head.clone())));
                let body = if rule.body.is_top() {
                    guard
                } else {
                    Formula::and(rule.body.clone(), guard)
                };
                Rule::basic(head.clone(), body)
            }
            _ => rule.clone(),
        })
        .collect();
    for (p, n) in prog.extensional() {
        let vars = fresh_variables(n, &BTreeSet::new());
        let atom = Atom::new(p, vars.into_iter().map(Term::Var).collect());
        rules.push(Rule::basic(
            atom.clone(),
            Formula::not(Formula::not(Formula::Atom(atom))),
        ));
    }
    Program {
        signature: prog.signature.clone(),
        rules,
        intensional: prog.signature.predicates.keys().cloned().collect(),
    }
}

/// Equality-driven clean-up: `∃x(x = t ∧ F) ⇒ F[x ↦ t]` (either orientation of
/// the equality, anywhere in the conjunction, provided `t` is not `x`),
/// `F ∧ ⊤ ⇒ F`, `⊤ ∧ F ⇒ F`, `F ∨ ⊥ ⇒ F`, `⊥ ∨ F ⇒ F`.
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::Bot | Formula::Atom(_) | Formula::Eq(..) => f.clone(),
        Formula::And(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            if r.is_top() {
                l
            } else if l.is_top() {
                r
            } else {
                Formula::and(l, r)
            }
        }
        Formula::Or(l, r) => {
            let (l, r) = (simplify(l), simplify(r));
            if r == Formula::Bot {
                l
            } else if l == Formula::Bot {
                r
            } else {
                Formula::or(l, r)
            }
        }
        Formula::Implies(l, r) => Formula::implies(simplify(l), simplify(r)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), simplify(b)),
        Formula::Exists(v, b) => {
            let body = simplify(b);
            match eliminate_equality(v, &body) {
                Some(rest) => simplify(&rest),
                None => Formula::exists(v.clone(), body),
            }
        }
    }
}

/// If a conjunct of `body` is `v = t` or `t = v` with `t ≠ v`, returns the
/// other conjuncts with `v` replaced by `t`.
fn eliminate_equality(v: &str, body: &Formula) -> Option<Formula> {
    let conjuncts = body.conjuncts();
    let (index, term) = conjuncts.iter().enumerate().find_map(|(i, c)| match c {
        Formula::Eq(Term::Var(x), t) if x == v && t.as_var() != Some(v) => Some((i, t.clone())),
        Formula::Eq(t, Term::Var(x)) if x == v && t.as_var() != Some(v) => Some((i, t.clone())),
        _ => None,
    })?;
    let rest = Formula::conjoin(
        conjuncts
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, c)| c.clone()),
    );
    Some(rest.substitute(&BTreeMap::from([(v.to_string(), term)])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program};

    fn f(src: &str) -> Formula {
        parse_formula(src).unwrap()
    }

    #[test]
    fn definitions_of_program_one() {
        let p = parse_program("p(a). q(b). p(X) :- q(X).").unwrap();
        let def = definition_of(&p, "p").unwrap();
        assert_eq!(def.head.as_ref().unwrap().to_string(), "p(X1)");
        assert_eq!(def.body, f("X1 = a | exists X (X1 = X & q(X))"));
        let def = definition_of(&p, "q").unwrap();
        assert_eq!(def.body, f("X1 = b"));
    }

    #[test]
    fn definition_without_rules_is_bottom() {
        let p = parse_program("p(X) :- r(X).").unwrap();
        assert_eq!(definition_of(&p, "r").unwrap().body, Formula::Bot);
        assert_eq!(
            completed_definition(&p, "r").unwrap().formula(),
            &f("forall X1 (r(X1) <-> false)")
        );
        assert_eq!(
            definition_of(&p, "s"),
            Err(CompletionError::UnknownPredicate("s".into()))
        );
    }

    #[test]
    fn completed_definition_of_q() {
        let p = parse_program("p(a). q(b). p(X) :- q(X).").unwrap();
        assert_eq!(
            completed_definition(&p, "q").unwrap().formula(),
            &f("forall X1 (q(X1) <-> X1 = b)")
        );
    }

    #[test]
    fn completion_of_program_four() {
        let p = parse_program("p(a) :- p(b). q(c) :- q(d). :- a = b. :- c = d.").unwrap();
        let comp = completion(&p).unwrap().simplified();
        assert_eq!(
            comp.definitions["p"].formula(),
            &f("forall X1 (p(X1) <-> X1 = a & p(b))")
        );
        assert_eq!(
            comp.definitions["q"].formula(),
            &f("forall X1 (q(X1) <-> X1 = c & q(d))")
        );
        let constraints: Vec<_> = comp.constraints.iter().map(|s| s.formula().clone()).collect();
        assert_eq!(constraints, vec![f("a != b"), f("c != d")]);
    }

    #[test]
    fn empty_program_has_empty_completion() {
        let p = parse_program("").unwrap();
        assert!(completion(&p).unwrap().is_empty());
    }

    #[test]
    fn desugars_choice_rules() {
        let p = parse_program("#extensional object/1. #extensional place/1.\n{at(X,Y,0)} :- object(X), place(Y).").unwrap();
        let d = desugar(&p);
        assert_eq!(
            d.rules[0],
            parse_program("at(X,Y,0) :- object(X) & place(Y) & not not at(X,Y,0).").unwrap().rules[0]
        );
        assert_eq!(d.rules[1].to_string(), "object(X1) :- not not object(X1).");
        assert_eq!(d.rules[2].to_string(), "place(X1) :- not not place(X1).");
        assert_eq!(d.intensional.len(), 3);
    }

    #[test]
    fn desugar_extensional_move() {
        let p = parse_program("#extensional move/3.").unwrap();
        let d = desugar(&p);
        assert_eq!(
            d.rules[0].to_string(),
            "move(X1,X2,X3) :- not not move(X1,X2,X3)."
        );
    }

    #[test]
    fn desugar_is_identity_without_sugar() {
        let p = parse_program("p(a). p(X) :- q(X). :- p(b).").unwrap();
        assert_eq!(desugar(&p), p);
    }

    #[test]
    fn simplify_examples() {
        assert_eq!(simplify(&f("exists X (X1 = X & q(X))")), f("q(X1)"));
        assert_eq!(simplify(&f("p(X) & true")), f("p(X)"));
        assert_eq!(simplify(&f("true & p(X)")), f("p(X)"));
        assert_eq!(simplify(&f("p(X) | false")), f("p(X)"));
        assert_eq!(simplify(&f("false | p(X)")), f("p(X)"));
        let guarded = f("exists Y (Y = Y & p(Y))");
        assert_eq!(simplify(&guarded), guarded);
        assert_eq!(
            simplify(&f("exists Y, Z (X1 = Y & X2 = Z & r(Y,Z))")),
            f("r(X1,X2)")
        );
    }

    #[test]
    fn simplify_avoids_capture() {
        let g = f("exists X (X = Y & exists Y (p(X,Y)))");
        assert_eq!(simplify(&g), f("exists Y' (p(Y,Y'))"));
    }
}
