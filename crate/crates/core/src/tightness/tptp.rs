//! TPTP first-order problem files for chain obligations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::completion::{completion, CompletionError};
use crate::syntax::{Formula, Program, Sentence, Term};

/// Maps source symbols to unique TPTP identifiers.
#[derive(Default)]
struct Names {
    assigned: BTreeMap<(bool, String), String>,
    used: BTreeSet<String>,
}

impl Names {
    fn get(&mut self, name: &str, variable: bool) -> String {
        if let Some(n) = self.assigned.get(&(variable, name.to_string())) {
            return n.clone();
        }
        let mut base: String = name
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        let first = base.chars().next().unwrap_or('_');
        if variable && !first.is_ascii_uppercase() {
            base.insert(0, 'V');
        } else if !variable && !first.is_ascii_lowercase() {
            base.insert(0, 'n');
        }
        let mut candidate = base.clone();
        let mut k = 1;
        while self.used.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        self.used.insert(candidate.clone());
        self.assigned.insert((variable, name.to_string()), candidate.clone());
        candidate
    }

    fn term(&mut self, t: &Term) -> String {
        match t {
            Term::Var(v) => self.get(v, true),
            Term::Const(c) => self.get(c, false),
        }
    }

    fn formula(&mut self, f: &Formula) -> String {
        if f.is_top() {
            return "$true".to_string();
        }
        if let Formula::And(l, r) = f {
            if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**l, &**r) {
                if a == d && b == c {
                    return format!("({} <=> {})", self.formula(a), self.formula(b));
                }
            }
        }
        if let Some(inner) = f.as_negation() {
            if let Formula::Eq(s, t) = inner {
                return format!("{} != {}", self.term(s), self.term(t));
            }
            return format!("~({})", self.formula(inner));
        }
        match f {
            Formula::Bot => "$false".to_string(),
            Formula::Atom(a) => {
                let p = self.get(&a.predicate, false);
                if a.args.is_empty() {
                    p
                } else {
                    let args: Vec<String> = a.args.iter().map(|t| self.term(t)).collect();
                    format!("{p}({})", args.join(","))
                }
            }
            Formula::Eq(s, t) => format!("{} = {}", self.term(s), self.term(t)),
            Formula::And(l, r) => format!("({} & {})", self.formula(l), self.formula(r)),
            Formula::Or(l, r) => format!("({} | {})", self.formula(l), self.formula(r)),
            Formula::Implies(l, r) => format!("({} => {})", self.formula(l), self.formula(r)),
            Formula::Forall(v, b) => format!("(! [{}] : {})", self.get(v, true), self.formula(b)),
            Formula::Exists(v, b) => format!("(? [{}] : {})", self.get(v, true), self.formula(b)),
        }
    }
}

/// A TPTP FOF problem: the members of `gamma` and the completed
/// definitions of `prog` as axioms, `∀̃¬chain_formula` as the conjecture.
pub fn export_tptp(
    prog: &Program,
    gamma: &[Sentence],
    chain_formula: &Formula,
) -> Result<String, CompletionError> {
    let comp = completion(prog)?;
    let mut names = Names::default();
    let mut out = String::new();
    for (i, s) in gamma.iter().enumerate() {
        let body = names.formula(s.formula());
        writeln!(out, "fof(gamma_{}, axiom, {body}).", i + 1).unwrap();
    }
    let mut def_names = Names::default();
    for (p, s) in &comp.definitions {
        let name = format!("def_{}", def_names.get(p, false));
        let body = names.formula(s.formula());
        writeln!(out, "fof({name}, axiom, {body}).").unwrap();
    }
    let conjecture = Formula::not(chain_formula.clone()).universal_closure();
    writeln!(out, "fof(chain, conjecture, {}).", names.formula(&conjecture)).unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program, parse_sentences};

    fn roles(text: &str) -> (usize, usize) {
        (
            text.matches(", axiom,").count(),
            text.matches(", conjecture,").count(),
        )
    }

    #[test]
    fn example_two_obligation() {
        let prog = parse_program("p(a) :- p(b). q(c) :- q(d).").unwrap();
        let gamma = parse_sentences("a != b. c != d.").unwrap();
        let f = parse_formula("b = a & p(b) & p(b)").unwrap();
        let text = export_tptp(&prog, &gamma, &f).unwrap();
        assert_eq!(roles(&text), (4, 1));
        assert!(text.contains("fof(gamma_1, axiom, a != b)."));
        assert!(text.contains("fof(chain, conjecture, ~(((b = a & p(b)) & p(b))))."));
    }

    #[test]
    fn one_rule_program() {
        let prog = parse_program("p(a) :- p(X) & X != a.").unwrap();
        let f = parse_formula("X_1 = a & p(X_1)").unwrap();
        let text = export_tptp(&prog, &[], &f).unwrap();
        assert_eq!(roles(&text), (1, 1));
        assert!(text.contains("fof(chain, conjecture, (! [X_1] : ~((X_1 = a & p(X_1)))))."));
    }

    #[test]
    fn sanitizes_numerals_and_primes() {
        let prog = parse_program("step(0). p(X') :- step(X').").unwrap();
        let f = parse_formula("step(0) & X' = 0").unwrap();
        let text = export_tptp(&prog, &[], &f).unwrap();
        assert!(text.contains("step(n0)"), "{text}");
        assert!(text.contains("X_"), "{text}");
        assert!(!text.contains('\''), "{text}");
    }
}
