//! Printing in the input grammar, re-sugaring `not`, `true`, `!=` and `<->`.
//!
//! Output is minimally parenthesised with respect to the parser's
//! associativity, so `parse(print(f)) == f` holds structurally.

use std::fmt;

use super::formula::{Atom, Formula, Term};
use super::program::{Program, Rule, RuleKind};

const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Implies(a, b), Formula::Implies(c, d)) = (&**l, &**r) {
            if a == d && b == c {
                return Some((a, b));
            }
        }
    }
    None
}

fn level(f: &Formula) -> u8 {
    if f.is_top() || f.as_negation().is_some() {
        return UNARY;
    }
    if as_iff(f).is_some() {
        return IFF;
    }
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(out: &mut fmt::Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    let own = level(f);
    if own < min {
        out.write_str("(")?;
        write_formula(out, f)?;
        out.write_str(")")
    } else {
        write_formula(out, f)
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    if f.is_top() {
        return out.write_str("true");
    }
    if let Some(inner) = f.as_negation() {
        if let Formula::Eq(l, r) = inner {
            return write!(out, "{l} != {r}");
        }
        out.write_str("not ")?;
        return write_at(out, inner, UNARY);
    }
    if let Some((l, r)) = as_iff(f) {
        write_at(out, l, IMPLIES)?;
        out.write_str(" <-> ")?;
        return write_at(out, r, IMPLIES);
    }
    match f {
        Formula::Bot => out.write_str("false"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Eq(l, r) => write!(out, "{l} = {r}"),
        Formula::And(l, r) => {
            write_at(out, l, AND)?;
            out.write_str(" & ")?;
            write_at(out, r, UNARY)
        }
        Formula::Or(l, r) => {
            write_at(out, l, OR)?;
            out.write_str(" | ")?;
            write_at(out, r, AND)
        }
        Formula::Implies(l, r) => {
            write_at(out, l, OR)?;
            out.write_str(" -> ")?;
            write_at(out, r, IMPLIES)
        }
        Formula::Forall(v, b) => {
            write!(out, "forall {v} (")?;
            write_formula(out, b)?;
            out.write_str(")")
        }
        Formula::Exists(v, b) => {
            write!(out, "exists {v} (")?;
            write_formula(out, b)?;
            out.write_str(")")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

impl fmt::Display for super::formula::Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.formula())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, &self.head) {
            (RuleKind::Constraint, _) | (_, None) => return write!(f, ":- {}.", self.body),
            (RuleKind::Choice, Some(h)) => write!(f, "{{{h}}}")?,
            (RuleKind::Basic, Some(h)) => write!(f, "{h}")?,
        }
        if !self.body.is_top() {
            write!(f, " :- {}", self.body)?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, n) in self.extensional() {
            writeln!(f, "#extensional {p}/{n}.")?;
        }
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Renders a formula in the input grammar.
pub fn pretty_print(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program};

    #[test]
    fn resugars_negation_and_truth() {
        let q = Formula::atom("q", vec![Term::var("X")]);
        assert_eq!(pretty_print(&Formula::not(q)), "not q(X)");
        assert_eq!(pretty_print(&Formula::top()), "true");
        assert_eq!(pretty_print(&Formula::Bot), "false");
        assert_eq!(
            pretty_print(&Formula::neq(Term::var("X"), Term::constant("a"))),
            "X != a"
        );
    }

    #[test]
    fn program_one_prints_three_lines() {
        let p = parse_program("p(a). q(b). p(X) :- q(X).").unwrap();
        let text = p.to_string();
        assert_eq!(text, "p(a).\nq(b).\np(X) :- q(X).\n");
        assert_eq!(parse_program(&text).unwrap(), p);
    }

    #[test]
    fn parenthesises_against_associativity() {
        for src in [
            "p & (q & r)",
            "(p -> q) -> r",
            "p -> q -> r",
            "p | (q | r)",
            "not (p & q)",
            "(p <-> q) <-> r",
            "forall X (p(X) -> exists Y (q(X,Y) & X != Y))",
            "not not p",
            "(p | q) & r",
            "not true",
            "true -> false",
        ] {
            let f = parse_formula(src).unwrap();
            let printed = pretty_print(&f);
            assert_eq!(parse_formula(&printed).unwrap(), f, "{src} printed as {printed}");
        }
    }
}
