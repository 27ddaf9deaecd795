//! Grounding of first-order sentences relative to a finite interpretation.
//!
//! Quantifiers become finite conjunctions and disjunctions over the names of
//! universe elements, equalities are decided by the constant denotations,
//! and atoms are named by element ids.

use std::collections::BTreeSet;
use std::fmt;

use super::interpretation::Interpretation;
use super::SemanticsError;
use crate::syntax::{Formula, Program, RuleKind, Sentence, Term};

/// `p(e_i, ...)`: a predicate applied to names of universe elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<usize>,
}

impl GroundAtom {
    pub fn new(predicate: impl Into<String>, args: Vec<usize>) -> Self {
        GroundAtom {
            predicate: predicate.into(),
            args,
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, e) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "e{e}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A propositional interpretation: the set of true ground atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropInterp(pub BTreeSet<GroundAtom>);

impl PropInterp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, a: &GroundAtom) -> bool {
        self.0.contains(a)
    }

    pub fn insert(&mut self, a: GroundAtom) -> bool {
        self.0.insert(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundAtom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<GroundAtom> for PropInterp {
    fn from_iter<I: IntoIterator<Item = GroundAtom>>(iter: I) -> Self {
        PropInterp(iter.into_iter().collect())
    }
}

impl fmt::Display for PropInterp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Finite propositional formula over ground atoms. Conjunctions and
/// disjunctions are over lists; the empty conjunction is true, the empty
/// disjunction false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroundFormula {
    Bot,
    Atom(GroundAtom),
    And(Vec<GroundFormula>),
    Or(Vec<GroundFormula>),
    Implies(Box<GroundFormula>, Box<GroundFormula>),
}

impl GroundFormula {
    pub fn top() -> Self {
        GroundFormula::Implies(Box::new(GroundFormula::Bot), Box::new(GroundFormula::Bot))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: GroundFormula) -> Self {
        GroundFormula::Implies(Box::new(f), Box::new(GroundFormula::Bot))
    }

    pub fn implies(l: GroundFormula, r: GroundFormula) -> Self {
        GroundFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, GroundFormula::Implies(a, b)
            if **a == GroundFormula::Bot && **b == GroundFormula::Bot)
    }

    /// Every atom occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<GroundAtom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<GroundAtom>) {
        match self {
            GroundFormula::Bot => {}
            GroundFormula::Atom(a) => {
                out.insert(a.clone());
            }
            GroundFormula::And(fs) | GroundFormula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_atoms(out))
            }
            GroundFormula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            GroundFormula::Bot | GroundFormula::Atom(_) => 1,
            GroundFormula::And(fs) | GroundFormula::Or(fs) => {
                1 + fs.iter().map(GroundFormula::size).sum::<usize>()
            }
            GroundFormula::Implies(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl fmt::Display for GroundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, fs: &[GroundFormula]| {
            write!(f, "{name}{{")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str("}")
        };
        match self {
            _ if self.is_top() => f.write_str("true"),
            GroundFormula::Bot => f.write_str("false"),
            GroundFormula::Atom(a) => write!(f, "{a}"),
            GroundFormula::And(fs) => list(f, "and", fs),
            GroundFormula::Or(fs) => list(f, "or", fs),
            GroundFormula::Implies(l, r) if **r == GroundFormula::Bot => write!(f, "not {l}"),
            GroundFormula::Implies(l, r) => write!(f, "({l} -> {r})"),
        }
    }
}

/// A ground rule `head ← body`; constraints have no head (`⊥ ← body`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: Option<GroundAtom>,
    pub body: GroundFormula,
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.head {
            Some(h) => write!(f, "{h} <- {}", self.body),
            None => write!(f, "false <- {}", self.body),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<GroundRule>,
}

/// Grounding of a program in both shapes: the single propositional
/// formula and the list of ground rules it conjoins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedProgram {
    pub formula: GroundFormula,
    pub program: GroundProgram,
}

struct Grounder<'a> {
    interp: &'a Interpretation,
}

impl Grounder<'_> {
    fn term(&self, t: &Term, env: &[(String, usize)]) -> Result<usize, SemanticsError> {
        self.interp.term_value(t, env)
    }

    fn formula(
        &self,
        f: &Formula,
        env: &mut Vec<(String, usize)>,
    ) -> Result<GroundFormula, SemanticsError> {
        Ok(match f {
            Formula::Bot => GroundFormula::Bot,
            Formula::Atom(a) => GroundFormula::Atom(GroundAtom {
                predicate: a.predicate.clone(),
                args: a
                    .args
                    .iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<_, _>>()?,
            }),
            Formula::Eq(l, r) => {
                if self.term(l, env)? == self.term(r, env)? {
                    GroundFormula::top()
                } else {
                    GroundFormula::Bot
                }
            }
            Formula::And(l, r) => {
                GroundFormula::And(vec![self.formula(l, env)?, self.formula(r, env)?])
            }
            Formula::Or(l, r) => {
                GroundFormula::Or(vec![self.formula(l, env)?, self.formula(r, env)?])
            }
            Formula::Implies(l, r) => {
                GroundFormula::implies(self.formula(l, env)?, self.formula(r, env)?)
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let mut parts = Vec::with_capacity(self.interp.universe);
                for e in 0..self.interp.universe {
                    env.push((v.clone(), e));
                    let g = self.formula(b, env);
                    env.pop();
                    parts.push(g?);
                }
                if matches!(f, Formula::Forall(..)) {
                    GroundFormula::And(parts)
                } else {
                    GroundFormula::Or(parts)
                }
            }
        })
    }

    /// Grounds `∀v1...vn (body → head)` as nested conjunctions, recording
    /// every instance as a ground rule.
    fn rule(
        &self,
        vars: &[String],
        head: Option<&crate::syntax::Atom>,
        body: &Formula,
        env: &mut Vec<(String, usize)>,
        out: &mut Vec<GroundRule>,
    ) -> Result<GroundFormula, SemanticsError> {
        if let Some((v, rest)) = vars.split_first() {
            let mut parts = Vec::with_capacity(self.interp.universe);
            for e in 0..self.interp.universe {
                env.push((v.clone(), e));
                let g = self.rule(rest, head, body, env, out);
                env.pop();
                parts.push(g?);
            }
            return Ok(GroundFormula::And(parts));
        }
        let body = self.formula(body, env)?;
        let head = match head {
            Some(h) => Some(GroundAtom {
                predicate: h.predicate.clone(),
                args: h
                    .args
                    .iter()
                    .map(|t| self.term(t, env))
                    .collect::<Result<_, _>>()?,
            }),
            None => None,
        };
        let consequent = head
            .clone()
            .map_or(GroundFormula::Bot, GroundFormula::Atom);
        out.push(GroundRule {
            head,
            body: body.clone(),
        });
        Ok(GroundFormula::implies(body, consequent))
    }
}

/// `gr_I(F)` for a sentence `F`.
pub fn ground(s: &Sentence, interp: &Interpretation) -> Result<GroundFormula, SemanticsError> {
    Grounder { interp }.formula(s.formula(), &mut Vec::new())
}

/// Grounds a program of basic rules and constraints.
///
/// The formula component equals `ground` applied to the program's sentence;
/// the rule component lists the instances `A ← G` it is made of.
pub fn ground_program(
    prog: &Program,
    interp: &Interpretation,
) -> Result<GroundedProgram, SemanticsError> {
    let grounder = Grounder { interp };
    let mut rules = Vec::new();
    let mut closures = Vec::with_capacity(prog.rules.len());
    for rule in &prog.rules {
        if rule.kind == RuleKind::Choice {
            return Err(SemanticsError::ChoiceRule(rule.to_string()));
        }
        let vars = rule.free_variables_ordered();
        closures.push(grounder.rule(
            &vars,
            rule.head.as_ref(),
            &rule.body,
            &mut Vec::new(),
            &mut rules,
        )?);
    }
    let formula = match closures.len() {
        0 => GroundFormula::top(),
        _ => closures
            .into_iter()
            .reduce(|acc, g| GroundFormula::And(vec![acc, g]))
            .expect("non-empty"),
    };
    Ok(GroundedProgram {
        formula,
        program: GroundProgram { rules },
    })
}

/// Classical satisfaction.
pub fn satisfies(j: &PropInterp, f: &GroundFormula) -> bool {
    match f {
        GroundFormula::Bot => false,
        GroundFormula::Atom(a) => j.contains(a),
        GroundFormula::And(fs) => fs.iter().all(|g| satisfies(j, g)),
        GroundFormula::Or(fs) => fs.iter().any(|g| satisfies(j, g)),
        GroundFormula::Implies(l, r) => !satisfies(j, l) || satisfies(j, r),
    }
}

/// The reduct `F^J`: every subformula not satisfied by `J` becomes `⊥`.
pub fn reduct(f: &GroundFormula, j: &PropInterp) -> GroundFormula {
    if !satisfies(j, f) {
        return GroundFormula::Bot;
    }
    match f {
        GroundFormula::Bot => GroundFormula::Bot,
        GroundFormula::Atom(a) => GroundFormula::Atom(a.clone()),
        GroundFormula::And(fs) => GroundFormula::And(fs.iter().map(|g| reduct(g, j)).collect()),
        GroundFormula::Or(fs) => GroundFormula::Or(fs.iter().map(|g| reduct(g, j)).collect()),
        GroundFormula::Implies(l, r) => GroundFormula::implies(reduct(l, j), reduct(r, j)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_sentences, Signature};

    fn atom(p: &str, args: &[usize]) -> GroundAtom {
        GroundAtom::new(p, args.to_vec())
    }
    fn ga(p: &str, args: &[usize]) -> GroundFormula {
        GroundFormula::Atom(atom(p, args))
    }

    #[test]
    fn grounds_universal_over_two_elements() {
        let p = parse_program("p(a). q(b).").unwrap();
        let i = Interpretation::parse("universe=2; a=e0; b=e1", &p.signature).unwrap();
        let s = &parse_sentences("forall X (q(X) -> p(X)).").unwrap()[0];
        assert_eq!(
            ground(s, &i).unwrap(),
            GroundFormula::And(vec![
                GroundFormula::implies(ga("q", &[0]), ga("p", &[0])),
                GroundFormula::implies(ga("q", &[1]), ga("p", &[1])),
            ])
        );
    }

    #[test]
    fn grounds_equalities_by_denotation() {
        let mut sig = Signature::new();
        sig.constants.extend(["a".to_string(), "b".to_string()]);
        let same = Interpretation::parse("universe=1; a=e0; b=e0", &sig).unwrap();
        let s = &parse_sentences("a = b.").unwrap()[0];
        assert!(ground(s, &same).unwrap().is_top());
        let apart = Interpretation::parse("universe=2; a=e0; b=e1", &sig).unwrap();
        assert_eq!(ground(s, &apart).unwrap(), GroundFormula::Bot);
        let bot = &parse_sentences("false.").unwrap()[0];
        assert_eq!(ground(bot, &apart).unwrap(), GroundFormula::Bot);
    }

    #[test]
    fn unmapped_constant_is_an_error() {
        let p = parse_program("p(a).").unwrap();
        let i = Interpretation::empty(&Signature::new(), 1);
        let s = Sentence::new(p.to_formula()).unwrap();
        assert_eq!(
            ground(&s, &i),
            Err(SemanticsError::UnmappedConstant("a".into()))
        );
    }

    #[test]
    fn program_grounding_matches_sentence_grounding() {
        let p = parse_program("p(a). q(b). p(X) :- q(X). :- p(X), not q(X), X != a.").unwrap();
        let i = Interpretation::parse("universe=2; a=e0; b=e1", &p.signature).unwrap();
        let g = ground_program(&p, &i).unwrap();
        let s = Sentence::new(p.to_formula()).unwrap();
        assert_eq!(g.formula, ground(&s, &i).unwrap());
        assert_eq!(g.program.rules.len(), 1 + 1 + 2 + 2);
        assert_eq!(g.program.rules[2].to_string(), "p(e0) <- q(e0)");
        assert!(g.program.rules[5].head.is_none());
    }

    #[test]
    fn satisfaction_basics() {
        let j: PropInterp = [atom("p", &[0])].into_iter().collect();
        assert!(satisfies(&j, &ga("p", &[0])));
        assert!(satisfies(&PropInterp::new(), &GroundFormula::not(ga("p", &[0]))));
        assert!(satisfies(&j, &GroundFormula::And(vec![])));
        assert!(!satisfies(&j, &GroundFormula::Or(vec![])));
    }

    #[test]
    fn reduct_clauses() {
        let j: PropInterp = [atom("p", &[0])].into_iter().collect();
        assert_eq!(reduct(&ga("p", &[0]), &j), ga("p", &[0]));
        assert_eq!(reduct(&ga("q", &[0]), &j), GroundFormula::Bot);

        // p ← ¬¬p under {p}: ¬p is false, so (¬p)^J = ⊥ and (¬¬p)^J = ⊥ → ⊥
        let p = ga("p", &[0]);
        let notnot = GroundFormula::not(GroundFormula::not(p.clone()));
        let rule = GroundFormula::implies(notnot, p.clone());
        let expected = GroundFormula::implies(
            GroundFormula::implies(GroundFormula::Bot, GroundFormula::Bot),
            p,
        );
        assert_eq!(reduct(&rule, &j), expected);
        assert_eq!(reduct(&rule, &j).to_string(), "(true -> p(e0))");
        // under ∅ both sides are false, so both collapse to ⊥
        let empty = PropInterp::new();
        assert_eq!(
            reduct(&rule, &empty),
            GroundFormula::implies(GroundFormula::Bot, GroundFormula::Bot)
        );
    }
}
