use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::formula::{Atom, Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("predicate {predicate} used with arity {found}, declared with arity {expected}")]
    ArityMismatch {
        predicate: String,
        expected: usize,
        found: usize,
    },
    #[error("predicate {0} is not in the signature")]
    UnknownPredicate(String),
    #[error("equality cannot be used as a predicate")]
    ReservedEquality,
}

/// Predicate symbols with arities plus object constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.predicates.is_empty() && self.constants.is_empty()
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if name == "=" {
            return Err(SignatureError::ReservedEquality);
        }
        match self.predicates.get(name) {
            Some(&expected) if expected != arity => Err(SignatureError::ArityMismatch {
                predicate: name.to_string(),
                expected,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.predicates.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    pub fn add_formula(&mut self, f: &Formula) -> Result<(), SignatureError> {
        for atom in f.atoms() {
            self.add_predicate(&atom.predicate, atom.arity())?;
        }
        self.constants.extend(f.constants());
        Ok(())
    }

    pub fn add_atom(&mut self, atom: &Atom) -> Result<(), SignatureError> {
        self.add_predicate(&atom.predicate, atom.arity())?;
        self.constants
            .extend(atom.args.iter().filter_map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                Term::Var(_) => None,
            }));
        Ok(())
    }

    pub fn merge(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        for (p, &n) in &other.predicates {
            out.add_predicate(p, n)?;
        }
        out.constants.extend(other.constants.iter().cloned());
        Ok(out)
    }

    pub fn arity(&self, predicate: &str) -> Option<usize> {
        self.predicates.get(predicate).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Basic,
    Choice,
    Constraint,
}

/// `p(t) ← G`, `{p(t)} ← G` or `← G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub kind: RuleKind,
    pub head: Option<Atom>,
    pub body: Formula,
}

impl Rule {
    pub fn basic(head: Atom, body: Formula) -> Self {
        Rule {
            kind: RuleKind::Basic,
            head: Some(head),
            body,
        }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::basic(head, Formula::top())
    }

    pub fn choice(head: Atom, body: Formula) -> Self {
        Rule {
            kind: RuleKind::Choice,
            head: Some(head),
            body,
        }
    }

    pub fn constraint(body: Formula) -> Self {
        Rule {
            kind: RuleKind::Constraint,
            head: None,
            body,
        }
    }

    pub fn head_predicate(&self) -> Option<&str> {
        self.head.as_ref().map(|a| a.predicate.as_str())
    }

    /// Free variables of the rule: head variables first, then body variables,
    /// each in order of first occurrence.
    pub fn free_variables_ordered(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        if let Some(head) = &self.head {
            for t in &head.args {
                if let Term::Var(v) = t {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
        }
        for v in self.body.free_variables_ordered() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// All variables of the rule, free and bound.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = self.body.variables();
        if let Some(head) = &self.head {
            out.extend(head.args.iter().filter_map(|t| t.as_var()).map(String::from));
        }
        out
    }

    /// Renames every variable `v` (free or bound) to `v_tag`.
    ///
    /// Copies of rules renamed with distinct tags share no variables.
    pub fn rename_apart(&self, tag: usize) -> Rule {
        let rename = |v: &str| format!("{v}_{tag}");
        Rule {
            kind: self.kind,
            head: self.head.as_ref().map(|h| Atom {
                predicate: h.predicate.clone(),
                args: h
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Term::Var(rename(v)),
                        c => c.clone(),
                    })
                    .collect(),
            }),
            body: self.body.rename_variables(&rename),
        }
    }

    /// The sentence this rule stands for: `∀̃(G → p(t))`, `∀̃(G → p(t) ∨ ¬p(t))`
    /// or `∀̃¬G`.
    pub fn to_formula(&self) -> Formula {
        let vars = self.free_variables_ordered();
        let matrix = match (&self.kind, &self.head) {
            (RuleKind::Basic, Some(h)) => {
                Formula::implies(self.body.clone(), Formula::Atom(h.clone()))
            }
            (RuleKind::Choice, Some(h)) => Formula::implies(
                self.body.clone(),
                Formula::or(
                    Formula::Atom(h.clone()),
                    Formula::not(Formula::Atom(h.clone())),
                ),
            ),
            _ => Formula::not(self.body.clone()),
        };
        Formula::forall_many(vars, matrix)
    }
}

/// A finite list of rules over a signature, with the set of intensional predicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub signature: Signature,
    pub rules: Vec<Rule>,
    pub intensional: BTreeSet<String>,
}

impl Program {
    /// Builds a program whose signature is collected from `rules` and the
    /// `extensional` declarations; every other predicate is intensional.
    pub fn new(
        rules: Vec<Rule>,
        extensional: &[(String, usize)],
    ) -> Result<Program, SignatureError> {
        let mut signature = Signature::new();
        for rule in &rules {
            if let Some(h) = &rule.head {
                signature.add_atom(h)?;
            }
            signature.add_formula(&rule.body)?;
        }
        for (p, n) in extensional {
            signature.add_predicate(p, *n)?;
        }
        let intensional = signature
            .predicates
            .keys()
            .filter(|p| !extensional.iter().any(|(e, _)| e == *p))
            .cloned()
            .collect();
        Ok(Program {
            signature,
            rules,
            intensional,
        })
    }

    pub fn extensional(&self) -> impl Iterator<Item = (&str, usize)> {
        self.signature
            .predicates
            .iter()
            .filter(|(p, _)| !self.intensional.contains(*p))
            .map(|(p, &n)| (p.as_str(), n))
    }

    pub fn rules_for<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Rule> + 'a {
        self.rules
            .iter()
            .filter(move |r| r.head_predicate() == Some(predicate))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.rules.iter().flat_map(|r| r.variables()).collect()
    }

    pub fn has_choice_rules(&self) -> bool {
        self.rules.iter().any(|r| r.kind == RuleKind::Choice)
    }

    /// The program as one sentence: the conjunction of its rules' closures.
    pub fn to_formula(&self) -> Formula {
        Formula::conjoin(self.rules.iter().map(Rule::to_formula))
    }
}
