//! Terms, atoms and first-order formulas over a function-free signature.
//!
//! The connective core is `⊥ ∧ ∨ → ∀ ∃` plus equality. Negation and truth
//! are not primitives: `¬F` is `F → ⊥` and `⊤` is `⊥ → ⊥`.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// An atomic formula `p(t1, ..., tn)` with an ordinary (non-equality) predicate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn substitute(&self, binding: &BTreeMap<String, Term>) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self
                .args
                .iter()
                .map(|t| substitute_term(t, binding))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bot,
    Atom(Atom),
    Eq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

fn substitute_term(t: &Term, binding: &BTreeMap<String, Term>) -> Term {
    match t {
        Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
    }
}

impl Formula {
    pub fn top() -> Self {
        Formula::Implies(Box::new(Formula::Bot), Box::new(Formula::Bot))
    }

    pub fn atom(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(predicate, args))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    pub fn neq(lhs: Term, rhs: Term) -> Self {
        Formula::not(Formula::Eq(lhs, rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(Formula::Bot))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// `(F → G) ∧ (G → F)`.
    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Left-nested conjunction; the empty conjunction is `⊤`.
    pub fn conjoin(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; the empty disjunction is `⊥`.
    pub fn disjoin(parts: impl IntoIterator<Item = Formula>) -> Self {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    /// Wraps `body` in `∀v1 ∀v2 ...` with `v1` outermost.
    pub fn forall_many<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn exists_many<S: Into<String>>(vars: impl IntoIterator<Item = S>, body: Formula) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        vars.into_iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v, acc))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Formula::Implies(a, b) if **a == Formula::Bot && **b == Formula::Bot)
    }

    /// Returns `F` when `self` is `F → ⊥`.
    pub fn as_negation(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(a, b) if **b == Formula::Bot => Some(a),
            _ => None,
        }
    }

    /// Splits a left- or right-nested conjunction into its conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        self.free_variables_ordered().into_iter().collect()
    }

    /// Free variables in order of first occurrence.
    pub fn free_variables_ordered(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let visit_term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        };
        match self {
            Formula::Bot => {}
            Formula::Atom(a) => a.args.iter().for_each(|t| visit_term(t, bound, out)),
            Formula::Eq(l, r) => {
                visit_term(l, bound, out);
                visit_term(r, bound, out);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring in the formula, free or bound, binders included.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(a) => out.extend(a.args.iter().filter_map(|t| t.as_var()).map(String::from)),
            Formula::Eq(l, r) => {
                out.extend([l, r].into_iter().filter_map(|t| t.as_var()).map(String::from))
            }
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut add = |t: &Term| {
            if let Term::Const(c) = t {
                out.insert(c.clone());
            }
        };
        self.visit(&mut |f| match f {
            Formula::Atom(a) => a.args.iter().for_each(&mut add),
            Formula::Eq(l, r) => {
                add(l);
                add(r);
            }
            _ => {}
        });
        out
    }

    /// Atoms in pre-order, left to right.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Atom>) {
            match f {
                Formula::Bot | Formula::Eq(..) => {}
                Formula::Atom(a) => out.push(a),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                Formula::Forall(_, b) | Formula::Exists(_, b) => walk(b, out),
            }
        }
        walk(self, &mut out);
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.visit(f),
            _ => {}
        }
    }

    /// Capture-avoiding substitution of free variable occurrences.
    ///
    /// A binder whose variable would capture a variable from the range of
    /// the (relevant part of the) binding is renamed by appending primes.
    pub fn substitute(&self, binding: &BTreeMap<String, Term>) -> Formula {
        if binding.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(a) => Formula::Atom(a.substitute(binding)),
            Formula::Eq(l, r) => Formula::Eq(substitute_term(l, binding), substitute_term(r, binding)),
            Formula::And(l, r) => Formula::and(l.substitute(binding), r.substitute(binding)),
            Formula::Or(l, r) => Formula::or(l.substitute(binding), r.substitute(binding)),
            Formula::Implies(l, r) => Formula::implies(l.substitute(binding), r.substitute(binding)),
            Formula::Forall(v, body) => {
                let (v, body) = substitute_under_binder(v, body, binding);
                Formula::Forall(v, Box::new(body))
            }
            Formula::Exists(v, body) => {
                let (v, body) = substitute_under_binder(v, body, binding);
                Formula::Exists(v, Box::new(body))
            }
        }
    }

    /// Renames every variable, binders included, through `rename`.
    ///
    /// `rename` must be injective on the variables of the formula for the
    /// result to be alpha-equivalent to the input.
    pub fn rename_variables(&self, rename: &impl Fn(&str) -> String) -> Formula {
        let term = |t: &Term| match t {
            Term::Var(v) => Term::Var(rename(v)),
            c => c.clone(),
        };
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(a) => Formula::Atom(Atom {
                predicate: a.predicate.clone(),
                args: a.args.iter().map(term).collect(),
            }),
            Formula::Eq(l, r) => Formula::Eq(term(l), term(r)),
            Formula::And(l, r) => Formula::and(l.rename_variables(rename), r.rename_variables(rename)),
            Formula::Or(l, r) => Formula::or(l.rename_variables(rename), r.rename_variables(rename)),
            Formula::Implies(l, r) => {
                Formula::implies(l.rename_variables(rename), r.rename_variables(rename))
            }
            Formula::Forall(v, b) => Formula::forall(rename(v), b.rename_variables(rename)),
            Formula::Exists(v, b) => Formula::exists(rename(v), b.rename_variables(rename)),
        }
    }

    /// `∀̃F`, binding free variables in order of first occurrence.
    pub fn universal_closure(self) -> Formula {
        let vars = self.free_variables_ordered();
        Formula::forall_many(vars, self)
    }

    /// `∃̃F`, binding free variables in order of first occurrence.
    pub fn existential_closure(self) -> Formula {
        let vars = self.free_variables_ordered();
        Formula::exists_many(vars, self)
    }
}

fn substitute_under_binder(
    v: &str,
    body: &Formula,
    binding: &BTreeMap<String, Term>,
) -> (String, Formula) {
    let body_free = body.free_variables();
    let mut inner: BTreeMap<String, Term> = binding
        .iter()
        .filter(|(k, _)| k.as_str() != v && body_free.contains(k.as_str()))
        .map(|(k, t)| (k.clone(), t.clone()))
        .collect();
    if inner.is_empty() {
        return (v.to_string(), body.clone());
    }
    let captures = inner.values().any(|t| t.as_var() == Some(v));
    if !captures {
        return (v.to_string(), body.substitute(&inner));
    }
    let mut avoid: BTreeSet<String> = body.variables();
    avoid.extend(inner.values().filter_map(|t| t.as_var()).map(String::from));
    avoid.extend(inner.keys().cloned());
    let mut fresh = format!("{v}'");
    while avoid.contains(&fresh) {
        fresh.push('\'');
    }
    inner.insert(v.to_string(), Term::Var(fresh.clone()));
    (fresh, body.substitute(&inner))
}

/// A formula without free variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    /// Returns `None` when `f` has free variables.
    pub fn new(f: Formula) -> Option<Self> {
        f.free_variables_ordered().is_empty().then_some(Sentence(f))
    }

    pub fn closure(f: Formula) -> Self {
        Sentence(f.universal_closure())
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }
}

impl AsRef<Formula> for Sentence {
    fn as_ref(&self) -> &Formula {
        &self.0
    }
}
