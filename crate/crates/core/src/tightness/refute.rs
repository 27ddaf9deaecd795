//! A sound, incomplete refutation procedure for `Γ ∧ Comp[Π] ∧ ∃̃F`.
//!
//! The free variables of `F` become fresh constants. Literals are collected
//! into a branch with union-find over terms; positive atoms of defined
//! predicates are unfolded through their completed definitions, existentials
//! are Skolemized and disjunctions are split. A branch closes on `⊥`, on
//! `s ≠ t` with `s` and `t` merged, or on complementary atoms with merged
//! arguments. Universal premises are not instantiated, which keeps the
//! procedure terminating and sound but incomplete.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::completion::{definition_of, desugar, simplify, CompletionError};
use crate::syntax::{Formula, Program, Sentence, Term};

/// Bounds on the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefuterBudget {
    /// Deepest unfolding generation: atoms of the input are generation 0.
    pub max_generation: u32,
    /// Nested case splits.
    pub max_split_depth: u32,
    /// Total branches explored.
    pub max_branches: u32,
}

impl Default for RefuterBudget {
    fn default() -> Self {
        RefuterBudget {
            max_generation: 4,
            max_split_depth: 6,
            max_branches: 4096,
        }
    }
}

/// Refutes formulas against fixed premises `Γ` and `Comp[Π]`.
pub struct Refuter {
    definitions: BTreeMap<String, (Vec<String>, Formula)>,
    premises: Vec<Formula>,
    budget: RefuterBudget,
}

type Literal = (String, Vec<usize>);

#[derive(Clone, Default)]
struct Branch {
    parent: Vec<usize>,
    ids: HashMap<String, usize>,
    positive: Vec<Literal>,
    negative: Vec<Literal>,
    unequal: Vec<(usize, usize)>,
    closed: bool,
    disjunctions: Vec<(Vec<Formula>, u32)>,
    queue: VecDeque<(Literal, u32)>,
    unfolded: HashSet<Literal>,
    skolems: usize,
}

impl Branch {
    fn id(&mut self, t: &Term) -> usize {
        let key = match t {
            Term::Const(c) => c.clone(),
            Term::Var(v) => format!("?{v}"),
        };
        if let Some(&i) = self.ids.get(&key) {
            return i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.ids.insert(key, i);
        i
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn canonical(&self, lit: &Literal) -> Literal {
        (lit.0.clone(), lit.1.iter().map(|&i| self.find(i)).collect())
    }

    fn literal(&mut self, a: &crate::syntax::Atom) -> Literal {
        (a.predicate.clone(), a.args.iter().map(|t| self.id(t)).collect())
    }

    fn skolem(&mut self, var: &str, body: &Formula) -> Formula {
        self.skolems += 1;
        let name = format!("!{}{}", var, self.skolems);
        body.substitute(&[(var.to_string(), Term::Const(name))].into())
    }

    fn has_clash(&self) -> bool {
        if self.closed {
            return true;
        }
        if self.unequal.iter().any(|&(a, b)| self.find(a) == self.find(b)) {
            return true;
        }
        let positive: HashSet<Literal> = self.positive.iter().map(|l| self.canonical(l)).collect();
        self.negative
            .iter()
            .any(|l| positive.contains(&self.canonical(l)))
    }

    /// Adds `f` to the branch, postponing disjunctions.
    fn assert(&mut self, f: &Formula, generation: u32) {
        if f.is_top() {
            return;
        }
        match f {
            Formula::Bot => self.closed = true,
            Formula::Eq(s, t) => {
                let (a, b) = (self.id(s), self.id(t));
                self.union(a, b);
            }
            Formula::Atom(a) => {
                let lit = self.literal(a);
                self.positive.push(lit.clone());
                self.queue.push_back((lit, generation));
            }
            Formula::And(l, r) => {
                self.assert(l, generation);
                self.assert(r, generation);
            }
            Formula::Or(..) => {
                let mut parts = Vec::new();
                collect_disjuncts(f, &mut parts);
                self.disjunctions.push((parts, generation));
            }
            Formula::Implies(l, r) if **r == Formula::Bot => self.deny(l, generation),
            Formula::Implies(l, r) => self
                .disjunctions
                .push((vec![Formula::not((**l).clone()), (**r).clone()], generation)),
            Formula::Exists(v, b) => {
                let inst = self.skolem(v, b);
                self.assert(&inst, generation);
            }
            Formula::Forall(..) => {}
        }
    }

    /// Adds `¬f`.
    fn deny(&mut self, f: &Formula, generation: u32) {
        if f.is_top() {
            self.closed = true;
            return;
        }
        match f {
            Formula::Bot => {}
            Formula::Eq(s, t) => {
                let (a, b) = (self.id(s), self.id(t));
                self.unequal.push((a, b));
            }
            Formula::Atom(a) => {
                let lit = self.literal(a);
                self.negative.push(lit);
            }
            Formula::Implies(l, r) if **r == Formula::Bot => self.assert(l, generation),
            Formula::Implies(l, r) => {
                self.assert(l, generation);
                self.deny(r, generation);
            }
            Formula::Or(l, r) => {
                self.deny(l, generation);
                self.deny(r, generation);
            }
            Formula::And(l, r) => self.disjunctions.push((
                vec![Formula::not((**l).clone()), Formula::not((**r).clone())],
                generation,
            )),
            Formula::Forall(v, b) => {
                let inst = self.skolem(v, b);
                self.deny(&inst, generation);
            }
            Formula::Exists(..) => {}
        }
    }
}

fn collect_disjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Or(l, r) => {
            collect_disjuncts(l, out);
            collect_disjuncts(r, out);
        }
        other => out.push(other.clone()),
    }
}

impl Refuter {
    /// Premises are `gamma` and the completed definitions of the
    /// intensional predicates of `prog`, simplified.
    pub fn new(prog: &Program, gamma: &[Sentence]) -> Result<Refuter, CompletionError> {
        let desugared = desugar(prog);
        let mut definitions = BTreeMap::new();
        for p in &prog.intensional {
            let def = definition_of(&desugared, p)?;
            let head = def.head.expect("definitions have heads");
            let vars = head
                .args
                .iter()
                .map(|t| t.as_var().expect("definition heads are variables").to_string())
                .collect();
            definitions.insert(p.clone(), (vars, simplify(&def.body)));
        }
        Ok(Refuter {
            definitions,
            premises: gamma.iter().map(|s| s.formula().clone()).collect(),
            budget: RefuterBudget::default(),
        })
    }

    pub fn with_budget(mut self, budget: RefuterBudget) -> Refuter {
        self.budget = budget;
        self
    }

    /// `true` when `Γ ∧ Comp[Π] ∧ ∃̃f` was shown contradictory.
    pub fn refutes(&self, f: &Formula) -> bool {
        let mut branch = Branch::default();
        for p in &self.premises {
            branch.assert(p, 0);
        }
        let skolemized = f.substitute(
            &f.free_variables()
                .into_iter()
                .map(|v| {
                    let c = Term::Const(format!("?{v}"));
                    (v, c)
                })
                .collect(),
        );
        branch.assert(&skolemized, 0);
        let mut branches = 0;
        self.close(branch, 0, &mut branches)
    }

    fn saturate(&self, branch: &mut Branch) {
        while let Some((lit, generation)) = branch.queue.pop_front() {
            if branch.has_clash() {
                return;
            }
            if generation >= self.budget.max_generation {
                continue;
            }
            let Some((vars, body)) = self.definitions.get(&lit.0) else { continue };
            let key = branch.canonical(&lit);
            if !branch.unfolded.insert(key) {
                continue;
            }
            let binding = vars
                .iter()
                .zip(&lit.1)
                .map(|(v, &id)| (v.clone(), Term::Const(term_name(branch, id))))
                .collect();
            let inst = body.substitute(&binding);
            branch.assert(&inst, generation + 1);
        }
    }

    fn close(&self, mut branch: Branch, depth: u32, branches: &mut u32) -> bool {
        *branches += 1;
        if *branches > self.budget.max_branches {
            return false;
        }
        self.saturate(&mut branch);
        if branch.has_clash() {
            return true;
        }
        if depth >= self.budget.max_split_depth || branch.disjunctions.is_empty() {
            return false;
        }
        let pick = (0..branch.disjunctions.len())
            .min_by_key(|&i| branch.disjunctions[i].0.len())
            .expect("non-empty");
        let (parts, generation) = branch.disjunctions.swap_remove(pick);
        parts.iter().all(|part| {
            let mut child = branch.clone();
            child.assert(part, generation);
            self.close(child, depth + 1, branches)
        })
    }
}

fn term_name(branch: &Branch, id: usize) -> String {
    branch
        .ids
        .iter()
        .find(|(_, &i)| i == id)
        .map(|(k, _)| k.clone())
        .expect("interned term")
}
