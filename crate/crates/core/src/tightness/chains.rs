//! Chains: finite paths in the rule dependency graph over variable-disjoint
//! copies of the rules.

use std::collections::BTreeSet;
use std::fmt;

use super::occurrences::{classify_occurrences, positive_nonnegated};
use crate::completion::desugar;
use crate::syntax::{Atom, Formula, Program, Rule, RuleKind};

/// `R_0 →(label_1) R_1 → … →(label_n) R_n`.
///
/// Rule `R_i` is a copy of rule `sources[i]` of the desugared program with
/// every variable `v` renamed to `v_{i+1}`; `labels[i]` occurs positively and
/// nonnegated in the body of `R_i` and shares its predicate with the head of
/// `R_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub rules: Vec<Rule>,
    pub labels: Vec<Atom>,
    pub sources: Vec<usize>,
}

impl Chain {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The chain formula: the link equalities `s^i = t^i` followed by the
    /// conjuncts of every body. Bodies equal to `⊤` contribute nothing.
    pub fn formula(&self) -> Formula {
        let links = self
            .labels
            .iter()
            .zip(&self.rules[1..])
            .flat_map(|(label, rule)| {
                let head = rule.head.as_ref().expect("chain rules have heads");
                label
                    .args
                    .iter()
                    .zip(&head.args)
                    .map(|(s, t)| Formula::eq(s.clone(), t.clone()))
                    .collect::<Vec<_>>()
            });
        let bodies = self.rules.iter().flat_map(|r| {
            r.body
                .conjuncts()
                .into_iter()
                .filter(|c| !c.is_top())
                .cloned()
                .collect::<Vec<_>>()
        });
        Formula::conjoin(links.chain(bodies))
    }

    /// Checks the link condition and pairwise variable disjointness.
    pub fn validate(&self) -> Result<(), String> {
        if self.rules.len() != self.labels.len() + 1 || self.sources.len() != self.rules.len() {
            return Err("rule, label and source counts disagree".to_string());
        }
        for (i, label) in self.labels.iter().enumerate() {
            let linked = classify_occurrences(&self.rules[i].body)
                .iter()
                .any(|o| o.is_positive_nonnegated() && o.atom == *label);
            if !linked {
                return Err(format!("{label} is not positive nonnegated in rule {i}"));
            }
            let head = self.rules[i + 1]
                .head
                .as_ref()
                .ok_or_else(|| format!("rule {} has no head", i + 1))?;
            if head.predicate != label.predicate || head.arity() != label.arity() {
                return Err(format!("{label} does not match the head {head}"));
            }
        }
        let vars: Vec<BTreeSet<String>> = self.rules.iter().map(Rule::variables).collect();
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                if let Some(v) = vars[i].intersection(&vars[j]).next() {
                    return Err(format!("rules {i} and {j} share variable {v}"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, rule) in self.rules.iter().enumerate() {
            if i > 0 {
                writeln!(f, "  --> {}", self.labels[i - 1])?;
            }
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// The chain formula of `c`.
pub fn chain_formula(c: &Chain) -> Formula {
    c.formula()
}

struct Frame {
    source: usize,
    rule: Rule,
    label: Option<Atom>,
    successors: Vec<(usize, Atom)>,
    next: usize,
}

/// Lazy enumeration of the chains of a fixed length.
///
/// Chains are produced depth-first: by the index of `R_0`, then for each
/// position by the index of the next rule and the position of the linking
/// occurrence.
pub struct Chains {
    rules: Vec<(usize, Rule)>,
    length: usize,
    start: usize,
    stack: Vec<Frame>,
}

impl Chains {
    fn frame(&self, slot: usize, tag: usize, label: Option<Atom>) -> Frame {
        let (source, original) = &self.rules[slot];
        let rule = original.rename_apart(tag);
        let successors = if tag <= self.length {
            let occurrences = positive_nonnegated(&rule.body);
            self.rules
                .iter()
                .enumerate()
                .flat_map(|(j, (_, r))| {
                    let head = r.head_predicate().expect("chains skip constraints");
                    occurrences
                        .iter()
                        .filter(move |a| a.predicate == head)
                        .map(move |a| (j, a.clone()))
                })
                .collect()
        } else {
            Vec::new()
        };
        Frame {
            source: *source,
            rule,
            label,
            successors,
            next: 0,
        }
    }

    fn current(&self) -> Chain {
        Chain {
            rules: self.stack.iter().map(|f| f.rule.clone()).collect(),
            labels: self.stack.iter().filter_map(|f| f.label.clone()).collect(),
            sources: self.stack.iter().map(|f| f.source).collect(),
        }
    }
}

impl Iterator for Chains {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        loop {
            if self.stack.is_empty() {
                if self.start == self.rules.len() {
                    return None;
                }
                let frame = self.frame(self.start, 1, None);
                self.start += 1;
                self.stack.push(frame);
            } else {
                let top = self.stack.last_mut().expect("non-empty");
                if top.next == top.successors.len() {
                    self.stack.pop();
                    continue;
                }
                let (slot, label) = top.successors[top.next].clone();
                top.next += 1;
                let tag = self.stack.len() + 1;
                let frame = self.frame(slot, tag, Some(label));
                self.stack.push(frame);
            }
            if self.stack.len() == self.length + 1 {
                let chain = self.current();
                self.stack.pop();
                return Some(chain);
            }
        }
    }
}

/// All chains of length `n` in the desugared program; constraints do not
/// take part.
pub fn chains(prog: &Program, n: usize) -> Chains {
    let rules = desugar(prog)
        .rules
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.kind != RuleKind::Constraint && r.head.is_some())
        .collect();
    Chains {
        rules,
        length: n,
        start: 0,
        stack: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program};

    fn formulas(src: &str, n: usize) -> Vec<String> {
        chains(&parse_program(src).unwrap(), n)
            .map(|c| c.formula().to_string())
            .collect()
    }

    #[test]
    fn program_six_single_chain() {
        let prog = parse_program("p(a,b). q(X,Y) :- p(Y,X) & not p(X,Y).").unwrap();
        let all: Vec<Chain> = chains(&prog, 1).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].labels[0].to_string(), "p(Y_1,X_1)");
        assert_eq!(
            all[0].formula(),
            parse_formula("Y_1 = a & X_1 = b & p(Y_1,X_1) & not p(X_1,Y_1)").unwrap()
        );
        all[0].validate().unwrap();
    }

    #[test]
    fn example_two_chains() {
        assert_eq!(
            formulas("p(a) :- p(b). q(c) :- q(d).", 1),
            vec!["b = a & p(b) & p(b)", "d = c & q(d) & q(d)"]
        );
    }

    #[test]
    fn example_one_chain() {
        assert_eq!(
            formulas("p(a) :- p(X) & X != a.", 1),
            vec!["X_1 = a & p(X_1) & X_1 != a & p(X_2) & X_2 != a"]
        );
    }

    #[test]
    fn lengths_zero_and_beyond() {
        assert_eq!(
            formulas("p(a). q(b). p(X) :- q(X).", 0),
            vec!["true", "true", "q(X_1)"]
        );
        assert_eq!(formulas("p(a). q(b). p(X) :- q(X).", 1).len(), 1);
        assert!(formulas("p(a). q(b). p(X) :- q(X).", 2).is_empty());
        assert_eq!(formulas("p(X) :- q(X). q(a) :- p(b).", 4).len(), 2);
    }

    #[test]
    fn renamed_copies_are_disjoint() {
        let prog = parse_program("p(X) :- p(X) & exists Y (q(X,Y)). q(X,Y) :- p(X).").unwrap();
        for c in chains(&prog, 3) {
            c.validate().unwrap();
        }
    }
}
