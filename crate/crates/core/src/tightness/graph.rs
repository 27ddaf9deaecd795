//! Predicate dependency graph, tightness and DOT rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::chains::Chain;
use super::occurrences::positive_nonnegated;
use crate::completion::desugar;
use crate::syntax::Program;

/// Edge `p → q` whenever a rule with head predicate `p` has a positive
/// nonnegated occurrence of `q` in its body. Edges carry the indices of the
/// witnessing rules in the desugared program.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PredicateDependencyGraph {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeMap<(String, String), BTreeSet<usize>>,
}

impl PredicateDependencyGraph {
    pub fn successors<'a>(&'a self, p: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges
            .keys()
            .filter(move |(from, _)| from == p)
            .map(|(_, to)| to.as_str())
    }

    /// A directed cycle, self-loops included, as a list of vertices whose
    /// last element has an edge back to the first.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();
        for root in &self.vertices {
            if marks.contains_key(root.as_str()) {
                continue;
            }
            let mut stack: Vec<(&str, Vec<&str>)> = vec![(root, self.successors(root).collect())];
            marks.insert(root, Mark::Open);
            while let Some((node, pending)) = stack.last_mut() {
                let node = *node;
                match pending.pop() {
                    Some(next) => match marks.get(next) {
                        Some(Mark::Open) => {
                            let start = stack.iter().position(|(n, _)| *n == next).expect("open");
                            return Some(stack[start..].iter().map(|(n, _)| n.to_string()).collect());
                        }
                        Some(Mark::Done) => {}
                        None => {
                            marks.insert(next, Mark::Open);
                            stack.push((next, self.successors(next).collect()));
                        }
                    },
                    None => {
                        marks.insert(node, Mark::Done);
                        stack.pop();
                    }
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// DOT digraph with one node per predicate.
    pub fn to_dot(&self) -> String {
        if self.vertices.is_empty() {
            return "digraph {}\n".to_string();
        }
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            writeln!(out, "  {};", quote(v)).unwrap();
        }
        for (from, to) in self.edges.keys() {
            writeln!(out, "  {} -> {};", quote(from), quote(to)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// The predicate dependency graph of the desugared program.
pub fn predicate_dependency_graph(prog: &Program) -> PredicateDependencyGraph {
    let prog = desugar(prog);
    let mut g = PredicateDependencyGraph {
        vertices: prog.signature.predicates.keys().cloned().collect(),
        edges: BTreeMap::new(),
    };
    for (i, rule) in prog.rules.iter().enumerate() {
        let Some(head) = rule.head_predicate() else { continue };
        for atom in positive_nonnegated(&rule.body) {
            g.edges
                .entry((head.to_string(), atom.predicate))
                .or_default()
                .insert(i);
        }
    }
    g
}

/// A program is tight when its predicate dependency graph is acyclic.
pub fn is_tight(prog: &Program) -> bool {
    predicate_dependency_graph(prog).is_acyclic()
}

/// DOT rendering of the part of the rule dependency graph traversed by
/// `chains`: one node per renamed rule, edges labelled by the linking atom.
pub fn chains_to_dot(chains: &[Chain]) -> String {
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: BTreeSet<(usize, usize, String)> = BTreeSet::new();
    let id = |text: String, nodes: &mut Vec<String>| match nodes.iter().position(|n| *n == text) {
        Some(i) => i,
        None => {
            nodes.push(text);
            nodes.len() - 1
        }
    };
    for chain in chains {
        let ids: Vec<usize> = chain
            .rules
            .iter()
            .map(|r| id(r.to_string(), &mut nodes))
            .collect();
        for (i, label) in chain.labels.iter().enumerate() {
            edges.insert((ids[i], ids[i + 1], label.to_string()));
        }
    }
    if nodes.is_empty() {
        return "digraph {}\n".to_string();
    }
    let mut out = String::from("digraph {\n");
    for (i, n) in nodes.iter().enumerate() {
        writeln!(out, "  r{i} [label={}];", quote(n)).unwrap();
    }
    for (from, to, label) in &edges {
        writeln!(out, "  r{from} -> r{to} [label={}];", quote(label)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
