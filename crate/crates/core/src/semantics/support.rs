//! Supportedness, positive nonnegated atoms and tightness on an
//! interpretation.

use std::collections::{BTreeMap, BTreeSet};

use super::ground::{satisfies, GroundAtom, GroundFormula, GroundProgram, PropInterp};

/// Every atom of `j` heads a rule whose body `j` satisfies.
pub fn is_supported(gp: &GroundProgram, j: &PropInterp) -> bool {
    let supported: BTreeSet<&GroundAtom> = gp
        .rules
        .iter()
        .filter_map(|r| r.head.as_ref().filter(|_| satisfies(j, &r.body)))
        .collect();
    j.iter().all(|a| supported.contains(a))
}

/// `(Pnn(f), Nnn(f))`: positive and negative nonnegated atoms.
pub fn pnn_nnn(f: &GroundFormula) -> (BTreeSet<GroundAtom>, BTreeSet<GroundAtom>) {
    match f {
        GroundFormula::Bot => (BTreeSet::new(), BTreeSet::new()),
        GroundFormula::Atom(a) => ([a.clone()].into(), BTreeSet::new()),
        GroundFormula::And(fs) | GroundFormula::Or(fs) => {
            let mut pos = BTreeSet::new();
            let mut neg = BTreeSet::new();
            for g in fs {
                let (p, n) = pnn_nnn(g);
                pos.extend(p);
                neg.extend(n);
            }
            (pos, neg)
        }
        GroundFormula::Implies(_, r) if **r == GroundFormula::Bot => {
            (BTreeSet::new(), BTreeSet::new())
        }
        GroundFormula::Implies(l, r) => {
            let (lp, ln) = pnn_nnn(l);
            let (rp, rn) = pnn_nnn(r);
            (ln.into_iter().chain(rp).collect(), lp.into_iter().chain(rn).collect())
        }
    }
}

/// The parent relation restricted to `j`: for each atom, the atoms of `j`
/// that are positive nonnegated in the body of a rule supporting it.
pub fn parent_graph(gp: &GroundProgram, j: &PropInterp) -> BTreeMap<GroundAtom, BTreeSet<GroundAtom>> {
    let mut graph: BTreeMap<GroundAtom, BTreeSet<GroundAtom>> =
        j.iter().map(|a| (a.clone(), BTreeSet::new())).collect();
    for rule in &gp.rules {
        let Some(head) = &rule.head else { continue };
        if !j.contains(head) || !satisfies(j, &rule.body) {
            continue;
        }
        let (pos, _) = pnn_nnn(&rule.body);
        graph
            .get_mut(head)
            .expect("head is in j")
            .extend(pos.into_iter().filter(|a| j.contains(a)));
    }
    graph
}

/// No infinite descending parent sequence, i.e. the parent graph over the
/// finite set `j` is acyclic.
pub fn is_tight_on(gp: &GroundProgram, j: &PropInterp) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let graph = parent_graph(gp, j);
    let mut marks: BTreeMap<&GroundAtom, Mark> = BTreeMap::new();
    for root in graph.keys() {
        if marks.contains_key(root) {
            continue;
        }
        let mut stack: Vec<(&GroundAtom, Vec<&GroundAtom>)> =
            vec![(root, graph[root].iter().collect())];
        marks.insert(root, Mark::Open);
        while let Some((node, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(next) => match marks.get(next) {
                    Some(Mark::Open) => return false,
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(next, Mark::Open);
                        stack.push((next, graph[next].iter().collect()));
                    }
                },
                None => {
                    marks.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
    }
    true
}
