//! Polarity and negatedness of atom occurrences.

use crate::syntax::{Atom, Formula};

/// One atom occurrence together with its position and classification.
///
/// `path` lists child indices from the root: `0`/`1` for the two sides of a
/// binary connective and `0` for a quantifier body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceInfo {
    pub predicate: String,
    pub atom: Atom,
    pub path: Vec<usize>,
    pub positive: bool,
    pub negated: bool,
}

impl OccurrenceInfo {
    pub fn is_positive_nonnegated(&self) -> bool {
        self.positive && !self.negated
    }
}

/// Labels every atom occurrence of `f`, in left-to-right order.
///
/// An occurrence is positive when an even number of implication antecedents
/// contain it (the encoding of `¬F` as `F → ⊥` counts) and negated when it
/// lies inside some `F → ⊥`.
pub fn classify_occurrences(f: &Formula) -> Vec<OccurrenceInfo> {
    let mut out = Vec::new();
    walk(f, &mut Vec::new(), true, false, &mut out);
    out
}

fn walk(f: &Formula, path: &mut Vec<usize>, positive: bool, negated: bool, out: &mut Vec<OccurrenceInfo>) {
    match f {
        Formula::Bot | Formula::Eq(..) => {}
        Formula::Atom(a) => out.push(OccurrenceInfo {
            predicate: a.predicate.clone(),
            atom: a.clone(),
            path: path.clone(),
            positive,
            negated,
        }),
        Formula::And(l, r) | Formula::Or(l, r) => {
            for (i, g) in [l, r].into_iter().enumerate() {
                path.push(i);
                walk(g, path, positive, negated, out);
                path.pop();
            }
        }
        Formula::Implies(l, r) => {
            let negation = **r == Formula::Bot;
            path.push(0);
            walk(l, path, !positive, negated || negation, out);
            path.pop();
            path.push(1);
            walk(r, path, positive, negated, out);
            path.pop();
        }
        Formula::Forall(_, b) | Formula::Exists(_, b) => {
            path.push(0);
            walk(b, path, positive, negated, out);
            path.pop();
        }
    }
}

/// Atoms occurring positively and nonnegated in `f`, in occurrence order.
pub fn positive_nonnegated(f: &Formula) -> Vec<Atom> {
    classify_occurrences(f)
        .into_iter()
        .filter(OccurrenceInfo::is_positive_nonnegated)
        .map(|o| o.atom)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn flags(src: &str) -> Vec<(String, bool, bool)> {
        classify_occurrences(&parse_formula(src).unwrap())
            .into_iter()
            .map(|o| (o.atom.to_string(), o.positive, o.negated))
            .collect()
    }

    #[test]
    fn body_with_negated_occurrence() {
        assert_eq!(
            flags("p(Y,X) & not p(X,Y)"),
            vec![
                ("p(Y,X)".to_string(), true, false),
                ("p(X,Y)".to_string(), false, true),
            ]
        );
    }

    #[test]
    fn antecedents_flip_polarity() {
        assert_eq!(
            flags("(g -> h) -> k"),
            vec![
                ("g".to_string(), true, false),
                ("h".to_string(), false, false),
                ("k".to_string(), true, false),
            ]
        );
        assert_eq!(flags("not not q"), vec![("q".to_string(), true, true)]);
    }

    #[test]
    fn lone_atom_and_paths() {
        assert_eq!(flags("q(a)"), vec![("q(a)".to_string(), true, false)]);
        let occ = classify_occurrences(&parse_formula("exists X (p(X) | q(X))").unwrap());
        assert_eq!(occ[0].path, vec![0, 0]);
        assert_eq!(occ[1].path, vec![0, 1]);
    }
}
