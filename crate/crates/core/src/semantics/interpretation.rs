use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ground::{GroundAtom, PropInterp};
use super::{Limits, SemanticsError};
use crate::syntax::{Formula, Sentence, Signature, Term};

/// Extension of one predicate: a set of element-id tuples of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }
}

/// A finite first-order interpretation with universe `{e0, ..., e(m-1)}`.
///
/// Constants need not denote distinct elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interpretation {
    pub universe: usize,
    pub constants: BTreeMap<String, usize>,
    pub relations: BTreeMap<String, Relation>,
}

impl Interpretation {
    /// All relations empty, all constants denoting `e0`.
    pub fn empty(sig: &Signature, universe: usize) -> Self {
        Interpretation {
            universe,
            constants: sig.constants.iter().map(|c| (c.clone(), 0)).collect(),
            relations: sig
                .predicates
                .iter()
                .map(|(p, &n)| (p.clone(), Relation::empty(n)))
                .collect(),
        }
    }

    pub fn constant(&self, name: &str) -> Result<usize, SemanticsError> {
        self.constants
            .get(name)
            .copied()
            .ok_or_else(|| SemanticsError::UnmappedConstant(name.to_string()))
    }

    pub fn holds(&self, predicate: &str, args: &[usize]) -> bool {
        self.relations
            .get(predicate)
            .is_some_and(|r| r.tuples.contains(args))
    }

    pub fn insert(&mut self, predicate: &str, args: Vec<usize>) {
        let arity = args.len();
        self.relations
            .entry(predicate.to_string())
            .or_insert_with(|| Relation::empty(arity))
            .tuples
            .insert(args);
    }

    pub fn remove(&mut self, predicate: &str, args: &[usize]) {
        if let Some(r) = self.relations.get_mut(predicate) {
            r.tuples.remove(args);
        }
    }

    /// Checks that every symbol of `sig` is interpreted with the right arity
    /// and that all ids lie in the universe.
    pub fn check_covers(&self, sig: &Signature) -> Result<(), SemanticsError> {
        if self.universe == 0 {
            return Err(SemanticsError::EmptyUniverse);
        }
        for c in &sig.constants {
            let e = self.constant(c)?;
            if e >= self.universe {
                return Err(SemanticsError::InvalidLiteral(format!(
                    "constant {c} denotes e{e} outside the universe"
                )));
            }
        }
        for (p, &n) in &sig.predicates {
            match self.relations.get(p) {
                None => return Err(SemanticsError::UnknownPredicate(p.clone())),
                Some(r) if r.arity != n => {
                    return Err(SemanticsError::ArityMismatch {
                        predicate: p.clone(),
                        expected: n,
                        found: r.arity,
                    })
                }
                Some(r) => {
                    if r.tuples.iter().flatten().any(|&e| e >= self.universe) {
                        return Err(SemanticsError::InvalidLiteral(format!(
                            "extension of {p} leaves the universe"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `I^r`: the set of ground atoms true in the interpretation.
    pub fn atoms(&self) -> PropInterp {
        self.relations
            .iter()
            .flat_map(|(p, r)| {
                r.tuples
                    .iter()
                    .map(move |t| GroundAtom::new(p.clone(), t.clone()))
            })
            .collect()
    }

    pub fn term_value(&self, t: &Term, env: &[(String, usize)]) -> Result<usize, SemanticsError> {
        match t {
            Term::Const(c) => self.constant(c),
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|(_, e)| *e)
                .ok_or_else(|| SemanticsError::FreeVariable(v.clone())),
        }
    }

    /// Tarskian satisfaction of a sentence.
    pub fn satisfies(&self, s: &Sentence) -> Result<bool, SemanticsError> {
        self.eval(s.formula(), &mut Vec::new())
    }

    pub fn satisfies_all<'a>(
        &self,
        sentences: impl IntoIterator<Item = &'a Sentence>,
    ) -> Result<bool, SemanticsError> {
        for s in sentences {
            if !self.satisfies(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates `f` under the variable assignment `env` (innermost binding last).
    pub fn eval(&self, f: &Formula, env: &mut Vec<(String, usize)>) -> Result<bool, SemanticsError> {
        Ok(match f {
            Formula::Bot => false,
            Formula::Atom(a) => {
                let args = a
                    .args
                    .iter()
                    .map(|t| self.term_value(t, env))
                    .collect::<Result<Vec<_>, _>>()?;
                self.holds(&a.predicate, &args)
            }
            Formula::Eq(l, r) => self.term_value(l, env)? == self.term_value(r, env)?,
            Formula::And(l, r) => self.eval(l, env)? && self.eval(r, env)?,
            Formula::Or(l, r) => self.eval(l, env)? || self.eval(r, env)?,
            Formula::Implies(l, r) => !self.eval(l, env)? || self.eval(r, env)?,
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let universal = matches!(f, Formula::Forall(..));
                for e in 0..self.universe {
                    env.push((v.clone(), e));
                    let value = self.eval(b, env);
                    env.pop();
                    if value? != universal {
                        return Ok(!universal);
                    }
                }
                universal
            }
        })
    }

    /// Parses the literal format `universe=m; a=e0; p={(e0),(e1)}`.
    ///
    /// Predicates of `sig` missing from the literal get empty extensions.
    pub fn parse(text: &str, sig: &Signature) -> Result<Interpretation, SemanticsError> {
        let bad = |msg: String| SemanticsError::InvalidLiteral(msg);
        let mut parts = text.trim().split(';').map(str::trim).filter(|s| !s.is_empty());
        let universe = parts
            .next()
            .and_then(|p| p.strip_prefix("universe="))
            .ok_or_else(|| bad("literal must start with `universe=<m>`".into()))?
            .trim()
            .parse::<usize>()
            .map_err(|e| bad(format!("universe size: {e}")))?;
        let mut interp = Interpretation {
            universe,
            constants: BTreeMap::new(),
            relations: sig
                .predicates
                .iter()
                .map(|(p, &n)| (p.clone(), Relation::empty(n)))
                .collect(),
        };
        let element = |s: &str| -> Result<usize, SemanticsError> {
            s.trim()
                .strip_prefix('e')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("`{s}` is not an element name")))
        };
        for part in parts {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("`{part}` is not `name=value`")))?;
            let (name, value) = (name.trim(), value.trim());
            if let Some(inner) = value.strip_prefix('{').and_then(|v| v.strip_suffix('}')) {
                let arity = sig
                    .arity(name)
                    .ok_or_else(|| SemanticsError::UnknownPredicate(name.to_string()))?;
                let mut tuples = BTreeSet::new();
                let inner = inner.trim();
                if !inner.is_empty() {
                    let body = inner
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| bad(format!("malformed tuples for {name}")))?;
                    for tuple in body.split("),(") {
                        let tuple = tuple.trim();
                        let elems = if tuple.is_empty() {
                            Vec::new()
                        } else {
                            tuple.split(',').map(element).collect::<Result<Vec<_>, _>>()?
                        };
                        if elems.len() != arity {
                            return Err(SemanticsError::ArityMismatch {
                                predicate: name.to_string(),
                                expected: arity,
                                found: elems.len(),
                            });
                        }
                        tuples.insert(elems);
                    }
                }
                interp
                    .relations
                    .insert(name.to_string(), Relation { arity, tuples });
            } else {
                if !sig.constants.contains(name) {
                    return Err(bad(format!("unknown constant {name}")));
                }
                interp.constants.insert(name.to_string(), element(value)?);
            }
        }
        interp.check_covers(sig)?;
        Ok(interp)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "universe={}", self.universe)?;
        for (c, e) in &self.constants {
            write!(f, "; {c}=e{e}")?;
        }
        for (p, r) in &self.relations {
            write!(f, "; {p}={{")?;
            for (i, t) in r.tuples.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str("(")?;
                for (j, e) in t.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "e{e}")?;
                }
                f.write_str(")")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn tuple_of(mut index: usize, arity: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = index % m;
        index /= m;
    }
    t
}

/// Number of interpretations of `sig` over a universe of size `m`, or
/// `None` when it does not fit in a `u128`.
pub fn interpretation_count(sig: &Signature, m: usize) -> Option<u128> {
    let m128 = m as u128;
    let mut total: u128 = 1;
    for _ in &sig.constants {
        total = total.checked_mul(m128)?;
    }
    for &n in sig.predicates.values() {
        let bits = m128.checked_pow(u32::try_from(n).ok()?)?;
        if bits >= 128 {
            return None;
        }
        total = total.checked_mul(1u128 << bits)?;
    }
    Some(total)
}

/// Exhaustive enumeration in lexicographic order: constant denotations
/// (constants sorted, last varying fastest), then one extension bitmask per
/// predicate (predicates sorted, tuples in lexicographic order, last
/// predicate varying fastest).
pub struct InterpretationIter {
    sig: Signature,
    m: usize,
    digits: Vec<u64>,
    radices: Vec<u64>,
    done: bool,
}

impl Iterator for InterpretationIter {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let nconst = self.sig.constants.len();
        let constants = self
            .sig
            .constants
            .iter()
            .zip(&self.digits)
            .map(|(c, &d)| (c.clone(), d as usize))
            .collect();
        let relations = self
            .sig
            .predicates
            .iter()
            .zip(&self.digits[nconst..])
            .map(|((p, &n), &mask)| {
                let count = self.m.pow(n as u32);
                let tuples = (0..count)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| tuple_of(i, n, self.m))
                    .collect();
                (p.clone(), Relation { arity: n, tuples })
            })
            .collect();
        let out = Interpretation {
            universe: self.m,
            constants,
            relations,
        };
        // odometer step
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}

/// All interpretations of `sig` with universe size `m`.
pub fn enumerate_interpretations(
    sig: &Signature,
    m: usize,
    limits: &Limits,
) -> Result<InterpretationIter, SemanticsError> {
    if m == 0 {
        return Err(SemanticsError::EmptyUniverse);
    }
    let count = interpretation_count(sig, m);
    let too_wide = sig
        .predicates
        .values()
        .any(|&n| (m as u128).checked_pow(n as u32).is_none_or(|bits| bits >= 64));
    match count {
        _ if too_wide => {
            return Err(SemanticsError::ResourceGuard {
                what: format!("enumerating interpretations of size {m}"),
                size: "overflow".to_string(),
                limit: limits.interpretation_ceiling.to_string(),
            })
        }
        Some(c) if c <= limits.interpretation_ceiling => {}
        _ => {
            return Err(SemanticsError::ResourceGuard {
                what: format!("enumerating interpretations of size {m}"),
                size: count.map_or_else(|| "overflow".to_string(), |c| c.to_string()),
                limit: limits.interpretation_ceiling.to_string(),
            })
        }
    }
    let mut radices: Vec<u64> = sig.constants.iter().map(|_| m as u64).collect();
    radices.extend(
        sig.predicates
            .values()
            .map(|&n| 1u64 << m.pow(n as u32)),
    );
    Ok(InterpretationIter {
        sig: sig.clone(),
        m,
        digits: vec![0; radices.len()],
        radices,
        done: false,
    })
}

/// One random interpretation: uniform constant denotations, every tuple
/// included independently with probability 1/2.
pub fn sample_interpretation<R: Rng>(sig: &Signature, m: usize, rng: &mut R) -> Interpretation {
    let constants = sig
        .constants
        .iter()
        .map(|c| (c.clone(), rng.random_range(0..m)))
        .collect();
    let relations = sig
        .predicates
        .iter()
        .map(|(p, &n)| {
            let tuples = (0..m.pow(n as u32))
                .filter(|_| rng.random_bool(0.5))
                .map(|i| tuple_of(i, n, m))
                .collect();
            (p.clone(), Relation { arity: n, tuples })
        })
        .collect();
    Interpretation {
        universe: m,
        constants,
        relations,
    }
}

/// `count` seeded samples; each picks its universe size uniformly from `sizes`.
pub fn sample_interpretations(
    sig: &Signature,
    sizes: &[usize],
    count: usize,
    seed: u64,
) -> Result<Vec<Interpretation>, SemanticsError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(SemanticsError::EmptyUniverse);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let m = sizes[rng.random_range(0..sizes.len())];
            sample_interpretation(sig, m, &mut rng)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_sentences};

    #[test]
    fn counts_match_formula() {
        let p2 = parse_program("p(X) :- q(X). q(a) :- p(b).").unwrap();
        let all: Vec<_> = enumerate_interpretations(&p2.signature, 1, &Limits::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 4);
        assert_eq!(interpretation_count(&p2.signature, 1), Some(4));

        let empty = Signature::new();
        assert_eq!(
            enumerate_interpretations(&empty, 1, &Limits::default())
                .unwrap()
                .count(),
            1
        );

        let p1 = parse_program("p(a). q(b). p(X) :- q(X).").unwrap();
        let all: Vec<_> = enumerate_interpretations(&p1.signature, 2, &Limits::default())
            .unwrap()
            .collect();
        assert_eq!(all.len(), 64);
        let distinct: BTreeSet<String> = all.iter().map(|i| i.to_string()).collect();
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let p = parse_program("p(a).").unwrap();
        let lits: Vec<String> = enumerate_interpretations(&p.signature, 2, &Limits::default())
            .unwrap()
            .map(|i| i.to_string())
            .collect();
        assert_eq!(
            lits,
            vec![
                "universe=2; a=e0; p={}",
                "universe=2; a=e0; p={(e0)}",
                "universe=2; a=e0; p={(e1)}",
                "universe=2; a=e0; p={(e0),(e1)}",
                "universe=2; a=e1; p={}",
                "universe=2; a=e1; p={(e0)}",
                "universe=2; a=e1; p={(e1)}",
                "universe=2; a=e1; p={(e0),(e1)}",
            ]
        );
    }

    #[test]
    fn guard_refuses_large_spaces() {
        let p = parse_program("#extensional at/3.").unwrap();
        let limits = Limits {
            interpretation_ceiling: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_interpretations(&p.signature, 3, &limits),
            Err(SemanticsError::ResourceGuard { .. })
        ));
    }

    #[test]
    fn literal_round_trip() {
        let p = parse_program("p(X) :- q(X). q(a) :- p(b). r.").unwrap();
        let text = "universe=2; a=e0; b=e0; p={(e0),(e1)}; q={(e1)}; r={()}";
        let i = Interpretation::parse(text, &p.signature).unwrap();
        assert_eq!(i.to_string(), text);
        assert!(i.holds("r", &[]));
        let j = Interpretation::parse("universe=1; a=e0; b=e0", &p.signature).unwrap();
        assert_eq!(j.to_string(), "universe=1; a=e0; b=e0; p={}; q={}; r={}");
        assert!(Interpretation::parse("universe=1; a=e0", &p.signature).is_err());
        assert!(Interpretation::parse("universe=1; a=e0; b=e3", &p.signature).is_err());
    }

    #[test]
    fn tarskian_evaluation() {
        let p = parse_program("p(a). q(b).").unwrap();
        let i = Interpretation::parse("universe=2; a=e0; b=e1; p={(e0)}; q={(e1)}", &p.signature)
            .unwrap();
        let s = parse_sentences(
            "p(a). not p(b). exists X (q(X) & X != a). forall X (p(X) | q(X)). a != b.",
        )
        .unwrap();
        for sentence in &s {
            assert!(i.satisfies(sentence).unwrap(), "{sentence}");
        }
        let s = parse_sentences("forall X (p(X)).").unwrap();
        assert!(!i.satisfies(&s[0]).unwrap());
    }

    #[test]
    fn sampling_is_reproducible() {
        let p = parse_program("#extensional at/3. q(a).").unwrap();
        let a = sample_interpretations(&p.signature, &[2, 3], 20, 7).unwrap();
        let b = sample_interpretations(&p.signature, &[2, 3], 20, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().any(|i| i.universe == 2) && a.iter().any(|i| i.universe == 3));
    }
}
