//! The moving-objects program: its stable models against the explicit
//! characterization by unique names, typing and location conditions,
//! step and successor definitions, and successor-state formulas for `at`.

use std::fmt::Write;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::check::{EquivError, EquivReport, Runner};
use super::fixtures::builtin_fixture;
use crate::semantics::{sample_interpretations, Interpretation, Limits};
use crate::syntax::{parse_sentences, Sentence};

/// `step(z) ↔ ⋁ z = î`, `next(z,u) ↔ ⋁ (z = î ∧ u = î+1)` and, for each
/// `i < k`, `at(x,y,î+1) ↔ move(x,y,î) ∨ (at(x,y,î) ∧ ¬∃w move(x,w,î))`.
pub fn successor_state_axioms(k: usize) -> Vec<Sentence> {
    let steps: Vec<String> = (0..=k).map(|i| format!("Z = {i}")).collect();
    let nexts: Vec<String> = (0..k).map(|i| format!("(Z = {i} & U = {})", i + 1)).collect();
    let mut text = format!("forall Z (step(Z) <-> {}).\n", steps.join(" | "));
    let nexts = if nexts.is_empty() {
        "false".to_string()
    } else {
        nexts.join(" | ")
    };
    writeln!(text, "forall Z, U (next(Z,U) <-> {nexts}).").unwrap();
    for i in 0..k {
        writeln!(
            text,
            "forall X, Y (at(X,Y,{}) <-> move(X,Y,{i}) | at(X,Y,{i}) & not exists W (move(X,W,{i}))).",
            i + 1
        )
        .unwrap();
    }
    parse_sentences(&text).expect("generated axioms parse")
}

/// Hand-built interpretations of the moving-objects signature for step
/// bound `k`, each with the truth value both sides are expected to take.
///
/// The universe is `{e0, ..., e(k+1)}` with `î ↦ ei`, one object `e0` and
/// places `e0`, `e1`; `e(k+1)` is an unnamed spare element.
pub fn directed_interpretations(k: usize) -> Vec<(&'static str, bool, Interpretation)> {
    let fixture = builtin_fixture(&format!("M({k})")).expect("built-in");
    let sig = &fixture.program.signature;
    let m = k + 2;
    let base = || {
        let mut i = Interpretation::empty(sig, m);
        for s in 0..=k {
            i.constants.insert(s.to_string(), s);
            i.insert("step", vec![s]);
        }
        for s in 0..k {
            i.insert("next", vec![s, s + 1]);
        }
        i.insert("object", vec![0]);
        i.insert("place", vec![0]);
        i.insert("place", vec![1]);
        i
    };
    let stay = || {
        let mut i = base();
        for s in 0..=k {
            i.insert("at", vec![0, 0, s]);
        }
        i
    };
    let mut out = vec![("object stays put", true, stay())];

    let mut idle = base();
    idle.remove("object", &[0]);
    out.push(("no objects", true, idle));

    let mut two = stay();
    two.insert("object", vec![1]);
    for s in 0..=k {
        two.insert("at", vec![1, 1, s]);
    }
    out.push(("two objects stay put", true, two));

    let mut no_location = stay();
    no_location.remove("at", &[0, 0, k]);
    out.push(("object without location", false, no_location));

    let mut untyped_at = stay();
    untyped_at.insert("at", vec![1, 0, 0]);
    out.push(("location of a non-object", false, untyped_at));

    let mut untyped_move = stay();
    untyped_move.insert("move", vec![0, m - 1, 0]);
    out.push(("move to a non-place", false, untyped_move));

    let mut spare_step = stay();
    spare_step.insert("step", vec![m - 1]);
    spare_step.insert("at", vec![0, 0, m - 1]);
    out.push(("unnamed step", false, spare_step));

    if k >= 1 {
        let mut moved = base();
        moved.insert("at", vec![0, 0, 0]);
        moved.insert("move", vec![0, 1, 0]);
        for s in 1..=k {
            moved.insert("at", vec![0, 1, s]);
        }
        out.push(("move overrides inertia", true, moved));

        let mut back = base();
        back.insert("at", vec![0, 0, 0]);
        back.insert("move", vec![0, 1, 0]);
        back.insert("move", vec![0, 0, 1]);
        back.insert("at", vec![0, 1, 1]);
        for s in 2..=k {
            back.insert("at", vec![0, 0, s]);
        }
        if k == 1 {
            // a move at the last step has no effect
            out.push(("move at the last step", true, back));
        } else {
            out.push(("move there and back", true, back));
        }

        let mut jumped = stay();
        for s in 1..=k {
            jumped.remove("at", &[0, 0, s]);
            jumped.insert("at", vec![0, 1, s]);
        }
        out.push(("location changes without a move", false, jumped));

        let mut both = stay();
        both.insert("move", vec![0, 1, 0]);
        both.insert("at", vec![0, 1, 1]);
        out.push(("move without leaving", false, both));

        let mut two_moves = stay();
        two_moves.insert("move", vec![0, 0, 0]);
        two_moves.insert("move", vec![0, 1, 0]);
        out.push(("two simultaneous moves", false, two_moves));

        let mut merged = stay();
        for s in 0..=k {
            merged.constants.insert(s.to_string(), 0);
        }
        out.push(("steps share a name", false, merged));

        let mut no_next = stay();
        no_next.remove("next", &[0, 1]);
        out.push(("missing successor", false, no_next));

        let mut extra_next = stay();
        extra_next.insert("next", vec![1, 0]);
        out.push(("spurious successor", false, extra_next));
    }
    out
}

/// Interpretations built to satisfy the characterization, then perturbed
/// by one random flip half of the time.
pub fn structured_interpretations(k: usize, count: usize, seed: u64) -> Vec<Interpretation> {
    let fixture = builtin_fixture(&format!("M({k})")).expect("built-in");
    let sig = &fixture.program.signature;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range((k + 1).max(2)..=(k + 2).max(3));
            let mut i = Interpretation::empty(sig, m);
            let mut elements: Vec<usize> = (0..m).collect();
            for s in 0..=k {
                let e = elements.swap_remove(rng.random_range(0..elements.len()));
                i.constants.insert(s.to_string(), e);
            }
            let name = |i: &Interpretation, s: usize| i.constants[&s.to_string()];
            for e in 0..m {
                if rng.random_bool(0.5) {
                    i.insert("object", vec![e]);
                }
                if rng.random_bool(0.5) {
                    i.insert("place", vec![e]);
                }
            }
            for s in 0..=k {
                let e = name(&i, s);
                i.insert("step", vec![e]);
            }
            for s in 0..k {
                let (a, b) = (name(&i, s), name(&i, s + 1));
                i.insert("next", vec![a, b]);
            }
            let objects: Vec<usize> = (0..m).filter(|&e| i.holds("object", &[e])).collect();
            let places: Vec<usize> = (0..m).filter(|&e| i.holds("place", &[e])).collect();
            if !places.is_empty() {
                let mut location: Vec<usize> =
                    objects.iter().map(|_| *places.choose(&mut rng).expect("places")).collect();
                for s in 0..=k {
                    let now = name(&i, s);
                    for (o, &x) in objects.iter().enumerate() {
                        i.insert("at", vec![x, location[o], now]);
                    }
                    for (o, &x) in objects.iter().enumerate() {
                        if rng.random_bool(0.4) {
                            let y = *places.choose(&mut rng).expect("places");
                            i.insert("move", vec![x, y, now]);
                            if s < k {
                                location[o] = y;
                            }
                        }
                    }
                }
            }
            if rng.random_bool(0.5) {
                let preds: Vec<(String, usize)> =
                    sig.predicates.iter().map(|(p, &n)| (p.clone(), n)).collect();
                let (p, n) = preds.choose(&mut rng).expect("predicates").clone();
                let tuple: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
                if i.holds(&p, &tuple) {
                    i.remove(&p, &tuple);
                } else {
                    i.insert(&p, tuple);
                }
            }
            i
        })
        .collect()
}

/// Stable models of the moving-objects program with step bound `k`
/// against `H` and the definitions and successor-state formulas, over
/// `count` uniformly sampled interpretations of size 2 or 3, the directed
/// interpretations and `count` structured ones.
pub fn check_proposition3(
    k: usize,
    count: usize,
    seed: u64,
    jobs: usize,
    limits: &Limits,
) -> Result<EquivReport, EquivError> {
    let fixture = builtin_fixture(&format!("M({k})")).expect("built-in");
    let mut characterization = fixture.gamma.clone();
    characterization.extend(successor_state_axioms(k));
    let sig = &fixture.program.signature;
    let sizes = [2, 3];
    let mut runner = Runner::new(&fixture.program, &[], &characterization, jobs, *limits)?;
    runner.run(sample_interpretations(sig, &sizes, count, seed)?)?;
    let directed = directed_interpretations(k);
    let directed_count = directed.len();
    runner.run(directed.into_iter().map(|(_, _, i)| i))?;
    runner.run(structured_interpretations(k, count, seed))?;
    Ok(EquivReport {
        program: format!("M({k})"),
        gamma: Vec::new(),
        mode: format!(
            "sampled seed={seed} count={count} directed={directed_count} structured={count}"
        ),
        universes: sizes.to_vec(),
        checked: runner.checked,
        skipped: runner.skipped,
        models: runner.models,
        disagreements: runner.disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_sm_model;

    #[test]
    fn axioms_for_small_bounds() {
        assert_eq!(successor_state_axioms(1).len(), 3);
        assert_eq!(
            successor_state_axioms(0)[1].to_string(),
            "forall Z (forall U (next(Z,U) <-> false))"
        );
    }

    #[test]
    fn directed_cases_have_expected_values() {
        let limits = Limits::default();
        for k in [1, 2] {
            let fixture = builtin_fixture(&format!("M({k})")).unwrap();
            let mut characterization = fixture.gamma.clone();
            characterization.extend(successor_state_axioms(k));
            for (label, expected, i) in directed_interpretations(k) {
                let sm = is_sm_model(&fixture.program, &i, &limits).unwrap();
                let rhs = i.satisfies_all(&characterization).unwrap();
                assert_eq!(sm, expected, "k={k} stable, {label}: {i}");
                assert_eq!(rhs, expected, "k={k} characterization, {label}: {i}");
            }
        }
    }

    #[test]
    fn structured_samples_hit_both_sides() {
        let fixture = builtin_fixture("M(1)").unwrap();
        let mut characterization = fixture.gamma.clone();
        characterization.extend(successor_state_axioms(1));
        let truths = structured_interpretations(1, 200, 7)
            .iter()
            .filter(|i| i.satisfies_all(&characterization).unwrap())
            .count();
        assert!(truths > 20 && truths < 200, "{truths}");
    }
}
