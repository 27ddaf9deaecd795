//! Seeded property tests for the syntax, completion, semantics and
//! tightness layers.

mod common;

use std::collections::BTreeMap;

use lt_tight::completion::{completion, desugar, simplify};
use lt_tight::equiv::builtin_fixture;
use lt_tight::semantics::{
    enumerate_interpretations, ground, ground_program, is_p_stable_direct, is_sm_model, is_stable,
    is_tight_on, satisfies, Interpretation, Limits,
};
use lt_tight::syntax::{parse_formula, parse_program, Formula, Program, Sentence, Signature, Term};
use lt_tight::tightness::{chains, check_gamma_tight, is_tight, TightnessStatus};
use proptest::prelude::*;

use common::*;

fn all_interpretations(sig: &Signature, m_max: usize) -> Vec<Interpretation> {
    (1..=m_max)
        .flat_map(|m| enumerate_interpretations(sig, m, &Limits::default()).expect("small signature"))
        .collect()
}

fn formula_signature() -> Signature {
    let mut sig = Signature::default();
    sig.add_formula(&parse_formula("p(a) & q(a, b) & r").unwrap()).unwrap();
    sig
}

fn arb_binding() -> impl Strategy<Value = BTreeMap<String, Term>> {
    let target = prop_oneof![
        prop::sample::select(vec!["U", "V"]).prop_map(Term::var),
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
    ];
    prop::collection::btree_map(
        prop::sample::select(vec!["X".to_string(), "Y".to_string(), "Z".to_string(), "U".to_string()]),
        target,
        0..=3,
    )
}

fn compose(sigma: &BTreeMap<String, Term>, tau: &BTreeMap<String, Term>) -> BTreeMap<String, Term> {
    let mut out: BTreeMap<String, Term> = tau.clone();
    for (v, t) in sigma {
        let image = match t {
            Term::Var(w) => tau.get(w).cloned().unwrap_or_else(|| t.clone()),
            Term::Const(_) => t.clone(),
        };
        out.insert(v.clone(), image);
    }
    out
}

fn pool_program(pool: &[&str], picks: &[&str]) -> Program {
    let mut text = String::new();
    if pool == CHOICE_RULES {
        text.push_str("#extensional e/1.\n");
    }
    text.push_str(&picks.join("\n"));
    parse_program(&text).expect("pool rules parse")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn printed_formulas_parse_back(f in arb_formula(4)) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn printed_programs_parse_back(picks in prop::sample::subsequence(LT_RULES.to_vec(), 0..=6)) {
        let prog = pool_program(LT_RULES, &picks);
        let reparsed = parse_program(&prog.to_string()).unwrap();
        prop_assert_eq!(reparsed, prog);
    }

    #[test]
    fn renamed_copies_share_no_variables(
        rule in prop::sample::select(LT_RULES.to_vec()),
        i in 0usize..5,
        j in 0usize..5,
    ) {
        prop_assume!(i != j);
        let r = pool_program(LT_RULES, &[rule]).rules.remove(0);
        let (a, b) = (r.rename_apart(i), r.rename_apart(j));
        prop_assert!(a.variables().is_disjoint(&b.variables()));
        prop_assert_eq!(a.variables().len(), r.variables().len());
        prop_assert_eq!(a.head_predicate(), r.head_predicate());
    }

    #[test]
    fn substitutions_compose(f in arb_formula(3), sigma in arb_binding(), tau in arb_binding()) {
        let stepwise = f.substitute(&sigma).substitute(&tau);
        prop_assert_eq!(stepwise, f.substitute(&compose(&sigma, &tau)));
    }

    #[test]
    fn simplification_preserves_truth(f in arb_formula(3)) {
        let closed = Sentence::closure(f.clone());
        let simplified = Sentence::closure(simplify(&f));
        for interp in all_interpretations(&formula_signature(), 2) {
            prop_assert_eq!(
                interp.satisfies(&closed).unwrap(),
                interp.satisfies(&simplified).unwrap(),
                "{} vs {} on {}", f, simplify(&f), interp
            );
        }
    }

    #[test]
    fn desugaring_preserves_stable_models(picks in prop::sample::subsequence(CHOICE_RULES.to_vec(), 1..=5)) {
        let prog = pool_program(CHOICE_RULES, &picks);
        let desugared = desugar(&prog);
        let limits = Limits::default();
        for interp in all_interpretations(&prog.signature, 2) {
            let direct = is_p_stable_direct(&prog, &interp, &limits).unwrap();
            let grounded = ground_program(&desugared, &interp).unwrap();
            let all_minimized = is_stable(&grounded.formula, &interp.atoms(), &limits).unwrap();
            prop_assert_eq!(direct, all_minimized, "{}", interp);
            prop_assert_eq!(direct, is_sm_model(&prog, &interp, &limits).unwrap(), "{}", interp);
        }
    }

    #[test]
    fn chains_are_valid(picks in prop::sample::subsequence(LT_RULES.to_vec(), 1..=6), n in 1usize..=3) {
        let prog = pool_program(LT_RULES, &picks);
        for chain in chains(&prog, n).take(200) {
            prop_assert_eq!(chain.len(), n);
            prop_assert_eq!(chain.validate(), Ok(()));
        }
    }

    #[test]
    fn tight_iff_chains_run_out(picks in prop::sample::subsequence(LT_RULES.to_vec(), 1..=6)) {
        let prog = pool_program(LT_RULES, &picks);
        let bound = prog.signature.predicates.len() + 1;
        let runs_out = (1..=bound.max(6)).any(|n| chains(&prog, n).next().is_none());
        prop_assert_eq!(is_tight(&prog), runs_out);
    }

    #[test]
    fn refuter_verdicts_are_sound(picks in prop::sample::subsequence(LT_RULES.to_vec(), 1..=4)) {
        let prog = pool_program(LT_RULES, &picks);
        let limits = Limits::default();
        let verdict = check_gamma_tight(&prog, &[], 1, 2, &limits).unwrap();
        let comp: Vec<Sentence> = completion(&prog).unwrap().sentences().cloned().collect();
        match verdict.status {
            TightnessStatus::Entailed => {
                for chain in chains(&prog, 1) {
                    let witness = Sentence::new(chain.formula().existential_closure()).unwrap();
                    for interp in all_interpretations(&prog.signature, 2) {
                        prop_assert!(
                            !(interp.satisfies_all(&comp).unwrap() && interp.satisfies(&witness).unwrap()),
                            "chain {} holds in {}", chain, interp
                        );
                    }
                }
            }
            TightnessStatus::Countermodel { interpretation, chain } => {
                let witness = Sentence::new(chain.formula().existential_closure()).unwrap();
                prop_assert!(interpretation.satisfies_all(&comp).unwrap());
                prop_assert!(interpretation.satisfies(&witness).unwrap());
            }
            TightnessStatus::Unknown => {}
        }
    }
}

#[test]
fn grounding_is_faithful() {
    for name in SMALL_FIXTURES {
        let fixture = builtin_fixture(name).unwrap();
        let prog = desugar(&fixture.program);
        let mut sentences = vec![Sentence::new(prog.to_formula()).unwrap()];
        sentences.extend(completion(&prog).unwrap().sentences().cloned());
        sentences.extend(fixture.gamma.iter().cloned());
        for interp in all_interpretations(&prog.signature, 2) {
            let j = interp.atoms();
            for s in &sentences {
                assert_eq!(
                    interp.satisfies(s).unwrap(),
                    satisfies(&j, &ground(s, &interp).unwrap()),
                    "{name}: {} on {interp}",
                    s.formula()
                );
            }
        }
    }
}

#[test]
fn stable_models_satisfy_the_completion() {
    let limits = Limits::default();
    for name in SMALL_FIXTURES {
        let fixture = builtin_fixture(name).unwrap();
        let comp: Vec<Sentence> = completion(&fixture.program).unwrap().sentences().cloned().collect();
        for interp in all_interpretations(&fixture.program.signature, 2) {
            if is_sm_model(&fixture.program, &interp, &limits).unwrap() {
                assert!(interp.satisfies_all(&comp).unwrap(), "{name}: {interp}");
            }
        }
    }
}

#[test]
fn gamma_tight_programs_are_tight_on_their_models() {
    for name in ["example1", "example2", "example3"] {
        let fixture = builtin_fixture(name).unwrap();
        let comp: Vec<Sentence> = completion(&fixture.program).unwrap().sentences().cloned().collect();
        let mut models = 0;
        for interp in all_interpretations(&fixture.program.signature, 2) {
            if interp.satisfies_all(&fixture.gamma).unwrap() && interp.satisfies_all(&comp).unwrap() {
                let grounded = ground_program(&fixture.program, &interp).unwrap();
                assert!(is_tight_on(&grounded.program, &interp.atoms()), "{name}: {interp}");
                models += 1;
            }
        }
        assert!(models > 0, "{name} has no models to check");
    }
}

#[test]
fn program_two_is_not_tight_on_its_completion_countermodel() {
    let fixture = builtin_fixture("prog2").unwrap();
    let interp = Interpretation::parse(
        "universe=1; a=e0; b=e0; p={(e0)}; q={(e0)}",
        &fixture.program.signature,
    )
    .unwrap();
    let grounded = ground_program(&fixture.program, &interp).unwrap();
    assert!(!is_tight_on(&grounded.program, &interp.atoms()));
}

#[test]
fn alpha_equivalence_ignores_bound_names_only() {
    let f = parse_formula("forall X (p(X) -> exists Y (q(X, Y)))").unwrap();
    let g = parse_formula("forall Z (p(Z) -> exists X (q(Z, X)))").unwrap();
    let h = parse_formula("forall Z (p(Z) -> exists X (q(X, X)))").unwrap();
    assert!(alpha_eq(&f, &g));
    assert!(!alpha_eq(&f, &h));
    assert!(!alpha_eq(&Formula::atom("p", vec![Term::var("X")]), &Formula::atom("p", vec![Term::var("Y")])));
}

#[test]
fn fixture_tightness_matches_chain_exhaustion() {
    for name in SMALL_FIXTURES.iter().copied().chain(["M(1)"]) {
        let prog = builtin_fixture(name).unwrap().program;
        let bound = prog.signature.predicates.len() + 1;
        let empty_at = (0..=bound).find(|&n| chains(&prog, n).next().is_none());
        if is_tight(&prog) {
            assert!(empty_at.is_some(), "{name} is tight but chains never run out");
        } else {
            for n in 0..=6 {
                assert!(chains(&prog, n).next().is_some(), "{name} has no chain of length {n}");
            }
        }
    }
}
