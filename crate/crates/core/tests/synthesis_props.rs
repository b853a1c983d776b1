use finsynth::automata::Limits;
use finsynth::logic::{AtomPartition, Formula};
use finsynth::random::random_spec;
use finsynth::synthesis::{synthesize, EnvShape, ProblemSpec, Shape, Synthesizer, TaskShape, Verdict};
use finsynth::verify::{lasso_satisfies, simulate_random, verify, VerifyVerdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atoms() -> AtomPartition {
    AtomPartition::new(["a", "b"], ["x", "w"]).unwrap()
}

fn corpus(seed: u64, per_shape: usize, depth: usize) -> Vec<ProblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = atoms();
    Shape::all()
        .into_iter()
        .flat_map(|shape| (0..per_shape).map(move |_| shape))
        .map(|shape| random_spec(&mut rng, &a, shape, depth))
        .collect()
}

#[test]
fn realizable_outcomes_verify() {
    let limits = Limits::default();
    let mut realizable = 0;
    for spec in corpus(11, 8, 2) {
        let out = synthesize(&spec, &limits).unwrap();
        assert_eq!(out.strategy.is_some(), out.verdict == Verdict::Realizable);
        if let Some(m) = out.strategy {
            realizable += 1;
            let report = verify(&m, &spec, &limits).unwrap();
            if let VerifyVerdict::Fail(cx) = &report.verdict {
                panic!("{spec:?}\n{cx:?}");
            }
            let sim = simulate_random(&m, &spec, 10, 40, 3, &limits).unwrap();
            assert_eq!(sim.region.definite_violations, 0, "{spec:?}");
        }
    }
    assert!(realizable > 10);
}

#[test]
fn unrealizable_direct_outcomes_carry_counter_strategies() {
    let limits = Limits::default();
    for spec in corpus(12, 8, 2) {
        let out = synthesize(&spec, &limits).unwrap();
        if out.verdict == Verdict::Unrealizable && spec.env_reach.is_none() {
            out.counter_strategy.expect("counter strategy").check().unwrap();
        }
    }
}

#[test]
fn general_algorithm_agrees_with_direct_ones() {
    let limits = Limits::default();
    let syn = Synthesizer::new(atoms(), limits);
    let t = Formula::True;
    for spec in corpus(13, 10, 2) {
        if spec.env_reach.is_some() {
            continue;
        }
        let direct = syn.direct(&spec).unwrap();
        let general = syn
            .alg7(
                spec.env_safe.as_ref().unwrap_or(&t),
                &t,
                spec.task_reach.as_ref().unwrap_or(&t),
                spec.task_safe.as_ref().unwrap_or(&t),
            )
            .unwrap();
        assert_eq!(direct.verdict, general.verdict, "{spec:?}");
    }
}

#[test]
fn degenerate_env_matches_env_free_algorithms() {
    let limits = Limits::default();
    let syn = Synthesizer::new(atoms(), limits);
    let t = Formula::True;
    for spec in corpus(14, 10, 2) {
        let shape = spec.shape();
        if shape.env != EnvShape::True {
            continue;
        }
        let (free, with_env) = match shape.task {
            TaskShape::Reach => {
                let r = spec.task_reach.as_ref().unwrap();
                (syn.alg1(r).unwrap(), syn.alg4(r, &t).unwrap())
            }
            TaskShape::Safe => {
                let s = spec.task_safe.as_ref().unwrap();
                (syn.alg2(s).unwrap(), syn.alg5(s, &t).unwrap())
            }
            TaskShape::ReachSafe => {
                let r = spec.task_reach.as_ref().unwrap();
                let s = spec.task_safe.as_ref().unwrap();
                (syn.alg3(r, s).unwrap(), syn.alg6(r, s, &t).unwrap())
            }
        };
        assert_eq!(free.verdict, with_env.verdict, "{spec:?}");
    }
}

#[test]
fn verifier_counterexamples_are_genuine() {
    // a strategy synthesized for one spec, checked against another
    let limits = Limits::default();
    let specs = corpus(15, 6, 2);
    let mut failures = 0;
    for pair in specs.windows(2) {
        let out = synthesize(&pair[0], &limits).unwrap();
        let Some(m) = out.strategy else { continue };
        let report = verify(&m, &pair[1], &limits).unwrap();
        if let VerifyVerdict::Fail(cx) = report.verdict {
            failures += 1;
            assert!(!cx.cycle.is_empty());
            let replay = m.run(&[cx.prefix.clone(), cx.cycle.clone()].concat());
            assert_eq!(replay.letters, [cx.prefix_letters.clone(), cx.cycle_letters.clone()].concat());
            if report.regime == finsynth::verify::Regime::Implication {
                assert!(!lasso_satisfies(&pair[1], &cx.prefix_letters, &cx.cycle_letters, &limits).unwrap());
            }
        }
    }
    assert!(failures > 0);
}
