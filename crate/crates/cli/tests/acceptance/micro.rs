//! Small worked examples checked against hand-computed or enumerated values.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use finsynth::automata::{
    convert_da, flagged, ltlf_to_dfa, make_initial_nonreentrant, product, restrict,
    restrict_with_sinks, set_from, Coord, Dfa, DetAutomaton, Limits, Objective, Quantifier,
    TransitionSystem,
};
use finsynth::games::{
    pre_agent, pre_env, solve_reach, solve_safe, AgentPositional, EnvPositional, Player,
};
use finsynth::logic::{evaluate, parse, AtomPartition, Evaluator, FiniteTrace, Formula, Letter, LogicError};
use finsynth::random::random_arena;
use finsynth::synthesis::{synthesize, Mode, ProblemSpec, Synthesizer, Verdict};
use finsynth::transducer::MealyStrategy;
use finsynth::verify::{build_monitor, simulate_random, verify, Regime, VerifyVerdict};
use finsynth::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Suite {
    pub results: Vec<(String, bool)>,
}

impl Suite {
    fn check(&mut self, name: &str, f: impl FnOnce() -> bool) {
        let ok = catch_unwind(AssertUnwindSafe(f)).unwrap_or(false);
        self.results.push((name.to_string(), ok));
    }
}

fn atoms(agent: &[&str], env: &[&str]) -> AtomPartition {
    AtomPartition::new(agent.iter().copied(), env.iter().copied()).unwrap()
}

fn yx() -> AtomPartition {
    atoms(&["y"], &["x"])
}

fn f(text: &str, a: &AtomPartition) -> Formula {
    parse(text, a).unwrap()
}

fn limits() -> Limits {
    Limits::default()
}

fn dfa(text: &str, a: &AtomPartition) -> Dfa {
    ltlf_to_dfa(&f(text, a), a, &limits()).unwrap()
}

fn da(mode: Quantifier, text: &str, a: &AtomPartition) -> DetAutomaton {
    convert_da(mode, &f(text, a), a, &limits()).unwrap()
}

/// All words of length `0..=max` over `k` letters.
fn words(k: u32, max: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            for z in 0..k {
                let mut v: Vec<Letter> = w.clone();
                v.push(z);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// All lassos `u v^ω` with `|u| + |v| <= max` and `v` non-empty.
fn lassos(k: u32, max: usize) -> Vec<(Vec<Letter>, Vec<Letter>)> {
    let ws = words(k, max);
    let mut out = Vec::new();
    for u in &ws {
        for v in &ws {
            if !v.is_empty() && u.len() + v.len() <= max {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn first_letter(u: &[Letter], v: &[Letter]) -> Letter {
    *u.first().unwrap_or(&v[0])
}

fn spec(a: &AtomPartition, es: Option<&str>, er: Option<&str>, tr: Option<&str>, ts: Option<&str>) -> ProblemSpec {
    ProblemSpec::parse(a.clone(), es, er, tr, ts).unwrap()
}

fn holds(text: &str, lines: &[&str], i: usize) -> bool {
    let a = atoms(&["p"], &["q"]);
    let trace = FiniteTrace::from_names(&a, lines.iter()).unwrap();
    evaluate(&f(text, &a), &trace, i).unwrap()
}

pub fn run(bin: &Path, dir: &Path) -> Suite {
    let mut s = Suite { results: Vec::new() };
    logic(&mut s);
    automata(&mut s);
    games(&mut s);
    synthesis(&mut s);
    transducer(&mut s);
    verification(&mut s);
    cli(&mut s, bin, dir);
    s
}

fn logic(s: &mut Suite) {
    let a = yx();
    s.check("parse y U x", || {
        f("y U x", &a) == Formula::until(Formula::atom("y"), Formula::atom("x"))
    });
    let pq = atoms(&["p"], &["q"]);
    s.check("parse !X p then nnf", || {
        f("!X p", &pq).to_nnf() == Formula::weak_next(Formula::not(Formula::atom("p")))
    });
    s.check("parse p & | q fails at the bar", || {
        matches!(parse("p & | q", &pq), Err(LogicError::Syntax { position: 4, .. }))
    });
    s.check("until on [{p},{p,q}]", || holds("p U q", &["p", "p,q"], 0));
    s.check("next at the last position", || !holds("X p", &["p"], 0));
    s.check("weak next at the last position", || holds("N p", &[""], 0));
    s.check("nnf of negated until", || {
        f("!(p U q)", &pq).to_nnf() == f("(!p) R (!q)", &pq)
    });
    s.check("nnf of negated next", || f("!X p", &pq).to_nnf() == f("N !p", &pq));
    s.check("nnf of double negation", || f("!!p", &pq).to_nnf() == f("p", &pq));
}

fn automata(s: &mut Suite) {
    let p = atoms(&["p"], &[]);
    s.check("dfa of p: 3 states, agrees with evaluate up to length 4", || {
        let d = dfa("p", &p);
        let ev = Evaluator::new(&f("p", &p), &p).unwrap();
        d.num_states() == 3
            && words(2, 4)
                .iter()
                .filter(|w| !w.is_empty())
                .all(|w| d.accepts(w) == ev.accepts(w))
    });
    s.check("dfa of true: 2 states", || {
        let d = dfa("true", &p);
        let sink = d.ts.step(d.ts.initial(), 0);
        d.num_states() == 2
            && !d.is_final(d.ts.initial())
            && d.is_final(sink)
            && (0..2).all(|z| d.ts.step(sink, z) == sink && d.ts.step(d.ts.initial(), z) == sink)
    });
    s.check("dfa of false: 1 state, no finals", || {
        let d = dfa("false", &p);
        d.num_states() == 1 && d.num_finals() == 0
    });
    s.check("F p: initial cloned, language kept", || {
        let d = dfa("F p", &p);
        let n = make_initial_nonreentrant(&d);
        d.ts.initial_reentered()
            && n.num_states() == d.num_states() + 1
            && !n.ts.initial_reentered()
            && words(2, 4).iter().all(|w| d.accepts(w) == n.accepts(w))
    });
    s.check("no edge into the initial state: unchanged", || {
        let d = dfa("p", &p);
        !d.ts.initial_reentered() && make_initial_nonreentrant(&d) == d
    });
    s.check("false: cloned to 2 states", || {
        let n = make_initial_nonreentrant(&dfa("false", &p));
        let i = n.ts.initial();
        let other = 1 - i;
        n.num_states() == 2
            && (0..2).all(|z| n.ts.step(i, z) == other && n.ts.step(other, z) == other)
    });
    s.check("forall G p: p everywhere", || {
        let d = da(Quantifier::Forall, "G p", &p);
        lassos(2, 4)
            .iter()
            .all(|(u, v)| d.accepts_lasso(u, v) == u.iter().chain(v).all(|&z| z == 1))
    });
    s.check("forall p: p in the first letter", || {
        let d = da(Quantifier::Forall, "p", &p);
        lassos(2, 4)
            .iter()
            .all(|(u, v)| d.accepts_lasso(u, v) == (first_letter(u, v) == 1))
    });
    s.check("exists p: reach over the 3-state dfa", || {
        let d = da(Quantifier::Exists, "p", &p);
        matches!(d.objective, Objective::Reach(_))
            && d.ts.num_states() == 3
            && lassos(2, 4)
                .iter()
                .all(|(u, v)| d.accepts_lasso(u, v) == (first_letter(u, v) == 1))
    });
    s.check("product of 3 and 2 states", || {
        let (t, _) = product(&[&dfa("p", &p).ts, &dfa("true", &p).ts]).unwrap();
        t.num_states() <= 6
    });
    s.check("product with a 1-state component", || {
        let d = dfa("F p", &p);
        let one = dfa("false", &p);
        let (t, map) = product(&[&d.ts, &one.ts]).unwrap();
        t.num_states() == d.num_states()
            && (0..t.num_states()).all(|q| {
                (0..2).all(|z| {
                    map.component(t.step(q, z), 0) == Some(d.ts.step(map.component(q, 0).unwrap(), z))
                })
            })
    });
    s.check("product runs project to component runs", || {
        let a = atoms(&["p"], &["q"]);
        let d1 = dfa("F p", &a);
        let d2 = dfa("G (p -> X q)", &a);
        let (t, map) = product(&[&d1.ts, &d2.ts]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(145);
        (0..100).all(|_| {
            let len = rng.gen_range(0..=6);
            let w: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..4)).collect();
            let run = t.run(t.initial(), &w);
            let r1 = d1.ts.run(d1.ts.initial(), &w);
            let r2 = d2.ts.run(d2.ts.initial(), &w);
            run.iter().enumerate().all(|(i, &q)| {
                map.component(q, 0) == Some(r1[i]) && map.component(q, 1) == Some(r2[i])
            })
        })
    });
    let two = TransitionSystem::new(p.clone(), 2, 0, vec![0, 1, 0, 0]).unwrap();
    s.check("restrict to {q0}: exits go to bottom", || {
        let (r, map) = restrict(&two, &set_from(2, [0]));
        let b = map.bottom().unwrap();
        r.num_states() == 2 && r.step(0, 0) == 0 && r.step(0, 1) == b
    });
    s.check("restrict to all states: no sink", || {
        let (r, map) = restrict(&two, &two.full_set());
        r.num_states() == 2 && map.bottom().is_none() && r.row(0) == two.row(0) && r.row(1) == two.row(1)
    });
    s.check("restrict the G p monitor to the env region", || {
        let a = atoms(&["y"], &["p"]);
        let d = da(Quantifier::Forall, "G p", &a);
        let region = solve_safe(&d.ts, d.objective.set(), Player::Env).winning;
        let (r, map) = restrict(&d.ts, &region);
        let acc = d.ts.step(d.ts.initial(), a.letter(0, 1));
        let bottom = map.bottom().unwrap();
        let image = |q: usize| map.find(&[q]).unwrap();
        region.ones().collect::<Vec<_>>().len() == 2
            && region.contains(d.ts.initial())
            && region.contains(acc)
            && r.num_states() == 3
            && [d.ts.initial(), acc].iter().all(|&q| {
                (0..4u32).all(|z| {
                    let expect = if a.env_part(z) == 1 { image(acc) } else { bottom };
                    r.step(image(q), z) == expect
                })
            })
    });
    s.check("restrict with sinks, v1 empty: exits go to top", || {
        let (r, map) = restrict_with_sinks(&two, &set_from(2, [0]), &two.empty_set());
        map.bottom().is_none() && r.step(0, 1) == map.top().unwrap()
    });
    s.check("restrict with sinks, v0 = Q: no sinks", || {
        let (r, map) = restrict_with_sinks(&two, &two.full_set(), &two.empty_set());
        r.num_states() == 2 && map.bottom().is_none() && map.top().is_none()
    });
    s.check("restrict with sinks on 4 states", || {
        // 0 -∅-> 1, 0 -p-> 2 (into v1), 1 -∅-> 3, 1 -p-> 0
        let four = TransitionSystem::new(p.clone(), 4, 0, vec![1, 2, 3, 0, 2, 2, 3, 3]).unwrap();
        let (r, map) = restrict_with_sinks(&four, &set_from(4, [0, 1]), &set_from(4, [2]));
        let (b, t) = (map.bottom().unwrap(), map.top().unwrap());
        r.num_states() == 4
            && r.step(0, 0) == 1
            && r.step(0, 1) == b
            && r.step(1, 0) == t
            && r.step(1, 1) == 0
            && *map.coord(b) == Coord::Bottom
    });
    let cycle = TransitionSystem::new(p.clone(), 2, 0, vec![1, 1, 0, 0]).unwrap();
    s.check("flagged with t empty: flags stay no", || {
        let (fl, map) = flagged(&cycle, &cycle.empty_set());
        (0..fl.num_states()).all(|q| map.component(q, 1) == Some(0))
    });
    s.check("flagged with t = initial: flags yes everywhere", || {
        let (fl, map) = flagged(&cycle, &set_from(2, [0]));
        (0..fl.num_states()).all(|q| map.component(q, 1) == Some(1))
    });
    s.check("flagged 2-cycle with t = {q1}", || {
        let (fl, map) = flagged(&cycle, &set_from(2, [1]));
        let run = fl.run(fl.initial(), &[0, 0, 0]);
        let coords: Vec<Vec<usize>> = run
            .iter()
            .map(|&q| vec![map.component(q, 0).unwrap(), map.component(q, 1).unwrap()])
            .collect();
        coords == vec![vec![0, 0], vec![1, 1], vec![0, 1], vec![1, 1]]
    });
}

fn games(s: &mut Suite) {
    let a = yx();
    // a = 0, b = 1
    let on_y = TransitionSystem::from_fn(a.clone(), 2, 0, |q, z| {
        if q == 1 || a.agent_part(z) == 1 { 1 } else { 0 }
    })
    .unwrap();
    let on_x = TransitionSystem::from_fn(a.clone(), 2, 0, |q, z| {
        if q == 1 || a.env_part(z) == 1 { 1 } else { 0 }
    })
    .unwrap();
    s.check("pre_agent of Q is Q", || pre_agent(&on_y, &on_y.full_set()) == on_y.full_set());
    s.check("pre_agent of empty is empty", || pre_agent(&on_y, &on_y.empty_set()).count_ones(..) == 0);
    s.check("pre_agent picks y", || pre_agent(&on_y, &set_from(2, [1])).contains(0));
    s.check("pre_env of Q is Q", || pre_env(&on_x, &on_x.full_set()) == on_x.full_set());
    s.check("pre_env answers x", || pre_env(&on_x, &set_from(2, [1])).contains(0));
    s.check("pre_env of empty is empty", || pre_env(&on_x, &on_x.empty_set()).count_ones(..) == 0);
    s.check("reach with t = Q", || {
        let r = solve_reach(&on_y, &on_y.full_set(), Player::Agent);
        r.winning == on_y.full_set() && r.rank.iter().all(|&k| k == Some(0))
    });
    s.check("reach with t empty", || {
        solve_reach(&on_y, &on_y.empty_set(), Player::Agent).winning.count_ones(..) == 0
    });
    s.check("reach {b} by playing y", || {
        let r = solve_reach(&on_y, &set_from(2, [1]), Player::Agent);
        let f = r.strategy.as_agent().unwrap();
        r.winning == on_y.full_set() && f.get(0) == 1 && r.rank[0] == Some(1)
    });
    s.check("safe with t = Q", || {
        solve_safe(&on_y, &on_y.full_set(), Player::Agent).winning == on_y.full_set()
    });
    s.check("safe with t empty", || {
        solve_safe(&on_y, &on_y.empty_set(), Player::Agent).winning.count_ones(..) == 0
    });
    s.check("safe {a} where x exits", || {
        let t = set_from(2, [0]);
        solve_safe(&on_x, &t, Player::Agent).winning.count_ones(..) == 0
            && solve_safe(&on_x, &t, Player::Env).winning == t
    });
}

fn consistent(es: Option<&str>, er: Option<&str>) -> bool {
    let a = yx();
    let syn = Synthesizer::new(a.clone(), limits());
    let es = es.map(|t| f(t, &a));
    let er = er.map(|t| f(t, &a));
    syn.check_env_consistency(es.as_ref(), er.as_ref()).unwrap().consistent
}

fn synthesis(s: &mut Suite) {
    let a = yx();
    let syn = Synthesizer::new(a.clone(), limits());
    let g = |t: &str| f(t, &a);
    s.check("env G x consistent", || consistent(Some("G x"), None));
    s.check("env G y inconsistent", || !consistent(Some("G y"), None));
    s.check("env G x with F !x inconsistent", || !consistent(Some("G x"), Some("F !x")));

    s.check("alg1 y", || {
        let o = syn.alg1(&g("y")).unwrap();
        let m = o.strategy.unwrap();
        o.verdict == Verdict::Realizable && m.output(m.initial()) & 1 == 1
    });
    s.check("alg1 F x", || syn.alg1(&g("F x")).unwrap().verdict == Verdict::Unrealizable);
    s.check("alg1 true", || syn.alg1(&g("true")).unwrap().is_realizable());
    s.check("alg2 G y", || syn.alg2(&g("G y")).unwrap().is_realizable());
    s.check("alg2 G x", || !syn.alg2(&g("G x")).unwrap().is_realizable());
    s.check("alg2 G (y | x)", || syn.alg2(&g("G (y | x)")).unwrap().is_realizable());

    let ab = atoms(&["a", "b"], &["x"]);
    let syn_ab = Synthesizer::new(ab.clone(), limits());
    s.check("alg3 F (a & b) with G (a -> b)", || {
        let o = syn_ab.alg3(&f("F (a & b)", &ab), &f("G (a -> b)", &ab)).unwrap();
        let m = o.strategy.unwrap();
        m.output(m.initial()) == ab.agent_move_from_names(["a", "b"]).unwrap()
    });
    s.check("alg3 F x with true", || !syn.alg3(&g("F x"), &g("true")).unwrap().is_realizable());
    s.check("alg3 F y with G !y", || !syn.alg3(&g("F y"), &g("G !y")).unwrap().is_realizable());

    s.check("alg4 env G x, task x", || syn.alg4(&g("x"), &g("G x")).unwrap().is_realizable());
    s.check("alg4 env true, task x", || !syn.alg4(&g("x"), &g("true")).unwrap().is_realizable());
    s.check("alg4 env x, task x", || syn.alg4(&g("x"), &g("x")).unwrap().is_realizable());
    s.check("alg5 env G x, task G (y & x)", || {
        syn.alg5(&g("G (y & x)"), &g("G x")).unwrap().is_realizable()
    });
    s.check("alg5 env true, task G x", || !syn.alg5(&g("G x"), &g("true")).unwrap().is_realizable());
    s.check("alg5 env G x, task G x", || syn.alg5(&g("G x"), &g("G x")).unwrap().is_realizable());
    s.check("alg6 env G x, task x and G y", || {
        syn.alg6(&g("x"), &g("G y"), &g("G x")).unwrap().is_realizable()
    });
    s.check("alg6 env true, task F x and G y", || {
        !syn.alg6(&g("F x"), &g("G y"), &g("true")).unwrap().is_realizable()
    });
    s.check("alg6 env G x, task true and G y", || {
        syn.alg6(&g("true"), &g("G y"), &g("G x")).unwrap().is_realizable()
    });

    s.check("alg7 env F x, task F x", || {
        let o = syn.alg7(&g("true"), &g("F x"), &g("F x"), &g("true")).unwrap();
        let sp = spec(&a, None, Some("F x"), Some("F x"), None);
        o.is_realizable() && verify(&o.strategy.unwrap(), &sp, &limits()).unwrap().passed()
    });
    s.check("alg7 env F x, task G x", || {
        let o = syn.alg7(&g("true"), &g("F x"), &g("true"), &g("G x")).unwrap();
        let sp = spec(&a, None, Some("F x"), None, Some("G x"));
        let lazy = MealyStrategy::constant(&a, 0);
        !o.is_realizable()
            && matches!(verify(&lazy, &sp, &limits()).unwrap().verdict, VerifyVerdict::Fail(_))
    });
    s.check("alg7 env true, task y equals alg1", || {
        let o = syn.alg7(&g("true"), &g("true"), &g("y"), &g("true")).unwrap();
        o.is_realizable() && o.verdict == syn.alg1(&g("y")).unwrap().verdict
    });

    let modes = |phis: [&str; 4], inputs: &[u32]| {
        let (m, _) = syn
            .alg7_machine(&g(phis[0]), &g(phis[1]), &g(phis[2]), &g(phis[3]))
            .unwrap();
        let mut key = m.start();
        let mut out = vec![key.0];
        for &x in inputs {
            key = m.step(&key, m.output(&key), x);
            out.push(key.0);
        }
        out
    };
    s.check("mode SAFE2 forever", || {
        modes(["true", "F y", "F x", "true"], &[0, 1, 1, 0, 1])
            .iter()
            .all(|&m| m == Mode::Safe2)
    });
    s.check("modes REACH3 then SAFE4", || {
        use Mode::*;
        modes(["true", "F x", "X y", "true"], &[1, 0, 0, 1]) == vec![Reach3, Reach3, Safe4, Safe4, Safe4]
    });
    s.check("modes EXPLORE, REACH3, SAFE4", || {
        use Mode::*;
        modes(["true", "F x", "F (x & X y)", "true"], &[0, 1, 0, 0])
            == vec![Explore, Explore, Reach3, Safe4, Safe4]
    });

    s.check("dispatch task y to alg1", || {
        let o = synthesize(&spec(&a, None, None, Some("y"), None), &limits()).unwrap();
        o.is_realizable() && o.algorithm.map(|x| x.to_string()) == Some("alg1".into())
    });
    s.check("dispatch env F x, task F x to alg7", || {
        let o = synthesize(&spec(&a, None, Some("F x"), Some("F x"), None), &limits()).unwrap();
        o.is_realizable() && o.algorithm.map(|x| x.to_string()) == Some("alg7".into())
    });
    s.check("dispatch env G y: inconsistent", || {
        synthesize(&spec(&a, Some("G y"), None, None, None), &limits()).unwrap().verdict
            == Verdict::EnvInconsistent
    });
}

/// Direct definition of the strategy induced by `f` on `ts`.
fn hand_outputs(ts: &TransitionSystem, f: &AgentPositional, inputs: &[u32]) -> Vec<u32> {
    let mut q = ts.initial();
    let mut out = vec![f.get(q)];
    for &x in inputs {
        q = ts.step_moves(q, f.get(q), x);
        out.push(f.get(q));
    }
    out
}

fn env_sequences(nx: u32, max: usize) -> Vec<Vec<u32>> {
    words(nx, max)
}

fn transducer(s: &mut Suite) {
    let a = yx();
    s.check("constant positional strategy on a 1-state arena", || {
        let ts = TransitionSystem::new(a.clone(), 1, 0, vec![0; 4]).unwrap();
        let m = MealyStrategy::from_positional(&ts, 0, &AgentPositional::new(vec![1]));
        m.num_states() == 1 && m.output(0) == 1
    });
    s.check("alternating outputs on a 2-state arena", || {
        let ts = TransitionSystem::new(a.clone(), 2, 0, vec![1, 1, 1, 1, 0, 0, 0, 0]).unwrap();
        let m = MealyStrategy::from_positional(&ts, 0, &AgentPositional::new(vec![1, 0]));
        m.run(&[0, 1, 0, 1]).outputs == vec![1, 0, 1, 0, 1]
    });
    s.check("positional induction matches the direct definition", || {
        let b = atoms(&["y"], &["x", "w"]);
        let mut rng = ChaCha8Rng::seed_from_u64(421);
        (0..10).all(|_| {
            let ts = random_arena(&mut rng, &b, 5);
            let f = AgentPositional::new((0..5).map(|_| rng.gen_range(0..2)).collect());
            let m = MealyStrategy::from_positional(&ts, 0, &f);
            env_sequences(4, 5)
                .iter()
                .all(|xs| m.run(xs).outputs == hand_outputs(&ts, &f, xs))
        })
    });
    let always_y = MealyStrategy::constant(&a, 1);
    s.check("run on no input", || {
        let r = always_y.run(&[]);
        r.outputs == vec![1] && r.letters.is_empty()
    });
    s.check("always y on [{}, {x}]", || {
        let r = always_y.run(&[0, 1]);
        r.letters == vec![a.letter(1, 0), a.letter(1, 1)] && r.outputs == vec![1, 1, 1]
    });
    s.check("play against a positional environment", || {
        let b = atoms(&["y"], &["x", "w"]);
        let mut rng = ChaCha8Rng::seed_from_u64(430);
        let ts = random_arena(&mut rng, &b, 6);
        let f = AgentPositional::new((0..6).map(|_| rng.gen_range(0..2)).collect());
        let env = EnvPositional::new(2, (0..12).map(|_| rng.gen_range(0..4)).collect());
        let m = MealyStrategy::from_positional(&ts, 0, &f);
        let rec = m.play_against(&ts, &env, 12);
        // step-by-step interpreter
        let (mut q, mut ok) = (ts.initial(), true);
        for i in 0..12 {
            let y = f.get(q);
            let x = env.get(q, y);
            ok &= rec.letters[i] == b.letter(y, x);
            q = ts.step_moves(q, y, x);
        }
        ok
    });
    s.check("round trip of always y", || {
        MealyStrategy::from_json(&always_y.to_json()).unwrap() == always_y
    });
    s.check("missing transition rejected", || {
        let mut doc: serde_json::Value = serde_json::from_str(&always_y.to_json()).unwrap();
        doc["delta"]["0"].as_object_mut().unwrap().remove("x");
        matches!(
            MealyStrategy::from_json(&doc.to_string()),
            Err(Error::MissingTransition { .. })
        )
    });
    s.check("behaviour kept by a round trip", || {
        let o = synthesize(&spec(&a, Some("G (y -> N x)"), None, Some("F (y & X x)"), None), &limits()).unwrap();
        let m = o.strategy.unwrap();
        let back = MealyStrategy::from_json(&m.to_json()).unwrap();
        env_sequences(2, 4).iter().all(|xs| m.run(xs).letters == back.run(xs).letters)
    });
}

fn verification(s: &mut Suite) {
    let a = yx();
    let lim = limits();
    let gy = spec(&a, None, None, None, Some("G y"));
    let always_y = MealyStrategy::constant(&a, 1);
    let never = MealyStrategy::constant(&a, 0);
    s.check("product size bound", || {
        let mon = da(Quantifier::Forall, "G y", &a);
        build_monitor(&never, &gy, &lim).unwrap().len() <= mon.ts.num_states() * 2
    });
    s.check("flags monotone on 1000 random walks", || {
        let sp = spec(&a, Some("G (y -> N x)"), Some("F x"), Some("F (x & y)"), Some("G (x -> y)"));
        let mut rng = ChaCha8Rng::seed_from_u64(482);
        let mon = build_monitor(&always_y, &sp, &lim).unwrap();
        (0..1000).all(|_| {
            let mut n = 0;
            (0..30).all(|_| {
                let next = mon.successor(n, rng.gen_range(0..2)).unwrap();
                let ok = mon.flags(n).le(&mon.flags(next));
                n = next;
                ok
            })
        })
    });
    s.check("node counts on the alg5 example", || {
        let sp = spec(&a, Some("G x"), None, None, Some("G (y & x)"));
        let m = synthesize(&sp, &lim).unwrap().strategy.unwrap();
        let r = verify(&m, &sp, &lim).unwrap();
        // three memory states; the env region leaves two product nodes
        m.num_states() == 3 && build_monitor(&m, &sp, &lim).unwrap().len() == 3 && r.explored == 2
    });
    s.check("always y passes G y", || verify(&always_y, &gy, &lim).unwrap().passed());
    s.check("always empty fails G y with a 1-letter lasso", || {
        match verify(&never, &gy, &lim).unwrap().verdict {
            VerifyVerdict::Fail(cx) => cx.prefix.len() + cx.cycle.len() == 1,
            VerifyVerdict::Pass => false,
        }
    });
    s.check("alg4 output passes only with the env restriction", || {
        let sp = spec(&a, Some("G x"), None, Some("x"), None);
        let m = synthesize(&sp, &lim).unwrap().strategy.unwrap();
        let r = verify(&m, &sp, &lim).unwrap();
        let free = spec(&a, None, None, Some("x"), None);
        r.passed()
            && r.regime == Regime::EnvRestricted
            && !verify(&m, &free, &lim).unwrap().passed()
    });
    s.check("alg2 output: no violations in 100 episodes", || {
        let sp = spec(&a, None, None, None, Some("G (y | x)"));
        let m = synthesize(&sp, &lim).unwrap().strategy.unwrap();
        let r = simulate_random(&m, &sp, 100, 50, 1, &lim).unwrap();
        verify(&m, &sp, &lim).unwrap().passed()
            && r.uniform.task_safe_violations == 0
            && r.region.task_safe_violations == 0
    });
    s.check("always empty violates G y in every episode", || {
        let r = simulate_random(&never, &gy, 50, 1, 2, &lim).unwrap();
        r.uniform.task_safe_violations == 50 && r.region.task_safe_violations == 50
    });
    s.check("seeded simulation is reproducible", || {
        let sp = spec(&a, None, Some("F x"), Some("F (x & y)"), None);
        simulate_random(&always_y, &sp, 30, 20, 9, &lim).unwrap()
            == simulate_random(&always_y, &sp, 30, 20, 9, &lim).unwrap()
    });
}

fn finsynth(bin: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli(s: &mut Suite, bin: &Path, dir: &Path) {
    let file = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let atoms = r#""atoms":{"agent":["y"],"env":["x"]}"#;
    let gy = file("gy.json", &format!(r#"{{{atoms},"task":{{"safe":"G y"}}}}"#));
    let fx = file("fx.json", &format!(r#"{{{atoms},"task":{{"reach":"F x"}}}}"#));
    let env_gy = file("env_gy.json", &format!(r#"{{{atoms},"env":{{"safe":"G y"}}}}"#));
    let ry = file("ry.json", &format!(r#"{{{atoms},"task":{{"reach":"y"}}}}"#));
    let gx = file("gx.json", &format!(r#"{{{atoms},"task":{{"safe":"G x"}}}}"#));
    let bad = file("bad.json", &format!(r#"{{{atoms},"task":{{"safe":"G (y &"}}}}"#));
    let other = file("other.json", r#"{"atoms":{"agent":["z"],"env":["x"]},"task":{"safe":"G z"}}"#);
    let strat = dir.join("gy.strategy.json").to_string_lossy().into_owned();

    s.check("cli synth G y", || {
        finsynth(bin, &["synth", &gy, "-o", &strat]).0 == 0 && Path::new(&strat).exists()
    });
    s.check("cli synth F x", || {
        let (code, out, _) = finsynth(bin, &["synth", &fx]);
        code == 10 && out.contains("Unrealisable")
    });
    s.check("cli synth env G y", || finsynth(bin, &["synth", &env_gy]).0 == 11);
    s.check("cli check y", || finsynth(bin, &["check", &ry]).0 == 0);
    s.check("cli check G x", || finsynth(bin, &["check", &gx]).0 == 10);
    s.check("cli check malformed", || {
        let (code, _, err) = finsynth(bin, &["check", &bad]);
        code == 1 && err.contains("position")
    });
    s.check("cli dfa p", || finsynth(bin, &["dfa", "p", "--stats"]).1.contains("states: 3"));
    s.check("cli dfa true", || finsynth(bin, &["dfa", "true", "--stats"]).1.contains("states: 2"));
    s.check("cli dfa false", || {
        let out = finsynth(bin, &["dfa", "false", "--stats"]).1;
        out.contains("states: 1") && out.contains("finals: 0")
    });
    s.check("cli verify own output", || finsynth(bin, &["verify", &strat, &gy]).0 == 0);
    s.check("cli verify tampered strategy", || {
        let m = MealyStrategy::from_json(&std::fs::read_to_string(&strat).unwrap()).unwrap();
        let emptied = MealyStrategy::new(
            m.atoms().clone(),
            0,
            vec![0; m.num_states()],
            (0..m.num_states())
                .flat_map(|q| (0..2).map(move |x| (q, x)))
                .map(|(q, x)| m.update(q, x))
                .collect(),
        )
        .unwrap();
        let t = file("tampered.json", &emptied.to_json());
        let (code, out, _) = finsynth(bin, &["verify", &t, &gy]);
        code == 10 && out.contains("cycle")
    });
    s.check("cli verify atom mismatch", || finsynth(bin, &["verify", &strat, &other]).0 == 1);
    let always_y = file("always_y.json", &MealyStrategy::constant(&yx(), 1).to_json());
    s.check("cli simulate recorded inputs", || {
        let inputs = file("inputs.txt", "\nx\n\n");
        let (code, out, _) = finsynth(bin, &["simulate", &always_y, "--steps", "3", "--env-inputs", &inputs]);
        code == 0 && out == "y\nx,y\ny\n"
    });
    s.check("cli simulate seeded", || {
        let run = || finsynth(bin, &["simulate", &always_y, "--steps", "25", "--seed", "5"]).1;
        let first = run();
        first.lines().count() == 25 && first == run()
    });
    s.check("cli simulate undeclared atom", || {
        let inputs = file("inputs_bad.txt", "z\n");
        finsynth(bin, &["simulate", &always_y, "--env-inputs", &inputs]).0 == 1
    });
}
