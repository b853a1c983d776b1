use super::{set_where, Algorithm, CounterStrategy, Diagnostics, SynthesisOutcome, Synthesizer, Verdict};
use crate::automata::{restrict, Objective, ProductMap, Quantifier, TransitionSystem};
use crate::games::{solve_reach, solve_safe, AgentPositional, Player, SolveResult};
use crate::logic::{AgentMove, Formula};
use crate::transducer::MealyStrategy;
use crate::Result;

/// Wraps up the final game on `arena`: a strategy from `moves` when the
/// agent wins from the initial state, the complementary solution otherwise.
fn finish(
    alg: Algorithm,
    arena: TransitionSystem,
    objective: Objective,
    res: &SolveResult,
    moves: impl Fn(usize) -> AgentMove,
    diag: Diagnostics,
) -> SynthesisOutcome {
    if res.wins(arena.initial()) {
        let f = AgentPositional::new((0..arena.num_states()).map(moves).collect());
        SynthesisOutcome {
            verdict: Verdict::Realizable,
            algorithm: Some(alg),
            strategy: Some(MealyStrategy::from_positional(&arena, arena.initial(), &f)),
            counter_strategy: None,
            diagnostics: diag,
        }
    } else {
        SynthesisOutcome {
            verdict: Verdict::Unrealizable,
            algorithm: Some(alg),
            strategy: None,
            counter_strategy: Some(CounterStrategy::new(arena, &objective)),
            diagnostics: diag,
        }
    }
}

fn agent(res: &SolveResult) -> &AgentPositional {
    res.strategy.as_agent().expect("agent solve")
}

/// Source state of a restricted state, `None` for the sink.
fn inner(map: &ProductMap, q: usize) -> Option<usize> {
    map.component(q, 0)
}

impl Synthesizer {
    /// Task `∃φ`, Env `true`.
    pub fn alg1(&self, phi: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a = self.da(Quantifier::Exists, phi, "task.reach", &mut diag)?;
        let target = a.objective.set().clone();
        let r = solve_reach(&a.ts, &target, Player::Agent);
        diag.solve("task.reach", &r);
        let f = agent(&r).clone();
        Ok(finish(
            Algorithm::Alg1,
            a.ts,
            Objective::Reach(target),
            &r,
            |q| f.get(q),
            diag,
        ))
    }

    /// Task `∀φ`, Env `true`.
    pub fn alg2(&self, phi: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a = self.da(Quantifier::Forall, phi, "task.safe", &mut diag)?;
        let safe = a.objective.set().clone();
        let s = solve_safe(&a.ts, &safe, Player::Agent);
        diag.solve("task.safe", &s);
        let f = agent(&s).clone();
        Ok(finish(
            Algorithm::Alg2,
            a.ts,
            Objective::Safe(safe),
            &s,
            |q| f.get(q),
            diag,
        ))
    }

    /// Task `∃φ1 ∧ ∀φ2`, Env `true`.
    pub fn alg3(&self, phi1: &Formula, phi2: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a1 = self.da(Quantifier::Exists, phi1, "task.reach", &mut diag)?;
        let a2 = self.da(Quantifier::Forall, phi2, "task.safe", &mut diag)?;
        let s2 = solve_safe(&a2.ts, a2.objective.set(), Player::Agent);
        diag.solve("task.safe", &s2);
        let (d2r, rmap) = restrict(&a2.ts, &s2.winning);
        let (c, cmap) = self.product(&[&a1.ts, &d2r], "product", &mut diag)?;
        let t1 = a1.objective.set();
        let target = set_where(c.num_states(), |q| {
            t1.contains(cmap.component(q, 0).unwrap())
                && inner(&rmap, cmap.component(q, 1).unwrap()).is_some()
        });
        let r = solve_reach(&c, &target, Player::Agent);
        diag.solve("product.reach", &r);
        let g = agent(&r);
        let f = agent(&s2);
        // reach moves off the target, the lifted safety moves elsewhere
        let moves: Vec<AgentMove> = (0..c.num_states())
            .map(|q| {
                if r.wins(q) && !target.contains(q) {
                    g.get(q)
                } else {
                    inner(&rmap, cmap.component(q, 1).unwrap()).map_or(0, |s| f.get(s))
                }
            })
            .collect();
        Ok(finish(
            Algorithm::Alg3,
            c,
            Objective::Reach(target),
            &r,
            |q| moves[q],
            diag,
        ))
    }

    /// The environment's safe region of `∀env` and the monitor restricted to
    /// it.
    fn env_restriction(
        &self,
        env: &Formula,
        diag: &mut Diagnostics,
    ) -> Result<(TransitionSystem, ProductMap, SolveResult)> {
        let a = self.da(Quantifier::Forall, env, "env.safe", diag)?;
        let s = solve_safe(&a.ts, a.objective.set(), Player::Env);
        diag.solve("env.safe", &s);
        let (ts, map) = restrict(&a.ts, &s.winning);
        Ok((ts, map, s))
    }

    /// Task `∃φ1`, Env `∀φ2`.
    pub fn alg4(&self, phi1: &Formula, phi2: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a1 = self.da(Quantifier::Exists, phi1, "task.reach", &mut diag)?;
        let (d2r, rmap, _) = self.env_restriction(phi2, &mut diag)?;
        let (c, cmap) = self.product(&[&a1.ts, &d2r], "product", &mut diag)?;
        let t1 = a1.objective.set();
        let target = set_where(c.num_states(), |q| {
            t1.contains(cmap.component(q, 0).unwrap())
                || inner(&rmap, cmap.component(q, 1).unwrap()).is_none()
        });
        let r = solve_reach(&c, &target, Player::Agent);
        diag.solve("product.reach", &r);
        let g = agent(&r).clone();
        Ok(finish(
            Algorithm::Alg4,
            c,
            Objective::Reach(target),
            &r,
            |q| g.get(q),
            diag,
        ))
    }

    /// Task `∀φ1`, Env `∀φ2`.
    pub fn alg5(&self, phi1: &Formula, phi2: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a1 = self.da(Quantifier::Forall, phi1, "task.safe", &mut diag)?;
        let (d2r, rmap, _) = self.env_restriction(phi2, &mut diag)?;
        let (c, cmap) = self.product(&[&a1.ts, &d2r], "product", &mut diag)?;
        let t1 = a1.objective.set();
        let safe = set_where(c.num_states(), |q| {
            t1.contains(cmap.component(q, 0).unwrap())
                || inner(&rmap, cmap.component(q, 1).unwrap()).is_none()
        });
        let s = solve_safe(&c, &safe, Player::Agent);
        diag.solve("product.safe", &s);
        let f = agent(&s).clone();
        Ok(finish(
            Algorithm::Alg5,
            c,
            Objective::Safe(safe),
            &s,
            |q| f.get(q),
            diag,
        ))
    }

    /// Task `∃φ1 ∧ ∀φ2`, Env `∀φ3`.
    ///
    /// The reach target excludes the restriction sink of the safety product:
    /// that sink is entered when the agent's own safety is lost, which may
    /// happen while the environment still behaves.
    pub fn alg6(&self, phi1: &Formula, phi2: &Formula, phi3: &Formula) -> Result<SynthesisOutcome> {
        let mut diag = Diagnostics::default();
        let a1 = self.da(Quantifier::Exists, phi1, "task.reach", &mut diag)?;
        let a2 = self.da(Quantifier::Forall, phi2, "task.safe", &mut diag)?;
        let (d3r, rmap3, _) = self.env_restriction(phi3, &mut diag)?;
        let (d, dmap) = self.product(&[&a2.ts, &d3r], "safety", &mut diag)?;
        let t2 = a2.objective.set();
        let env_broken = |p: usize| inner(&rmap3, dmap.component(p, 1).unwrap()).is_none();
        let safe = set_where(d.num_states(), |p| {
            t2.contains(dmap.component(p, 0).unwrap()) || env_broken(p)
        });
        let s2 = solve_safe(&d, &safe, Player::Agent);
        diag.solve("safety.safe", &s2);
        let (dr, rmap2) = restrict(&d, &s2.winning);
        let (c, cmap) = self.product(&[&a1.ts, &dr], "product", &mut diag)?;
        let t1 = a1.objective.set();
        let target = set_where(c.num_states(), |q| {
            match inner(&rmap2, cmap.component(q, 1).unwrap()) {
                Some(p) => t1.contains(cmap.component(q, 0).unwrap()) || env_broken(p),
                None => false,
            }
        });
        let r = solve_reach(&c, &target, Player::Agent);
        diag.solve("product.reach", &r);
        let g = agent(&r);
        let f = agent(&s2);
        let moves: Vec<AgentMove> = (0..c.num_states())
            .map(|q| {
                if r.wins(q) && !target.contains(q) {
                    g.get(q)
                } else {
                    inner(&rmap2, cmap.component(q, 1).unwrap()).map_or(0, |p| f.get(p))
                }
            })
            .collect();
        Ok(finish(
            Algorithm::Alg6,
            c,
            Objective::Reach(target),
            &r,
            |q| moves[q],
            diag,
        ))
    }
}
