use super::{set_where, Algorithm, Diagnostics, SynthesisOutcome, Synthesizer, Verdict};
use crate::automata::{flagged, restrict, restrict_with_sinks, Quantifier, StateSet, TransitionSystem};
use crate::games::{solve_reach, solve_safe, AgentPositional, Player, SolveResult};
use crate::logic::{AgentMove, EnvMove, Formula};
use crate::transducer::MealyStrategy;
use crate::Result;

/// Phases of the combined strategy of the general algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The environment can no longer keep `∀φ1`; force its violation.
    EnvSafeBroken,
    /// Keep the environment from ever completing `φ2`.
    Safe2,
    /// Head for a `φ3` state while keeping `φ4`.
    Reach3,
    /// `φ3` seen; keep `φ4` forever.
    Safe4,
    /// Keep both safety sets while waiting for the environment to move into
    /// one of the other regions.
    Explore,
    /// Nothing left to enforce from here.
    Arbitrary,
}

/// All the solved games of the general algorithm, with the logic that
/// switches between their strategies.
#[derive(Clone, Debug)]
pub struct ModeMachine {
    dp: TransitionSystem,
    df: TransitionSystem,
    r1: StateSet,
    f1: AgentPositional,
    s2: StateSet,
    f2: AgentPositional,
    r3: StateSet,
    f3: Vec<AgentMove>,
    s4: StateSet,
    f4: AgentPositional,
    t2: StateSet,
    t3: StateSet,
    flag: StateSet,
    e: StateSet,
    fe: Vec<AgentMove>,
}

/// Memory of the combined strategy: mode, flagged-arena state and the
/// unrestricted product state.
pub type ModeKey = (Mode, usize, usize);

impl ModeMachine {
    /// Winning region on the flagged arena.
    pub fn winning(&self, q: usize) -> bool {
        self.s2.contains(q) || self.r3.contains(q) || self.e.contains(q)
    }

    pub fn start(&self) -> ModeKey {
        let (q, p) = (self.df.initial(), self.dp.initial());
        (self.settle(None, q, p), q, p)
    }

    fn settle(&self, mode: Option<Mode>, q: usize, p: usize) -> Mode {
        if self.r1.contains(p) {
            return Mode::EnvSafeBroken;
        }
        let entered = |q| {
            if self.s2.contains(q) {
                Some(Mode::Safe2)
            } else if self.r3.contains(q) {
                Some(self.reach3(q))
            } else {
                None
            }
        };
        match mode {
            None => entered(q).unwrap_or(if self.e.contains(q) {
                Mode::Explore
            } else {
                Mode::Arbitrary
            }),
            Some(Mode::Reach3) => self.reach3(q),
            Some(Mode::Explore) if !self.e.contains(q) => entered(q).unwrap_or(
                if self.s4.contains(q) && !self.t2.contains(q) && self.flag.contains(q) {
                    Mode::Safe4
                } else {
                    Mode::Arbitrary
                },
            ),
            Some(m) => m,
        }
    }

    fn reach3(&self, q: usize) -> Mode {
        if self.t3.contains(q) {
            Mode::Safe4
        } else {
            Mode::Reach3
        }
    }

    pub fn output(&self, key: &ModeKey) -> AgentMove {
        let &(mode, q, p) = key;
        match mode {
            Mode::EnvSafeBroken => self.f1.get(p),
            Mode::Safe2 => self.f2.get(q),
            Mode::Reach3 => self.f3[q],
            Mode::Safe4 => self.f4.get(q),
            Mode::Explore => self.fe[q],
            Mode::Arbitrary => 0,
        }
    }

    pub fn step(&self, key: &ModeKey, y: AgentMove, x: EnvMove) -> ModeKey {
        let &(mode, q, p) = key;
        let q = self.df.step_moves(q, y, x);
        let p = self.dp.step_moves(p, y, x);
        (self.settle(Some(mode), q, p), q, p)
    }

    pub fn to_strategy(&self) -> MealyStrategy {
        MealyStrategy::from_machine(
            self.df.atoms(),
            self.start(),
            |k| self.output(k),
            |k, y, x| self.step(k, y, x),
        )
    }
}

fn agent(res: &SolveResult) -> AgentPositional {
    res.strategy.as_agent().expect("agent solve").clone()
}

impl Synthesizer {
    /// Task `∃φ3 ∧ ∀φ4` under Env `∀φ1 ∧ ∃φ2`, by enforcing Env → Task.
    ///
    /// States of the product from which the agent can force a violation of
    /// `φ1` are cut away into one sink; that sink counts as winning in every
    /// later game since the combined strategy switches to forcing the
    /// violation as soon as it is entered.
    pub fn alg7(
        &self,
        phi1: &Formula,
        phi2: &Formula,
        phi3: &Formula,
        phi4: &Formula,
    ) -> Result<SynthesisOutcome> {
        let (machine, diag) = self.alg7_machine(phi1, phi2, phi3, phi4)?;
        let win = machine.winning(machine.df.initial());
        Ok(SynthesisOutcome {
            verdict: if win {
                Verdict::Realizable
            } else {
                Verdict::Unrealizable
            },
            algorithm: Some(Algorithm::Alg7),
            strategy: win.then(|| machine.to_strategy()),
            counter_strategy: None,
            diagnostics: diag,
        })
    }

    pub fn alg7_machine(
        &self,
        phi1: &Formula,
        phi2: &Formula,
        phi3: &Formula,
        phi4: &Formula,
    ) -> Result<(ModeMachine, Diagnostics)> {
        let mut diag = Diagnostics::default();
        let not = |f: &Formula| Formula::not(f.clone());
        let a1 = self.da(Quantifier::Exists, &not(phi1), "env.safe.neg", &mut diag)?;
        let a2 = self.da(Quantifier::Forall, &not(phi2), "env.reach.neg", &mut diag)?;
        let a3 = self.da(Quantifier::Exists, phi3, "task.reach", &mut diag)?;
        let a4 = self.da(Quantifier::Forall, phi4, "task.safe", &mut diag)?;
        let (dp, pmap) = self.product(&[&a1.ts, &a2.ts, &a3.ts, &a4.ts], "product", &mut diag)?;
        let b: Vec<StateSet> = [&a1, &a2, &a3, &a4]
            .iter()
            .enumerate()
            .map(|(i, a)| pmap.lift(i, a.objective.set()))
            .collect();

        let r1 = solve_reach(&dp, &b[0], Player::Agent);
        diag.solve("env.safe.neg", &r1);
        let (dpr, rmap) = restrict(&dp, &dp.complement(&r1.winning));
        // the cut-away sink is `None`
        let below = |p: usize| rmap.component(p, 0);
        let lifted = |set: &StateSet| {
            set_where(dpr.num_states(), |p| below(p).is_none_or(|s| set.contains(s)))
        };
        let t3r = lifted(&b[2]);
        let (df, fmap) = flagged(&dpr, &t3r);
        diag.arena("flagged", df.num_states());
        self.limits.check(df.num_states(), "flagged")?;
        let n = df.num_states();
        let base = |q: usize| fmap.component(q, 0).unwrap();
        let on_base = |set: &StateSet| set_where(n, |q| set.contains(base(q)));
        let t2 = on_base(&lifted(&b[1]));
        let t3 = on_base(&t3r);
        let t4 = on_base(&lifted(&b[3]));
        let flag = set_where(n, |q| fmap.component(q, 1) == Some(1));

        let s2 = solve_safe(&df, &t2, Player::Agent);
        diag.solve("env.reach.neg", &s2);
        let s4 = solve_safe(&df, &t4, Player::Agent);
        diag.solve("task.safe", &s4);
        let (d4, map4) = restrict(&df, &s4.winning);
        let t3_in_4 = set_where(d4.num_states(), |q| {
            map4.component(q, 0).is_some_and(|s| t3.contains(s))
        });
        let r3r = solve_reach(&d4, &t3_in_4, Player::Agent);
        diag.solve("task.reach", &r3r);
        let mut r3 = StateSet::with_capacity(n);
        let mut f3 = vec![0; n];
        let g3 = agent(&r3r);
        for q in 0..d4.num_states() {
            if let Some(s) = map4.component(q, 0) {
                f3[s] = g3.get(q);
                if r3r.wins(q) {
                    r3.insert(s);
                }
            }
        }

        let mut covered = s2.winning.clone();
        covered.union_with(&r3);
        let mut s24 = s2.winning.clone();
        s24.union_with(&s4.winning);
        let mut v0 = df.complement(&s24);
        let mut v1 = StateSet::with_capacity(n);
        for q in s4.winning.ones() {
            if covered.contains(q) {
                continue;
            }
            if t2.contains(q) {
                v0.insert(q);
            } else if !flag.contains(q) {
                v1.insert(q);
            }
        }
        let (dh, hmap) = restrict_with_sinks(&df, &v0, &v1);
        diag.arena("explore", dh.num_states());
        let mut t24 = t2.clone();
        t24.intersect_with(&t4);
        let mut safe_h = set_where(dh.num_states(), |q| {
            hmap.component(q, 0).is_some_and(|s| t24.contains(s))
        });
        if let Some(top) = hmap.top() {
            safe_h.insert(top);
        }
        let eh = solve_safe(&dh, &safe_h, Player::Agent);
        diag.solve("explore", &eh);
        let mut e = StateSet::with_capacity(n);
        let mut fe = vec![0; n];
        let ge = agent(&eh);
        for q in 0..dh.num_states() {
            if let Some(s) = hmap.component(q, 0) {
                fe[s] = ge.get(q);
                if eh.wins(q) {
                    e.insert(s);
                }
            }
        }

        let machine = ModeMachine {
            f1: agent(&r1),
            r1: r1.winning,
            f2: agent(&s2),
            s2: s2.winning,
            r3,
            f3,
            f4: agent(&s4),
            s4: s4.winning,
            t2,
            t3,
            flag,
            e,
            fe,
            dp,
            df,
        };
        Ok((machine, diag))
    }
}
