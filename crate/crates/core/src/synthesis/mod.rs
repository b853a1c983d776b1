//! Realizability and strategy synthesis for tasks and environment
//! specifications built from `∃φ` (some prefix satisfies φ) and `∀φ` (every
//! prefix satisfies φ).

mod direct;
mod general;

use std::fmt;

use crate::automata::{
    convert_da, product, restrict, DetAutomaton, Limits, Objective, ProductMap, Quantifier,
    StateSet, TransitionSystem,
};
use crate::games::{
    check_reach_progress, check_safe_closure, solve_reach, solve_safe, EnvPositional, Player,
    SolveResult,
};
use crate::logic::{parse, AtomPartition, Formula};
use crate::transducer::MealyStrategy;
use crate::{Error, Result};

pub use general::{Mode, ModeMachine};

/// Task `∃task_reach ∧ ∀task_safe` under Env `∀env_safe ∧ ∃env_reach`.
/// Absent components stand for `true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub atoms: AtomPartition,
    pub env_safe: Option<Formula>,
    pub env_reach: Option<Formula>,
    pub task_reach: Option<Formula>,
    pub task_safe: Option<Formula>,
}

impl ProblemSpec {
    pub fn new(atoms: AtomPartition) -> Self {
        Self {
            atoms,
            env_safe: None,
            env_reach: None,
            task_reach: None,
            task_safe: None,
        }
    }

    /// Parses the four optional formula texts against `atoms`.
    pub fn parse(
        atoms: AtomPartition,
        env_safe: Option<&str>,
        env_reach: Option<&str>,
        task_reach: Option<&str>,
        task_safe: Option<&str>,
    ) -> Result<Self> {
        let p = |t: Option<&str>| t.map(|t| parse(t, &atoms)).transpose();
        Ok(Self {
            env_safe: p(env_safe)?,
            env_reach: p(env_reach)?,
            task_reach: p(task_reach)?,
            task_safe: p(task_safe)?,
            atoms: atoms.clone(),
        })
    }

    pub fn with_env_safe(mut self, f: Formula) -> Self {
        self.env_safe = Some(f);
        self
    }

    pub fn with_env_reach(mut self, f: Formula) -> Self {
        self.env_reach = Some(f);
        self
    }

    pub fn with_task_reach(mut self, f: Formula) -> Self {
        self.task_reach = Some(f);
        self
    }

    pub fn with_task_safe(mut self, f: Formula) -> Self {
        self.task_safe = Some(f);
        self
    }

    /// Checks that every formula only uses declared atoms.
    pub fn validate(&self) -> Result<()> {
        for f in self.formulas().into_iter().flatten() {
            if let Some(a) = f.atoms().into_iter().find(|a| !self.atoms.contains(a)) {
                return Err(Error::Logic(crate::logic::LogicError::UndeclaredAtom(
                    a.to_string(),
                )));
            }
        }
        Ok(())
    }

    pub fn formulas(&self) -> [Option<&Formula>; 4] {
        [
            self.env_safe.as_ref(),
            self.env_reach.as_ref(),
            self.task_reach.as_ref(),
            self.task_safe.as_ref(),
        ]
    }

    pub fn shape(&self) -> Shape {
        let task = match (self.task_reach.is_some(), self.task_safe.is_some()) {
            (true, true) => TaskShape::ReachSafe,
            (true, false) => TaskShape::Reach,
            _ => TaskShape::Safe,
        };
        let env = match (self.env_safe.is_some(), self.env_reach.is_some()) {
            (false, false) => EnvShape::True,
            (true, false) => EnvShape::Safe,
            (false, true) => EnvShape::Reach,
            (true, true) => EnvShape::SafeReach,
        };
        Shape { task, env }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskShape {
    Reach,
    Safe,
    ReachSafe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnvShape {
    True,
    Safe,
    Reach,
    SafeReach,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub task: TaskShape,
    pub env: EnvShape,
}

impl Shape {
    /// The twelve task/env combinations.
    pub fn all() -> Vec<Shape> {
        let tasks = [TaskShape::Reach, TaskShape::Safe, TaskShape::ReachSafe];
        let envs = [EnvShape::True, EnvShape::Safe, EnvShape::Reach, EnvShape::SafeReach];
        envs.iter()
            .flat_map(|&env| tasks.iter().map(move |&task| Shape { task, env }))
            .collect()
    }

    /// The algorithm `synthesize` dispatches this shape to.
    pub fn algorithm(&self) -> Algorithm {
        use Algorithm::*;
        match (self.env, self.task) {
            (EnvShape::Reach | EnvShape::SafeReach, _) => Alg7,
            (EnvShape::True, TaskShape::Reach) => Alg1,
            (EnvShape::True, TaskShape::Safe) => Alg2,
            (EnvShape::True, TaskShape::ReachSafe) => Alg3,
            (EnvShape::Safe, TaskShape::Reach) => Alg4,
            (EnvShape::Safe, TaskShape::Safe) => Alg5,
            (EnvShape::Safe, TaskShape::ReachSafe) => Alg6,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let task = match self.task {
            TaskShape::Reach => "∃",
            TaskShape::Safe => "∀",
            TaskShape::ReachSafe => "∃∧∀",
        };
        let env = match self.env {
            EnvShape::True => "true",
            EnvShape::Safe => "∀",
            EnvShape::Reach => "∃",
            EnvShape::SafeReach => "∀∧∃",
        };
        write!(f, "task {task} / env {env}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg3,
    Alg4,
    Alg5,
    Alg6,
    Alg7,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self as usize + 1;
        write!(f, "alg{n}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Realizable,
    Unrealizable,
    EnvInconsistent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Realizable => "Realisable",
            Verdict::Unrealizable => "Unrealisable",
            Verdict::EnvInconsistent => "EnvInconsistent",
        })
    }
}

/// Sizes and iteration counts gathered along the way.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub dfa_sizes: Vec<(String, usize)>,
    pub arena_sizes: Vec<(String, usize)>,
    pub iterations: Vec<(String, usize)>,
}

impl Diagnostics {
    fn dfa(&mut self, label: &str, n: usize) {
        self.dfa_sizes.push((label.to_string(), n));
    }

    fn arena(&mut self, label: &str, n: usize) {
        self.arena_sizes.push((label.to_string(), n));
    }

    fn solve(&mut self, label: &str, r: &SolveResult) {
        self.iterations.push((label.to_string(), r.iterations));
    }

    fn extend(&mut self, other: Diagnostics) {
        self.dfa_sizes.extend(other.dfa_sizes);
        self.arena_sizes.extend(other.arena_sizes);
        self.iterations.extend(other.iterations);
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.dfa_sizes {
            writeln!(f, "dfa {k}: {v} states")?;
        }
        for (k, v) in &self.arena_sizes {
            writeln!(f, "arena {k}: {v} states")?;
        }
        for (k, v) in &self.iterations {
            writeln!(f, "solve {k}: {v} iterations")?;
        }
        Ok(())
    }
}

/// The environment's winning solution of the game complementary to the
/// agent's final game, on the same arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterStrategy {
    pub arena: TransitionSystem,
    /// The environment's own objective on `arena`.
    pub objective: Objective,
    pub solve: SolveResult,
}

impl CounterStrategy {
    fn new(arena: TransitionSystem, agent_objective: &Objective) -> Self {
        let (objective, solve) = match agent_objective {
            Objective::Reach(t) => {
                let safe = arena.complement(t);
                let solve = solve_safe(&arena, &safe, Player::Env);
                (Objective::Safe(safe), solve)
            }
            Objective::Safe(t) => {
                let bad = arena.complement(t);
                let solve = solve_reach(&arena, &bad, Player::Env);
                (Objective::Reach(bad), solve)
            }
        };
        Self {
            arena,
            objective,
            solve,
        }
    }

    pub fn env_strategy(&self) -> &EnvPositional {
        self.solve.strategy.as_env().expect("environment solve")
    }

    /// The environment wins from the initial state, and its strategy keeps
    /// the play in its region (safety) or strictly descends ranks (reach).
    pub fn check(&self) -> std::result::Result<(), String> {
        if !self.solve.wins(self.arena.initial()) {
            return Err("initial state is not winning for the environment".into());
        }
        match &self.objective {
            Objective::Safe(s) => check_safe_closure(&self.arena, s, &self.solve),
            Objective::Reach(t) => check_reach_progress(&self.arena, t, &self.solve),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisOutcome {
    pub verdict: Verdict,
    pub algorithm: Option<Algorithm>,
    pub strategy: Option<MealyStrategy>,
    /// Present for unrealizable outcomes of the direct algorithms.
    pub counter_strategy: Option<CounterStrategy>,
    pub diagnostics: Diagnostics,
}

impl SynthesisOutcome {
    pub fn is_realizable(&self) -> bool {
        self.verdict == Verdict::Realizable
    }
}

/// Result of the environment-consistency check.
#[derive(Clone, Debug)]
pub struct EnvConsistency {
    pub consistent: bool,
    /// Arena the witness plays on: the restricted `∀` monitor times the `∃`
    /// monitor.
    pub arena: TransitionSystem,
    /// Environment strategy enforcing Env on `arena`, when consistent.
    pub witness: Option<EnvPositional>,
    pub diagnostics: Diagnostics,
}

/// Runs the algorithms for one atom partition.
#[derive(Clone, Debug)]
pub struct Synthesizer {
    atoms: AtomPartition,
    limits: Limits,
}

impl Synthesizer {
    pub fn new(atoms: AtomPartition, limits: Limits) -> Self {
        Self { atoms, limits }
    }

    pub fn atoms(&self) -> &AtomPartition {
        &self.atoms
    }

    fn da(
        &self,
        mode: Quantifier,
        phi: &Formula,
        label: &str,
        diag: &mut Diagnostics,
    ) -> Result<DetAutomaton> {
        let da = convert_da(mode, phi, &self.atoms, &self.limits)?;
        diag.dfa(label, da.ts.num_states());
        Ok(da)
    }

    fn product(
        &self,
        parts: &[&TransitionSystem],
        label: &str,
        diag: &mut Diagnostics,
    ) -> Result<(TransitionSystem, ProductMap)> {
        let (ts, map) = product(parts)?;
        self.limits.check(ts.num_states(), label)?;
        diag.arena(label, ts.num_states());
        Ok((ts, map))
    }

    /// Whether the environment has a strategy enforcing
    /// `∀env_safe ∧ ∃env_reach` (absent parts are `true`).
    pub fn check_env_consistency(
        &self,
        env_safe: Option<&Formula>,
        env_reach: Option<&Formula>,
    ) -> Result<EnvConsistency> {
        let mut diag = Diagnostics::default();
        let t = Formula::True;
        let a1 = self.da(Quantifier::Forall, env_safe.unwrap_or(&t), "env.safe", &mut diag)?;
        let a2 = self.da(Quantifier::Exists, env_reach.unwrap_or(&t), "env.reach", &mut diag)?;
        let s1 = solve_safe(&a1.ts, a1.objective.set(), Player::Env);
        diag.solve("env.safe", &s1);
        let (d1r, rmap) = restrict(&a1.ts, &s1.winning);
        let (p, pmap) = self.product(&[&d1r, &a2.ts], "env", &mut diag)?;
        let t2 = a2.objective.set();
        let target = set_where(p.num_states(), |q| {
            let inner = pmap.component(q, 0).and_then(|d| rmap.component(d, 0));
            inner.is_some() && t2.contains(pmap.component(q, 1).unwrap())
        });
        let r = solve_reach(&p, &target, Player::Env);
        diag.solve("env.reach", &r);
        let consistent = r.wins(p.initial());
        let witness = consistent.then(|| {
            let reach = r.strategy.as_env().unwrap();
            let safe = s1.strategy.as_env().unwrap();
            let ny = self.atoms.num_agent_moves();
            let mut moves = Vec::with_capacity(p.num_states() * ny);
            for q in 0..p.num_states() {
                for y in 0..ny as u32 {
                    let x = if r.wins(q) && !target.contains(q) {
                        reach.get(q, y)
                    } else {
                        match pmap.component(q, 0).and_then(|d| rmap.component(d, 0)) {
                            Some(s) => safe.get(s, y),
                            None => 0,
                        }
                    };
                    moves.push(x);
                }
            }
            EnvPositional::new(ny, moves)
        });
        Ok(EnvConsistency {
            consistent,
            arena: p,
            witness,
            diagnostics: diag,
        })
    }
}

/// Set of the states in `0..n` satisfying `pred`.
fn set_where(n: usize, pred: impl Fn(usize) -> bool) -> StateSet {
    let mut s = StateSet::with_capacity(n);
    for q in 0..n {
        if pred(q) {
            s.insert(q);
        }
    }
    s
}

/// Checks Env consistency, then dispatches on the spec shape: reach-bearing
/// Env goes to the general algorithm, the other shapes to the direct ones.
pub fn synthesize(spec: &ProblemSpec, limits: &Limits) -> Result<SynthesisOutcome> {
    spec.validate()?;
    let syn = Synthesizer::new(spec.atoms.clone(), *limits);
    let env = syn.check_env_consistency(spec.env_safe.as_ref(), spec.env_reach.as_ref())?;
    let algorithm = spec.shape().algorithm();
    if !env.consistent {
        return Ok(SynthesisOutcome {
            verdict: Verdict::EnvInconsistent,
            algorithm: Some(algorithm),
            strategy: None,
            counter_strategy: None,
            diagnostics: env.diagnostics,
        });
    }
    let t = Formula::True;
    let mut out = match algorithm {
        Algorithm::Alg7 => syn.alg7(
            spec.env_safe.as_ref().unwrap_or(&t),
            spec.env_reach.as_ref().unwrap_or(&t),
            spec.task_reach.as_ref().unwrap_or(&t),
            spec.task_safe.as_ref().unwrap_or(&t),
        )?,
        _ => syn.direct(spec)?,
    };
    let mut diag = env.diagnostics;
    diag.extend(out.diagnostics);
    out.diagnostics = diag;
    Ok(out)
}

impl Synthesizer {
    /// Runs the direct algorithm matching the spec shape; reach-bearing Envs
    /// are rejected.
    pub fn direct(&self, spec: &ProblemSpec) -> Result<SynthesisOutcome> {
        let t = Formula::True;
        match (spec.env_safe.as_ref(), spec.env_reach.as_ref()) {
            (_, Some(_)) => Err(Error::Spec(
                "reachability Env components need the general algorithm".into(),
            )),
            (None, None) => match (spec.task_reach.as_ref(), spec.task_safe.as_ref()) {
                (Some(r), None) => self.alg1(r),
                (Some(r), Some(s)) => self.alg3(r, s),
                (None, s) => self.alg2(s.unwrap_or(&t)),
            },
            (Some(e), None) => match (spec.task_reach.as_ref(), spec.task_safe.as_ref()) {
                (Some(r), None) => self.alg4(r, e),
                (Some(r), Some(s)) => self.alg6(r, s, e),
                (None, s) => self.alg5(s.unwrap_or(&t), e),
            },
        }
    }
}
