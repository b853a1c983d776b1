//! Model checking of Mealy strategies against a problem spec, plus random
//! simulation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{convert_da, DetAutomaton, Limits, Quantifier, StateSet};
use crate::games::{solve_safe, Player};
use crate::logic::{EnvMove, Formula, Letter};
use crate::synthesis::ProblemSpec;
use crate::transducer::MealyStrategy;
use crate::{Error, Result};

const ENV_SAFE_VIOLATED: u8 = 1;
const ENV_REACH_REACHED: u8 = 2;
const TASK_REACHED: u8 = 4;
const TASK_SAFE_VIOLATED: u8 = 8;

/// How environment behaviour is quantified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// No `∃` part in Env: the environment only makes moves that keep it
    /// inside the winning region of its safety monitor, and the task must
    /// hold on every such play.
    EnvRestricted,
    /// Env has an `∃` part: all environment moves are allowed and every play
    /// must satisfy Env → Task.
    Implication,
}

impl Regime {
    pub fn for_spec(spec: &ProblemSpec) -> Self {
        if spec.env_reach.is_some() {
            Regime::Implication
        } else {
            Regime::EnvRestricted
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::EnvRestricted => "env-restricted",
            Regime::Implication => "implication",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailReason {
    TaskSafetyViolated,
    TaskReachMissed,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::TaskSafetyViolated => "task safety violated",
            FailReason::TaskReachMissed => "task reach never satisfied",
        })
    }
}

/// An environment lasso `prefix · cycle^ω` on which the strategy fails,
/// with the letters of the resulting play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub reason: FailReason,
    pub prefix: Vec<EnvMove>,
    pub cycle: Vec<EnvMove>,
    pub prefix_letters: Vec<Letter>,
    pub cycle_letters: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyVerdict {
    Pass,
    Fail(Counterexample),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub regime: Regime,
    pub verdict: VerifyVerdict,
    /// Nodes of the explored strategy-monitor product.
    pub explored: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == VerifyVerdict::Pass
    }
}

/// Monitors for the spec components that are present, in the order env
/// safe, env reach, task reach, task safe.
struct Monitors {
    parts: Vec<(u8, DetAutomaton)>,
    /// Environment's safe region of the env-safety monitor, when present.
    env_region: Option<StateSet>,
}

impl Monitors {
    fn new(spec: &ProblemSpec, limits: &Limits) -> Result<Self> {
        let kinds = [
            (ENV_SAFE_VIOLATED, Quantifier::Forall, spec.env_safe.as_ref()),
            (ENV_REACH_REACHED, Quantifier::Exists, spec.env_reach.as_ref()),
            (TASK_REACHED, Quantifier::Exists, spec.task_reach.as_ref()),
            (TASK_SAFE_VIOLATED, Quantifier::Forall, spec.task_safe.as_ref()),
        ];
        let mut parts = Vec::new();
        let mut env_region = None;
        for (bit, mode, f) in kinds {
            if let Some(f) = f {
                let da = convert_da(mode, f, &spec.atoms, limits)?;
                if bit == ENV_SAFE_VIOLATED {
                    env_region = Some(solve_safe(&da.ts, da.objective.set(), Player::Env).winning);
                }
                parts.push((bit, da));
            }
        }
        Ok(Self { parts, env_region })
    }

    fn initial(&self) -> Vec<usize> {
        self.parts.iter().map(|(_, d)| d.ts.initial()).collect()
    }

    fn flags(&self, states: &[usize]) -> u8 {
        let mut f = 0;
        for ((bit, d), &q) in self.parts.iter().zip(states) {
            let in_set = d.objective.set().contains(q);
            let hit = match *bit {
                ENV_SAFE_VIOLATED | TASK_SAFE_VIOLATED => !in_set,
                _ => in_set,
            };
            if hit {
                f |= bit;
            }
        }
        f
    }

    fn step(&self, states: &[usize], z: Letter) -> Vec<usize> {
        self.parts
            .iter()
            .zip(states)
            .map(|((_, d), &q)| d.ts.step(q, z))
            .collect()
    }

    /// Whether the environment stays in its safe region after `z`.
    fn allowed(&self, states: &[usize], z: Letter) -> bool {
        match &self.env_region {
            None => true,
            Some(region) => {
                let (_, d) = &self.parts[0];
                region.contains(d.ts.step(states[0], z))
            }
        }
    }

    fn initial_allowed(&self) -> bool {
        match &self.env_region {
            None => true,
            Some(region) => region.contains(self.parts[0].1.ts.initial()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    memory: usize,
    states: Vec<usize>,
    flags: u8,
}

/// Product of a strategy with the spec monitors, explored from the start.
/// Node 0 is the initial node and nodes are numbered breadth-first.
#[derive(Clone, Debug)]
pub struct MonitorProduct {
    nodes: Vec<Node>,
    edges: Vec<Vec<(usize, EnvMove, Letter)>>,
    parent: Vec<Option<(usize, EnvMove, Letter)>>,
}

fn explore(
    strategy: &MealyStrategy,
    monitors: &Monitors,
    restricted: bool,
    limits: &Limits,
) -> Result<MonitorProduct> {
    let atoms = strategy.atoms();
    let init_states = monitors.initial();
    let root = Node {
        memory: strategy.initial(),
        flags: monitors.flags(&init_states),
        states: init_states,
    };
    let mut index = HashMap::new();
    index.insert(root.clone(), 0);
    let mut ex = MonitorProduct {
        nodes: vec![root],
        edges: Vec::new(),
        parent: vec![None],
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let node = ex.nodes[i].clone();
        let y = strategy.output(node.memory);
        let mut out = Vec::new();
        for x in 0..atoms.num_env_moves() as EnvMove {
            let z = atoms.letter(y, x);
            if restricted && !monitors.allowed(&node.states, z) {
                continue;
            }
            let states = monitors.step(&node.states, z);
            let next = Node {
                memory: strategy.update(node.memory, x),
                flags: node.flags | monitors.flags(&states),
                states,
            };
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    let j = ex.nodes.len();
                    limits.check(j + 1, "verification product")?;
                    index.insert(next.clone(), j);
                    ex.nodes.push(next);
                    ex.parent.push(Some((i, x, z)));
                    queue.push_back(j);
                    j
                }
            };
            out.push((j, x, z));
        }
        if ex.edges.len() <= i {
            ex.edges.resize(i + 1, Vec::new());
        }
        ex.edges[i] = out;
    }
    ex.edges.resize(ex.nodes.len(), Vec::new());
    Ok(ex)
}

/// Monotone flags of a product node. Absent spec components never set
/// their flag.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub env_safe_violated: bool,
    pub env_reach_reached: bool,
    pub task_reached: bool,
    pub task_safe_violated: bool,
}

impl Flags {
    fn from_bits(f: u8) -> Self {
        Self {
            env_safe_violated: f & ENV_SAFE_VIOLATED != 0,
            env_reach_reached: f & ENV_REACH_REACHED != 0,
            task_reached: f & TASK_REACHED != 0,
            task_safe_violated: f & TASK_SAFE_VIOLATED != 0,
        }
    }

    /// Whether every flag set in `self` is also set in `later`.
    pub fn le(&self, later: &Flags) -> bool {
        let bits = |f: &Flags| {
            [f.env_safe_violated, f.env_reach_reached, f.task_reached, f.task_safe_violated]
        };
        bits(self).iter().zip(bits(later)).all(|(a, b)| !a || b)
    }
}

impl MonitorProduct {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn memory(&self, n: usize) -> usize {
        self.nodes[n].memory
    }

    pub fn monitor_states(&self, n: usize) -> &[usize] {
        &self.nodes[n].states
    }

    pub fn flags(&self, n: usize) -> Flags {
        Flags::from_bits(self.nodes[n].flags)
    }

    /// Successor of `n` on env move `x`, if that move is part of the product.
    pub fn successor(&self, n: usize, x: EnvMove) -> Option<usize> {
        self.edges[n].iter().find(|e| e.1 == x).map(|e| e.0)
    }

    /// Env moves available at `n` with their successors.
    pub fn moves(&self, n: usize) -> impl Iterator<Item = (EnvMove, usize)> + '_ {
        self.edges[n].iter().map(|&(j, x, _)| (x, j))
    }

    fn path_to(&self, mut n: usize) -> (Vec<EnvMove>, Vec<Letter>) {
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        while let Some((p, x, z)) = self.parent[n] {
            xs.push(x);
            zs.push(z);
            n = p;
        }
        xs.reverse();
        zs.reverse();
        (xs, zs)
    }

    /// Non-trivial strongly connected components.
    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.nodes.len(), 0);
        for _ in 0..self.nodes.len() {
            g.add_node(());
        }
        for (i, out) in self.edges.iter().enumerate() {
            for &(j, _, _) in out {
                g.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
            }
        }
        tarjan_scc(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|n| n.index()).collect::<Vec<_>>())
            .filter(|c| c.len() > 1 || self.edges[c[0]].iter().any(|&(j, _, _)| j == c[0]))
            .collect()
    }

    /// Shortest cycle from `n` back to itself inside `scc`.
    fn cycle_at(&self, n: usize, scc: &[usize]) -> (Vec<EnvMove>, Vec<Letter>) {
        let members: std::collections::HashSet<usize> = scc.iter().copied().collect();
        let mut parent: HashMap<usize, (usize, EnvMove, Letter)> = HashMap::new();
        let mut queue = VecDeque::from([n]);
        while let Some(i) = queue.pop_front() {
            for &(j, x, z) in &self.edges[i] {
                if !members.contains(&j) {
                    continue;
                }
                if j == n {
                    let mut xs = vec![x];
                    let mut zs = vec![z];
                    let mut k = i;
                    while k != n {
                        let (p, x, z) = parent[&k];
                        xs.push(x);
                        zs.push(z);
                        k = p;
                    }
                    xs.reverse();
                    zs.reverse();
                    return (xs, zs);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(j) {
                    e.insert((i, x, z));
                    queue.push_back(j);
                }
            }
        }
        unreachable!("node {n} lies on no cycle of its component")
    }

    fn lasso(&self, reason: FailReason, n: usize, scc: &[usize]) -> Counterexample {
        let (prefix, prefix_letters) = self.path_to(n);
        let (mut cycle, mut cycle_letters) = self.cycle_at(n, scc);
        let (mut prefix, mut prefix_letters) = (prefix, prefix_letters);
        // roll the cycle back over a matching prefix end; same infinite play
        while !prefix.is_empty()
            && prefix.last() == cycle.last()
            && prefix_letters.last() == cycle_letters.last()
        {
            prefix.pop();
            prefix_letters.pop();
            cycle.rotate_right(1);
            cycle_letters.rotate_right(1);
        }
        Counterexample {
            reason,
            prefix,
            cycle,
            prefix_letters,
            cycle_letters,
        }
    }
}

/// The full product of `strategy` with the monitors of the spec components
/// that are present, over all environment moves.
pub fn build_monitor(strategy: &MealyStrategy, spec: &ProblemSpec, limits: &Limits) -> Result<MonitorProduct> {
    if strategy.atoms() != &spec.atoms {
        return Err(Error::AlphabetMismatch(format!(
            "strategy over {} but spec over {}",
            strategy.atoms(),
            spec.atoms
        )));
    }
    let monitors = Monitors::new(spec, limits)?;
    explore(strategy, &monitors, false, limits)
}

/// Checks that every play of `strategy` allowed by the regime of `spec`
/// satisfies the task (under Env, or the implication Env → Task).
pub fn verify(strategy: &MealyStrategy, spec: &ProblemSpec, limits: &Limits) -> Result<VerifyReport> {
    if strategy.atoms() != &spec.atoms {
        return Err(Error::AlphabetMismatch(format!(
            "strategy over {} but spec over {}",
            strategy.atoms(),
            spec.atoms
        )));
    }
    spec.validate()?;
    let regime = Regime::for_spec(spec);
    let monitors = Monitors::new(spec, limits)?;
    let restricted = regime == Regime::EnvRestricted;
    if restricted && !monitors.initial_allowed() {
        // no environment behaviour satisfies Env
        return Ok(VerifyReport {
            regime,
            verdict: VerifyVerdict::Pass,
            explored: 0,
        });
    }
    let ex = explore(strategy, &monitors, restricted, limits)?;
    let cycles = ex.cycles();
    let mut scc_of = vec![usize::MAX; ex.nodes.len()];
    for (c, members) in cycles.iter().enumerate() {
        for &n in members {
            scc_of[n] = c;
        }
    }
    let has_task_reach = spec.task_reach.is_some();
    let has_task_safe = spec.task_safe.is_some();
    let has_env_safe = spec.env_safe.is_some();
    let verdict = match regime {
        Regime::EnvRestricted => {
            let bad_safety = (0..ex.nodes.len())
                .find(|&n| ex.nodes[n].flags & TASK_SAFE_VIOLATED != 0)
                .map(|bad| {
                    // extend the violating prefix to any reachable cycle
                    let (n, c) = first_cycle_from(&ex, bad, &scc_of);
                    (FailReason::TaskSafetyViolated, n, c)
                });
            let bad_reach = || {
                if !has_task_reach {
                    return None;
                }
                cycles
                    .iter()
                    .enumerate()
                    .find(|(_, c)| ex.nodes[c[0]].flags & TASK_REACHED == 0)
                    .map(|(i, c)| (FailReason::TaskReachMissed, closest(c), i))
            };
            match bad_safety.or_else(bad_reach) {
                Some((reason, n, c)) => VerifyVerdict::Fail(ex.lasso(reason, n, &cycles[c])),
                None => VerifyVerdict::Pass,
            }
        }
        Regime::Implication => {
            let holds = |f: u8| {
                let env_broken = has_env_safe && f & ENV_SAFE_VIOLATED != 0;
                let env_missed = f & ENV_REACH_REACHED == 0;
                let task_reached = !has_task_reach || f & TASK_REACHED != 0;
                let task_safe = !has_task_safe || f & TASK_SAFE_VIOLATED == 0;
                env_broken || env_missed || (task_reached && task_safe)
            };
            match cycles
                .iter()
                .enumerate()
                .find(|(_, c)| !holds(ex.nodes[c[0]].flags))
            {
                Some((i, c)) => {
                    let reason = if ex.nodes[c[0]].flags & TASK_SAFE_VIOLATED != 0 {
                        FailReason::TaskSafetyViolated
                    } else {
                        FailReason::TaskReachMissed
                    };
                    VerifyVerdict::Fail(ex.lasso(reason, closest(c), &cycles[i]))
                }
                None => VerifyVerdict::Pass,
            }
        }
    };
    Ok(VerifyReport {
        regime,
        verdict,
        explored: ex.nodes.len(),
    })
}

/// Member of `scc` with the shortest path from the start.
fn closest(scc: &[usize]) -> usize {
    // nodes are numbered breadth-first, so the smallest id is closest
    *scc.iter().min().unwrap()
}

/// A node on a cycle reachable from `from`, with the index of its component.
fn first_cycle_from(ex: &MonitorProduct, from: usize, scc_of: &[usize]) -> (usize, usize) {
    let mut seen = vec![false; ex.nodes.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(i) = queue.pop_front() {
        if scc_of[i] != usize::MAX {
            return (i, scc_of[i]);
        }
        for &(j, _, _) in &ex.edges[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    unreachable!("every explored node has a successor")
}

/// Outcome counts of random plays for one kind of environment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnvStats {
    pub episodes: usize,
    pub task_safe_violations: usize,
    pub task_reached: usize,
    pub env_safe_violations: usize,
    pub env_reach_reached: usize,
    /// Plays whose prefix already fails the task for every continuation by
    /// this kind of environment.
    pub definite_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationReport {
    pub regime: Regime,
    pub horizon: usize,
    /// Environment picking moves uniformly at random.
    pub uniform: EnvStats,
    /// Environment picking uniformly among moves that keep it in the winning
    /// region of its safety monitor.
    pub region: EnvStats,
}

/// Plays `episodes` random games of `horizon` steps against two kinds of
/// environment.
pub fn simulate_random(
    strategy: &MealyStrategy,
    spec: &ProblemSpec,
    episodes: usize,
    horizon: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SimulationReport> {
    if strategy.atoms() != &spec.atoms {
        return Err(Error::AlphabetMismatch(format!(
            "strategy over {} but spec over {}",
            strategy.atoms(),
            spec.atoms
        )));
    }
    let regime = Regime::for_spec(spec);
    let monitors = Monitors::new(spec, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nx = spec.atoms.num_env_moves() as EnvMove;
    let mut uniform = EnvStats::default();
    let mut region = EnvStats::default();
    for _ in 0..episodes {
        for restricted in [false, true] {
            if restricted && !monitors.initial_allowed() {
                continue;
            }
            let stats = if restricted { &mut region } else { &mut uniform };
            let mut m = strategy.initial();
            let mut states = monitors.initial();
            let mut flags = monitors.flags(&states);
            for _ in 0..horizon {
                let y = strategy.output(m);
                let choices: Vec<EnvMove> = (0..nx)
                    .filter(|&x| !restricted || monitors.allowed(&states, spec.atoms.letter(y, x)))
                    .collect();
                let x = choices[rng.gen_range(0..choices.len())];
                states = monitors.step(&states, spec.atoms.letter(y, x));
                flags |= monitors.flags(&states);
                m = strategy.update(m, x);
            }
            stats.episodes += 1;
            let has = |bit: u8| flags & bit != 0;
            stats.task_safe_violations += has(TASK_SAFE_VIOLATED) as usize;
            stats.task_reached += has(TASK_REACHED) as usize;
            stats.env_safe_violations += has(ENV_SAFE_VIOLATED) as usize;
            stats.env_reach_reached += has(ENV_REACH_REACHED) as usize;
            let definite = restricted
                && has(TASK_SAFE_VIOLATED)
                && (regime == Regime::EnvRestricted || has(ENV_REACH_REACHED));
            stats.definite_violations += definite as usize;
        }
    }
    Ok(SimulationReport {
        regime,
        horizon,
        uniform,
        region,
    })
}

/// Evaluates the spec's Env → Task on a lasso using the monitors; used by
/// tests and the CLI to double-check counterexamples.
pub fn lasso_satisfies(
    spec: &ProblemSpec,
    prefix: &[Letter],
    cycle: &[Letter],
    limits: &Limits,
) -> Result<bool> {
    let t = Formula::True;
    let check = |mode, f: Option<&Formula>| -> Result<bool> {
        let da = convert_da(mode, f.unwrap_or(&t), &spec.atoms, limits)?;
        Ok(da.accepts_lasso(prefix, cycle))
    };
    let env = check(Quantifier::Forall, spec.env_safe.as_ref())?
        && check(Quantifier::Exists, spec.env_reach.as_ref())?;
    let task = check(Quantifier::Exists, spec.task_reach.as_ref())?
        && check(Quantifier::Forall, spec.task_safe.as_ref())?;
    Ok(!env || task)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, AtomPartition};
    use crate::synthesis::synthesize;

    fn spec(env_safe: Option<&str>, env_reach: Option<&str>, reach: Option<&str>, safe: Option<&str>) -> ProblemSpec {
        let a = AtomPartition::new(["y"], ["x"]).unwrap();
        ProblemSpec::parse(a, env_safe, env_reach, reach, safe).unwrap()
    }

    #[test]
    fn constant_strategy_checks() {
        let s = spec(None, None, Some("F y"), None);
        let yes = MealyStrategy::constant(&s.atoms, 1);
        let no = MealyStrategy::constant(&s.atoms, 0);
        assert!(verify(&yes, &s, &Limits::default()).unwrap().passed());
        let r = verify(&no, &s, &Limits::default()).unwrap();
        let VerifyVerdict::Fail(cx) = r.verdict else { panic!() };
        assert_eq!(cx.reason, FailReason::TaskReachMissed);
        assert!(!cx.cycle.is_empty());
        assert!(!lasso_satisfies(&s, &cx.prefix_letters, &cx.cycle_letters, &Limits::default()).unwrap());
    }

    #[test]
    fn env_restriction_matters() {
        // with x guaranteed, copying is safe
        let s = spec(Some("G x"), None, None, Some("G (y -> x)"));
        let yes = MealyStrategy::constant(&s.atoms, 1);
        assert!(verify(&yes, &s, &Limits::default()).unwrap().passed());
        let free = spec(None, None, None, Some("G (y -> x)"));
        let r = verify(&yes, &free, &Limits::default()).unwrap();
        let VerifyVerdict::Fail(cx) = r.verdict else { panic!() };
        assert_eq!(cx.reason, FailReason::TaskSafetyViolated);
        assert_eq!((cx.prefix.len(), cx.cycle), (0, vec![0]));
    }

    #[test]
    fn implication_regime() {
        let s = spec(None, Some("F x"), Some("F (x & y)"), None);
        let yes = MealyStrategy::constant(&s.atoms, 1);
        let r = verify(&yes, &s, &Limits::default()).unwrap();
        assert_eq!(r.regime, Regime::Implication);
        assert!(r.passed());
        let no = MealyStrategy::constant(&s.atoms, 0);
        let VerifyVerdict::Fail(cx) = verify(&no, &s, &Limits::default()).unwrap().verdict else {
            panic!()
        };
        assert!(!lasso_satisfies(&s, &cx.prefix_letters, &cx.cycle_letters, &Limits::default()).unwrap());
    }

    #[test]
    fn synthesized_strategies_pass() {
        let a = AtomPartition::new(["y"], ["x"]).unwrap();
        let p = |t: &str| parse(t, &a).unwrap();
        let specs = [
            ProblemSpec::new(a.clone()).with_task_reach(p("F (y & X y)")),
            ProblemSpec::new(a.clone())
                .with_env_safe(p("G (y -> N x)"))
                .with_task_reach(p("F (y & X x)")),
            ProblemSpec::new(a.clone())
                .with_env_reach(p("F x"))
                .with_task_reach(p("F y"))
                .with_task_safe(p("!y & G (X y -> x)")),
        ];
        for s in &specs {
            let out = synthesize(s, &Limits::default()).unwrap();
            let m = out.strategy.expect("realizable");
            assert!(verify(&m, s, &Limits::default()).unwrap().passed(), "{:?}", s);
            let sim = simulate_random(&m, s, 20, 12, 7, &Limits::default()).unwrap();
            assert_eq!(sim.region.definite_violations, 0);
            assert_eq!(sim.region.episodes, 20);
        }
    }
}
