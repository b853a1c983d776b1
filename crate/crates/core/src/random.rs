//! Random formulas, arenas and specs for testing and benchmarking.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::TransitionSystem;
use crate::logic::{AtomPartition, EnvMove, Formula};
use crate::synthesis::{EnvShape, ProblemSpec, Shape, TaskShape};

/// A formula of nesting depth at most `depth` over `atoms` (which must be
/// non-empty).
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, atoms: &[String], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            2 => Formula::Last,
            _ => Formula::atom(atoms.choose(rng).unwrap().as_str()),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..11) {
        0 => Formula::not(sub(rng)),
        1 => Formula::next(sub(rng)),
        2 => Formula::weak_next(sub(rng)),
        3 => Formula::eventually(sub(rng)),
        4 => Formula::globally(sub(rng)),
        5 => Formula::and(sub(rng), sub(rng)),
        6 => Formula::or(sub(rng), sub(rng)),
        7 => Formula::implies(sub(rng), sub(rng)),
        8 => Formula::iff(sub(rng), sub(rng)),
        9 => Formula::until(sub(rng), sub(rng)),
        _ => Formula::release(sub(rng), sub(rng)),
    }
}

/// A transition system with `n` states and uniformly random successors.
pub fn random_arena<R: Rng + ?Sized>(rng: &mut R, atoms: &AtomPartition, n: usize) -> TransitionSystem {
    let k = atoms.num_letters();
    let delta = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    TransitionSystem::new(atoms.clone(), n, 0, delta).expect("valid random arena")
}

pub fn random_env_moves<R: Rng + ?Sized>(rng: &mut R, atoms: &AtomPartition, len: usize) -> Vec<EnvMove> {
    let nx = atoms.num_env_moves() as EnvMove;
    (0..len).map(|_| rng.gen_range(0..nx)).collect()
}

/// A spec of the given shape with random formulas of depth at most `depth`.
/// Safety components are wrapped in `G` and reach components in `F` half of
/// the time. Env formulas mention only environment atoms half of the time,
/// since Envs over agent atoms are mostly inconsistent.
pub fn random_spec<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &AtomPartition,
    shape: Shape,
    depth: usize,
) -> ProblemSpec {
    let names: Vec<String> = atoms.agent().iter().chain(atoms.env()).cloned().collect();
    let env_names: Vec<String> = atoms.env().to_vec();
    let gen = |rng: &mut R, wrap: fn(Formula) -> Formula, env: bool| {
        let pool = if env && !env_names.is_empty() && rng.gen_bool(0.5) {
            &env_names
        } else {
            &names
        };
        let f = random_formula(rng, pool, depth);
        if rng.gen_bool(0.5) {
            wrap(f)
        } else {
            f
        }
    };
    let mut spec = ProblemSpec::new(atoms.clone());
    if matches!(shape.env, EnvShape::Safe | EnvShape::SafeReach) {
        spec.env_safe = Some(gen(rng, Formula::globally, true));
    }
    if matches!(shape.env, EnvShape::Reach | EnvShape::SafeReach) {
        spec.env_reach = Some(gen(rng, Formula::eventually, true));
    }
    if matches!(shape.task, TaskShape::Reach | TaskShape::ReachSafe) {
        spec.task_reach = Some(gen(rng, Formula::eventually, false));
    }
    if matches!(shape.task, TaskShape::Safe | TaskShape::ReachSafe) {
        spec.task_safe = Some(gen(rng, Formula::globally, false));
    }
    spec
}
