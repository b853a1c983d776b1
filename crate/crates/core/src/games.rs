//! Reachability and safety games on arenas where the agent picks its move
//! `Y` first and the environment answers with `X`.

use crate::automata::{StateSet, TransitionSystem};
use crate::logic::{AgentMove, EnvMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Agent,
    Env,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Agent => Player::Env,
            Player::Env => Player::Agent,
        }
    }
}

/// Agent move per arena state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentPositional {
    moves: Vec<AgentMove>,
}

impl AgentPositional {
    pub fn new(moves: Vec<AgentMove>) -> Self {
        Self { moves }
    }

    pub fn get(&self, q: usize) -> AgentMove {
        self.moves[q]
    }

    pub fn moves(&self) -> &[AgentMove] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Environment answer per arena state and agent move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvPositional {
    agent_moves: usize,
    moves: Vec<EnvMove>,
}

impl EnvPositional {
    pub fn new(agent_moves: usize, moves: Vec<EnvMove>) -> Self {
        Self { agent_moves, moves }
    }

    pub fn get(&self, q: usize, y: AgentMove) -> EnvMove {
        self.moves[q * self.agent_moves + y as usize]
    }

    pub fn num_states(&self) -> usize {
        self.moves.len() / self.agent_moves
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Agent(AgentPositional),
    Env(EnvPositional),
}

impl Strategy {
    pub fn as_agent(&self) -> Option<&AgentPositional> {
        match self {
            Strategy::Agent(s) => Some(s),
            Strategy::Env(_) => None,
        }
    }

    pub fn as_env(&self) -> Option<&EnvPositional> {
        match self {
            Strategy::Env(s) => Some(s),
            Strategy::Agent(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub winning: StateSet,
    pub strategy: Strategy,
    /// Reach games: the fixpoint layer in which the state was first added.
    /// Safety games: 0 on the winning region. `None` off the winning region.
    pub rank: Vec<Option<u32>>,
    /// Number of fixpoint rounds until stabilization.
    pub iterations: usize,
}

impl SolveResult {
    pub fn wins(&self, q: usize) -> bool {
        self.winning.contains(q)
    }
}

/// States from which some agent move forces the next state into `e`.
pub fn pre_agent(ts: &TransitionSystem, e: &StateSet) -> StateSet {
    let (ny, nx) = moves(ts);
    let mut out = ts.empty_set();
    for q in 0..ts.num_states() {
        if (0..ny).any(|y| (0..nx).all(|x| e.contains(ts.step_moves(q, y, x)))) {
            out.insert(q);
        }
    }
    out
}

/// States where every agent move has an environment answer landing in `e`.
pub fn pre_env(ts: &TransitionSystem, e: &StateSet) -> StateSet {
    let (ny, nx) = moves(ts);
    let mut out = ts.empty_set();
    for q in 0..ts.num_states() {
        if (0..ny).all(|y| (0..nx).any(|x| e.contains(ts.step_moves(q, y, x)))) {
            out.insert(q);
        }
    }
    out
}

fn moves(ts: &TransitionSystem) -> (u32, u32) {
    (
        ts.atoms().num_agent_moves() as u32,
        ts.atoms().num_env_moves() as u32,
    )
}

/// Predecessors as (source, agent move) pairs per target, with one entry per
/// environment answer leading there.
struct Preds {
    offsets: Vec<usize>,
    entries: Vec<u32>,
}

impl Preds {
    fn new(ts: &TransitionSystem) -> Self {
        let n = ts.num_states();
        let ny = ts.atoms().num_agent_moves();
        let mut offsets = vec![0usize; n + 1];
        for q in 0..n {
            for &t in ts.row(q) {
                offsets[t as usize + 1] += 1;
            }
        }
        for i in 1..=n {
            offsets[i] += offsets[i - 1];
        }
        let mut fill = offsets.clone();
        let mut entries = vec![0u32; offsets[n]];
        for q in 0..n {
            for (z, &t) in ts.row(q).iter().enumerate() {
                let y = ts.atoms().agent_part(z as u32) as usize;
                entries[fill[t as usize]] = (q * ny + y) as u32;
                fill[t as usize] += 1;
            }
        }
        Self { offsets, entries }
    }

    fn of(&self, t: usize) -> &[u32] {
        &self.entries[self.offsets[t]..self.offsets[t + 1]]
    }
}

/// Least fixpoint `Z_{i+1} = Z_i ∪ Pre(Z_i)` from `Z_0 = target`, for the
/// given protagonist. Strategies choose the smallest move that enters a
/// strictly lower layer; states off the region or in the target get the
/// smallest move.
pub fn solve_reach(ts: &TransitionSystem, target: &StateSet, protagonist: Player) -> SolveResult {
    let n = ts.num_states();
    let (ny, nx) = moves(ts);
    let nyu = ny as usize;
    let preds = Preds::new(ts);
    let mut rank: Vec<Option<u32>> = vec![None; n];
    let mut winning = ts.empty_set();
    let mut frontier: Vec<usize> = Vec::new();
    for q in target.ones().filter(|&q| q < n) {
        winning.insert(q);
        rank[q] = Some(0);
        frontier.push(q);
    }
    // Agent: per (q, y) the number of answers still outside Z.
    // Env: per (q, y) whether some answer already enters Z, and per q the
    // number of agent moves not yet covered.
    let mut outside = vec![nx; if protagonist == Player::Agent { n * nyu } else { 0 }];
    let mut covered = vec![false; if protagonist == Player::Env { n * nyu } else { 0 }];
    let mut uncovered = vec![ny; if protagonist == Player::Env { n } else { 0 }];
    let mut iterations = 1;
    let mut layer = 0u32;
    let mut candidates: Vec<usize> = Vec::new();
    while !frontier.is_empty() {
        candidates.clear();
        for &t in &frontier {
            for &e in preds.of(t) {
                let (q, y) = (e as usize / nyu, e as usize % nyu);
                if winning.contains(q) {
                    continue;
                }
                match protagonist {
                    Player::Agent => {
                        outside[e as usize] -= 1;
                        if outside[e as usize] == 0 {
                            candidates.push(q);
                        }
                    }
                    Player::Env => {
                        if !covered[q * nyu + y] {
                            covered[q * nyu + y] = true;
                            uncovered[q] -= 1;
                            if uncovered[q] == 0 {
                                candidates.push(q);
                            }
                        }
                    }
                }
            }
        }
        layer += 1;
        iterations += 1;
        frontier.clear();
        for &q in &candidates {
            if !winning.put(q) {
                rank[q] = Some(layer);
                frontier.push(q);
            }
        }
    }

    let below = |t: usize, r: u32| matches!(rank[t], Some(rt) if rt < r);
    let strategy = match protagonist {
        Player::Agent => {
            let mut mv = vec![0; n];
            for q in 0..n {
                if let Some(r) = rank[q].filter(|&r| r > 0) {
                    mv[q] = (0..ny)
                        .find(|&y| (0..nx).all(|x| below(ts.step_moves(q, y, x), r)))
                        .expect("a layer state has a move into lower layers");
                }
            }
            Strategy::Agent(AgentPositional::new(mv))
        }
        Player::Env => {
            let mut mv = vec![0; n * nyu];
            for q in 0..n {
                if let Some(r) = rank[q].filter(|&r| r > 0) {
                    for y in 0..ny {
                        mv[q * nyu + y as usize] = (0..nx)
                            .find(|&x| below(ts.step_moves(q, y, x), r))
                            .expect("a layer state answers every move into lower layers");
                    }
                }
            }
            Strategy::Env(EnvPositional::new(nyu, mv))
        }
    };
    SolveResult {
        winning,
        strategy,
        rank,
        iterations,
    }
}

/// Greatest fixpoint `Z_{i+1} = Z_i ∩ Pre(Z_i)` from `Z_0 = safe`, for the
/// given protagonist. Strategies choose the smallest move that stays in the
/// winning region; states off the region get the smallest move.
pub fn solve_safe(ts: &TransitionSystem, safe: &StateSet, protagonist: Player) -> SolveResult {
    let n = ts.num_states();
    let (ny, nx) = moves(ts);
    let nyu = ny as usize;
    let preds = Preds::new(ts);
    let mut alive = ts.empty_set();
    for q in safe.ones().filter(|&q| q < n) {
        alive.insert(q);
    }
    // Agent: per (q, y) answers leaving Z, per q moves with none leaving.
    // Env: per (q, y) answers staying in Z.
    let mut count = vec![0u32; n * nyu];
    let mut good = vec![0u32; n];
    let mut frontier: Vec<usize> = Vec::new();
    for q in alive.ones() {
        for y in 0..ny {
            let stay = (0..nx)
                .filter(|&x| alive.contains(ts.step_moves(q, y, x)))
                .count() as u32;
            match protagonist {
                Player::Agent => {
                    count[q * nyu + y as usize] = nx - stay;
                    good[q] += (stay == nx) as u32;
                }
                Player::Env => count[q * nyu + y as usize] = stay,
            }
        }
        let doomed = match protagonist {
            Player::Agent => good[q] == 0,
            Player::Env => (0..nyu).any(|y| count[q * nyu + y] == 0),
        };
        if doomed {
            frontier.push(q);
        }
    }
    let mut iterations = 1;
    let mut next: Vec<usize> = Vec::new();
    while !frontier.is_empty() {
        iterations += 1;
        for &q in &frontier {
            alive.set(q, false);
        }
        next.clear();
        for &t in &frontier {
            for &e in preds.of(t) {
                let q = e as usize / nyu;
                if !alive.contains(q) {
                    continue;
                }
                let c = &mut count[e as usize];
                match protagonist {
                    Player::Agent => {
                        *c += 1;
                        if *c == 1 {
                            good[q] -= 1;
                            if good[q] == 0 {
                                next.push(q);
                            }
                        }
                    }
                    Player::Env => {
                        *c -= 1;
                        if *c == 0 {
                            next.push(q);
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        std::mem::swap(&mut frontier, &mut next);
    }

    let winning = alive;
    let strategy = match protagonist {
        Player::Agent => {
            let mut mv = vec![0; n];
            for q in winning.ones() {
                mv[q] = (0..ny)
                    .find(|&y| (0..nx).all(|x| winning.contains(ts.step_moves(q, y, x))))
                    .expect("a safe state has a move staying safe");
            }
            Strategy::Agent(AgentPositional::new(mv))
        }
        Player::Env => {
            let mut mv = vec![0; n * nyu];
            for q in winning.ones() {
                for y in 0..ny {
                    mv[q * nyu + y as usize] = (0..nx)
                        .find(|&x| winning.contains(ts.step_moves(q, y, x)))
                        .expect("a safe state answers every move safely");
                }
            }
            Strategy::Env(EnvPositional::new(nyu, mv))
        }
    };
    let rank = (0..n)
        .map(|q| winning.contains(q).then_some(0))
        .collect();
    SolveResult {
        winning,
        strategy,
        rank,
        iterations,
    }
}

/// Successors of `q` when the protagonist follows `strategy` and the
/// opponent plays anything.
pub fn strategy_successors(ts: &TransitionSystem, strategy: &Strategy, q: usize) -> Vec<usize> {
    let (ny, nx) = moves(ts);
    let mut out: Vec<usize> = match strategy {
        Strategy::Agent(f) => (0..nx).map(|x| ts.step_moves(q, f.get(q), x)).collect(),
        Strategy::Env(f) => (0..ny).map(|y| ts.step_moves(q, y, f.get(q, y))).collect(),
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Checks that a safety solution is closed: every winning state is in
/// `safe` and all successors under the strategy stay winning.
pub fn check_safe_closure(ts: &TransitionSystem, safe: &StateSet, res: &SolveResult) -> Result<(), String> {
    for q in res.winning.ones() {
        if !safe.contains(q) {
            return Err(format!("winning state {q} is not safe"));
        }
        if let Some(t) = strategy_successors(ts, &res.strategy, q)
            .into_iter()
            .find(|&t| !res.winning.contains(t))
        {
            return Err(format!("strategy leaves the winning region from {q} to {t}"));
        }
    }
    Ok(())
}

/// Checks that a reachability solution makes progress: target states have
/// rank 0, every other winning state has all strategy successors at a
/// strictly smaller rank.
pub fn check_reach_progress(
    ts: &TransitionSystem,
    target: &StateSet,
    res: &SolveResult,
) -> Result<(), String> {
    for q in 0..ts.num_states() {
        let in_target = target.contains(q);
        match (res.rank[q], res.winning.contains(q)) {
            (None, false) if !in_target => {}
            (Some(0), true) if in_target => {}
            (Some(r), true) if r > 0 && !in_target => {
                for t in strategy_successors(ts, &res.strategy, q) {
                    match res.rank[t] {
                        Some(rt) if rt < r => {}
                        other => {
                            return Err(format!(
                                "successor {t} of {q} (rank {r}) has rank {other:?}"
                            ))
                        }
                    }
                }
            }
            (rank, win) => {
                return Err(format!(
                    "state {q}: rank {rank:?}, winning {win}, target {in_target}"
                ))
            }
        }
    }
    Ok(())
}
