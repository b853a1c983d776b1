use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::logic::{AtomPartition, Letter};
use crate::{Error, Result};

/// A set of states of one transition system.
pub type StateSet = FixedBitSet;

pub const DEFAULT_STATE_CAP: usize = 200_000;

/// Environment variable overriding [`DEFAULT_STATE_CAP`].
pub const STATE_CAP_VAR: &str = "FINSYNTH_STATE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_STATE_CAP,
        }
    }
}

impl Limits {
    /// Default limits, with the cap taken from `FINSYNTH_STATE_CAP` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(STATE_CAP_VAR) {
            Ok(v) => {
                let max_states = v.trim().parse().map_err(|_| {
                    Error::Spec(format!("{STATE_CAP_VAR} must be a positive integer, got `{v}`"))
                })?;
                Ok(Self { max_states })
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(&self, states: usize, what: &str) -> Result<()> {
        if states > self.max_states {
            return Err(Error::StateLimit {
                limit: self.max_states,
                what: what.to_string(),
            });
        }
        Ok(())
    }
}

/// Builds a set over `n` states from the given members.
pub fn set_from<I: IntoIterator<Item = usize>>(n: usize, members: I) -> StateSet {
    let mut s = FixedBitSet::with_capacity(n);
    for q in members {
        s.insert(q);
    }
    s
}

/// Deterministic, total transition system `(Σ, Q, ι, δ)` with `Σ = 2^P`.
///
/// `δ` is stored as one row of `2^|P|` successors per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    atoms: AtomPartition,
    initial: usize,
    num_letters: usize,
    delta: Vec<u32>,
}

impl TransitionSystem {
    pub fn new(
        atoms: AtomPartition,
        num_states: usize,
        initial: usize,
        delta: Vec<usize>,
    ) -> Result<Self> {
        let k = atoms.num_letters();
        if num_states == 0 {
            return Err(Error::InvalidSystem("no states".into()));
        }
        if initial >= num_states {
            return Err(Error::InvalidSystem(format!(
                "initial state {initial} out of range"
            )));
        }
        if delta.len() != num_states * k {
            return Err(Error::InvalidSystem(format!(
                "expected {} transitions, got {}",
                num_states * k,
                delta.len()
            )));
        }
        if let Some(bad) = delta.iter().find(|&&t| t >= num_states) {
            return Err(Error::InvalidSystem(format!("target {bad} out of range")));
        }
        Ok(Self {
            atoms,
            initial,
            num_letters: k,
            delta: delta.into_iter().map(|t| t as u32).collect(),
        })
    }

    /// Builds a system by querying `step(state, letter)` for every pair.
    pub fn from_fn<F>(atoms: AtomPartition, num_states: usize, initial: usize, mut step: F) -> Result<Self>
    where
        F: FnMut(usize, Letter) -> usize,
    {
        let k = atoms.num_letters();
        let mut delta = Vec::with_capacity(num_states * k);
        for q in 0..num_states {
            for z in 0..k {
                delta.push(step(q, z as Letter));
            }
        }
        Self::new(atoms, num_states, initial, delta)
    }

    pub(crate) fn from_raw(atoms: AtomPartition, initial: usize, delta: Vec<u32>) -> Self {
        let num_letters = atoms.num_letters();
        debug_assert_eq!(delta.len() % num_letters, 0);
        Self {
            atoms,
            initial,
            num_letters,
            delta,
        }
    }

    pub fn atoms(&self) -> &AtomPartition {
        &self.atoms
    }

    pub fn num_states(&self) -> usize {
        self.delta.len() / self.num_letters
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: usize, z: Letter) -> usize {
        self.delta[q * self.num_letters + z as usize] as usize
    }

    /// Successor after the agent plays `y` and the environment answers `x`.
    #[inline]
    pub fn step_moves(&self, q: usize, y: u32, x: u32) -> usize {
        self.step(q, self.atoms.letter(y, x))
    }

    /// Successors of `q`, indexed by letter.
    pub fn row(&self, q: usize) -> &[u32] {
        &self.delta[q * self.num_letters..(q + 1) * self.num_letters]
    }

    /// States visited on `word` from `from`, including `from` itself.
    pub fn run(&self, from: usize, word: &[Letter]) -> Vec<usize> {
        let mut out = Vec::with_capacity(word.len() + 1);
        let mut q = from;
        out.push(q);
        for &z in word {
            q = self.step(q, z);
            out.push(q);
        }
        out
    }

    pub fn empty_set(&self) -> StateSet {
        FixedBitSet::with_capacity(self.num_states())
    }

    pub fn full_set(&self) -> StateSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn complement(&self, set: &StateSet) -> StateSet {
        let mut s = set.clone();
        s.toggle_range(..);
        s
    }

    pub fn reachable(&self) -> StateSet {
        let mut seen = self.empty_set();
        let mut queue = VecDeque::from([self.initial]);
        seen.insert(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in self.row(q) {
                if !seen.put(t as usize) {
                    queue.push_back(t as usize);
                }
            }
        }
        seen
    }

    /// Renumbers states in breadth-first order from the initial state,
    /// dropping unreachable ones. Returns the map old → new.
    pub fn bfs_renumber(&self) -> (Self, Vec<Option<usize>>) {
        let n = self.num_states();
        let mut map = vec![None; n];
        let mut order = Vec::new();
        map[self.initial] = Some(0);
        order.push(self.initial);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in self.row(q) {
                let t = t as usize;
                if map[t].is_none() {
                    map[t] = Some(order.len());
                    order.push(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(order.len() * self.num_letters);
        for &q in &order {
            delta.extend(self.row(q).iter().map(|&t| map[t as usize].unwrap() as u32));
        }
        (Self::from_raw(self.atoms.clone(), 0, delta), map)
    }

    /// Whether any transition enters the initial state.
    pub fn initial_reentered(&self) -> bool {
        self.delta.iter().any(|&t| t as usize == self.initial)
    }

    /// Each state paired with the letters leading to each distinct successor.
    pub fn grouped_edges(&self, q: usize) -> Vec<(usize, Vec<Letter>)> {
        let mut groups: Vec<(usize, Vec<Letter>)> = Vec::new();
        let mut index: HashMap<usize, usize> = HashMap::new();
        for (z, &t) in self.row(q).iter().enumerate() {
            let t = t as usize;
            let slot = *index.entry(t).or_insert_with(|| {
                groups.push((t, Vec::new()));
                groups.len() - 1
            });
            groups[slot].1.push(z as Letter);
        }
        groups
    }
}

/// Deterministic finite automaton `(D, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub ts: TransitionSystem,
    pub finals: StateSet,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.ts.num_states()
    }

    pub fn num_finals(&self) -> usize {
        self.finals.count_ones(..)
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(q)
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let q = word.iter().fold(self.ts.initial(), |q, &z| self.ts.step(q, z));
        self.finals.contains(q)
    }
}

/// Clones the initial state if some transition re-enters it, so that the
/// result has an initial state without incoming edges. The language is
/// unchanged; the clone becomes state 0.
pub fn make_initial_nonreentrant(m: &Dfa) -> Dfa {
    if !m.ts.initial_reentered() {
        return m.clone();
    }
    let n = m.num_states();
    let mut delta = m.ts.delta.clone();
    delta.extend_from_slice(m.ts.row(m.ts.initial()));
    let raw = TransitionSystem::from_raw(m.ts.atoms().clone(), n, delta);
    let (ts, map) = raw.bfs_renumber();
    let mut finals = ts.empty_set();
    for (old, new) in map.iter().enumerate() {
        let src = if old == n { m.ts.initial() } else { old };
        if let Some(new) = new {
            if m.finals.contains(src) {
                finals.insert(*new);
            }
        }
    }
    Dfa { ts, finals }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Some visited state (including the first) lies in the set.
    Reach(StateSet),
    /// Every visited state lies in the set.
    Safe(StateSet),
}

impl Objective {
    pub fn set(&self) -> &StateSet {
        match self {
            Objective::Reach(s) | Objective::Safe(s) => s,
        }
    }
}

/// Deterministic automaton on infinite words with a reach or safe condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAutomaton {
    pub ts: TransitionSystem,
    pub objective: Objective,
}

impl DetAutomaton {
    /// Acceptance of the ultimately periodic word `prefix · cycle^ω`.
    /// `cycle` must be non-empty.
    pub fn accepts_lasso(&self, prefix: &[Letter], cycle: &[Letter]) -> bool {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        let ts = &self.ts;
        let mut visited = ts.run(ts.initial(), prefix);
        let mut q = *visited.last().unwrap();
        let mut seen_cycle_starts = ts.empty_set();
        while !seen_cycle_starts.put(q) {
            let part = ts.run(q, cycle);
            q = *part.last().unwrap();
            visited.extend(part);
        }
        match &self.objective {
            Objective::Reach(t) => visited.iter().any(|&s| t.contains(s)),
            Objective::Safe(t) => visited.iter().all(|&s| t.contains(s)),
        }
    }
}
