//! Finite-state agent strategies: the agent's output depends on the memory
//! state, the environment's move updates the memory.

use std::collections::HashMap;
use std::fmt::Write;
use std::hash::Hash;

use serde_json::{json, Map, Value};

use crate::automata::TransitionSystem;
use crate::games::{AgentPositional, EnvPositional};
use crate::logic::{AgentMove, AtomPartition, EnvMove, Letter};
use crate::{Error, Result};

pub const FORMAT_VERSION: u64 = 1;

/// Strategy `(2^X)* → 2^Y` as a machine: `Y_0 = output(m_0)` and each
/// environment move `X_i` advances the memory before the next output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyStrategy {
    atoms: AtomPartition,
    output: Vec<AgentMove>,
    update: Vec<u32>,
}

/// One finite play: `outputs` has one more entry than `inputs`, the last one
/// being the agent's pending move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayRecord {
    pub outputs: Vec<AgentMove>,
    pub inputs: Vec<EnvMove>,
    pub letters: Vec<Letter>,
    pub states: Vec<usize>,
}

impl MealyStrategy {
    /// Builds a strategy from an arbitrary machine, exploring the memory
    /// states reachable from `init` in breadth-first order.
    pub fn from_machine<K, O, S>(atoms: &AtomPartition, init: K, mut out: O, mut step: S) -> Self
    where
        K: Clone + Eq + Hash,
        O: FnMut(&K) -> AgentMove,
        S: FnMut(&K, AgentMove, EnvMove) -> K,
    {
        let nx = atoms.num_env_moves();
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut keys = vec![init.clone()];
        index.insert(init, 0);
        let mut output = Vec::new();
        let mut update = Vec::new();
        let mut head = 0;
        while head < keys.len() {
            let key = keys[head].clone();
            head += 1;
            let y = out(&key);
            output.push(y);
            for x in 0..nx as EnvMove {
                let next = step(&key, y, x);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        keys.push(next.clone());
                        index.insert(next, keys.len() - 1);
                        keys.len() - 1
                    }
                };
                update.push(id as u32);
            }
        }
        Self {
            atoms: atoms.clone(),
            output,
            update,
        }
    }

    /// `Strategy(D_q, f)`: memory is the arena state, output `f(q)`, update
    /// `δ(q, f(q) ∪ X)`. Only states reachable under `f` are kept.
    pub fn from_positional(ts: &TransitionSystem, start: usize, f: &AgentPositional) -> Self {
        Self::from_machine(
            ts.atoms(),
            start,
            |&q| f.get(q),
            |&q, y, x| ts.step_moves(q, y, x),
        )
    }

    /// One-state strategy always playing `y`.
    pub fn constant(atoms: &AtomPartition, y: AgentMove) -> Self {
        Self::from_machine(atoms, (), |_| y, |_, _, _| ())
    }

    /// Validates raw tables and returns the canonical (breadth-first,
    /// pruned) form.
    pub fn new(
        atoms: AtomPartition,
        initial: usize,
        output: Vec<AgentMove>,
        update: Vec<usize>,
    ) -> Result<Self> {
        let n = output.len();
        let nx = atoms.num_env_moves();
        if n == 0 || initial >= n {
            return Err(Error::Document(format!("initial state {initial} out of range")));
        }
        if update.len() != n * nx {
            return Err(Error::Document("update table is not total".into()));
        }
        if let Some(&bad) = update.iter().find(|&&t| t >= n) {
            return Err(Error::Document(format!("target state {bad} out of range")));
        }
        if let Some(&bad) = output.iter().find(|&&y| y as usize >= atoms.num_agent_moves()) {
            return Err(Error::Document(format!("output {bad:#x} out of range")));
        }
        Ok(Self::from_machine(
            &atoms,
            initial,
            |&m| output[m],
            |&m, _, x| update[m * nx + x as usize],
        ))
    }

    pub fn atoms(&self) -> &AtomPartition {
        &self.atoms
    }

    pub fn num_states(&self) -> usize {
        self.output.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn output(&self, m: usize) -> AgentMove {
        self.output[m]
    }

    pub fn update(&self, m: usize, x: EnvMove) -> usize {
        self.update[m * self.atoms.num_env_moves() + x as usize] as usize
    }

    /// Plays the strategy against a fixed input sequence.
    pub fn run(&self, inputs: &[EnvMove]) -> PlayRecord {
        let mut m = self.initial();
        let mut rec = PlayRecord {
            outputs: vec![self.output(m)],
            inputs: inputs.to_vec(),
            letters: Vec::with_capacity(inputs.len()),
            states: vec![m],
        };
        for &x in inputs {
            rec.letters.push(self.atoms.letter(self.output(m), x));
            m = self.update(m, x);
            rec.outputs.push(self.output(m));
            rec.states.push(m);
        }
        rec
    }

    /// Plays the strategy against a positional environment strategy on an
    /// arena, for `steps` rounds.
    pub fn play_against(
        &self,
        ts: &TransitionSystem,
        env: &EnvPositional,
        steps: usize,
    ) -> PlayRecord {
        let mut q = ts.initial();
        let mut m = self.initial();
        let mut inputs = Vec::with_capacity(steps);
        for _ in 0..steps {
            let y = self.output(m);
            let x = env.get(q, y);
            inputs.push(x);
            q = ts.step_moves(q, y, x);
            m = self.update(m, x);
        }
        self.run(&inputs)
    }

    fn env_keys(&self) -> Vec<(String, EnvMove)> {
        let mut keys: Vec<(String, EnvMove)> = (0..self.atoms.num_env_moves() as EnvMove)
            .map(|x| (self.atoms.format_env_move(x), x))
            .collect();
        keys.sort();
        keys
    }

    /// Canonical JSON document: states by index, letters by sorted atoms.
    pub fn to_json(&self) -> String {
        let keys = self.env_keys();
        let mut output = Map::new();
        let mut delta = Map::new();
        for m in 0..self.num_states() {
            let names: Vec<&str> = self.atoms.agent_move_names(self.output(m));
            output.insert(m.to_string(), json!(names));
            let mut row = Map::new();
            for (key, x) in &keys {
                row.insert(key.clone(), json!(self.update(m, *x)));
            }
            delta.insert(m.to_string(), Value::Object(row));
        }
        let doc = json!({
            "version": FORMAT_VERSION,
            "atoms": {"agent": self.atoms.agent(), "env": self.atoms.env()},
            "states": self.num_states(),
            "initial": self.initial(),
            "output": output,
            "delta": delta,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::Document("expected a JSON object".into()))?;
        let version = obj
            .get("version")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Document("missing `version`".into()))?;
        if version != FORMAT_VERSION {
            return Err(Error::Version(version));
        }
        let atoms = parse_atoms(obj.get("atoms"))?;
        let n = get_usize(obj, "states")?;
        let initial = get_usize(obj, "initial")?;
        let outputs = obj
            .get("output")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Document("missing `output`".into()))?;
        let deltas = obj
            .get("delta")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Document("missing `delta`".into()))?;
        let nx = atoms.num_env_moves();
        let mut output = Vec::with_capacity(n);
        let mut update = vec![usize::MAX; n * nx];
        for m in 0..n {
            let key = m.to_string();
            let names = outputs
                .get(&key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Document(format!("missing output for state {m}")))?;
            let names = string_list(names)?;
            output.push(atoms.agent_move_from_names(&names)?);
            let row = deltas
                .get(&key)
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Document(format!("missing delta for state {m}")))?;
            for (letter, target) in row {
                let x = atoms.parse_env_move(letter)?;
                let target = target.as_u64().ok_or_else(|| {
                    Error::Document(format!("non-integer target in state {m}"))
                })? as usize;
                update[m * nx + x as usize] = target;
            }
            if let Some(x) = (0..nx).find(|&x| update[m * nx + x] == usize::MAX) {
                return Err(Error::MissingTransition {
                    state: m,
                    letter: atoms.format_env_move(x as EnvMove),
                });
            }
        }
        Self::new(atoms, initial, output, update)
    }

    /// DOT rendering: states labelled `idx / {outputs}`, edges by env letter.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n  rankdir=LR;\n  init [shape=point];\n");
        for m in 0..self.num_states() {
            writeln!(
                out,
                "  {m} [label=\"{m} / {{{}}}\"];",
                self.atoms.agent_move_names(self.output(m)).join(",")
            )
            .unwrap();
        }
        writeln!(out, "  init -> {};", self.initial()).unwrap();
        for m in 0..self.num_states() {
            for (key, x) in self.env_keys() {
                writeln!(out, "  {m} -> {} [label=\"{{{key}}}\"];", self.update(m, x)).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| Error::Document(format!("missing or invalid `{key}`")))
}

fn string_list(items: &[Value]) -> Result<Vec<String>> {
    items
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Document("expected a list of atom names".into()))
        })
        .collect()
}

fn parse_atoms(v: Option<&Value>) -> Result<AtomPartition> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Document("missing `atoms`".into()))?;
    let side = |key: &str| -> Result<Vec<String>> {
        match obj.get(key) {
            None => Ok(vec![]),
            Some(Value::Array(items)) => string_list(items),
            Some(_) => Err(Error::Document(format!("`atoms.{key}` must be a list"))),
        }
    };
    Ok(AtomPartition::new(side("agent")?, side("env")?)?)
}
