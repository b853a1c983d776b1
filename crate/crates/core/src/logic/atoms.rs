use std::collections::BTreeSet;
use std::fmt;

use super::LogicError;

/// A letter of the explicit alphabet `2^(Y ∪ X)`, packed as a bitset.
///
/// Agent atoms occupy the low bits in declaration order, environment atoms
/// follow. An agent move is the low part, an environment move the high part.
pub type Letter = u32;

/// Bitset over the agent atoms (`Y ⊆ 𝒴`).
pub type AgentMove = u32;

/// Bitset over the environment atoms (`X ⊆ 𝒳`).
pub type EnvMove = u32;

/// Upper bound on the number of declared atoms. Every state stores one
/// transition per letter, so this keeps arenas addressable.
pub const MAX_ATOMS: usize = 16;

const RESERVED: [&str; 9] = ["true", "false", "last", "X", "N", "U", "R", "F", "G"];

/// Propositions split into agent-controlled and environment-controlled sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AtomPartition {
    agent: Vec<String>,
    env: Vec<String>,
}

impl AtomPartition {
    pub fn new<A, E, S>(agent: A, env: E) -> Result<Self, LogicError>
    where
        A: IntoIterator<Item = S>,
        E: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let agent: Vec<String> = agent.into_iter().map(Into::into).collect();
        let env: Vec<String> = env.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in agent.iter().chain(env.iter()) {
            if !is_identifier(name) {
                return Err(LogicError::InvalidAtom(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(LogicError::DuplicateAtom(name.clone()));
            }
        }
        if agent.len() + env.len() > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms(agent.len() + env.len()));
        }
        Ok(Self { agent, env })
    }

    pub fn agent(&self) -> &[String] {
        &self.agent
    }

    pub fn env(&self) -> &[String] {
        &self.env
    }

    pub fn num_agent(&self) -> usize {
        self.agent.len()
    }

    pub fn num_env(&self) -> usize {
        self.env.len()
    }

    pub fn len(&self) -> usize {
        self.agent.len() + self.env.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of letters `2^|P|`.
    pub fn num_letters(&self) -> usize {
        1 << self.len()
    }

    pub fn num_agent_moves(&self) -> usize {
        1 << self.agent.len()
    }

    pub fn num_env_moves(&self) -> usize {
        1 << self.env.len()
    }

    /// Bit position of an atom in a [`Letter`].
    pub fn bit(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.agent.iter().position(|a| a == name) {
            return Some(i);
        }
        self.env
            .iter()
            .position(|a| a == name)
            .map(|i| i + self.agent.len())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.bit(name).is_some()
    }

    pub fn is_agent(&self, name: &str) -> bool {
        self.agent.iter().any(|a| a == name)
    }

    pub fn is_env(&self, name: &str) -> bool {
        self.env.iter().any(|a| a == name)
    }

    /// Combines an agent move and an environment move into one letter.
    pub fn letter(&self, agent: AgentMove, env: EnvMove) -> Letter {
        agent | (env << self.agent.len())
    }

    pub fn agent_part(&self, letter: Letter) -> AgentMove {
        letter & ((1 << self.agent.len()) - 1)
    }

    pub fn env_part(&self, letter: Letter) -> EnvMove {
        letter >> self.agent.len()
    }

    /// Builds a letter from atom names; every name must be declared.
    pub fn letter_from_names<I, S>(&self, names: I) -> Result<Letter, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut letter = 0;
        for name in names {
            let name = name.as_ref();
            let bit = self
                .bit(name)
                .ok_or_else(|| LogicError::UndeclaredAtom(name.to_string()))?;
            letter |= 1 << bit;
        }
        Ok(letter)
    }

    pub fn agent_move_from_names<I, S>(&self, names: I) -> Result<AgentMove, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mv = 0;
        for name in names {
            let name = name.as_ref();
            let i = self
                .agent
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| LogicError::UndeclaredAtom(name.to_string()))?;
            mv |= 1 << i;
        }
        Ok(mv)
    }

    pub fn env_move_from_names<I, S>(&self, names: I) -> Result<EnvMove, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mv = 0;
        for name in names {
            let name = name.as_ref();
            let i = self
                .env
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| LogicError::UndeclaredAtom(name.to_string()))?;
            mv |= 1 << i;
        }
        Ok(mv)
    }

    /// Atom names of a letter, sorted alphabetically.
    pub fn letter_names(&self, letter: Letter) -> Vec<&str> {
        let mut names: Vec<&str> = self
            .agent
            .iter()
            .chain(self.env.iter())
            .enumerate()
            .filter(|(i, _)| letter & (1 << i) != 0)
            .map(|(_, n)| n.as_str())
            .collect();
        names.sort_unstable();
        names
    }

    pub fn agent_move_names(&self, mv: AgentMove) -> Vec<&str> {
        self.letter_names(mv)
    }

    pub fn env_move_names(&self, mv: EnvMove) -> Vec<&str> {
        self.letter_names(self.letter(0, mv))
    }

    /// `a,b` rendering used by trace files and strategy documents.
    pub fn format_letter(&self, letter: Letter) -> String {
        self.letter_names(letter).join(",")
    }

    pub fn format_env_move(&self, mv: EnvMove) -> String {
        self.env_move_names(mv).join(",")
    }

    /// Parses one line of a trace file: comma-separated atoms, blank for ∅.
    pub fn parse_letter(&self, line: &str) -> Result<Letter, LogicError> {
        self.letter_from_names(split_csv(line))
    }

    pub fn parse_env_move(&self, line: &str) -> Result<EnvMove, LogicError> {
        self.env_move_from_names(split_csv(line))
    }
}

impl fmt::Display for AtomPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agent {{{}}} env {{{}}}", self.agent.join(","), self.env.join(","))
    }
}

fn split_csv(line: &str) -> impl Iterator<Item = &str> {
    line.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// `[A-Za-z_][A-Za-z0-9_]*` minus the reserved words of the formula syntax.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_');
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
}
