use std::collections::HashMap;

use super::minimize::minimize;
use super::system::{make_initial_nonreentrant, DetAutomaton, Dfa, Limits, Objective, TransitionSystem};
use crate::logic::{AtomPartition, Formula, Letter, LogicError};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// Some finite prefix satisfies the formula.
    Exists,
    /// Every finite prefix satisfies the formula.
    Forall,
}

/// Hash-consed NNF node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(u32, u32),
    Or(u32, u32),
    Next(u32),
    WeakNext(u32),
    Until(u32, u32),
    Release(u32, u32),
    Eventually(u32),
    Globally(u32),
    Last,
}

struct Table {
    nodes: Vec<Node>,
    index: HashMap<Node, u32>,
}

impl Table {
    fn intern(&mut self, n: Node) -> u32 {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        let i = self.nodes.len() as u32;
        self.nodes.push(n);
        self.index.insert(n, i);
        i
    }

    fn add(&mut self, f: &Formula, atoms: &AtomPartition) -> Result<u32, LogicError> {
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Last => Node::Last,
            Formula::Atom(p) => Node::Lit(bit_of(atoms, p)?, true),
            Formula::Not(g) => match &**g {
                Formula::Atom(p) => Node::Lit(bit_of(atoms, p)?, false),
                _ => unreachable!("input is in negation normal form"),
            },
            Formula::And(a, b) => Node::And(self.add(a, atoms)?, self.add(b, atoms)?),
            Formula::Or(a, b) => Node::Or(self.add(a, atoms)?, self.add(b, atoms)?),
            Formula::Next(g) => Node::Next(self.add(g, atoms)?),
            Formula::WeakNext(g) => Node::WeakNext(self.add(g, atoms)?),
            Formula::Until(a, b) => Node::Until(self.add(a, atoms)?, self.add(b, atoms)?),
            Formula::Release(a, b) => Node::Release(self.add(a, atoms)?, self.add(b, atoms)?),
            Formula::Eventually(g) => Node::Eventually(self.add(g, atoms)?),
            Formula::Globally(g) => Node::Globally(self.add(g, atoms)?),
            Formula::Implies(..) | Formula::Iff(..) => {
                unreachable!("input is in negation normal form")
            }
        };
        Ok(self.intern(node))
    }
}

fn bit_of(atoms: &AtomPartition, p: &str) -> Result<u32, LogicError> {
    atoms
        .bit(p)
        .map(|b| b as u32)
        .ok_or_else(|| LogicError::UndeclaredAtom(p.to_string()))
}

/// An obligation on the next position: `node * 2 + strong`. A strong
/// obligation demands that a next position exists, a weak one only
/// constrains it if it exists.
type Obligation = u32;

fn strong(n: u32) -> Obligation {
    n * 2 + 1
}

fn weak(n: u32) -> Obligation {
    n * 2
}

/// Disjunction of conjunctive obligation sets (each sorted, deduplicated).
type Dnf = Vec<Vec<Obligation>>;

struct Progressor<'a> {
    table: &'a Table,
    true_id: u32,
    false_id: u32,
}

impl Progressor<'_> {
    fn unit(&self, ob: Obligation) -> Dnf {
        let node = ob / 2;
        if node == self.false_id && ob % 2 == 1 {
            return vec![];
        }
        if node == self.true_id && ob.is_multiple_of(2) {
            return vec![vec![]];
        }
        vec![vec![ob]]
    }

    /// Conditions on the next position under which node `n` holds at the
    /// current position when the current letter is `z`.
    fn prog(&self, n: u32, z: Letter) -> Dnf {
        match self.table.nodes[n as usize] {
            Node::True => vec![vec![]],
            Node::False => vec![],
            Node::Lit(bit, pos) => {
                if (z & (1 << bit) != 0) == pos {
                    vec![vec![]]
                } else {
                    vec![]
                }
            }
            Node::And(a, b) => and(&self.prog(a, z), &self.prog(b, z)),
            Node::Or(a, b) => or(self.prog(a, z), self.prog(b, z)),
            Node::Next(a) => self.unit(strong(a)),
            Node::WeakNext(a) => self.unit(weak(a)),
            Node::Until(a, b) => or(
                self.prog(b, z),
                and(&self.prog(a, z), &self.unit(strong(n))),
            ),
            Node::Release(a, b) => and(
                &self.prog(b, z),
                &or(self.prog(a, z), self.unit(weak(n))),
            ),
            Node::Eventually(a) => or(self.prog(a, z), self.unit(strong(n))),
            Node::Globally(a) => and(&self.prog(a, z), &self.unit(weak(n))),
            // no next position may exist
            Node::Last => self.unit(weak(self.false_id)),
        }
    }
}

fn normalize(mut set: Vec<Obligation>) -> Vec<Obligation> {
    set.sort_unstable();
    set.dedup();
    // a strong obligation subsumes the weak one on the same node
    let mut out: Vec<Obligation> = Vec::with_capacity(set.len());
    for ob in set {
        if let Some(&prev) = out.last() {
            if prev / 2 == ob / 2 {
                out.pop();
                out.push(ob | 1);
                continue;
            }
        }
        out.push(ob);
    }
    out
}

fn and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(normalize(x.iter().chain(y.iter()).copied().collect()));
        }
    }
    minimal_sets(out)
}

fn or(mut a: Dnf, b: Dnf) -> Dnf {
    a.extend(b);
    minimal_sets(a)
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Keeps only the inclusion-minimal sets.
fn minimal_sets(mut sets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sets.dedup();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|m| is_subset(m, &s)) {
            out.push(s);
        }
    }
    out
}

/// Translates an LTLf formula into its minimal DFA.
///
/// The formula is put in NNF and progressed letter by letter: each
/// automaton state is an antichain of obligation sets, read as a
/// disjunction of conjunctions of next-step obligations. The subset
/// automaton is then minimized and renumbered breadth-first.
pub fn ltlf_to_dfa(phi: &Formula, atoms: &AtomPartition, limits: &Limits) -> Result<Dfa> {
    let nnf = phi.to_nnf();
    let mut table = Table {
        nodes: Vec::new(),
        index: HashMap::new(),
    };
    let root = table.add(&nnf, atoms)?;
    let false_id = table.intern(Node::False);
    let true_id = table.intern(Node::True);
    let prog = Progressor {
        table: &table,
        true_id,
        false_id,
    };

    let k = atoms.num_letters();
    let mut nfa_index: HashMap<Vec<Obligation>, u32> = HashMap::new();
    let mut nfa_states: Vec<Vec<Obligation>> = Vec::new();
    let mut nfa_succ: HashMap<(u32, Letter), Vec<u32>> = HashMap::new();
    let mut intern_nfa = |set: Vec<Obligation>, states: &mut Vec<Vec<Obligation>>| -> u32 {
        *nfa_index.entry(set.clone()).or_insert_with(|| {
            states.push(set);
            (states.len() - 1) as u32
        })
    };

    let init_nfa = intern_nfa(vec![strong(root)], &mut nfa_states);
    let mut dfa_index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut dfa_states: Vec<Vec<u32>> = vec![vec![init_nfa]];
    dfa_index.insert(vec![init_nfa], 0);
    let mut delta: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < dfa_states.len() {
        let members = dfa_states[head].clone();
        head += 1;
        for z in 0..k as Letter {
            let mut next: Vec<Vec<Obligation>> = Vec::new();
            for &s in &members {
                let succ = match nfa_succ.get(&(s, z)) {
                    Some(v) => v.clone(),
                    None => {
                        let mut dnf: Dnf = vec![vec![]];
                        for &ob in &nfa_states[s as usize] {
                            dnf = and(&dnf, &prog.prog(ob / 2, z));
                            if dnf.is_empty() {
                                break;
                            }
                        }
                        let ids: Vec<u32> = dnf
                            .into_iter()
                            .map(|set| intern_nfa(set, &mut nfa_states))
                            .collect();
                        nfa_succ.insert((s, z), ids.clone());
                        ids
                    }
                };
                next.extend(succ.iter().map(|&t| nfa_states[t as usize].clone()));
            }
            let antichain = minimal_sets(next);
            let mut key: Vec<u32> = antichain
                .into_iter()
                .map(|set| intern_nfa(set, &mut nfa_states))
                .collect();
            key.sort_unstable();
            let target = match dfa_index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = dfa_states.len();
                    limits.check(t + 1, "a DFA")?;
                    dfa_states.push(key.clone());
                    dfa_index.insert(key, t);
                    t
                }
            };
            delta.push(target as u32);
        }
    }

    let mut finals = fixedbitset::FixedBitSet::with_capacity(dfa_states.len());
    for (i, members) in dfa_states.iter().enumerate() {
        // accepting iff some member carries no strong obligation
        if members
            .iter()
            .any(|&s| nfa_states[s as usize].iter().all(|ob| ob % 2 == 0))
        {
            finals.insert(i);
        }
    }
    let raw = Dfa {
        ts: TransitionSystem::from_raw(atoms.clone(), 0, delta),
        finals,
    };
    Ok(minimize(&raw))
}

/// Lifts the DFA of `phi` to a deterministic automaton for `∃phi` (reach the
/// final states) or `∀phi` (stay within the final states and the initial
/// state). The DFA's initial state is first made non-reentrant, otherwise the
/// safety reading would accept words that return to it.
pub fn convert_da(
    mode: Quantifier,
    phi: &Formula,
    atoms: &AtomPartition,
    limits: &Limits,
) -> Result<DetAutomaton> {
    let dfa = make_initial_nonreentrant(&ltlf_to_dfa(phi, atoms, limits)?);
    limits.check(dfa.num_states(), "a DFA")?;
    let objective = match mode {
        Quantifier::Exists => Objective::Reach(dfa.finals),
        Quantifier::Forall => {
            let mut safe = dfa.finals;
            safe.insert(dfa.ts.initial());
            Objective::Safe(safe)
        }
    };
    Ok(DetAutomaton {
        ts: dfa.ts,
        objective,
    })
}
