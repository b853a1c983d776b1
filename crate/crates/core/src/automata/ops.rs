use std::collections::HashMap;

use super::system::{StateSet, TransitionSystem};
use crate::logic::Letter;
use crate::{Error, Result};

/// What a state of a derived system stands for in its source(s).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    /// Component states (one per factor; `[q]` for restrictions, `[q, flag]`
    /// for flagged systems).
    Tuple(Vec<usize>),
    /// The losing sink `⊥` of a restriction.
    Bottom,
    /// The sink `⊤` of a restriction with sinks.
    Top,
}

/// Links the states of a derived system back to the systems it was built
/// from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    arity: usize,
    coords: Vec<Coord>,
    index: HashMap<Vec<usize>, usize>,
}

impl ProductMap {
    fn new(arity: usize) -> Self {
        Self {
            arity,
            coords: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn push(&mut self, c: Coord) -> usize {
        let id = self.coords.len();
        if let Coord::Tuple(t) = &c {
            self.index.insert(t.clone(), id);
        }
        self.coords.push(c);
        id
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, q: usize) -> &Coord {
        &self.coords[q]
    }

    /// `i`-th component of `q`, or `None` for a sink.
    pub fn component(&self, q: usize, i: usize) -> Option<usize> {
        match &self.coords[q] {
            Coord::Tuple(t) => Some(t[i]),
            _ => None,
        }
    }

    pub fn find(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.coords.iter().position(|c| *c == Coord::Bottom)
    }

    pub fn top(&self) -> Option<usize> {
        self.coords.iter().position(|c| *c == Coord::Top)
    }

    /// All non-sink states whose `i`-th component lies in `set`.
    pub fn lift(&self, i: usize, set: &StateSet) -> StateSet {
        let mut out = StateSet::with_capacity(self.len());
        for (q, c) in self.coords.iter().enumerate() {
            if let Coord::Tuple(t) = c {
                if set.contains(t[i]) {
                    out.insert(q);
                }
            }
        }
        out
    }

    /// The `i`-th components of the non-sink members of `set`.
    pub fn project_set(&self, i: usize, set: &StateSet, component_size: usize) -> StateSet {
        let mut out = StateSet::with_capacity(component_size);
        for q in set.ones() {
            if let Coord::Tuple(t) = &self.coords[q] {
                out.insert(t[i]);
            }
        }
        out
    }
}

fn check_alphabets(systems: &[&TransitionSystem]) -> Result<()> {
    if let Some(first) = systems.first() {
        for ts in &systems[1..] {
            if ts.atoms() != first.atoms() {
                return Err(Error::AlphabetMismatch(format!(
                    "{} vs {}",
                    first.atoms(),
                    ts.atoms()
                )));
            }
        }
    }
    Ok(())
}

/// Synchronous product over the reachable tuples, numbered breadth-first.
pub fn product(components: &[&TransitionSystem]) -> Result<(TransitionSystem, ProductMap)> {
    if components.is_empty() {
        return Err(Error::InvalidSystem("product of no components".into()));
    }
    check_alphabets(components)?;
    let atoms = components[0].atoms().clone();
    let k = atoms.num_letters();
    let mut map = ProductMap::new(components.len());
    let init: Vec<usize> = components.iter().map(|c| c.initial()).collect();
    map.push(Coord::Tuple(init));
    let mut delta: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < map.len() {
        let Coord::Tuple(tuple) = map.coords[head].clone() else {
            unreachable!()
        };
        head += 1;
        for z in 0..k as Letter {
            let next: Vec<usize> = components
                .iter()
                .zip(&tuple)
                .map(|(c, &q)| c.step(q, z))
                .collect();
            let id = match map.find(&next) {
                Some(id) => id,
                None => map.push(Coord::Tuple(next)),
            };
            delta.push(id as u32);
        }
    }
    Ok((TransitionSystem::from_raw(atoms, 0, delta), map))
}

/// Keeps the states of `keep` (in ascending order) and redirects every
/// transition leaving `keep` to a fresh absorbing sink `⊥`. The sink is only
/// added when something targets it, or when the initial state is not kept,
/// in which case the sink becomes initial.
pub fn restrict(ts: &TransitionSystem, keep: &StateSet) -> (TransitionSystem, ProductMap) {
    restrict_impl(ts, keep, None)
}

/// Restriction to `v0` where exits into `v1` go to `⊥` and all other exits
/// go to `⊤`. Both sinks are absorbing and only added when targeted. If the
/// initial state lies outside `v0`, the matching sink becomes initial.
pub fn restrict_with_sinks(
    ts: &TransitionSystem,
    v0: &StateSet,
    v1: &StateSet,
) -> (TransitionSystem, ProductMap) {
    restrict_impl(ts, v0, Some(v1))
}

fn restrict_impl(
    ts: &TransitionSystem,
    keep: &StateSet,
    bottom_set: Option<&StateSet>,
) -> (TransitionSystem, ProductMap) {
    let n = ts.num_states();
    let k = ts.num_letters();
    let mut map = ProductMap::new(1);
    let mut new_id = vec![usize::MAX; n];
    for q in keep.ones().filter(|&q| q < n) {
        new_id[q] = map.push(Coord::Tuple(vec![q]));
    }
    let init_kept = keep.contains(ts.initial());
    let exits_to = |to_bottom: bool| {
        keep.ones().any(|q| {
            ts.row(q).iter().any(|&t| {
                let t = t as usize;
                !keep.contains(t) && bottom_set.is_none_or(|b| b.contains(t)) == to_bottom
            })
        })
    };
    let init_in_bottom = bottom_set.is_none_or(|b| b.contains(ts.initial()));
    let needs_bottom = (!init_kept && init_in_bottom) || exits_to(true);
    let needs_top = (!init_kept && !init_in_bottom) || exits_to(false);
    let bottom = needs_bottom.then(|| map.push(Coord::Bottom));
    let top = needs_top.then(|| map.push(Coord::Top));
    let mut delta = Vec::with_capacity(map.len() * k);
    for q in keep.ones().filter(|&q| q < n) {
        for &t in ts.row(q) {
            let t = t as usize;
            let target = if keep.contains(t) {
                new_id[t]
            } else if bottom_set.is_none_or(|b| b.contains(t)) {
                bottom.unwrap()
            } else {
                top.unwrap()
            };
            delta.push(target as u32);
        }
    }
    for sink in [bottom, top].into_iter().flatten() {
        delta.extend(std::iter::repeat_n(sink as u32, k));
    }
    debug_assert_eq!(delta.len(), map.len() * k);
    let initial = if init_kept {
        new_id[ts.initial()]
    } else if init_in_bottom {
        bottom.unwrap()
    } else {
        top.unwrap()
    };
    (
        TransitionSystem::from_raw(ts.atoms().clone(), initial, delta),
        map,
    )
}

/// Pairs each state with a monotone flag recording whether `t` has been
/// visited, the current state included. Coordinates are `[q, flag]` with
/// flag `1` for yes. Only reachable pairs are built.
pub fn flagged(ts: &TransitionSystem, t: &StateSet) -> (TransitionSystem, ProductMap) {
    let k = ts.num_letters();
    let mut map = ProductMap::new(2);
    let q0 = ts.initial();
    map.push(Coord::Tuple(vec![q0, t.contains(q0) as usize]));
    let mut delta: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < map.len() {
        let Coord::Tuple(pair) = map.coords[head].clone() else {
            unreachable!()
        };
        head += 1;
        for z in 0..k as Letter {
            let next = ts.step(pair[0], z);
            let flag = pair[1] == 1 || t.contains(next);
            let key = vec![next, flag as usize];
            let id = match map.find(&key) {
                Some(id) => id,
                None => map.push(Coord::Tuple(key)),
            };
            delta.push(id as u32);
        }
    }
    (TransitionSystem::from_raw(ts.atoms().clone(), 0, delta), map)
}
