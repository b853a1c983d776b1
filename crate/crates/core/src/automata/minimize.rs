use fixedbitset::FixedBitSet;

use super::system::{Dfa, TransitionSystem};

/// Hopcroft partition refinement on the reachable part of `m`, followed by
/// breadth-first renumbering from the initial state.
pub fn minimize(m: &Dfa) -> Dfa {
    let (ts, map) = m.ts.bfs_renumber();
    let n = ts.num_states();
    let k = ts.num_letters();
    let mut finals = FixedBitSet::with_capacity(n);
    for (old, new) in map.iter().enumerate() {
        if let Some(new) = new {
            if m.finals.contains(old) {
                finals.insert(*new);
            }
        }
    }

    // inverse transitions in CSR form, indexed by target * k + letter
    let mut counts = vec![0usize; n * k + 1];
    for q in 0..n {
        for (z, &t) in ts.row(q).iter().enumerate() {
            counts[t as usize * k + z + 1] += 1;
        }
    }
    for i in 1..counts.len() {
        counts[i] += counts[i - 1];
    }
    let mut fill = counts.clone();
    let mut sources = vec![0u32; n * k];
    for q in 0..n {
        for (z, &t) in ts.row(q).iter().enumerate() {
            let slot = t as usize * k + z;
            sources[fill[slot]] = q as u32;
            fill[slot] += 1;
        }
    }

    let mut p = Partition::new(n, &finals);
    let mut in_work = vec![false; n * k];
    let mut work: Vec<(usize, usize)> = Vec::new();
    let initial_block = if p.num_blocks() == 2 && p.size(1) < p.size(0) { 1 } else { 0 };
    for z in 0..k {
        work.push((initial_block, z));
        in_work[initial_block * k + z] = true;
    }
    let mut touched: Vec<usize> = Vec::new();
    let mut splitter: Vec<usize> = Vec::new();
    while let Some((b, z)) = work.pop() {
        in_work[b * k + z] = false;
        splitter.clear();
        splitter.extend_from_slice(p.members(b));
        for &t in &splitter {
            let slot = t * k + z;
            for &s in &sources[counts[slot]..counts[slot + 1]] {
                let blk = p.block[s as usize];
                if p.marked[blk] == 0 {
                    touched.push(blk);
                }
                p.mark(s as usize);
            }
        }
        for blk in touched.drain(..) {
            if let Some(new) = p.split(blk) {
                if in_work.len() < p.num_blocks() * k {
                    in_work.resize(p.num_blocks() * k, false);
                }
                for a in 0..k {
                    if in_work[blk * k + a] {
                        in_work[new * k + a] = true;
                        work.push((new, a));
                    } else {
                        let smaller = if p.size(new) <= p.size(blk) { new } else { blk };
                        in_work[smaller * k + a] = true;
                        work.push((smaller, a));
                    }
                }
            }
        }
    }

    let blocks = p.num_blocks();
    let mut delta = vec![0u32; blocks * k];
    let mut quotient_finals = FixedBitSet::with_capacity(blocks);
    for b in 0..blocks {
        let rep = p.members(b)[0];
        for z in 0..k {
            delta[b * k + z] = p.block[ts.step(rep, z as u32)] as u32;
        }
        if finals.contains(rep) {
            quotient_finals.insert(b);
        }
    }
    let quotient = TransitionSystem::from_raw(ts.atoms().clone(), p.block[ts.initial()], delta);
    let (ts, map) = quotient.bfs_renumber();
    let mut out_finals = FixedBitSet::with_capacity(ts.num_states());
    for (old, new) in map.iter().enumerate() {
        if let (Some(new), true) = (new, quotient_finals.contains(old)) {
            out_finals.insert(*new);
        }
    }
    Dfa {
        ts,
        finals: out_finals,
    }
}

/// Refinable partition: each block is a contiguous slice of `elems`, with
/// marked states moved to the front of their block.
struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    block: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
}

impl Partition {
    fn new(n: usize, finals: &FixedBitSet) -> Self {
        let mut elems: Vec<usize> = (0..n).filter(|&q| finals.contains(q)).collect();
        let nf = elems.len();
        elems.extend((0..n).filter(|&q| !finals.contains(q)));
        let mut p = Self {
            pos: vec![0; n],
            block: vec![0; n],
            start: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
            elems,
        };
        for (i, &q) in p.elems.iter().enumerate() {
            p.pos[q] = i;
        }
        for (lo, hi) in [(0, nf), (nf, n)] {
            if lo < hi {
                let b = p.start.len();
                p.start.push(lo);
                p.end.push(hi);
                p.marked.push(0);
                for i in lo..hi {
                    p.block[p.elems[i]] = b;
                }
            }
        }
        p
    }

    fn num_blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    fn mark(&mut self, q: usize) {
        let b = self.block[q];
        let boundary = self.start[b] + self.marked[b];
        let i = self.pos[q];
        if i < boundary {
            return;
        }
        let other = self.elems[boundary];
        self.elems.swap(i, boundary);
        self.pos[other] = i;
        self.pos[q] = boundary;
        self.marked[b] += 1;
    }

    /// Splits the marked prefix of `b` into a new block, if it is proper.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marked[b];
        self.marked[b] = 0;
        if m == self.size(b) {
            return None;
        }
        let new = self.start.len();
        let lo = self.start[b];
        self.start.push(lo);
        self.end.push(lo + m);
        self.marked.push(0);
        self.start[b] = lo + m;
        for i in lo..lo + m {
            self.block[self.elems[i]] = new;
        }
        Some(new)
    }
}
