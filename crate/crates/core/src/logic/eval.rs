use super::{AtomPartition, Formula, Letter, LogicError};

/// A non-empty finite trace over the letters of an [`AtomPartition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTrace {
    atoms: AtomPartition,
    letters: Vec<Letter>,
}

impl FiniteTrace {
    pub fn new(atoms: &AtomPartition, letters: Vec<Letter>) -> Result<Self, LogicError> {
        if letters.is_empty() {
            return Err(LogicError::EmptyTrace);
        }
        if let Some((position, &letter)) = letters
            .iter()
            .enumerate()
            .find(|(_, &l)| (l as usize) >= atoms.num_letters())
        {
            return Err(LogicError::LetterOutOfRange { position, letter });
        }
        Ok(Self {
            atoms: atoms.clone(),
            letters,
        })
    }

    /// Builds a trace from lines of comma-separated atom names.
    pub fn from_names<I, S>(atoms: &AtomPartition, lines: I) -> Result<Self, LogicError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let letters = lines
            .into_iter()
            .map(|l| atoms.parse_letter(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(atoms, letters)
    }

    pub fn atoms(&self) -> &AtomPartition {
        &self.atoms
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `π, i ⊨ φ`.
pub fn evaluate(phi: &Formula, trace: &FiniteTrace, i: usize) -> Result<bool, LogicError> {
    if i >= trace.len() {
        return Err(LogicError::IndexOutOfRange {
            index: i,
            len: trace.len(),
        });
    }
    let ev = Evaluator::new(phi, trace.atoms())?;
    Ok(ev.eval_all(trace.letters())[i])
}

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Last,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Next(usize),
    WeakNext(usize),
    Until(usize, usize),
    Release(usize, usize),
    Eventually(usize),
    Globally(usize),
}

/// A formula compiled against an atom partition, reusable across traces.
///
/// Each node is evaluated at every position straight from its semantic
/// clause; the temporal operators quantify over positions explicitly.
#[derive(Clone, Debug)]
pub struct Evaluator {
    nodes: Vec<Node>,
}

impl Evaluator {
    pub fn new(phi: &Formula, atoms: &AtomPartition) -> Result<Self, LogicError> {
        let mut nodes = Vec::new();
        compile(phi, atoms, &mut nodes)?;
        Ok(Self { nodes })
    }

    /// Truth value of the root at position 0; letters must be non-empty.
    pub fn accepts(&self, letters: &[Letter]) -> bool {
        self.eval_all(letters)[0]
    }

    /// Truth value of the root at every position.
    pub fn eval_all(&self, letters: &[Letter]) -> Vec<bool> {
        let n = letters.len();
        let mut vals: Vec<Vec<bool>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v: Vec<bool> = match *node {
                Node::True => vec![true; n],
                Node::False => vec![false; n],
                Node::Last => (0..n).map(|i| i + 1 == n).collect(),
                Node::Atom(bit) => letters.iter().map(|l| l & (1 << bit) != 0).collect(),
                Node::Not(a) => vals[a].iter().map(|b| !b).collect(),
                Node::And(a, b) => (0..n).map(|i| vals[a][i] && vals[b][i]).collect(),
                Node::Or(a, b) => (0..n).map(|i| vals[a][i] || vals[b][i]).collect(),
                Node::Implies(a, b) => (0..n).map(|i| !vals[a][i] || vals[b][i]).collect(),
                Node::Iff(a, b) => (0..n).map(|i| vals[a][i] == vals[b][i]).collect(),
                Node::Next(a) => (0..n).map(|i| i + 1 < n && vals[a][i + 1]).collect(),
                Node::WeakNext(a) => (0..n).map(|i| i + 1 >= n || vals[a][i + 1]).collect(),
                Node::Until(a, b) => (0..n)
                    .map(|i| (i..n).any(|j| vals[b][j] && (i..j).all(|k| vals[a][k])))
                    .collect(),
                Node::Release(a, b) => (0..n)
                    .map(|i| (i..n).all(|j| vals[b][j] || (i..j).any(|k| vals[a][k])))
                    .collect(),
                Node::Eventually(a) => (0..n).map(|i| (i..n).any(|j| vals[a][j])).collect(),
                Node::Globally(a) => (0..n).map(|i| (i..n).all(|j| vals[a][j])).collect(),
            };
            vals.push(v);
        }
        vals.pop().unwrap_or_default()
    }
}

fn compile(phi: &Formula, atoms: &AtomPartition, nodes: &mut Vec<Node>) -> Result<usize, LogicError> {
    let un = |g: &Formula, nodes: &mut Vec<Node>| compile(g, atoms, nodes);
    let node = match phi {
        Formula::True => Node::True,
        Formula::False => Node::False,
        Formula::Last => Node::Last,
        Formula::Atom(p) => Node::Atom(
            atoms
                .bit(p)
                .ok_or_else(|| LogicError::UndeclaredAtom(p.clone()))?,
        ),
        Formula::Not(g) => Node::Not(un(g, nodes)?),
        Formula::Next(g) => Node::Next(un(g, nodes)?),
        Formula::WeakNext(g) => Node::WeakNext(un(g, nodes)?),
        Formula::Eventually(g) => Node::Eventually(un(g, nodes)?),
        Formula::Globally(g) => Node::Globally(un(g, nodes)?),
        Formula::And(a, b) => Node::And(un(a, nodes)?, un(b, nodes)?),
        Formula::Or(a, b) => Node::Or(un(a, nodes)?, un(b, nodes)?),
        Formula::Implies(a, b) => Node::Implies(un(a, nodes)?, un(b, nodes)?),
        Formula::Iff(a, b) => Node::Iff(un(a, nodes)?, un(b, nodes)?),
        Formula::Until(a, b) => Node::Until(un(a, nodes)?, un(b, nodes)?),
        Formula::Release(a, b) => Node::Release(un(a, nodes)?, un(b, nodes)?),
    };
    nodes.push(node);
    Ok(nodes.len() - 1)
}
