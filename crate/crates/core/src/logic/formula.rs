use std::collections::BTreeSet;
use std::fmt;

/// LTLf syntax tree. Derived operators are kept as their own nodes so that
/// printing gives back what was parsed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    WeakNext(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
    Last,
}

use Formula::*;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Iff(Box::new(f), Box::new(g))
    }

    pub fn next(f: Formula) -> Self {
        Next(Box::new(f))
    }

    pub fn weak_next(f: Formula) -> Self {
        WeakNext(Box::new(f))
    }

    pub fn until(f: Formula, g: Formula) -> Self {
        Until(Box::new(f), Box::new(g))
    }

    pub fn release(f: Formula, g: Formula) -> Self {
        Release(Box::new(f), Box::new(g))
    }

    pub fn eventually(f: Formula) -> Self {
        Eventually(Box::new(f))
    }

    pub fn globally(f: Formula) -> Self {
        Globally(Box::new(f))
    }

    /// Conjunction of all items, `true` when empty.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(True)
    }

    /// Disjunction of all items, `false` when empty.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(False)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            True | False | Atom(_) | Last => vec![],
            Not(f) | Next(f) | WeakNext(f) | Eventually(f) | Globally(f) => vec![f],
            And(f, g) | Or(f, g) | Implies(f, g) | Iff(f, g) | Until(f, g) | Release(f, g) => {
                vec![f, g]
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Operator nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        if let Atom(name) = self {
            out.insert(name);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// True when negation only occurs directly above atoms and no
    /// implications or biconditionals remain.
    pub fn is_nnf(&self) -> bool {
        match self {
            Not(f) => matches!(**f, Atom(_)),
            Implies(..) | Iff(..) => false,
            _ => self.children().iter().all(|c| c.is_nnf()),
        }
    }

    /// Negation normal form. Implications and biconditionals are expanded,
    /// negation is pushed through the temporal operators using their duals.
    pub fn to_nnf(&self) -> Formula {
        nnf(self, false)
    }
}

fn nnf(f: &Formula, neg: bool) -> Formula {
    match (f, neg) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(p), false) => Atom(p.clone()),
        (Atom(p), true) => Formula::not(Atom(p.clone())),
        (Not(g), _) => nnf(g, !neg),
        (And(a, b), false) | (Or(a, b), true) => Formula::and(nnf(a, neg), nnf(b, neg)),
        (Or(a, b), false) | (And(a, b), true) => Formula::or(nnf(a, neg), nnf(b, neg)),
        (Implies(a, b), false) => Formula::or(nnf(a, true), nnf(b, false)),
        (Implies(a, b), true) => Formula::and(nnf(a, false), nnf(b, true)),
        (Iff(a, b), false) => Formula::or(
            Formula::and(nnf(a, false), nnf(b, false)),
            Formula::and(nnf(a, true), nnf(b, true)),
        ),
        (Iff(a, b), true) => Formula::or(
            Formula::and(nnf(a, false), nnf(b, true)),
            Formula::and(nnf(a, true), nnf(b, false)),
        ),
        (Next(g), false) | (WeakNext(g), true) => Formula::next(nnf(g, neg)),
        (WeakNext(g), false) | (Next(g), true) => Formula::weak_next(nnf(g, neg)),
        (Until(a, b), false) | (Release(a, b), true) => Formula::until(nnf(a, neg), nnf(b, neg)),
        (Release(a, b), false) | (Until(a, b), true) => {
            Formula::release(nnf(a, neg), nnf(b, neg))
        }
        (Eventually(g), false) | (Globally(g), true) => Formula::eventually(nnf(g, neg)),
        (Globally(g), false) | (Eventually(g), true) => Formula::globally(nnf(g, neg)),
        (Last, false) => Last,
        (Last, true) => Formula::next(True),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, false)
    }
}

fn write_formula(phi: &Formula, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
    let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
        if nested {
            f.write_str("(")?;
        }
        write_formula(a, f, true)?;
        write!(f, " {op} ")?;
        write_formula(b, f, true)?;
        if nested {
            f.write_str(")")?;
        }
        Ok(())
    };
    match phi {
        True => f.write_str("true"),
        False => f.write_str("false"),
        Last => f.write_str("last"),
        Atom(p) => f.write_str(p),
        Not(g) => {
            f.write_str("!")?;
            write_formula(g, f, true)
        }
        Next(g) => {
            f.write_str("X ")?;
            write_formula(g, f, true)
        }
        WeakNext(g) => {
            f.write_str("N ")?;
            write_formula(g, f, true)
        }
        Eventually(g) => {
            f.write_str("F ")?;
            write_formula(g, f, true)
        }
        Globally(g) => {
            f.write_str("G ")?;
            write_formula(g, f, true)
        }
        And(a, b) => binary(f, a, "&", b),
        Or(a, b) => binary(f, a, "|", b),
        Implies(a, b) => binary(f, a, "->", b),
        Iff(a, b) => binary(f, a, "<->", b),
        Until(a, b) => binary(f, a, "U", b),
        Release(a, b) => binary(f, a, "R", b),
    }
}
