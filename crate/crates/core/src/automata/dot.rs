use std::fmt::Write;

use super::system::{Dfa, StateSet, TransitionSystem};

/// DOT rendering with one edge line per transition, labelled by the letter
/// as a sorted atom set in braces.
pub fn to_dot(ts: &TransitionSystem) -> String {
    render(ts, None)
}

/// Like [`to_dot`], with final states drawn as double circles.
pub fn dfa_to_dot(m: &Dfa) -> String {
    render(&m.ts, Some(&m.finals))
}

fn render(ts: &TransitionSystem, finals: Option<&StateSet>) -> String {
    let atoms = ts.atoms();
    let mut out = String::from("digraph {\n  rankdir=LR;\n  init [shape=point];\n");
    for q in 0..ts.num_states() {
        let shape = match finals {
            Some(f) if f.contains(q) => "doublecircle",
            _ => "circle",
        };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  init -> {};", ts.initial()).unwrap();
    for q in 0..ts.num_states() {
        for (z, &t) in ts.row(q).iter().enumerate() {
            writeln!(
                out,
                "  {q} -> {t} [label=\"{{{}}}\"];",
                atoms.format_letter(z as u32)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
