//! Trace and input files: one letter per line, comma-separated atoms,
//! blank line for the empty letter.

use finsynth::logic::{AtomPartition, EnvMove, Letter, LogicError};

fn lines(text: &str) -> Vec<&str> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if text.is_empty() {
        return Vec::new();
    }
    body.split('\n').map(|l| l.trim_end_matches('\r')).collect()
}

pub fn parse_env_inputs(text: &str, atoms: &AtomPartition) -> Result<Vec<EnvMove>, LogicError> {
    lines(text).into_iter().map(|l| atoms.parse_env_move(l)).collect()
}

pub fn parse_letters(text: &str, atoms: &AtomPartition) -> Result<Vec<Letter>, LogicError> {
    lines(text).into_iter().map(|l| atoms.parse_letter(l)).collect()
}

pub fn format_letters(letters: &[Letter], atoms: &AtomPartition) -> String {
    letters
        .iter()
        .map(|&z| format!("{}\n", atoms.format_letter(z)))
        .collect()
}

pub fn format_env_inputs(inputs: &[EnvMove], atoms: &AtomPartition) -> String {
    inputs
        .iter()
        .map(|&x| format!("{}\n", atoms.format_env_move(x)))
        .collect()
}
