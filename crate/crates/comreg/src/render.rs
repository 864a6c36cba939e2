//! Grids back to expressions, one shuffle term per final tuple.

use comreg_core::{GridAutomaton, UnarySet};

use crate::expr::Alphabet;

/// Renders the unary set of letter `c` as a union of atoms.
fn unary(c: char, set: &UnarySet) -> String {
    let (i, p) = (set.index(), set.period());
    let atoms: Vec<String> = (0..i + p)
        .filter(|&m| set.contains(m))
        .map(|m| {
            if m < i {
                format!("{c}{{{m}}}")
            } else {
                format!("{c}{{{m}+{p}}}")
            }
        })
        .collect();
    match atoms.len() {
        0 => "empty".to_string(),
        1 => atoms.into_iter().next().unwrap(),
        _ => format!("({})", atoms.join(" | ")),
    }
}

/// An expression for `g` that [`crate::expr::parse`] reads back as the same
/// language.
pub fn render(g: &GridAutomaton, alphabet: &Alphabet) -> String {
    let terms: Vec<String> = g
        .decompose()
        .iter()
        .map(|parts| {
            parts
                .iter()
                .enumerate()
                .map(|(j, set)| unary(alphabet.letter(j), set))
                .collect::<Vec<_>>()
                .join(" <> ")
        })
        .collect();
    if terms.is_empty() {
        "empty".to_string()
    } else {
        terms.join(" | ")
    }
}
