//! Expression language, file formats, reports and fuzzing on top of
//! `comreg-core`.

pub mod dot;
pub mod expr;
pub mod fuzz;
pub mod json;
pub mod render;
pub mod report;

use comreg_core::dfa::state_complexity;
use comreg_core::GridAutomaton;
use thiserror::Error;

use expr::Alphabet;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error(transparent)]
    Eval(#[from] expr::EvalError),
    #[error(transparent)]
    Core(#[from] comreg_core::Error),
    #[error("invalid grid JSON: {0}")]
    Json(String),
}

fn vector(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

/// The one-line summary printed by `eval`.
pub fn summary(g: &GridAutomaton, alphabet: &Alphabet) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let v = g.index_period();
    let letters: Vec<String> = g
        .alphabet()
        .iter()
        .map(|&j| alphabet.letter(j).to_string())
        .collect();
    format!(
        "sc={} index={} period={} group={} aperiodic={} alphabet={{{}}}",
        state_complexity(g),
        vector(&v.index_vector),
        vector(&v.period_vector),
        yes(g.is_group()),
        yes(g.is_aperiodic()),
        letters.join(",")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_summary() {
        let ab = Alphabet::new("ab").unwrap();
        let g = expr::parse_and_eval("a{0+4} <> b{0+1} | a{0+2} <> b{0+2}", &ab).unwrap();
        assert_eq!(
            summary(&g, &ab),
            "sc=8 index=(0,0) period=(4,2) group=yes aperiodic=no alphabet={a,b}"
        );
        let e = expr::parse_and_eval("eps", &ab).unwrap();
        assert!(summary(&e, &ab).ends_with("alphabet={}"));
    }
}
