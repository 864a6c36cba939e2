//! Seeded oracle-equivalence fuzzing over random grids.

use std::fmt::Write;

use comreg_core::oracle::{check_operation, Mismatch, Operation};
use comreg_core::sample::{random_letters, random_pair, SampleParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::expr::Alphabet;
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub cases: usize,
    /// Largest alphabet size drawn.
    pub max_k: usize,
    pub params: SampleParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzOutcome {
    pub cases_run: usize,
    pub checks: usize,
    pub counterexample: Option<Mismatch>,
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every operation on `cases` random pairs, stopping at the first
/// disagreement with the oracle.
pub fn run(config: &FuzzConfig) -> Result<FuzzOutcome, comreg_core::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = 0;
    for n in 0..config.cases {
        let (a, b) = random_pair(&mut rng, config.max_k, &config.params);
        let letters = random_letters(&mut rng, a.alphabet_size());
        for op in Operation::all(letters) {
            checks += 1;
            if let Err(m) = check_operation(&op, &a, &b)? {
                return Ok(FuzzOutcome {
                    cases_run: n + 1,
                    checks,
                    counterexample: Some(m),
                });
            }
        }
    }
    Ok(FuzzOutcome {
        cases_run: config.cases,
        checks,
        counterexample: None,
    })
}

fn alphabet_for(k: usize) -> Alphabet {
    let letters: String = ('a'..='z').take(k).collect();
    Alphabet::new(&letters).expect("distinct letters")
}

pub fn render(config: &FuzzConfig, outcome: &FuzzOutcome) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fuzz seed={} cases={} k<={} index<={} period<={}",
        config.seed, config.cases, config.max_k, config.params.max_index, config.params.max_period
    );
    match &outcome.counterexample {
        None => {
            let _ = writeln!(
                out,
                "ok: {} cases, {} operation checks, 0 mismatches",
                outcome.cases_run, outcome.checks
            );
        }
        Some(m) => {
            let alphabet = alphabet_for(m.left.alphabet_size());
            let _ = writeln!(
                out,
                "mismatch after {} checks (case {})",
                outcome.checks, outcome.cases_run
            );
            let _ = writeln!(out, "{m}");
            let _ = writeln!(out, "operation: {}", m.operation);
            if let Some(v) = &m.vector {
                let _ = writeln!(out, "vector: {v}");
            }
            let _ = writeln!(out, "left:\n{}", json::to_string(&m.left, &alphabet));
            if m.operation.is_binary() {
                let _ = writeln!(out, "right:\n{}", json::to_string(&m.right, &alphabet));
            }
            let result_alphabet = alphabet_for(m.result.alphabet_size());
            let _ = writeln!(
                out,
                "result:\n{}",
                json::to_string(&m.result, &result_alphabet)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(seed: u64) -> FuzzConfig {
        FuzzConfig {
            seed,
            cases: 20,
            max_k: 2,
            params: SampleParams::default(),
        }
    }

    #[test]
    fn small_run_passes() {
        let outcome = run(&config(1)).unwrap();
        assert!(outcome.passed());
        assert_eq!(outcome.checks, 20 * 9);
    }

    #[test]
    fn output_is_deterministic() {
        let c = config(5);
        let a = render(&c, &run(&c).unwrap());
        let b = render(&c, &run(&c).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("fuzz seed=5 cases=20"));
    }

    #[test]
    fn counterexample_rendering() {
        use comreg_core::GridAutomaton;
        let g = GridAutomaton::sigma_star(1);
        let m = Mismatch {
            operation: Operation::Complement,
            left: g.clone(),
            right: g.clone(),
            result: g,
            vector: Some(comreg_core::ParikhVector::new(vec![0])),
            grid_says: true,
        };
        let outcome = FuzzOutcome {
            cases_run: 1,
            checks: 3,
            counterexample: Some(m),
        };
        let text = render(&config(0), &outcome);
        assert!(text.contains("complement disagrees at (0)"));
        assert!(text.contains("\"alphabet\""));
        assert!(!text.contains("right:"));
    }
}
