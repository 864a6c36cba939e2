//! Commutative regular languages represented as grid automata.
//!
//! A commutative language over `a_1, ..., a_k` is determined by its Parikh
//! image. Its minimal commutative automaton is a product of `k` unary lasso
//! automata (one per letter) together with a set of accepting coordinate
//! tuples. This crate implements that representation ([`GridAutomaton`]) and
//! the operations that are closed on it: boolean operations, shuffle,
//! projection, upward/downward closure and the two interiors. State
//! complexity is measured exactly by expanding a grid into a complete DFA and
//! minimizing it ([`dfa`]).
//!
//! [`oracle`] is a deliberately naive reference semantics over finite Parikh
//! boxes used to cross-check every grid operation, and [`witnesses`] builds
//! the known witness families for state-complexity bounds and measures them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dfa;
mod error;
pub mod grid;
pub mod oracle;
pub mod parikh;
pub mod sample;
pub mod witnesses;

pub use dfa::Dfa;
pub use error::{Error, Result};
pub use grid::{Axis, GridAutomaton, IndexPeriodVectors};
pub use parikh::{ParikhVector, UnarySet};

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}
