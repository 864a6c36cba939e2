//! Complete deterministic automata for exact state-complexity measurement.
//!
//! Minimization uses Moore partition refinement, which is quadratic in the
//! worst case where Hopcroft's algorithm is `n log n`; at the sizes measured
//! here (a few thousand states) the difference does not matter and the
//! simpler algorithm is easier to check.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::grid::GridAutomaton;
use crate::parikh::ParikhVector;
use crate::{Error, Result};

/// Default cap on the transition monoid size for [`Dfa::is_aperiodic`].
pub const DEFAULT_MONOID_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    start: usize,
    /// `delta[q * alphabet_size + letter]`
    delta: Vec<usize>,
    finals: Vec<bool>,
    /// Grid tuple of each state when the automaton was expanded from a grid.
    labels: Option<Vec<ParikhVector>>,
}

impl Dfa {
    /// Builds a DFA from a transition table `delta[q][letter]`.
    pub fn new(
        alphabet_size: usize,
        start: usize,
        delta: Vec<Vec<usize>>,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = delta.len();
        if finals.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: finals.len(),
            });
        }
        if start >= n.max(1) || n == 0 {
            return Err(Error::ArityMismatch {
                expected: n,
                found: start,
            });
        }
        let mut flat = Vec::with_capacity(n * alphabet_size);
        for row in &delta {
            if row.len() != alphabet_size {
                return Err(Error::ArityMismatch {
                    expected: alphabet_size,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&q| q >= n) {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: bad,
                });
            }
            flat.extend_from_slice(row);
        }
        Ok(Dfa {
            alphabet_size,
            start,
            delta: flat,
            finals,
            labels: None,
        })
    }

    /// Product of the grid's lassos restricted to the tuples reachable from
    /// the origin. State numbers follow breadth-first discovery order with
    /// letters tried in increasing order.
    pub fn from_grid(g: &GridAutomaton) -> Dfa {
        let k = g.alphabet_size();
        let axes = g.axes();
        let shape = g.shape();
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        let origin = vec![0; k];
        ids.insert(shape.encode(&origin), 0);
        tuples.push(origin.clone());
        queue.push_back(origin);
        let mut delta = Vec::new();
        while let Some(t) = queue.pop_front() {
            for j in 0..k {
                let mut next = t.clone();
                next[j] = axes[j].step(t[j]);
                let addr = shape.encode(&next);
                let id = *ids.entry(addr).or_insert_with(|| {
                    tuples.push(next.clone());
                    queue.push_back(next);
                    tuples.len() - 1
                });
                delta.push(id);
            }
        }
        let finals = tuples.iter().map(|t| g.accepts_tuple(t)).collect();
        Dfa {
            alphabet_size: k,
            start: 0,
            delta,
            finals,
            labels: Some(tuples.into_iter().map(ParikhVector::new).collect()),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn next(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet_size + letter]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn labels(&self) -> Option<&[ParikhVector]> {
        self.labels.as_deref()
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(self.start, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run(word)]
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for a in 0..self.alphabet_size {
                let r = self.next(q, a);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// Minimal complete DFA for the same language. States of the result are
    /// numbered in breadth-first order from the start, so isomorphic inputs
    /// give identical outputs.
    pub fn minimize(&self) -> Dfa {
        let order = self.reachable();
        let k = self.alphabet_size;
        let mut class: Vec<usize> = vec![usize::MAX; self.state_count()];
        let finals_first = dense(order.iter().map(|&q| self.finals[q]));
        for (&q, &c) in order.iter().zip(&finals_first) {
            class[q] = c;
        }
        let mut count = finals_first.iter().max().map_or(0, |c| c + 1);
        loop {
            let signatures = order.iter().map(|&q| {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|a| class[self.next(q, a)]));
                sig
            });
            let refined = dense(signatures);
            let refined_count = refined.iter().max().map_or(0, |c| c + 1);
            for (&q, &c) in order.iter().zip(&refined) {
                class[q] = c;
            }
            if refined_count == count {
                break;
            }
            count = refined_count;
        }
        // Renumber classes in breadth-first order over the quotient.
        let mut rep: Vec<usize> = vec![usize::MAX; count];
        for &q in &order {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let mut number = vec![usize::MAX; count];
        let mut queue = vec![class[self.start]];
        number[class[self.start]] = 0;
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for a in 0..k {
                let d = class[self.next(rep[c], a)];
                if number[d] == usize::MAX {
                    number[d] = queue.len();
                    queue.push(d);
                }
            }
        }
        let mut delta = Vec::with_capacity(count * k);
        let mut finals = Vec::with_capacity(count);
        let mut labels = self.labels.as_ref().map(|_| Vec::with_capacity(count));
        for &c in &queue {
            let q = rep[c];
            delta.extend((0..k).map(|a| number[class[self.next(q, a)]]));
            finals.push(self.finals[q]);
            if let (Some(out), Some(src)) = (labels.as_mut(), self.labels.as_ref()) {
                out.push(src[q].clone());
            }
        }
        Dfa {
            alphabet_size: k,
            start: 0,
            delta,
            finals,
            labels,
        }
    }

    /// Language equivalence by reachability in the product automaton.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        if self.alphabet_size != other.alphabet_size {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet_size,
                right: other.alphabet_size,
            });
        }
        let m = other.state_count();
        let mut seen = vec![false; self.state_count() * m];
        let mut stack = vec![(self.start, other.start)];
        seen[self.start * m + other.start] = true;
        while let Some((p, q)) = stack.pop() {
            if self.finals[p] != other.finals[q] {
                return Ok(false);
            }
            for a in 0..self.alphabet_size {
                let (p2, q2) = (self.next(p, a), other.next(q, a));
                if !seen[p2 * m + q2] {
                    seen[p2 * m + q2] = true;
                    stack.push((p2, q2));
                }
            }
        }
        Ok(true)
    }

    /// Every letter acts as a bijection on the states.
    pub fn is_permutation(&self) -> bool {
        let n = self.state_count();
        (0..self.alphabet_size).all(|a| {
            let mut hit = vec![false; n];
            (0..n).all(|q| !core::mem::replace(&mut hit[self.next(q, a)], true))
        })
    }

    /// Aperiodicity of the transition monoid with the default budget.
    pub fn is_aperiodic(&self) -> Result<bool> {
        self.is_aperiodic_with_budget(DEFAULT_MONOID_BUDGET)
    }

    /// Enumerates the transition monoid by closing the letter maps under
    /// composition, then checks that every element `m` satisfies
    /// `m^e = m^(e+1)` for some `e`.
    pub fn is_aperiodic_with_budget(&self, budget: usize) -> Result<bool> {
        let n = self.state_count();
        let k = self.alphabet_size;
        let identity: Vec<usize> = (0..n).collect();
        let letters: Vec<Vec<usize>> = (0..k)
            .map(|a| (0..n).map(|q| self.next(q, a)).collect())
            .collect();
        let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        let mut elements = vec![identity.clone()];
        seen.insert(identity, ());
        let mut head = 0;
        while head < elements.len() {
            let m = elements[head].clone();
            head += 1;
            for l in &letters {
                let next: Vec<usize> = m.iter().map(|&q| l[q]).collect();
                if !seen.contains_key(&next) {
                    if elements.len() >= budget {
                        return Err(Error::MonoidBudgetExceeded { budget });
                    }
                    seen.insert(next.clone(), ());
                    elements.push(next);
                }
            }
        }
        let size = elements.len();
        Ok(elements.iter().all(|m| {
            let mut power = m.clone();
            for _ in 0..=size {
                let next: Vec<usize> = power.iter().map(|&q| m[q]).collect();
                if next == power {
                    return true;
                }
                power = next;
            }
            false
        }))
    }
}

fn dense<K: Ord>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    keys.map(|key| {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    })
    .collect()
}

/// `sc(L)`: size of the minimal complete DFA of the grid's language.
pub fn state_complexity(g: &GridAutomaton) -> usize {
    Dfa::from_grid(g).minimize().state_count()
}

/// Language equality of two grids, decided on their DFAs.
pub fn grids_equivalent(a: &GridAutomaton, b: &GridAutomaton) -> Result<bool> {
    Dfa::from_grid(a).equivalent(&Dfa::from_grid(b))
}
