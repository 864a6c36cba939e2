//! Ultimately periodic subsets of the naturals and Parikh vectors.
//!
//! A unary regular language `U ⊆ a*` is identified with its exponent set
//! `{m : a^m ∈ U}`. Every such set is ultimately periodic: there is an index
//! `i` and a period `p ≥ 1` such that `m ∈ U ⇔ m + p ∈ U` for all `m ≥ i`.
//! [`UnarySet`] stores the canonical (minimal) pair together with the
//! membership bits of `0..i + p`, which is exactly the minimal unary DFA read
//! as a lasso.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, Index};

use crate::{lcm, Error, Result};

/// Ultimately periodic set of naturals in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnarySet {
    index: usize,
    period: usize,
    bits: Vec<bool>,
}

impl UnarySet {
    pub fn empty() -> Self {
        UnarySet {
            index: 0,
            period: 1,
            bits: vec![false],
        }
    }

    pub fn full() -> Self {
        UnarySet {
            index: 0,
            period: 1,
            bits: vec![true],
        }
    }

    /// The finite set `{n}`.
    pub fn singleton(n: usize) -> Self {
        let mut bits = vec![false; n + 2];
        bits[n] = true;
        UnarySet {
            index: n + 1,
            period: 1,
            bits,
        }
    }

    /// The arithmetic progression `{offset + t * period : t ≥ 0}`, i.e. the
    /// language `a^offset (a^period)*`.
    pub fn progression(offset: usize, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        let mut bits = vec![false; offset + period];
        bits[offset] = true;
        Ok(Self::normalize(offset, period, bits))
    }

    /// Builds the canonical form of a set given by any (not necessarily
    /// minimal) lasso: `bits` has length `index + period` and is read as in
    /// [`UnarySet::contains`].
    pub fn from_lasso(index: usize, period: usize, bits: Vec<bool>) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        if bits.len() != index + period {
            return Err(Error::ArityMismatch {
                expected: index + period,
                found: bits.len(),
            });
        }
        Ok(Self::normalize(index, period, bits))
    }

    /// Canonicalizes a finite prefix of an ultimately periodic set.
    ///
    /// The caller guarantees that the set has index at most `max_index` and
    /// some period at most `max_period`; `bits` must cover at least
    /// `max_index + 2 * max_period` positions.
    pub fn from_prefix(bits: &[bool], max_index: usize, max_period: usize) -> Result<Self> {
        let max_period = max_period.max(1);
        let needed = max_index + 2 * max_period;
        if bits.len() < needed {
            return Err(Error::PrefixTooShort {
                needed,
                found: bits.len(),
            });
        }
        // The window [max_index, len) has length >= 2 * max_period, so by
        // Fine and Wilf the smallest consistent candidate is the true period.
        let period = (1..=max_period)
            .find(|&p| (max_index..bits.len() - p).all(|m| bits[m] == bits[m + p]))
            .ok_or(Error::NoConsistentPeriod { max_period })?;
        let mut index = max_index;
        while index > 0 && bits[index - 1] == bits[index - 1 + period] {
            index -= 1;
        }
        Ok(UnarySet {
            index,
            period,
            bits: bits[..index + period].to_vec(),
        })
    }

    /// Shrinks a valid lasso to canonical form. The minimal eventual period
    /// divides every eventual period, so only divisors of `period` are tried.
    fn normalize(index: usize, period: usize, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), index + period);
        let cycle = &bits[index..];
        let min_period = (1..=period)
            .filter(|&q| period.is_multiple_of(q))
            .find(|&q| (0..period).all(|m| cycle[m] == cycle[m % q]))
            .unwrap_or(period);
        let bit = |m: usize| {
            if m < index {
                bits[m]
            } else {
                cycle[(m - index) % period]
            }
        };
        let mut min_index = index;
        while min_index > 0 && bit(min_index - 1) == bit(min_index - 1 + min_period) {
            min_index -= 1;
        }
        let bits = (0..min_index + min_period).map(bit).collect();
        UnarySet {
            index: min_index,
            period: min_period,
            bits,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Membership bits of `0..index + period`.
    pub fn membership(&self) -> &[bool] {
        &self.bits
    }

    /// Number of states of the minimal unary DFA.
    pub fn state_count(&self) -> usize {
        self.index + self.period
    }

    pub fn contains(&self, m: usize) -> bool {
        self.bits[self.position(m)]
    }

    /// Lasso state reached after reading `a^m`.
    pub fn position(&self, m: usize) -> usize {
        if m < self.index + self.period {
            m
        } else {
            self.index + (m - self.index) % self.period
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        self.bits[self.index..].iter().all(|b| !b)
    }

    /// Smallest member, if any.
    pub fn least(&self) -> Option<usize> {
        self.bits.iter().position(|&b| b)
    }

    fn combine(&self, other: &UnarySet, op: impl Fn(bool, bool) -> bool) -> UnarySet {
        let index = self.index.max(other.index);
        let period = lcm(self.period, other.period);
        let bits = (0..index + period)
            .map(|m| op(self.contains(m), other.contains(m)))
            .collect();
        Self::normalize(index, period, bits)
    }

    pub fn union(&self, other: &UnarySet) -> UnarySet {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &UnarySet) -> UnarySet {
        self.combine(other, |x, y| x && y)
    }

    pub fn complement(&self) -> UnarySet {
        UnarySet {
            index: self.index,
            period: self.period,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    /// `{m + n : m ∈ self, n ∈ other}`: concatenation (equivalently shuffle)
    /// of the two unary languages.
    pub fn minkowski_sum(&self, other: &UnarySet) -> UnarySet {
        if self.is_empty() || other.is_empty() {
            return UnarySet::empty();
        }
        let (ia, pa) = (self.index, self.period);
        let (ib, pb) = (other.index, other.period);
        let period = lcm(pa, pb);
        // Every summand pair becomes periodic past ia + ib + pa + pb plus the
        // Frobenius number of the periods, which is below pa * pb.
        let max_index = ia + ib + pa + pb + pa * pb;
        let len = max_index + 2 * period;
        let left: Vec<usize> = (0..len).filter(|&m| self.contains(m)).collect();
        let mut bits = vec![false; len];
        for (n, bit) in bits.iter_mut().enumerate() {
            *bit = left
                .iter()
                .take_while(|&&m| m <= n)
                .any(|&m| other.contains(n - m));
        }
        Self::from_prefix(&bits, max_index, period)
            .expect("sum of ultimately periodic sets has period dividing the lcm")
    }
}

impl Default for UnarySet {
    fn default() -> Self {
        UnarySet::empty()
    }
}

impl fmt::Display for UnarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i={}, p={}, ", self.index, self.period)?;
        for (m, &b) in self.bits.iter().enumerate() {
            if m == self.index {
                f.write_str("|")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Per-letter occurrence counts of a word, in the fixed letter order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ParikhVector(Vec<usize>);

impl ParikhVector {
    pub fn new(counts: Vec<usize>) -> Self {
        ParikhVector(counts)
    }

    pub fn zero(k: usize) -> Self {
        ParikhVector(vec![0; k])
    }

    /// Parikh image of a word given as a sequence of letter indices.
    pub fn of_word(k: usize, word: &[usize]) -> Result<Self> {
        let mut counts = vec![0; k];
        for &letter in word {
            *counts.get_mut(letter).ok_or(Error::LetterOutOfRange {
                letter,
                alphabet_size: k,
            })? += 1;
        }
        Ok(ParikhVector(counts))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Componentwise order.
    pub fn le(&self, other: &ParikhVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ParikhVector) -> ParikhVector {
        ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Keeps the coordinates whose letter is selected in `keep`.
    pub fn project(&self, keep: &[bool]) -> ParikhVector {
        ParikhVector(
            self.0
                .iter()
                .zip(keep)
                .filter(|(_, &k)| k)
                .map(|(&c, _)| c)
                .collect(),
        )
    }
}

impl Deref for ParikhVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl Index<usize> for ParikhVector {
    type Output = usize;

    fn index(&self, j: usize) -> &usize {
        &self.0[j]
    }
}

impl From<Vec<usize>> for ParikhVector {
    fn from(counts: Vec<usize>) -> Self {
        ParikhVector(counts)
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcd;

    fn period_divides(p: usize, q: usize) -> bool {
        q.is_multiple_of(p)
    }

    fn sum_bound(a: &UnarySet, b: &UnarySet) -> (usize, usize) {
        let l = lcm(a.period, b.period);
        (l.saturating_sub(1), gcd(a.period, b.period))
    }

    fn bits(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    /// Brute-force canonical form: the smallest (index, period) pair,
    /// ordered by period first, that explains a long prefix.
    fn brute_canonical(member: impl Fn(usize) -> bool, horizon: usize) -> (usize, usize) {
        let prefix: Vec<bool> = (0..horizon).map(member).collect();
        for p in 1..horizon / 4 {
            for i in 0..horizon / 4 {
                if (i..horizon - p).all(|m| prefix[m] == prefix[m + p]) {
                    return (i, p);
                }
            }
        }
        panic!("horizon too small");
    }

    #[test]
    fn canonicalize_pure_periodic() {
        let s = UnarySet::from_prefix(&bits("101010"), 2, 2).unwrap();
        assert_eq!((s.index(), s.period()), (0, 2));
        assert_eq!(s.membership(), &[true, false]);
    }

    #[test]
    fn canonicalize_single_residue() {
        // a^2 (a^3)*
        let prefix: Vec<bool> = (0..9).map(|m| m % 3 == 2).collect();
        let s = UnarySet::from_prefix(&prefix, 3, 3).unwrap();
        assert_eq!((s.index(), s.period()), (0, 3));
        assert_eq!(s.membership(), &[false, false, true]);
    }

    #[test]
    fn canonicalize_finite_plus_tail() {
        // {2} ∪ {m : m ≥ 5}; memberships 0..8 = 0 0 1 0 0 1 1 1
        let s = UnarySet::from_prefix(&bits("00100111"), 6, 1).unwrap();
        assert_eq!((s.index(), s.period()), (5, 1));
        assert_eq!(s.membership(), &bits("001001")[..]);
        let member = |m: usize| m == 2 || m >= 5;
        assert_eq!(brute_canonical(member, 40), (5, 1));
    }

    #[test]
    fn canonicalize_rejects_bad_guarantee() {
        let prefix: Vec<bool> = (0..12).map(|m| m % 5 == 0).collect();
        assert_eq!(
            UnarySet::from_prefix(&prefix, 2, 2),
            Err(Error::NoConsistentPeriod { max_period: 2 })
        );
        assert!(matches!(
            UnarySet::from_prefix(&prefix[..3], 2, 2),
            Err(Error::PrefixTooShort {
                needed: 6,
                found: 3
            })
        ));
    }

    #[test]
    fn degenerate_forms() {
        assert_eq!(UnarySet::empty().membership(), &[false]);
        assert_eq!(UnarySet::full().membership(), &[true]);
        assert!(UnarySet::progression(0, 0).is_err());
        assert_eq!(UnarySet::progression(0, 1).unwrap(), UnarySet::full());
        let s = UnarySet::singleton(3);
        assert_eq!((s.index(), s.period()), (4, 1));
        assert!(s.is_finite());
        assert_eq!(s.least(), Some(3));
    }

    #[test]
    fn union_examples() {
        let even = UnarySet::progression(0, 2).unwrap();
        let odd = UnarySet::progression(1, 2).unwrap();
        assert_eq!(even.union(&odd), UnarySet::full());

        let two = UnarySet::singleton(2);
        let tail = UnarySet::progression(5, 1).unwrap();
        let u = two.union(&tail);
        assert_eq!((u.index(), u.period()), (5, 1));
        assert_eq!(u.membership(), &bits("001001")[..]);

        assert_eq!(even.union(&UnarySet::empty()), even);
    }

    #[test]
    fn intersection_and_complement() {
        let two = UnarySet::progression(0, 2).unwrap();
        let three = UnarySet::progression(0, 3).unwrap();
        let six = two.intersection(&three);
        assert_eq!(six, UnarySet::progression(0, 6).unwrap());
        // CRT check on 0..12
        for m in 0..12 {
            assert_eq!(six.contains(m), m % 6 == 0);
        }
        let x = UnarySet::singleton(2).union(&UnarySet::progression(4, 3).unwrap());
        assert_eq!(x.complement().complement(), x);
        assert!(x.intersection(&x.complement()).is_empty());
    }

    #[test]
    fn minkowski_examples() {
        // a(aa)* + aa(aaa)*: brute-force sums up to 20
        let a = UnarySet::progression(1, 2).unwrap();
        let b = UnarySet::progression(2, 3).unwrap();
        let sum = a.minkowski_sum(&b);
        let member = |n: usize| (0..=n).any(|m| m % 2 == 1 && n >= m && (n - m) % 3 == 2);
        for n in 0..20 {
            assert_eq!(sum.contains(n), member(n), "n = {n}");
        }
        assert_eq!(brute_canonical(member, 60), (sum.index(), sum.period()));
        assert_eq!((sum.index(), sum.period()), (5, 1));
        assert!(sum.index() <= 5);
        // pq - 2 = 4 is excluded, everything from pq - 1 = 5 on is included.
        assert!(!sum.contains(4));
        assert!((5..30).all(|n| sum.contains(n)));

        assert_eq!(a.minkowski_sum(&UnarySet::singleton(0)), a);
        assert!(a.minkowski_sum(&UnarySet::empty()).is_empty());
    }

    #[test]
    fn minkowski_finite_operand_keeps_other_period() {
        let three = UnarySet::progression(0, 3).unwrap();
        let sum = UnarySet::singleton(1).minkowski_sum(&three);
        assert_eq!(sum, UnarySet::progression(1, 3).unwrap());
    }

    #[test]
    fn sum_bound_on_small_periods() {
        for p in 1..=8 {
            for q in 1..=8 {
                for r in 0..p {
                    for s in 0..q {
                        let a = UnarySet::progression(r, p).unwrap();
                        let b = UnarySet::progression(s, q).unwrap();
                        // progressions with offset < period have index 0
                        assert_eq!(a.index(), 0);
                        let sum = a.minkowski_sum(&b);
                        let (max_index, g) = sum_bound(&a, &b);
                        assert!(sum.index() <= max_index, "{a} + {b} = {sum}");
                        assert!(period_divides(sum.period(), g), "{a} + {b} = {sum}");
                    }
                }
            }
        }
    }

    #[test]
    fn parikh_vectors() {
        let v = ParikhVector::of_word(3, &[0, 2, 0]).unwrap();
        assert_eq!(v.counts(), &[2, 0, 1]);
        assert!(ParikhVector::new(vec![1, 0, 1]).le(&v));
        assert!(!v.le(&ParikhVector::new(vec![2, 0, 0])));
        assert_eq!(v.project(&[true, false, true]).counts(), &[2, 1]);
        assert!(ParikhVector::of_word(2, &[2]).is_err());
        assert_eq!(alloc::format!("{v}"), "(2,0,1)");
    }
}
