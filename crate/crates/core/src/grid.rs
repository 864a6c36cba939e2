//! Grid automata: the minimal commutative automaton of a commutative regular
//! language and the operations closed on it.
//!
//! A grid over `k` letters has one lasso per letter. Axis `j` has states
//! `0..index_j + period_j`; reading `a_j` advances along the tail and wraps
//! around the cycle. The automaton state is the tuple of axis states, so a
//! word's state depends only on its Parikh vector. A tuple table marks the
//! accepting tuples.
//!
//! Every operation returns a canonical grid: no two states on the same axis
//! are Nerode-equivalent. For a canonical grid the axis shapes are exactly the
//! index and period vectors of the language.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::parikh::{ParikhVector, UnarySet};
use crate::{gcd, lcm, Error, Result};

/// Shape of one letter's lasso: `index` tail states followed by a cycle of
/// `period` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Axis {
    pub index: usize,
    pub period: usize,
}

impl Axis {
    pub fn new(index: usize, period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        Ok(Axis { index, period })
    }

    /// Number of axis states, `index + period`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.index + self.period
    }

    /// Axis state reached after `m` occurrences of the letter.
    pub fn residue(&self, m: usize) -> usize {
        if m < self.len() {
            m
        } else {
            self.index + (m - self.index) % self.period
        }
    }

    pub fn step(&self, s: usize) -> usize {
        if s + 1 < self.len() {
            s + 1
        } else {
            self.index
        }
    }

    pub fn in_cycle(&self, s: usize) -> bool {
        s >= self.index
    }

    /// Smallest axis into which both `self` and `other` embed.
    pub fn align(&self, other: &Axis) -> Axis {
        Axis {
            index: self.index.max(other.index),
            period: lcm(self.period, other.period),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.index, self.period)
    }
}

/// Row-major addressing of tuples in a grid box; the last coordinate varies
/// fastest, so ascending addresses are lexicographic order.
#[derive(Debug, Clone)]
pub(crate) struct BoxShape {
    lens: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl BoxShape {
    pub(crate) fn new(lens: Vec<usize>) -> Self {
        let mut strides = vec![0; lens.len()];
        let mut size = 1;
        for j in (0..lens.len()).rev() {
            strides[j] = size;
            size *= lens[j];
        }
        BoxShape {
            lens,
            strides,
            size,
        }
    }

    pub(crate) fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().zip(&self.strides).map(|(s, st)| s * st).sum()
    }

    pub(crate) fn decode(&self, mut addr: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|st| {
                let s = addr / st;
                addr %= st;
                s
            })
            .collect()
    }

    pub(crate) fn coord(&self, addr: usize, j: usize) -> usize {
        addr / self.strides[j] % self.lens[j]
    }

    pub(crate) fn stride(&self, j: usize) -> usize {
        self.strides[j]
    }

    /// Calls `f` with the address of every tuple in the product of the given
    /// per-axis coordinate lists.
    pub(crate) fn for_each_in_product(&self, coords: &[Vec<usize>], mut f: impl FnMut(usize)) {
        if coords.iter().any(|c| c.is_empty()) {
            return;
        }
        let k = coords.len();
        let mut cursor = vec![0; k];
        loop {
            let addr = (0..k).map(|j| coords[j][cursor[j]] * self.strides[j]).sum();
            f(addr);
            let mut j = k;
            loop {
                if j == 0 {
                    return;
                }
                j -= 1;
                cursor[j] += 1;
                if cursor[j] < coords[j].len() {
                    break;
                }
                cursor[j] = 0;
            }
        }
    }
}

/// Index and period vectors of a commutative language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPeriodVectors {
    pub index_vector: Vec<usize>,
    pub period_vector: Vec<usize>,
}

impl IndexPeriodVectors {
    /// `max_j (i_j + p_j)`, the lower end of the state-complexity sandwich.
    pub fn max_axis_len(&self) -> usize {
        self.index_vector
            .iter()
            .zip(&self.period_vector)
            .map(|(i, p)| i + p)
            .max()
            .unwrap_or(1)
    }

    /// `∏_j (i_j + p_j)`, the upper end of the state-complexity sandwich.
    pub fn product(&self) -> usize {
        self.index_vector
            .iter()
            .zip(&self.period_vector)
            .map(|(i, p)| i + p)
            .product()
    }
}

/// Grid automaton over the letters `0..alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridAutomaton {
    axes: Vec<Axis>,
    table: Vec<bool>,
}

impl GridAutomaton {
    /// Grid with the given axes and accepting tuples, taken verbatim (not
    /// canonicalized).
    pub fn new(axes: Vec<Axis>, finals: impl IntoIterator<Item = ParikhVector>) -> Result<Self> {
        if axes.iter().any(|a| a.period == 0) {
            return Err(Error::ZeroPeriod);
        }
        let shape = BoxShape::new(axes.iter().map(Axis::len).collect());
        let mut table = vec![false; shape.size()];
        for f in finals {
            if f.arity() != axes.len() {
                return Err(Error::ArityMismatch {
                    expected: axes.len(),
                    found: f.arity(),
                });
            }
            if f.iter().zip(&axes).any(|(&s, a)| s >= a.len()) {
                return Err(Error::FinalOutOfBox);
            }
            table[shape.encode(&f)] = true;
        }
        Ok(GridAutomaton { axes, table })
    }

    pub(crate) fn from_table(axes: Vec<Axis>, table: Vec<bool>) -> Self {
        debug_assert_eq!(table.len(), axes.iter().map(Axis::len).product::<usize>());
        GridAutomaton { axes, table }
    }

    pub fn empty(k: usize) -> Self {
        GridAutomaton {
            axes: vec![
                Axis {
                    index: 0,
                    period: 1
                };
                k
            ],
            table: vec![false],
        }
    }

    pub fn sigma_star(k: usize) -> Self {
        GridAutomaton {
            axes: vec![
                Axis {
                    index: 0,
                    period: 1
                };
                k
            ],
            table: vec![true],
        }
    }

    /// The language `{ε}`.
    pub fn epsilon(k: usize) -> Self {
        Self::from_products(k, [vec![UnarySet::singleton(0); k]]).expect("arity matches")
    }

    /// `{w : |w|_{a_letter} ∈ counts, |w|_b = 0 for every other letter b}`.
    pub fn letter_language(k: usize, letter: usize, counts: UnarySet) -> Result<Self> {
        if letter >= k {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: k,
            });
        }
        let summand = (0..k)
            .map(|j| {
                if j == letter {
                    counts.clone()
                } else {
                    UnarySet::singleton(0)
                }
            })
            .collect::<Vec<_>>();
        Self::from_products(k, [summand])
    }

    /// All words with exactly the given Parikh vector.
    pub fn word_class(v: &ParikhVector) -> Self {
        let summand = v
            .iter()
            .map(|&c| UnarySet::singleton(c))
            .collect::<Vec<_>>();
        Self::from_products(v.arity(), [summand]).expect("arity matches")
    }

    /// `⋃_i U_1^(i) ⧢ ... ⧢ U_k^(i)` for unary languages `U_j^(i) ⊆ a_j*`.
    pub fn from_products<I, S>(k: usize, summands: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[UnarySet]>,
    {
        let summands: Vec<S> = summands.into_iter().collect();
        for s in &summands {
            if s.as_ref().len() != k {
                return Err(Error::ArityMismatch {
                    expected: k,
                    found: s.as_ref().len(),
                });
            }
        }
        let mut axes = vec![
            Axis {
                index: 0,
                period: 1
            };
            k
        ];
        for s in &summands {
            for (axis, u) in axes.iter_mut().zip(s.as_ref()) {
                *axis = axis.align(&Axis {
                    index: u.index(),
                    period: u.period(),
                });
            }
        }
        let shape = BoxShape::new(axes.iter().map(Axis::len).collect());
        let mut table = vec![false; shape.size()];
        for s in &summands {
            let coords: Vec<Vec<usize>> = s
                .as_ref()
                .iter()
                .zip(&axes)
                .map(|(u, a)| (0..a.len()).filter(|&m| u.contains(m)).collect())
                .collect();
            shape.for_each_in_product(&coords, |addr| table[addr] = true);
        }
        Ok(GridAutomaton { axes, table }.canonicalize())
    }

    pub fn alphabet_size(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub(crate) fn shape(&self) -> BoxShape {
        BoxShape::new(self.axes.iter().map(Axis::len).collect())
    }

    /// Number of tuples in the grid box, `∏_j (index_j + period_j)`.
    pub fn state_count(&self) -> usize {
        self.table.len()
    }

    /// Accepting tuples in lexicographic order.
    pub fn finals(&self) -> Vec<ParikhVector> {
        let shape = self.shape();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(addr, _)| ParikhVector::new(shape.decode(addr)))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|b| !b)
    }

    /// Axis state tuple reached by any word with Parikh vector `v`.
    pub fn state_of(&self, v: &ParikhVector) -> Result<Vec<usize>> {
        if v.arity() != self.axes.len() {
            return Err(Error::ArityMismatch {
                expected: self.axes.len(),
                found: v.arity(),
            });
        }
        Ok(v.iter()
            .zip(&self.axes)
            .map(|(&m, a)| a.residue(m))
            .collect())
    }

    pub fn contains(&self, v: &ParikhVector) -> Result<bool> {
        let state = self.state_of(v)?;
        Ok(self.table[self.shape().encode(&state)])
    }

    pub(crate) fn accepts_tuple(&self, tuple: &[usize]) -> bool {
        self.table[self.shape().encode(tuple)]
    }

    /// Merges Nerode-equivalent states on every axis.
    ///
    /// For axis `j`, the output of an axis state `s` is its slice: the set of
    /// tuples of the other coordinates that accept together with `s`. Moore
    /// refinement along the lasso merges `s` and `s'` iff their slices agree
    /// after every number of further `a_j` steps. The quotient of a lasso by
    /// such a congruence is again a lasso.
    pub fn canonicalize(&self) -> GridAutomaton {
        let mut grid = self.clone();
        for j in 0..grid.axes.len() {
            grid = grid.reduce_axis(j);
        }
        grid
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize() == *self
    }

    fn reduce_axis(&self, j: usize) -> GridAutomaton {
        let axis = self.axes[j];
        let n = axis.len();
        let shape = self.shape();
        let slices: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                (0..shape.size())
                    .filter(|&addr| shape.coord(addr, j) == s)
                    .map(|addr| self.table[addr])
                    .collect()
            })
            .collect();
        let mut class = dense_ids(slices.iter());
        loop {
            let refined = dense_ids((0..n).map(|s| (class[s], class[axis.step(s)])));
            let done = refined.iter().max() == class.iter().max();
            class = refined;
            if done {
                break;
            }
        }
        let classes = class.iter().max().map_or(0, |c| c + 1);
        if classes == n {
            return self.clone();
        }
        // Classes of 0, 1, ... are pairwise distinct up to the first repeat,
        // which closes the quotient lasso.
        let new_index = (0..classes)
            .find(|&s| class[s] == class[axis.residue(classes)])
            .expect("quotient of a lasso is a lasso");
        let new_axis = Axis {
            index: new_index,
            period: classes - new_index,
        };
        let mut axes = self.axes.clone();
        axes[j] = new_axis;
        let new_shape = BoxShape::new(axes.iter().map(Axis::len).collect());
        // New state s is represented by old state s, so the table is the
        // old one truncated along axis j.
        let table = (0..new_shape.size())
            .map(|addr| self.table[shape.encode(&new_shape.decode(addr))])
            .collect();
        GridAutomaton { axes, table }
    }

    /// Index and period vectors, read off the canonical grid.
    pub fn index_period(&self) -> IndexPeriodVectors {
        let c = self.canonicalize();
        IndexPeriodVectors {
            index_vector: c.axes.iter().map(|a| a.index).collect(),
            period_vector: c.axes.iter().map(|a| a.period).collect(),
        }
    }

    /// Group language test: index vector is zero.
    pub fn is_group(&self) -> bool {
        self.index_period().index_vector.iter().all(|&i| i == 0)
    }

    /// Aperiodicity test: period vector is all ones.
    pub fn is_aperiodic(&self) -> bool {
        self.index_period().period_vector.iter().all(|&p| p == 1)
    }

    /// Letters occurring in some member of the language.
    pub fn alphabet(&self) -> Vec<usize> {
        let c = self.canonicalize();
        let finals = c.finals();
        (0..c.axes.len())
            .filter(|&j| {
                // A final coordinate 0 on a cycle is also reached by p_j > 0 letters.
                finals.iter().any(|f| f[j] > 0 || c.axes[j].in_cycle(f[j]))
            })
            .collect()
    }

    fn check_same_alphabet(&self, other: &GridAutomaton) -> Result<()> {
        if self.axes.len() != other.axes.len() {
            return Err(Error::AlphabetMismatch {
                left: self.axes.len(),
                right: other.axes.len(),
            });
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &GridAutomaton,
        op: impl Fn(bool, bool) -> bool,
    ) -> Result<GridAutomaton> {
        self.check_same_alphabet(other)?;
        let axes: Vec<Axis> = self
            .axes
            .iter()
            .zip(&other.axes)
            .map(|(a, b)| a.align(b))
            .collect();
        let shape = BoxShape::new(axes.iter().map(Axis::len).collect());
        let (sa, sb) = (self.shape(), other.shape());
        let table = (0..shape.size())
            .map(|addr| {
                let t = shape.decode(addr);
                let ta: Vec<usize> = t
                    .iter()
                    .zip(&self.axes)
                    .map(|(&m, a)| a.residue(m))
                    .collect();
                let tb: Vec<usize> = t
                    .iter()
                    .zip(&other.axes)
                    .map(|(&m, a)| a.residue(m))
                    .collect();
                op(self.table[sa.encode(&ta)], other.table[sb.encode(&tb)])
            })
            .collect();
        Ok(GridAutomaton { axes, table }.canonicalize())
    }

    pub fn union(&self, other: &GridAutomaton) -> Result<GridAutomaton> {
        self.combine(other, |x, y| x || y)
    }

    pub fn intersection(&self, other: &GridAutomaton) -> Result<GridAutomaton> {
        self.combine(other, |x, y| x && y)
    }

    pub fn complement(&self) -> GridAutomaton {
        GridAutomaton {
            axes: self.axes.clone(),
            table: self.table.iter().map(|b| !b).collect(),
        }
        .canonicalize()
    }

    /// Unary component sets of the summand for a final tuple: coordinate
    /// `f_j` stands for `{f_j}` on the tail and for its residue class on the
    /// cycle.
    fn axis_component(axis: &Axis, s: usize) -> UnarySet {
        let mut bits = vec![false; axis.len()];
        bits[s] = true;
        UnarySet::from_lasso(axis.index, axis.period, bits).expect("axis is a valid lasso")
    }

    /// Splits the language into one product `U_1 ⧢ ... ⧢ U_k` per final
    /// tuple of the canonical grid.
    pub fn decompose(&self) -> Vec<Vec<UnarySet>> {
        let c = self.canonicalize();
        c.finals()
            .iter()
            .map(|f| {
                f.iter()
                    .zip(&c.axes)
                    .map(|(&s, a)| Self::axis_component(a, s))
                    .collect()
            })
            .collect()
    }

    /// Shuffle product. Both operands are decomposed into products of unary
    /// languages; unary shuffle is the Minkowski sum of exponent sets and
    /// shuffle distributes over union.
    pub fn shuffle(&self, other: &GridAutomaton) -> Result<GridAutomaton> {
        self.check_same_alphabet(other)?;
        let k = self.axes.len();
        let a = self.canonicalize();
        let b = other.canonicalize();
        let (fa, fb) = (a.finals(), b.finals());
        if fa.is_empty() || fb.is_empty() {
            return Ok(GridAutomaton::empty(k));
        }
        // Per axis, the Minkowski sum for each pair of used coordinates.
        let mut sums: Vec<BTreeMap<(usize, usize), usize>> = vec![BTreeMap::new(); k];
        let mut sets: Vec<Vec<UnarySet>> = vec![Vec::new(); k];
        for j in 0..k {
            let used_a: BTreeSet<usize> = fa.iter().map(|f| f[j]).collect();
            let used_b: BTreeSet<usize> = fb.iter().map(|f| f[j]).collect();
            let mut ids: BTreeMap<UnarySet, usize> = BTreeMap::new();
            for &s in &used_a {
                let left = Self::axis_component(&a.axes[j], s);
                for &t in &used_b {
                    let right = Self::axis_component(&b.axes[j], t);
                    let sum = left.minkowski_sum(&right);
                    let next = ids.len();
                    let id = *ids.entry(sum.clone()).or_insert_with(|| {
                        sets[j].push(sum);
                        next
                    });
                    sums[j].insert((s, t), id);
                }
            }
        }
        let mut keys: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &fa {
            for g in &fb {
                keys.insert((0..k).map(|j| sums[j][&(f[j], g[j])]).collect());
            }
        }
        let summands = keys.iter().map(|key| {
            key.iter()
                .enumerate()
                .map(|(j, &id)| sets[j][id].clone())
                .collect::<Vec<_>>()
        });
        Self::from_products(k, summands)
    }

    /// Projection onto the letters in `letters`, erasing all others. The
    /// result is over the kept letters in increasing order.
    pub fn project(&self, letters: &[usize]) -> Result<GridAutomaton> {
        let k = self.axes.len();
        let mut keep = vec![false; k];
        for &l in letters {
            if l >= k {
                return Err(Error::LetterOutOfRange {
                    letter: l,
                    alphabet_size: k,
                });
            }
            keep[l] = true;
        }
        let c = self.canonicalize();
        let axes: Vec<Axis> = c
            .axes
            .iter()
            .zip(&keep)
            .filter(|(_, &kp)| kp)
            .map(|(a, _)| *a)
            .collect();
        let shape = BoxShape::new(axes.iter().map(Axis::len).collect());
        let mut table = vec![false; shape.size()];
        for f in c.finals() {
            table[shape.encode(&f.project(&keep))] = true;
        }
        Ok(GridAutomaton { axes, table }.canonicalize())
    }

    /// The automaton `A↑` before canonicalization: every axis saturates at
    /// its last state `i_j + p_j - 1` and the finals are the up-closure of
    /// `F` in the componentwise order.
    pub fn upward_closure_automaton(&self) -> GridAutomaton {
        let c = self.canonicalize();
        let axes: Vec<Axis> = c
            .axes
            .iter()
            .map(|a| Axis {
                index: a.len() - 1,
                period: 1,
            })
            .collect();
        let shape = c.shape();
        let mut table = c.table.clone();
        // Ascending addresses visit every s - e_j before s.
        for addr in 0..shape.size() {
            if table[addr] {
                continue;
            }
            table[addr] =
                (0..axes.len()).any(|j| shape.coord(addr, j) > 0 && table[addr - shape.stride(j)]);
        }
        GridAutomaton { axes, table }
    }

    /// The automaton `A↓` before canonicalization: transitions are kept and
    /// the finals are the down-closure of `E'`, the tuples that on every axis
    /// either equal a final's coordinate or share the cycle with it.
    pub fn downward_closure_automaton(&self) -> GridAutomaton {
        let c = self.canonicalize();
        let shape = c.shape();
        let finals: Vec<Vec<usize>> = c
            .finals()
            .into_iter()
            .map(ParikhVector::into_inner)
            .collect();
        let mut table: Vec<bool> = (0..shape.size())
            .map(|addr| {
                let s = shape.decode(addr);
                finals.iter().any(|f| {
                    c.axes
                        .iter()
                        .enumerate()
                        .all(|(j, a)| (a.in_cycle(s[j]) && a.in_cycle(f[j])) || f[j] == s[j])
                })
            })
            .collect();
        for addr in (0..shape.size()).rev() {
            if table[addr] {
                continue;
            }
            table[addr] = (0..c.axes.len()).any(|j| {
                shape.coord(addr, j) + 1 < c.axes[j].len() && table[addr + shape.stride(j)]
            });
        }
        GridAutomaton {
            axes: c.axes.clone(),
            table,
        }
    }

    /// `↑L = L ⧢ Σ*`, all words having a member as a scattered subword.
    pub fn upward_closure(&self) -> GridAutomaton {
        self.upward_closure_automaton().canonicalize()
    }

    /// `↓L`, all scattered subwords of members.
    pub fn downward_closure(&self) -> GridAutomaton {
        self.downward_closure_automaton().canonicalize()
    }

    fn raw_complement(&self) -> GridAutomaton {
        GridAutomaton {
            axes: self.axes.clone(),
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    /// Construction for the upward interior: complement of `A↓` built on the
    /// complement (same grid box as the canonical input).
    pub fn upward_interior_automaton(&self) -> GridAutomaton {
        self.canonicalize()
            .raw_complement()
            .downward_closure_automaton()
            .raw_complement()
    }

    /// Construction for the downward interior: complement of `A↑` built on
    /// the complement.
    pub fn downward_interior_automaton(&self) -> GridAutomaton {
        self.canonicalize()
            .raw_complement()
            .upward_closure_automaton()
            .raw_complement()
    }

    /// Largest upward-closed subset of `L`: the complement of `↓(Σ* \ L)`.
    pub fn upward_interior(&self) -> GridAutomaton {
        self.upward_interior_automaton().canonicalize()
    }

    /// Largest downward-closed subset of `L`: the complement of `↑(Σ* \ L)`.
    pub fn downward_interior(&self) -> GridAutomaton {
        self.downward_interior_automaton().canonicalize()
    }
}

impl fmt::Display for GridAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("axes [")?;
        for (j, a) in self.axes.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("] finals {")?;
        for (n, v) in self.finals().iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Replaces keys by dense ids in order of first occurrence.
fn dense_ids<K: Ord>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    keys.map(|key| {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    })
    .collect()
}

/// Bounds a shuffle result must satisfy, given its operands' classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShuffleContract {
    /// Both operands are group languages with period vectors `p`, `q`:
    /// `i_j ≤ lcm(p_j, q_j) - 1` and `p'_j | gcd(p_j, q_j)`.
    Group {
        max_index: Vec<usize>,
        period_divides: Vec<usize>,
    },
    /// Both operands are aperiodic with index vectors `i`, `i'`:
    /// `i''_j ≤ i_j + i'_j` and the period vector is all ones.
    Aperiodic { max_index: Vec<usize> },
    /// No class-specific contract applies.
    General,
}

impl ShuffleContract {
    pub fn for_operands(a: &GridAutomaton, b: &GridAutomaton) -> Self {
        let (va, vb) = (a.index_period(), b.index_period());
        let group = |v: &IndexPeriodVectors| v.index_vector.iter().all(|&i| i == 0);
        let aperiodic = |v: &IndexPeriodVectors| v.period_vector.iter().all(|&p| p == 1);
        if group(&va) && group(&vb) {
            let pairs = va.period_vector.iter().zip(&vb.period_vector);
            ShuffleContract::Group {
                max_index: pairs.clone().map(|(&p, &q)| lcm(p, q) - 1).collect(),
                period_divides: pairs.map(|(&p, &q)| gcd(p, q)).collect(),
            }
        } else if aperiodic(&va) && aperiodic(&vb) {
            ShuffleContract::Aperiodic {
                max_index: va
                    .index_vector
                    .iter()
                    .zip(&vb.index_vector)
                    .map(|(i, j)| i + j)
                    .collect(),
            }
        } else {
            ShuffleContract::General
        }
    }

    pub fn holds(&self, result: &IndexPeriodVectors) -> bool {
        match self {
            ShuffleContract::Group {
                max_index,
                period_divides,
            } => {
                result
                    .index_vector
                    .iter()
                    .zip(max_index)
                    .all(|(i, m)| i <= m)
                    && result
                        .period_vector
                        .iter()
                        .zip(period_divides)
                        .all(|(p, g)| g % p == 0)
            }
            ShuffleContract::Aperiodic { max_index } => {
                result
                    .index_vector
                    .iter()
                    .zip(max_index)
                    .all(|(i, m)| i <= m)
                    && result.period_vector.iter().all(|&p| p == 1)
            }
            ShuffleContract::General => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[usize]) -> ParikhVector {
        ParikhVector::new(v.to_vec())
    }

    fn prog(i: usize, p: usize) -> UnarySet {
        UnarySet::progression(i, p).unwrap()
    }

    /// (aa)* ⧢ (bb)* ∪ (aaaa)* ⧢ b*
    pub(crate) fn parity_language() -> GridAutomaton {
        GridAutomaton::from_products(2, [[prog(0, 2), prog(0, 2)], [prog(0, 4), prog(0, 1)]])
            .unwrap()
    }

    /// bb(bb)* ∪ (b ⧢ a(aa)*)
    pub(crate) fn staircase_language() -> GridAutomaton {
        GridAutomaton::from_products(
            2,
            [
                [UnarySet::singleton(0), prog(2, 2)],
                [prog(1, 2), UnarySet::singleton(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn parity_shape() {
        let l = parity_language();
        assert_eq!(
            l.axes(),
            &[
                Axis {
                    index: 0,
                    period: 4
                },
                Axis {
                    index: 0,
                    period: 2
                }
            ]
        );
        let v = l.index_period();
        assert_eq!(v.index_vector, vec![0, 0]);
        assert_eq!(v.period_vector, vec![4, 2]);
        assert!(l.contains(&pv(&[2, 2])).unwrap());
        assert!(!l.contains(&pv(&[1, 0])).unwrap());
        assert!(l.contains(&pv(&[4, 1])).unwrap());
        assert!(l.contains(&pv(&[6, 4])).unwrap());
        assert!(!l.contains(&pv(&[6, 3])).unwrap());
        assert!(l.is_group());
        assert!(!l.is_aperiodic());
        assert!(l.contains(&pv(&[1])).is_err());
    }

    #[test]
    fn staircase_grid() {
        let l = staircase_language();
        assert_eq!(
            l.axes(),
            &[
                Axis {
                    index: 1,
                    period: 2
                },
                Axis {
                    index: 2,
                    period: 2
                }
            ]
        );
        assert_eq!(l.finals(), vec![pv(&[0, 2]), pv(&[1, 1])]);
        assert_eq!(l.state_count(), 12);
    }

    #[test]
    fn epsilon_and_sigma_star() {
        let eps = GridAutomaton::from_products(1, [[UnarySet::singleton(0)]]).unwrap();
        assert_eq!(eps, GridAutomaton::epsilon(1));
        assert!(eps.contains(&pv(&[0])).unwrap());
        assert!(!eps.contains(&pv(&[1])).unwrap());

        let padded = GridAutomaton::new(
            vec![Axis::new(2, 3).unwrap(), Axis::new(1, 2).unwrap()],
            (0..5).flat_map(|a| (0..3).map(move |b| pv(&[a, b]))),
        )
        .unwrap();
        let c = padded.canonicalize();
        assert_eq!(c, GridAutomaton::sigma_star(2));
        assert_eq!(c.state_count(), 1);
        assert_eq!(c.finals(), vec![pv(&[0, 0])]);
        let v = c.index_period();
        assert_eq!((v.index_vector, v.period_vector), (vec![0, 0], vec![1, 1]));
        assert!(c.is_group() && c.is_aperiodic());
    }

    #[test]
    fn canonicalize_is_idempotent_and_naive_build_shrinks() {
        // The parity language spelled out on an oversized 8x4 grid.
        let naive = GridAutomaton::new(
            vec![Axis::new(0, 8).unwrap(), Axis::new(0, 4).unwrap()],
            (0..8)
                .flat_map(|a| (0..4).map(move |b| (a, b)))
                .filter(|&(a, b)| (a % 2 == 0 && b % 2 == 0) || a % 4 == 0)
                .map(|(a, b)| pv(&[a, b])),
        )
        .unwrap();
        let c = naive.canonicalize();
        assert_eq!(c, parity_language());
        assert_eq!(c.canonicalize(), c);
        assert!(c.is_canonical());
        assert!(!naive.is_canonical());
    }

    #[test]
    fn singleton_vectors() {
        let l = GridAutomaton::letter_language(1, 0, UnarySet::singleton(4)).unwrap();
        let v = l.index_period();
        assert_eq!((v.index_vector, v.period_vector), (vec![5], vec![1]));
        assert!(l.is_aperiodic() && !l.is_group());
    }

    #[test]
    fn boolean_operations() {
        let k = 2;
        let rest = UnarySet::full();
        let u = GridAutomaton::from_products(k, [[prog(0, 2), rest.clone()]]).unwrap();
        let v = GridAutomaton::from_products(k, [[prog(0, 3), rest.clone()]]).unwrap();
        let both = u.intersection(&v).unwrap();
        assert_eq!(
            both.axes()[0],
            Axis {
                index: 0,
                period: 6
            }
        );
        assert_eq!(both.finals(), vec![pv(&[0, 0])]);
        let either = u.union(&v).unwrap();
        assert_eq!(
            either.axes()[0],
            Axis {
                index: 0,
                period: 6
            }
        );
        assert_eq!(either.finals().len(), 4);

        let x = staircase_language();
        assert_eq!(
            x.union(&x.complement()).unwrap(),
            GridAutomaton::sigma_star(2)
        );
        assert_eq!(x.intersection(&x).unwrap(), x);
        assert_eq!(x.complement().complement(), x);
        assert!(matches!(
            x.union(&GridAutomaton::empty(3)),
            Err(Error::AlphabetMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn decompose_round_trips() {
        let l = parity_language();
        let parts = l.decompose();
        assert_eq!(parts.len(), l.finals().len());
        assert_eq!(GridAutomaton::from_products(2, &parts).unwrap(), l);

        let single = GridAutomaton::word_class(&pv(&[1, 2]));
        assert_eq!(single.decompose().len(), 1);
        assert!(GridAutomaton::empty(2).decompose().is_empty());
    }

    #[test]
    fn shuffle_identity_and_small_words() {
        let x = staircase_language();
        assert_eq!(x.shuffle(&GridAutomaton::epsilon(2)).unwrap(), x);

        let ab = GridAutomaton::word_class(&pv(&[1, 0]))
            .union(&GridAutomaton::word_class(&pv(&[0, 1])))
            .unwrap();
        let sq = ab.shuffle(&ab).unwrap();
        let expected: Vec<ParikhVector> = vec![pv(&[0, 2]), pv(&[1, 1]), pv(&[2, 0])];
        for a in 0..5 {
            for b in 0..5 {
                let v = pv(&[a, b]);
                assert_eq!(sq.contains(&v).unwrap(), expected.contains(&v), "{v}");
            }
        }
        assert!(x.shuffle(&GridAutomaton::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn group_shuffle_sharp_vectors() {
        let (p, q) = (2, 3);
        let v = GridAutomaton::from_products(2, [[prog(p - 1, p), prog(p - 1, p)]]).unwrap();
        let w = GridAutomaton::from_products(2, [[prog(q - 1, q), prog(q - 1, q)]]).unwrap();
        let s = v.shuffle(&w).unwrap();
        let vecs = s.index_period();
        assert_eq!(vecs.index_vector, vec![5, 5]);
        assert_eq!(vecs.period_vector, vec![1, 1]);
        assert_eq!(s.state_count(), 36);
        assert!(ShuffleContract::for_operands(&v, &w).holds(&vecs));
    }

    #[test]
    fn projection() {
        let l = parity_language();
        assert_eq!(
            l.project(&[0]).unwrap(),
            GridAutomaton::from_products(1, [[prog(0, 2)]]).unwrap()
        );
        assert_eq!(l.project(&[1]).unwrap(), GridAutomaton::sigma_star(1));
        assert_eq!(l.project(&[0, 1]).unwrap(), l);
        assert!(l.project(&[2]).is_err());
    }

    #[test]
    fn closures_of_staircase() {
        let l = staircase_language();
        // ↑L = bbb* ∪ (bb* ⧢ aa*)
        let up = GridAutomaton::from_products(
            2,
            [[UnarySet::full(), prog(2, 1)], [prog(1, 1), prog(1, 1)]],
        )
        .unwrap();
        assert_eq!(l.upward_closure(), up);
        assert!(l.upward_closure_automaton().state_count() <= 12);
        // ↓L = b* ∪ (aa* ⧢ {ε, b})
        let down_b = UnarySet::singleton(0).union(&UnarySet::singleton(1));
        let down = GridAutomaton::from_products(
            2,
            [[UnarySet::singleton(0), prog(0, 1)], [prog(1, 1), down_b]],
        )
        .unwrap();
        assert_eq!(l.downward_closure(), down);
        assert!(l.downward_closure_automaton().state_count() <= 12);
        assert!(l.upward_interior().is_empty());
        assert!(l.downward_interior().is_empty());
    }

    #[test]
    fn degenerate_closures() {
        for k in 0..3 {
            let e = GridAutomaton::empty(k);
            let s = GridAutomaton::sigma_star(k);
            assert_eq!(e.upward_closure(), e);
            assert_eq!(s.upward_closure(), s);
            assert_eq!(e.downward_closure(), e);
            assert_eq!(s.upward_interior(), s);
            assert_eq!(s.downward_interior(), s);
        }
        let eps = GridAutomaton::epsilon(0);
        assert_eq!(eps, GridAutomaton::sigma_star(0));
    }

    #[test]
    fn group_upward_closure_witness() {
        let n = 4;
        let l = GridAutomaton::from_products(2, [[prog(n - 1, n), UnarySet::full()]]).unwrap();
        let up = l.upward_closure();
        assert_eq!(
            up,
            GridAutomaton::from_products(2, [[prog(n - 1, 1), UnarySet::full()]]).unwrap()
        );
        assert_eq!(up.state_count(), 4);
    }

    #[test]
    fn singleton_downward_closure() {
        let l = GridAutomaton::letter_language(1, 0, UnarySet::singleton(3)).unwrap();
        let down = l.downward_closure();
        for m in 0..10 {
            assert_eq!(down.contains(&pv(&[m])).unwrap(), m <= 3);
        }
        assert_eq!(down.state_count(), 5);
    }

    #[test]
    fn upward_interior_of_up_closed() {
        let l = GridAutomaton::word_class(&pv(&[1, 1])).upward_closure();
        assert_eq!(l.upward_interior(), l);
    }

    #[test]
    fn alphabet_and_classes() {
        let l = parity_language();
        assert_eq!(l.alphabet(), vec![0, 1]);
        let only_a = GridAutomaton::letter_language(2, 0, prog(0, 2)).unwrap();
        assert_eq!(only_a.alphabet(), vec![0]);
        assert_eq!(GridAutomaton::epsilon(2).alphabet(), Vec::<usize>::new());
        assert_eq!(GridAutomaton::empty(2).alphabet(), Vec::<usize>::new());
        assert_eq!(GridAutomaton::sigma_star(2).alphabet(), vec![0, 1]);
    }

    #[test]
    fn group_downward_closure_is_free_monoid_on_alphabet() {
        let l = parity_language();
        assert_eq!(l.downward_closure(), GridAutomaton::sigma_star(2));
        let only_a = GridAutomaton::letter_language(2, 0, prog(1, 3)).unwrap();
        assert_eq!(
            only_a.downward_closure(),
            GridAutomaton::letter_language(2, 0, UnarySet::full()).unwrap()
        );
    }

    #[test]
    fn new_validates() {
        assert_eq!(Axis::new(0, 0), Err(Error::ZeroPeriod));
        let axes = vec![Axis::new(1, 1).unwrap()];
        assert_eq!(
            GridAutomaton::new(axes.clone(), [pv(&[2])]),
            Err(Error::FinalOutOfBox)
        );
        assert!(matches!(
            GridAutomaton::new(axes, [pv(&[0, 0])]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
