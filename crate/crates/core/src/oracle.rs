//! Brute-force reference semantics on a finite Parikh box.
//!
//! A [`BoxLanguage`] is the set of Parikh vectors of a commutative language
//! that lie below a corner `B`. Every operation here works directly on those
//! vectors, never on grid tuples, so agreement with the grid construction is
//! an independent check. Complements and interiors are box-relative.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::grid::{BoxShape, GridAutomaton};
use crate::parikh::ParikhVector;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxLanguage {
    bound: Vec<usize>,
    members: Vec<bool>,
}

impl BoxLanguage {
    fn shape_of(bound: &[usize]) -> BoxShape {
        BoxShape::new(bound.iter().map(|b| b + 1).collect())
    }

    fn shape(&self) -> BoxShape {
        Self::shape_of(&self.bound)
    }

    pub fn new(
        bound: ParikhVector,
        members: impl IntoIterator<Item = ParikhVector>,
    ) -> Result<Self> {
        let shape = Self::shape_of(&bound);
        let mut table = vec![false; shape.size()];
        for v in members {
            if v.arity() != bound.arity() {
                return Err(Error::ArityMismatch {
                    expected: bound.arity(),
                    found: v.arity(),
                });
            }
            if !v.le(&bound) {
                return Err(Error::FinalOutOfBox);
            }
            table[shape.encode(&v)] = true;
        }
        Ok(BoxLanguage {
            bound: bound.into_inner(),
            members: table,
        })
    }

    /// `{v ≤ B : v ∈ L(g)}`.
    pub fn from_grid(g: &GridAutomaton, bound: &ParikhVector) -> Result<Self> {
        if bound.arity() != g.alphabet_size() {
            return Err(Error::ArityMismatch {
                expected: g.alphabet_size(),
                found: bound.arity(),
            });
        }
        let shape = Self::shape_of(bound);
        let mut members = Vec::with_capacity(shape.size());
        for addr in 0..shape.size() {
            members.push(g.contains(&ParikhVector::new(shape.decode(addr)))?);
        }
        Ok(BoxLanguage {
            bound: bound.to_vec(),
            members,
        })
    }

    pub fn bound(&self) -> ParikhVector {
        ParikhVector::new(self.bound.clone())
    }

    pub fn arity(&self) -> usize {
        self.bound.len()
    }

    /// Membership; vectors outside the box are reported as absent.
    pub fn contains(&self, v: &[usize]) -> bool {
        v.len() == self.bound.len()
            && v.iter().zip(&self.bound).all(|(a, b)| a <= b)
            && self.members[self.shape().encode(v)]
    }

    pub fn members(&self) -> Vec<ParikhVector> {
        let shape = self.shape();
        (0..shape.size())
            .filter(|&addr| self.members[addr])
            .map(|addr| ParikhVector::new(shape.decode(addr)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Restriction to a smaller corner.
    pub fn restrict(&self, bound: &ParikhVector) -> Result<Self> {
        self.check_covers(bound)?;
        let members = self.members().into_iter().filter(|v| v.le(bound));
        BoxLanguage::new(bound.clone(), members)
    }

    fn check_covers(&self, bound: &[usize]) -> Result<()> {
        if bound.len() != self.bound.len() {
            return Err(Error::ArityMismatch {
                expected: self.bound.len(),
                found: bound.len(),
            });
        }
        if bound.iter().zip(&self.bound).any(|(a, b)| a > b) {
            return Err(Error::FinalOutOfBox);
        }
        Ok(())
    }

    fn zip_with(&self, other: &BoxLanguage, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.bound != other.bound {
            return Err(Error::ArityMismatch {
                expected: self.bound.len(),
                found: other.bound.len(),
            });
        }
        Ok(BoxLanguage {
            bound: self.bound.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &BoxLanguage) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &BoxLanguage) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        BoxLanguage {
            bound: self.bound.clone(),
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    /// Deletes the coordinates of letters not in `letters`.
    pub fn project(&self, letters: &[usize]) -> Result<Self> {
        let k = self.bound.len();
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
        let bound = ParikhVector::new(self.bound.clone()).project(&keep);
        let members: Vec<ParikhVector> = self.members().iter().map(|v| v.project(&keep)).collect();
        BoxLanguage::new(bound, members)
    }

    /// `{u + v ≤ B : u ∈ a, v ∈ b}`. Both operands must cover `B`.
    pub fn minkowski(a: &BoxLanguage, b: &BoxLanguage, bound: &ParikhVector) -> Result<Self> {
        a.check_covers(bound)?;
        b.check_covers(bound)?;
        let shape = Self::shape_of(bound);
        let left: Vec<ParikhVector> = a.members().into_iter().filter(|u| u.le(bound)).collect();
        let members = (0..shape.size())
            .map(|addr| {
                let v = shape.decode(addr);
                left.iter().any(|u| {
                    let mut rest = Vec::with_capacity(v.len());
                    for (x, y) in v.iter().zip(u.iter()) {
                        if y > x {
                            return false;
                        }
                        rest.push(x - y);
                    }
                    b.contains(&rest)
                })
            })
            .collect();
        Ok(BoxLanguage {
            bound: bound.to_vec(),
            members,
        })
    }

    /// `{v ≤ B : ∃u ∈ self, u ≤ v}`. Exact whenever `self` covers `B`.
    pub fn up_closure(&self, bound: &ParikhVector) -> Result<Self> {
        let base = self.restrict(bound)?;
        let shape = base.shape();
        let mut members = base.members.clone();
        for addr in 0..shape.size() {
            if !members[addr] {
                members[addr] = (0..bound.arity())
                    .any(|j| shape.coord(addr, j) > 0 && members[addr - shape.stride(j)]);
            }
        }
        Ok(BoxLanguage {
            bound: bound.to_vec(),
            members,
        })
    }

    /// `{v ≤ B : ∃u ∈ self, v ≤ u}` where `u` ranges over the whole box of
    /// `self`, which must be large enough to contain the witnesses.
    pub fn down_closure(&self, bound: &ParikhVector) -> Result<Self> {
        self.check_covers(bound)?;
        let shape = self.shape();
        let mut members = self.members.clone();
        for addr in (0..shape.size()).rev() {
            if !members[addr] {
                members[addr] = (0..self.bound.len()).any(|j| {
                    shape.coord(addr, j) < self.bound[j] && members[addr + shape.stride(j)]
                });
            }
        }
        BoxLanguage {
            bound: self.bound.clone(),
            members,
        }
        .restrict(bound)
    }

    /// Complement of `↓(complement)`, box-relative.
    pub fn upward_interior(&self, bound: &ParikhVector) -> Result<Self> {
        Ok(self.complement().down_closure(bound)?.complement())
    }

    /// Complement of `↑(complement)`, box-relative.
    pub fn downward_interior(&self, bound: &ParikhVector) -> Result<Self> {
        Ok(self.complement().up_closure(bound)?.complement())
    }

    pub fn is_upward_closed(&self) -> bool {
        self.up_closure(&self.bound()).is_ok_and(|u| u == *self)
    }

    pub fn is_downward_closed(&self) -> bool {
        self.down_closure(&self.bound()).is_ok_and(|d| d == *self)
    }
}

/// Default comparison corner for a grid: `B_j = i_j + 2 p_j + 4`.
pub fn default_bound(g: &GridAutomaton) -> ParikhVector {
    ParikhVector::new(
        g.axes()
            .iter()
            .map(|a| a.index + 2 * a.period + 4)
            .collect(),
    )
}

/// Outcome of comparing a grid with a box language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub agrees: bool,
    /// The box corner dominates the grid's saturation corner `i_j + p_j - 1`,
    /// so behavior beyond the box follows from periodicity.
    pub covers_saturation: bool,
    pub first_mismatch: Option<ParikhVector>,
}

pub fn oracle_check(g: &GridAutomaton, expected: &BoxLanguage) -> Result<OracleReport> {
    let bound = expected.bound();
    let actual = BoxLanguage::from_grid(g, &bound)?;
    let first_mismatch = actual
        .members
        .iter()
        .zip(&expected.members)
        .position(|(a, b)| a != b)
        .map(|addr| ParikhVector::new(actual.shape().decode(addr)));
    Ok(OracleReport {
        agrees: first_mismatch.is_none(),
        covers_saturation: g
            .axes()
            .iter()
            .zip(bound.iter())
            .all(|(a, &b)| b + 1 >= a.len()),
        first_mismatch,
    })
}

/// Grid and box membership agree on every vector of the box.
pub fn oracle_equiv(g: &GridAutomaton, expected: &BoxLanguage) -> bool {
    oracle_check(g, expected).is_ok_and(|r| r.agrees)
}

/// All interleavings of two words, straight from the definition of shuffle.
pub fn interleavings(u: &[usize], v: &[usize]) -> BTreeSet<Vec<usize>> {
    fn go(u: &[usize], v: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if u.is_empty() && v.is_empty() {
            out.insert(prefix.clone());
            return;
        }
        if let Some((&x, rest)) = u.split_first() {
            prefix.push(x);
            go(rest, v, prefix, out);
            prefix.pop();
        }
        if let Some((&y, rest)) = v.split_first() {
            prefix.push(y);
            go(u, rest, prefix, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(u, v, &mut Vec::new(), &mut out);
    out
}

/// The operations cross-checked against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operation {
    Union,
    Intersection,
    Complement,
    Shuffle,
    Projection(Vec<usize>),
    UpwardClosure,
    DownwardClosure,
    UpwardInterior,
    DownwardInterior,
}

impl Operation {
    /// All nine operations; projection keeps the letters in `letters`.
    pub fn all(letters: Vec<usize>) -> Vec<Operation> {
        vec![
            Operation::Union,
            Operation::Intersection,
            Operation::Complement,
            Operation::Shuffle,
            Operation::Projection(letters),
            Operation::UpwardClosure,
            Operation::DownwardClosure,
            Operation::UpwardInterior,
            Operation::DownwardInterior,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Operation::Union => "union",
            Operation::Intersection => "intersection",
            Operation::Complement => "complement",
            Operation::Shuffle => "shuffle",
            Operation::Projection(_) => "projection",
            Operation::UpwardClosure => "upward_closure",
            Operation::DownwardClosure => "downward_closure",
            Operation::UpwardInterior => "upward_interior",
            Operation::DownwardInterior => "downward_interior",
        }
    }

    pub fn is_binary(&self) -> bool {
        matches!(
            self,
            Operation::Union | Operation::Intersection | Operation::Shuffle
        )
    }

    /// Applies the grid implementation.
    pub fn apply(&self, a: &GridAutomaton, b: &GridAutomaton) -> Result<GridAutomaton> {
        Ok(match self {
            Operation::Union => a.union(b)?,
            Operation::Intersection => a.intersection(b)?,
            Operation::Complement => a.complement(),
            Operation::Shuffle => a.shuffle(b)?,
            Operation::Projection(letters) => a.project(letters)?,
            Operation::UpwardClosure => a.upward_closure(),
            Operation::DownwardClosure => a.downward_closure(),
            Operation::UpwardInterior => a.upward_interior(),
            Operation::DownwardInterior => a.downward_interior(),
        })
    }

    /// Computes the expected result on the box `bound` from the operands'
    /// Parikh sets alone.
    pub fn expected(
        &self,
        a: &GridAutomaton,
        b: &GridAutomaton,
        bound: &ParikhVector,
    ) -> Result<BoxLanguage> {
        // Input boxes large enough that every witness for a vector in the
        // result box has a representative inside: coordinates beyond the
        // saturation corner can be shortened by whole periods.
        let widened = |g: &GridAutomaton, base: &[usize]| {
            ParikhVector::new(
                g.canonicalize()
                    .axes()
                    .iter()
                    .zip(base)
                    .map(|(axis, &x)| x + axis.len())
                    .collect(),
            )
        };
        let at = |g: &GridAutomaton| BoxLanguage::from_grid(g, bound);
        match self {
            Operation::Union => at(a)?.union(&at(b)?),
            Operation::Intersection => at(a)?.intersection(&at(b)?),
            Operation::Complement => Ok(at(a)?.complement()),
            Operation::Shuffle => BoxLanguage::minkowski(&at(a)?, &at(b)?, bound),
            Operation::Projection(letters) => {
                let k = a.alphabet_size();
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
                if bound.arity() != keep.iter().filter(|&&x| x).count() {
                    return Err(Error::ArityMismatch {
                        expected: keep.iter().filter(|&&x| x).count(),
                        found: bound.arity(),
                    });
                }
                let mut kept = bound.iter();
                let base: Vec<usize> = keep
                    .iter()
                    .map(|&kp| if kp { *kept.next().unwrap() } else { 0 })
                    .collect();
                let full = BoxLanguage::from_grid(a, &widened(a, &base))?;
                full.project(letters)?.restrict(bound)
            }
            Operation::UpwardClosure => at(a)?.up_closure(bound),
            Operation::DownwardClosure => {
                BoxLanguage::from_grid(a, &widened(a, bound))?.down_closure(bound)
            }
            Operation::UpwardInterior => {
                BoxLanguage::from_grid(a, &widened(a, bound))?.upward_interior(bound)
            }
            Operation::DownwardInterior => at(a)?.downward_interior(bound),
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Projection(letters) => {
                f.write_str("projection{")?;
                for (n, l) in letters.iter().enumerate() {
                    if n > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str("}")
            }
            other => f.write_str(other.name()),
        }
    }
}

/// A disagreement between a grid operation and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub operation: Operation,
    pub left: GridAutomaton,
    pub right: GridAutomaton,
    pub result: GridAutomaton,
    /// `None` when the comparison box failed to cover the saturation corner.
    pub vector: Option<ParikhVector>,
    pub grid_says: bool,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.vector {
            Some(v) => write!(
                f,
                "{} disagrees at {}: grid says {}, oracle says {}",
                self.operation, v, self.grid_says, !self.grid_says
            ),
            None => write!(
                f,
                "{}: comparison box misses the saturation corner",
                self.operation
            ),
        }
    }
}

/// Runs one operation through the grid implementation and the oracle and
/// compares them on the result's default box.
pub fn check_operation(
    op: &Operation,
    a: &GridAutomaton,
    b: &GridAutomaton,
) -> Result<core::result::Result<GridAutomaton, Mismatch>> {
    let result = op.apply(a, b)?;
    let bound = default_bound(&result);
    let expected = op.expected(a, b, &bound)?;
    let report = oracle_check(&result, &expected)?;
    if report.agrees && report.covers_saturation {
        return Ok(Ok(result));
    }
    let grid_says = match &report.first_mismatch {
        Some(v) => result.contains(v)?,
        None => false,
    };
    Ok(Err(Mismatch {
        operation: op.clone(),
        left: a.clone(),
        right: b.clone(),
        result,
        vector: report.first_mismatch,
        grid_says,
    }))
}

/// Human-readable dump of a box language, mostly for test failure messages.
pub fn describe(b: &BoxLanguage) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = write!(out, "box {} members [", b.bound());
    for (n, v) in b.members().iter().enumerate() {
        if n > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v}");
    }
    out.push(']');
    out
}
