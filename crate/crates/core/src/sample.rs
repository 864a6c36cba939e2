//! Random grids for property tests and fuzzing.

use alloc::vec::Vec;

use rand::Rng;

use crate::grid::{Axis, BoxShape, GridAutomaton};

/// Which class of languages to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Arbitrary index and period per axis.
    General,
    /// Index zero on every axis (commutative group languages).
    Group,
    /// Period one on every axis (commutative aperiodic languages).
    Aperiodic,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::General, Family::Group, Family::Aperiodic];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleParams {
    pub max_index: usize,
    pub max_period: usize,
    /// Probability that a tuple of the box is accepting.
    pub density: f64,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            max_index: 3,
            max_period: 3,
            density: 0.5,
        }
    }
}

/// Draws a canonical grid over `k` letters. Axes are drawn within the bounds
/// and shrink further when canonicalization merges states.
pub fn random_grid<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    family: Family,
    params: &SampleParams,
) -> GridAutomaton {
    let axes: Vec<Axis> = (0..k)
        .map(|_| {
            let index = match family {
                Family::Group => 0,
                _ => rng.gen_range(0..=params.max_index),
            };
            let period = match family {
                Family::Aperiodic => 1,
                _ => rng.gen_range(1..=params.max_period.max(1)),
            };
            Axis { index, period }
        })
        .collect();
    let shape = BoxShape::new(axes.iter().map(Axis::len).collect());
    let table = (0..shape.size())
        .map(|_| rng.gen_bool(params.density))
        .collect();
    GridAutomaton::from_table(axes, table).canonicalize()
}

/// A pair of grids over the same alphabet: `k` is drawn from `1..=max_k`,
/// the family uniformly from [`Family::ALL`] and shared by both operands.
pub fn random_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_k: usize,
    params: &SampleParams,
) -> (GridAutomaton, GridAutomaton) {
    let k = rng.gen_range(1..=max_k.max(1));
    let family = Family::ALL[rng.gen_range(0..Family::ALL.len())];
    let a = random_grid(rng, k, family, params);
    let b = random_grid(rng, k, family, params);
    (a, b)
}

/// A random nonempty subset of `0..k`, in increasing order.
pub fn random_letters<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<usize> {
    loop {
        let letters: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        if !letters.is_empty() || k == 0 {
            return letters;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let params = SampleParams::default();
        for _ in 0..50 {
            let g = random_grid(&mut rng, 2, Family::Group, &params);
            assert!(g.is_group());
            assert!(g.is_canonical());
            let h = random_grid(&mut rng, 3, Family::Aperiodic, &params);
            assert!(h.is_aperiodic());
            let x = random_grid(&mut rng, 3, Family::General, &params);
            assert!(x.axes().iter().all(|a| a.index <= 3 && a.period <= 3));
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let params = SampleParams::default();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_pair(&mut rng, 3, &params)
        };
        assert_eq!(draw(3), draw(3));
    }
}
