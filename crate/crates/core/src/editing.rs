//! Randomized editing toward a type.
//!
//! Vertices are split at random into parts, part `i` with probability
//! `w_i`; every pair whose color is not allowed by the type is recolored to
//! the smallest allowed color. In a part whose vertex set holds a single
//! arrow, a random vertex order `sigma` decides which orientation survives,
//! so the part ends up acyclic.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::color::{PairColor, Universe};
use crate::distfun::m_matrix;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::CompleteGraph;
use crate::linalg::quadratic_form;
use crate::par;
use crate::rational::{self, Rational};
use crate::spectrum::{clique_spectrum, Mode, SpectrumTuple};
use crate::types::TypeGraph;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Checks `weights` is a probability vector of length `k`.
pub fn check_weights(weights: &[Rational], k: usize) -> Result<()> {
    if weights.len() != k {
        return Err(Error::DimensionMismatch { expected: k, actual: weights.len() });
    }
    if weights.iter().any(Signed::is_negative) || weights.iter().sum::<Rational>() != rational::one() {
        return Err(Error::InvalidArgument("weights must be nonnegative and sum to 1".into()));
    }
    Ok(())
}

/// Part index of each of `n` vertices, part `i` drawn with probability `w_i`.
pub fn sample_partition(n: usize, weights: &[Rational], rng: &mut impl Rng) -> Vec<usize> {
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += rational::to_f64(w);
            Some(*acc)
        })
        .collect();
    let last = weights.iter().rposition(|w| !w.is_zero()).unwrap_or(0);
    (0..n)
        .map(|_| {
            let x: f64 = rng.random::<f64>() * cumulative[cumulative.len() - 1];
            (0..weights.len()).find(|&i| !weights[i].is_zero() && x < cumulative[i]).unwrap_or(last)
        })
        .collect()
}

/// Parts of sizes differing by at most one, in vertex order.
pub fn equipartition(n: usize, parts: usize) -> Vec<usize> {
    (0..n).map(|v| v * parts / n.max(1)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EditOutcome<C: PairColor> {
    pub graph: CompleteGraph<C>,
    pub changes: usize,
    pub partition: Vec<usize>,
}

impl<C: PairColor> EditOutcome<C> {
    pub fn normalized(&self) -> Rational {
        let pairs = rational::binomial2(self.graph.order());
        if pairs == 0 {
            rational::zero()
        } else {
            rational::ratio(self.changes as i64, pairs as i64)
        }
    }
}

/// Recolors `g` so that `partition` embeds it into `k`. `rank[v]` is the
/// position of `v` in the random order used by single-arrow parts.
pub fn recolor_to_type<C: PairColor>(
    g: &CompleteGraph<C>,
    k: &TypeGraph<C>,
    partition: &[usize],
    rank: &[usize],
) -> EditOutcome<C> {
    let u = k.universe();
    let colors = u.colors();
    let mut out = g.clone();
    let mut changes = 0;
    for y in 1..g.order() {
        for x in 0..y {
            let (px, py) = (partition[x], partition[y]);
            let allowed = |c: C| -> bool {
                if px != py {
                    return k.edge_set(px, py) & c.bit() != 0;
                }
                let own = k.vertex_set(px);
                if !<C::Universe as Universe>::class_allows(own, c) {
                    return false;
                }
                !(c.is_arrow() && <C::Universe as Universe>::class_needs_acyclic(own))
                    || C::arrow(rank[x] < rank[y]) == Some(c)
            };
            let c = g.color(x, y);
            if !allowed(c) {
                let replacement = colors.iter().copied().find(|&d| allowed(d)).expect("type sets are nonempty");
                out.set_color(x, y, replacement);
                changes += 1;
            }
        }
    }
    EditOutcome { graph: out, changes, partition: partition.to_vec() }
}

fn random_rank(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rank = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    rank
}

fn edit_with_rng<C: PairColor>(
    g: &CompleteGraph<C>,
    k: &TypeGraph<C>,
    weights: &[Rational],
    rng: &mut impl Rng,
) -> EditOutcome<C> {
    let partition = sample_partition(g.order(), weights, rng);
    let rank = random_rank(g.order(), rng);
    recolor_to_type(g, k, &partition, &rank)
}

/// One run of the type-based editing algorithm, seeded.
///
/// Works for both settings; for digraphs the single-arrow rule applies.
pub fn edit_by_type<C: PairColor>(
    g: &CompleteGraph<C>,
    k: &TypeGraph<C>,
    weights: &[Rational],
    seed: u64,
) -> Result<EditOutcome<C>> {
    edit_trial(g, k, weights, seed, 0)
}

/// Trial `trial` of a run seeded with `seed`.
pub fn edit_trial<C: PairColor>(
    g: &CompleteGraph<C>,
    k: &TypeGraph<C>,
    weights: &[Rational],
    seed: u64,
    trial: u64,
) -> Result<EditOutcome<C>> {
    if g.universe() != k.universe() {
        return Err(Error::InvalidArgument(format!(
            "graph over {} edited toward a type over {}",
            g.universe(),
            k.universe()
        )));
    }
    check_weights(weights, k.k())?;
    Ok(edit_with_rng(g, k, weights, &mut trial_rng(seed, trial)))
}

/// Change counts of `trials` independent runs, in trial order.
pub fn edit_trials<C: PairColor>(
    g: &CompleteGraph<C>,
    k: &TypeGraph<C>,
    weights: &[Rational],
    seed: u64,
    trials: usize,
) -> Result<Vec<usize>> {
    check_weights(weights, k.k())?;
    let runs = par::map_range(trials, |t| edit_trial(g, k, weights, seed, t as u64).map(|o| o.changes));
    runs.into_iter().collect()
}

/// How [`simple_edit`] splits the vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// Consecutive blocks of equal size.
    Equal,
    /// Uniform random parts, as the type-based algorithm with equal weights.
    Random,
}

/// Splits into `sum(tuple)` parts, `a_i` of kind `i`, and removes from each
/// part what its kind forbids. The tuple must lie in the weak spectrum.
pub fn simple_edit<C: PairColor>(
    g: &CompleteGraph<C>,
    family: &Family<C>,
    tuple: &SpectrumTuple,
    split: Split,
    seed: u64,
) -> Result<EditOutcome<C>> {
    let spectrum = clique_spectrum(family, Mode::Weak);
    if !spectrum.contains(tuple) || tuple.sum() == 0 {
        return Err(Error::NotInSpectrum(tuple.entries().to_vec()));
    }
    let k = TypeGraph::simple(family.universe(), tuple)?;
    let l = k.k();
    match split {
        Split::Random => {
            let w = vec![rational::ratio(1, l as i64); l];
            edit_by_type(g, &k, &w, seed)
        }
        Split::Equal => {
            let mut rng = trial_rng(seed, 0);
            let rank = random_rank(g.order(), &mut rng);
            Ok(recolor_to_type(g, &k, &equipartition(g.order(), l), &rank))
        }
    }
}

/// `w^T M w * C(n, 2)`: the expected number of changes on a graph whose
/// own densities are `density`.
pub fn expected_changes<C: PairColor>(
    k: &TypeGraph<C>,
    weights: &[Rational],
    density: &<C::Universe as Universe>::Density,
    n: usize,
) -> Result<Rational> {
    check_weights(weights, k.k())?;
    Ok(quadratic_form(&m_matrix(k, density), weights) * rational::int(rational::binomial2(n) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{Color, Colors, DirColor, Palette};
    use crate::graph::{ColoredGraph, DiGraph};
    use crate::rational::ratio;
    use crate::spectrum::is_transitive_tournament;
    use crate::types::{DirType, RType};

    fn k4(c: u8) -> ColoredGraph {
        ColoredGraph::filled(Colors::new(2).unwrap(), 4, Color(c)).unwrap()
    }

    #[test]
    fn recolors_within_parts() {
        let u = Colors::new(2).unwrap();
        let k = RType::new(u, vec![0b10, 0b10], vec![0b11]).unwrap();
        for seed in 0..20 {
            let out = edit_by_type(&k4(1), &k, &[ratio(1, 2), ratio(1, 2)], seed).unwrap();
            let a = out.partition.iter().filter(|&&p| p == 0).count();
            let within = a * a.saturating_sub(1) / 2 + (4 - a) * (3 - a.min(3)) / 2;
            assert_eq!(out.changes, within);
            assert!(k.embeds(&out.graph));
        }
    }

    #[test]
    fn already_of_type_needs_nothing() {
        let u = Colors::new(2).unwrap();
        let k = RType::single(u, 0b01).unwrap();
        let out = edit_by_type(&k4(1), &k, &[ratio(1, 1)], 3).unwrap();
        assert_eq!(out.changes, 0);
        assert_eq!(out.graph, k4(1));
    }

    #[test]
    fn determinism() {
        let u = Colors::new(3).unwrap();
        let g = ColoredGraph::from_fn(u, 9, |i, j| Color(((i * 5 + j * 3) % 3 + 1) as u8)).unwrap();
        let k = RType::new(u, vec![0b011, 0b110], vec![0b101]).unwrap();
        let w = [ratio(1, 3), ratio(2, 3)];
        assert_eq!(edit_by_type(&g, &k, &w, 11).unwrap(), edit_by_type(&g, &k, &w, 11).unwrap());
        assert_eq!(edit_trials(&g, &k, &w, 5, 8).unwrap(), edit_trials(&g, &k, &w, 5, 8).unwrap());
    }

    #[test]
    fn single_arrow_part_becomes_transitive() {
        let t = Palette::Tourn;
        let g = DiGraph::from_fn(t, 8, |i, j| if (i + j) % 2 == 0 { DirColor::Forward } else { DirColor::Backward })
            .unwrap();
        let k = DirType::single(t, 0b0100).unwrap();
        for seed in 0..10 {
            let out = edit_by_type(&g, &k, &[ratio(1, 1)], seed).unwrap();
            assert!(is_transitive_tournament(&out.graph));
            assert_eq!(out.graph.hamming(&g).unwrap(), out.changes);
        }
    }

    #[test]
    fn transitive_input_can_stay() {
        let t = Palette::Tourn;
        let g = DiGraph::filled(t, 4, DirColor::Forward).unwrap();
        let k = DirType::single(t, 0b0100).unwrap();
        let zero = (0..200).find(|&s| edit_by_type(&g, &k, &[ratio(1, 1)], s).unwrap().changes == 0);
        assert!(zero.is_some());
    }

    #[test]
    fn simple_edit_counts() {
        let u = Colors::new(2).unwrap();
        let f = Family::new(u, vec![ColoredGraph::filled(u, 3, Color(1)).unwrap()]).unwrap();
        let one = simple_edit(&k4(1), &f, &SpectrumTuple(vec![1, 0]), Split::Equal, 0).unwrap();
        assert_eq!(one.changes, 6);
        let two = simple_edit(&k4(1), &f, &SpectrumTuple(vec![2, 0]), Split::Equal, 0).unwrap();
        assert_eq!(two.changes, 2);
        assert!(f.is_member(&two.graph));
        assert!(simple_edit(&k4(1), &f, &SpectrumTuple(vec![0, 1]), Split::Equal, 0).is_err());
    }

    #[test]
    fn simple_edit_is_the_simple_type() {
        let u = Colors::new(2).unwrap();
        let f = Family::new(u, vec![ColoredGraph::filled(u, 3, Color(1)).unwrap()]).unwrap();
        let g = ColoredGraph::from_fn(u, 10, |i, j| Color(((i * j) % 2 + 1) as u8)).unwrap();
        let t = SpectrumTuple(vec![2, 0]);
        let k = RType::simple(u, &t).unwrap();
        for seed in 0..10 {
            let a = simple_edit(&g, &f, &t, Split::Random, seed).unwrap();
            let b = edit_by_type(&g, &k, &[ratio(1, 2), ratio(1, 2)], seed).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn expected_changes_at_vertices() {
        let u = Colors::new(2).unwrap();
        let k = RType::new(u, vec![0b10, 0b01], vec![0b11]).unwrap();
        let p = crate::density::DensityVector::new(vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        assert_eq!(expected_changes(&k, &[ratio(1, 1), ratio(0, 1)], &p, 5).unwrap(), ratio(10, 4));
        assert!(expected_changes(&k, &[ratio(1, 1)], &p, 5).is_err());
    }

    #[test]
    fn zero_weight_parts_stay_empty() {
        let mut rng = trial_rng(1, 0);
        let parts = sample_partition(500, &[ratio(0, 1), ratio(1, 2), ratio(0, 1), ratio(1, 2)], &mut rng);
        assert!(parts.iter().all(|&p| p == 1 || p == 3));
        assert_eq!(equipartition(5, 2), vec![0, 0, 0, 1, 1]);
    }
}
