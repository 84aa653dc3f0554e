//! Ground truth at small sizes: exact edit distance by branch and bound,
//! random graph samplers, and Monte Carlo estimates of the distance.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::color::{PairColor, Universe};
use crate::distfun::{Certificate, TypeSet};
use crate::editing::{edit_trial, trial_rng};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{for_each_induced, pair_index, CompleteGraph};
use crate::par;
use crate::rational::{self, Rational};

/// Environment variable overriding the size guard of [`exact_dist`].
pub const GUARD_ENV: &str = "EDK_GUARD_N";

/// Largest order [`exact_dist`] accepts, and whether the environment
/// overrode the default.
pub fn guard_limit<U: Universe>() -> (usize, bool) {
    let default = if U::is_directed() { 8 } else { 9 };
    match std::env::var(GUARD_ENV).ok().and_then(|v| v.trim().parse().ok()) {
        Some(n) => (n, true),
        None => (default, false),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactDist<C: PairColor> {
    pub edits: usize,
    pub witness: CompleteGraph<C>,
}

impl<C: PairColor> ExactDist<C> {
    pub fn normalized(&self) -> Rational {
        let pairs = rational::binomial2(self.witness.order());
        if pairs == 0 {
            rational::zero()
        } else {
            rational::ratio(self.edits as i64, pairs as i64)
        }
    }
}

/// Minimum number of pair recolorings taking `g` into the family.
pub fn exact_dist<C: PairColor>(g: &CompleteGraph<C>, family: &Family<C>) -> Result<ExactDist<C>> {
    let (limit, _) = guard_limit::<C::Universe>();
    exact_dist_with_limit(g, family, limit)
}

pub fn exact_dist_with_limit<C: PairColor>(
    g: &CompleteGraph<C>,
    family: &Family<C>,
    limit: usize,
) -> Result<ExactDist<C>> {
    if g.order() > limit {
        return Err(Error::GuardExceeded { n: g.order(), limit });
    }
    if g.universe() != family.universe() {
        return Err(Error::InvalidArgument(format!(
            "graph over {} tested against a family over {}",
            g.universe(),
            family.universe()
        )));
    }
    let mut search = Search { family, colors: family.universe().colors(), best: g.pair_count() + 1, witness: None };
    let mut current = g.clone();
    let mut frozen = vec![false; g.pair_count()];
    search.branch(&mut current, &mut frozen, 0);
    match search.witness {
        Some(witness) => Ok(ExactDist { edits: search.best, witness }),
        None => Err(Error::NoMember(g.order())),
    }
}

struct Search<'a, C: PairColor> {
    family: &'a Family<C>,
    colors: Vec<C>,
    best: usize,
    witness: Option<CompleteGraph<C>>,
}

impl<C: PairColor> Search<'_, C> {
    /// Distinct forbidden copies, as sorted pair index lists.
    fn copies(&self, g: &CompleteGraph<C>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        for h in self.family.forbidden() {
            for_each_induced(g, h, |map| {
                let mut pairs = Vec::with_capacity(map.len() * map.len().saturating_sub(1) / 2);
                for b in 1..map.len() {
                    for a in 0..b {
                        let (x, y) = if map[a] < map[b] { (map[a], map[b]) } else { (map[b], map[a]) };
                        pairs.push(pair_index(x, y));
                    }
                }
                pairs.sort_unstable();
                seen.insert(pairs);
                true
            });
        }
        seen.into_iter().collect()
    }

    fn branch(&mut self, g: &mut CompleteGraph<C>, frozen: &mut [bool], edits: usize) {
        if edits >= self.best {
            return;
        }
        let copies = self.copies(g);
        if copies.is_empty() {
            self.best = edits;
            self.witness = Some(g.clone());
            return;
        }
        // free pairs per copy; a copy with none cannot be destroyed here
        let free: Vec<Vec<usize>> =
            copies.iter().map(|c| c.iter().copied().filter(|&e| !frozen[e]).collect()).collect();
        if free.iter().any(Vec::is_empty) {
            return;
        }
        // greedy packing of copies with disjoint free pairs
        let mut used = BTreeSet::new();
        let mut packing = 0;
        let mut by_size: Vec<&Vec<usize>> = free.iter().collect();
        by_size.sort_by_key(|f| f.len());
        for f in &by_size {
            if f.iter().all(|e| !used.contains(e)) {
                used.extend(f.iter().copied());
                packing += 1;
            }
        }
        if edits + packing >= self.best {
            return;
        }
        // branch on the first pivot pair that changes; earlier ones stay frozen
        let pivot = by_size[0].clone();
        for &e in &pivot {
            let original = g.pairs()[e];
            frozen[e] = true;
            for c in self.colors.clone() {
                if c == original {
                    continue;
                }
                g.set_pair(e, c);
                self.branch(g, frozen, edits + 1);
            }
            g.set_pair(e, original);
        }
        for &e in &pivot {
            frozen[e] = false;
        }
    }
}

/// Draws one graph with independent pair colors at `density`.
pub fn sample_with<U: Universe>(
    universe: U,
    n: usize,
    density: &U::Density,
    rng: &mut impl Rng,
) -> CompleteGraph<U::Color> {
    let colors = universe.colors();
    let probs: Vec<f64> = colors.iter().map(|c| rational::to_f64(&universe.mask_weight(c.bit(), density))).collect();
    let total: f64 = probs.iter().sum();
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    CompleteGraph::from_fn(universe, n, |_, _| {
        let mut x = rng.random::<f64>() * total;
        for (i, &p) in probs.iter().enumerate() {
            if p > 0.0 && x < p {
                return colors[i];
            }
            x -= p;
        }
        colors[last]
    })
    .expect("sampled colors lie in the universe")
}

pub fn sample_rgraph(n: usize, p: &crate::density::DensityVector, seed: u64) -> Result<crate::graph::ColoredGraph> {
    let r = u8::try_from(p.r()).map_err(|_| Error::InvalidDensity(format!("{} colors", p.r())))?;
    let u = crate::color::Colors::new(r)?;
    Ok(sample_with(u, n, p, &mut trial_rng(seed, 0)))
}

pub fn sample_digraph(n: usize, d: &crate::density::DirDensity, seed: u64) -> crate::graph::DiGraph {
    sample_with(d.palette(), n, d, &mut trial_rng(seed, 0))
}

/// How [`estimate_dist`] measures each sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateMode {
    /// Exact branch-and-bound distance.
    Exact,
    /// Change count of the editing algorithm with the best type found.
    Algorithmic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub n: usize,
    pub trials: usize,
    pub mode: EstimateMode,
    #[serde(serialize_with = "rational::serialize")]
    pub mean: Rational,
    pub std_dev: f64,
    #[serde(serialize_with = "rational::serialize")]
    pub min: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub max: Rational,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub values: Vec<Rational>,
}

impl Estimate {
    fn from_values(n: usize, mode: EstimateMode, values: Vec<Rational>) -> Estimate {
        let trials = values.len();
        let (mean, std_dev) = if trials == 0 {
            (rational::zero(), 0.0)
        } else {
            let mean = values.iter().sum::<Rational>() / rational::int(trials as i64);
            let m = mean.to_f64().unwrap_or(f64::NAN);
            let var = values.iter().map(|v| (rational::to_f64(v) - m).powi(2)).sum::<f64>() / trials as f64;
            (mean, var.sqrt())
        };
        let min = values.iter().min().cloned().unwrap_or_else(rational::zero);
        let max = values.iter().max().cloned().unwrap_or_else(rational::zero);
        Estimate { n, trials, mode, mean, std_dev, min, max, values }
    }
}

/// Normalized distances of `trials` random graphs on `n` vertices.
///
/// Sample `t` is drawn from stream `t` of `seed`; algorithmic mode edits it
/// toward the best type of `types` at `density`, using stream `t` of
/// `seed + 1`.
pub fn estimate_dist<C: PairColor>(
    n: usize,
    density: &<C::Universe as Universe>::Density,
    family: &Family<C>,
    trials: usize,
    seed: u64,
    mode: EstimateMode,
    types: Option<&TypeSet<C>>,
) -> Result<Estimate> {
    let u = family.universe();
    let pairs = rational::binomial2(n) as i64;
    let normalize = |k: usize| if pairs == 0 { rational::zero() } else { rational::ratio(k as i64, pairs) };
    let sample = |t: usize| sample_with(u, n, density, &mut trial_rng(seed, t as u64));
    let values: Vec<Result<Rational>> = match mode {
        EstimateMode::Exact => {
            let (limit, _) = guard_limit::<C::Universe>();
            if n > limit {
                return Err(Error::GuardExceeded { n, limit });
            }
            par::map_range(trials, |t| exact_dist_with_limit(&sample(t), family, limit).map(|d| normalize(d.edits)))
        }
        EstimateMode::Algorithmic => {
            let types = types.ok_or_else(|| Error::InvalidArgument("algorithmic mode needs a type set".into()))?;
            let bound = types.upper(density)?;
            let Certificate::Type { type_graph, weights, .. } = bound.certificate else {
                unreachable!("upper bounds carry a type")
            };
            par::map_range(trials, |t| {
                edit_trial(&sample(t), &type_graph, &weights, seed.wrapping_add(1), t as u64)
                    .map(|o| normalize(o.changes))
            })
        }
    };
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(Estimate::from_values(n, mode, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{Color, Colors, DirColor, Palette};
    use crate::density::{DensityVector, DirDensity};
    use crate::graph::{ColoredGraph, DiGraph};
    use crate::rational::ratio;

    fn mono(n: usize, c: u8) -> ColoredGraph {
        ColoredGraph::filled(Colors::new(2).unwrap(), n, Color(c)).unwrap()
    }

    fn mono_family() -> Family<Color> {
        Family::new(Colors::new(2).unwrap(), vec![mono(3, 1)]).unwrap()
    }

    #[test]
    fn small_exact_distances() {
        let f = mono_family();
        assert_eq!(exact_dist(&mono(3, 1), &f).unwrap().edits, 1);
        let d = exact_dist(&mono(4, 1), &f).unwrap();
        assert_eq!(d.edits, 2);
        assert!(f.is_member(&d.witness));
        assert_eq!(exact_dist(&mono(4, 2), &f).unwrap().edits, 0);
        // triangle-free in color 1 on 5 vertices keeps at most 6 of 10 pairs
        assert_eq!(exact_dist(&mono(5, 1), &f).unwrap().edits, 4);
    }

    #[test]
    fn exhaustive_agreement() {
        // brute force over all 2-colorings within distance of a 5-vertex graph
        let u = Colors::new(2).unwrap();
        let f = Family::new(
            u,
            vec![mono(3, 1), ColoredGraph::from_rows(u, &[vec![Color(1), Color(2)], vec![Color(2)]]).unwrap()],
        )
        .unwrap();
        for seed in 0..6 {
            let g = sample_with(u, 5, &DensityVector::uniform(2), &mut trial_rng(seed, 0));
            let mut best = usize::MAX;
            for bits in 0u32..1 << 10 {
                let h = ColoredGraph::from_pairs(u, 5, (0..10).map(|i| Color((bits >> i & 1) as u8 + 1)).collect())
                    .unwrap();
                if f.is_member(&h) {
                    best = best.min(g.hamming(&h).unwrap());
                }
            }
            let got = exact_dist(&g, &f);
            if best == usize::MAX {
                assert_eq!(got.unwrap_err(), Error::NoMember(5));
            } else {
                assert_eq!(got.unwrap().edits, best);
            }
        }
    }

    #[test]
    fn guard() {
        let f = mono_family();
        assert!(matches!(exact_dist_with_limit(&mono(6, 1), &f, 5), Err(Error::GuardExceeded { n: 6, limit: 5 })));
    }

    #[test]
    fn no_member() {
        let t = Palette::Tourn;
        let trans =
            DiGraph::from_rows(t, &[vec![DirColor::Forward, DirColor::Forward], vec![DirColor::Forward]]).unwrap();
        let f = Family::new(t, vec![trans]).unwrap();
        let g = DiGraph::filled(t, 4, DirColor::Forward).unwrap();
        assert_eq!(exact_dist(&g, &f).unwrap_err(), Error::NoMember(4));
    }

    #[test]
    fn samplers() {
        let p = DensityVector::new(vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)]).unwrap();
        let g = sample_rgraph(10, &p, 1).unwrap();
        assert!(g.pairs().iter().all(|&c| c == Color(1)));
        assert_eq!(
            sample_rgraph(10, &DensityVector::uniform(3), 9).unwrap(),
            sample_rgraph(10, &DensityVector::uniform(3), 9).unwrap()
        );

        let d = DirDensity::new(ratio(0, 1), ratio(1, 2), Palette::Tourn).unwrap();
        assert!(sample_digraph(12, &d, 2).pairs().iter().all(|c| c.is_arrow()));
        let d = DirDensity::new(ratio(1, 2), ratio(0, 1), Palette::Undir).unwrap();
        assert!(sample_digraph(12, &d, 2).pairs().iter().all(|c| !c.is_arrow()));
    }

    #[test]
    fn estimates() {
        let f = mono_family();
        let p = DensityVector::new(vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let exact = estimate_dist(6, &p, &f, 8, 3, EstimateMode::Exact, None).unwrap();
        assert_eq!(exact.trials, 8);
        assert!(exact.min <= exact.mean && exact.mean <= exact.max);
        let types = TypeSet::enumerate(&f, 2, Default::default()).unwrap();
        let alg = estimate_dist(6, &p, &f, 8, 3, EstimateMode::Algorithmic, Some(&types)).unwrap();
        for (a, e) in alg.values.iter().zip(&exact.values) {
            assert!(a >= e);
        }
        let far = Family::new(Colors::new(2).unwrap(), vec![mono(9, 1)]).unwrap();
        assert_eq!(estimate_dist(6, &p, &far, 4, 0, EstimateMode::Exact, None).unwrap().mean, ratio(0, 1));
    }
}
