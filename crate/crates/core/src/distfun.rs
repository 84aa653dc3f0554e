//! Penalty matrices of types and the bounds they give on the edit distance
//! function.
//!
//! For a type `K` on `k` vertices and densities `p`, entry `(i, j)` of the
//! penalty matrix is the probability that a random pair gets a color
//! outside the set on `(u_i, u_j)`. Editing toward `K` with part weights
//! `w` changes about `w^T M w` of all pairs.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::color::{Color, Colors, PairColor, Universe};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::linalg::Matrix;
use crate::lp::{maximize, LpOutcome};
use crate::par;
use crate::qp::{f_value, g_value};
use crate::rational::{self, Rational};
use crate::spectrum::{chromatic_number, clique_spectrum, Mode, SpectrumTuple};
use crate::types::{enumerate_types, for_each_permutation, EnumLimits, TypeGraph};

/// Penalty matrix of `k` at `density`.
pub fn m_matrix<C: PairColor>(k: &TypeGraph<C>, density: &<C::Universe as Universe>::Density) -> Matrix {
    let u = k.universe();
    (0..k.k())
        .map(|i| (0..k.k()).map(|j| rational::one() - u.mask_weight(k.edge_set(i, j), density)).collect())
        .collect()
}

/// A finite set of admissible types; bounds are minima over this set.
#[derive(Clone, Debug)]
pub struct TypeSet<C: PairColor> {
    pub universe: C::Universe,
    /// Largest vertex count enumerated exhaustively.
    pub kmax: usize,
    pub types: Vec<TypeGraph<C>>,
}

impl<C: PairColor> TypeSet<C> {
    pub fn enumerate(family: &Family<C>, kmax: usize, limits: EnumLimits) -> Result<Self> {
        let types = enumerate_types(family, kmax, limits)?;
        Ok(TypeSet { universe: family.universe(), kmax, types })
    }

    /// Adds the types built from the maximum-sum tuples of the weak
    /// spectrum, which may have more than `kmax` vertices.
    pub fn with_spectrum_types(mut self, family: &Family<C>) -> Result<Self> {
        let spectrum = clique_spectrum(family, Mode::Weak);
        for t in spectrum.max_tuples() {
            if t.sum() == 0 {
                continue;
            }
            let k = TypeGraph::simple(family.universe(), &t)?;
            if !self.types.iter().any(|s| s.is_isomorphic(&k)) {
                self.types.push(k);
            }
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.types.is_empty() {
            Err(Error::NoAdmissibleType { kmax: self.kmax })
        } else {
            Ok(())
        }
    }

    /// Minimum of `g_K(p)` over the set, with the first minimizing type.
    pub fn upper(&self, density: &<C::Universe as Universe>::Density) -> Result<DistBound<C>> {
        self.require_nonempty()?;
        let values = par::map(&self.types, |k| g_value(&m_matrix(k, density)));
        let (index, best) =
            values.into_iter().enumerate().reduce(|a, b| if b.1.value < a.1.value { b } else { a }).unwrap();
        Ok(DistBound {
            value: best.value,
            kind: BoundKind::Upper,
            kmax: Some(self.kmax),
            certificate: Certificate::Type { index, type_graph: self.types[index].clone(), weights: best.weights },
        })
    }

    /// Minimum of `f_K(p)` over the set.
    pub fn min_f(&self, density: &<C::Universe as Universe>::Density) -> Result<(usize, Rational)> {
        self.require_nonempty()?;
        let values = par::map(&self.types, |k| f_value(&m_matrix(k, density)));
        Ok(values.into_iter().enumerate().reduce(|a, b| if b.1 < a.1 { b } else { a }).unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<C: PairColor> {
    /// Editing toward `type_graph` with part weights `weights`.
    Type { index: usize, type_graph: TypeGraph<C>, weights: Vec<Rational> },
    /// Turán's theorem applied to a strong coloring with `chi - 1` classes.
    Turan { chi: usize, factor: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistBound<C: PairColor> {
    pub value: Rational,
    pub kind: BoundKind,
    pub kmax: Option<usize>,
    pub certificate: Certificate<C>,
}

impl<C: PairColor> DistBound<C> {
    /// Recomputes an upper bound from its certificate.
    pub fn recompute(&self, density: &<C::Universe as Universe>::Density) -> Option<Rational> {
        match &self.certificate {
            Certificate::Type { type_graph, weights, .. } => {
                Some(crate::linalg::quadratic_form(&m_matrix(type_graph, density), weights))
            }
            Certificate::Turan { .. } => None,
        }
    }
}

/// Upper bound on `dist(p, H)` from all admissible types on at most `kmax`
/// vertices.
pub fn dist_upper<C: PairColor>(
    family: &Family<C>,
    density: &<C::Universe as Universe>::Density,
    kmax: usize,
) -> Result<DistBound<C>> {
    TypeSet::enumerate(family, kmax, EnumLimits::default())?.upper(density)
}

/// `1 / (c (chi_s - 1))` with the setting's constant `c`.
pub fn dist_lower_turan<C: PairColor>(family: &Family<C>) -> Result<DistBound<C>> {
    let chi = chromatic_number(family, Mode::Strong);
    if chi.trivial {
        return Err(Error::TrivialProperty);
    }
    let factor = family.universe().turan_factor();
    Ok(DistBound {
        value: rational::ratio(1, i64::from(factor) * (chi.value as i64 - 1)),
        kind: BoundKind::Lower,
        kmax: None,
        certificate: Certificate::Turan { chi: chi.value, factor },
    })
}

/// The maximizer of `min_K f_K` over the density domain.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxBound {
    pub value: Rational,
    /// Density components at the maximizer.
    pub density: Vec<Rational>,
    /// Indices of the types whose `f` equals the value there.
    pub active: Vec<usize>,
    pub kmax: usize,
}

/// `f_K(x) = constant + slope . x` over the domain parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Affine {
    constant: Rational,
    slope: Vec<Rational>,
}

impl Affine {
    fn at(&self, x: &[Rational]) -> Rational {
        &self.constant + self.slope.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>()
    }
}

/// Maximizes `t` subject to `t <= f_K(x)` for all `K`, the domain
/// constraints and `extra` rows, adding the `f_K` rows lazily.
/// Variables are `x` followed by `t`.
fn cutting_plane(
    affine: &[Affine],
    domain_rows: &[(Vec<Rational>, Rational)],
    extra: &[(Vec<Rational>, Rational)],
    objective: &[Rational],
    start: &mut Vec<usize>,
) -> Result<Vec<Rational>> {
    let dim = objective.len() - 1;
    loop {
        let mut a: Vec<Vec<Rational>> = Vec::new();
        let mut b: Vec<Rational> = Vec::new();
        for &i in start.iter() {
            let mut row: Vec<Rational> = affine[i].slope.iter().map(|v| -v).collect();
            row.push(rational::one());
            a.push(row);
            b.push(affine[i].constant.clone());
        }
        for (row, rhs) in domain_rows.iter().chain(extra) {
            a.push(row.clone());
            b.push(rhs.clone());
        }
        let x = match maximize(objective, &a, &b) {
            LpOutcome::Optimal { x, .. } => x,
            other => return Err(Error::InvalidArgument(format!("density program failed: {other:?}"))),
        };
        let t = &x[dim];
        let (worst, value) = affine
            .iter()
            .enumerate()
            .map(|(i, f)| (i, f.at(&x[..dim])))
            .reduce(|a, b| if b.1 < a.1 { b } else { a })
            .unwrap();
        if value >= *t {
            return Ok(x);
        }
        start.push(worst);
    }
}

/// `max_p min_K f_K(p)` as an exact linear program. Ties in the maximizer
/// go to the lexicographically smallest density vector.
pub fn dist_max_upper<C: PairColor>(types: &TypeSet<C>) -> Result<MaxBound> {
    types.require_nonempty()?;
    let u = types.universe;
    let domain = u.domain();
    let dim = domain.dim;
    let at = |x: &[Rational]| u.raw_density(&domain.components_at(x));

    let base = vec![rational::zero(); dim];
    let coefficients: Vec<Affine> = par::map(&types.types, |k| {
        let constant = f_value(&m_matrix(k, &at(&base)));
        let slope = (0..dim)
            .map(|i| {
                let mut e = base.clone();
                e[i] = rational::one();
                f_value(&m_matrix(k, &at(&e))) - &constant
            })
            .collect();
        Affine { constant, slope }
    });
    // distinct affine functions, each with the first type producing it
    let mut distinct: BTreeMap<Affine, usize> = BTreeMap::new();
    for (i, f) in coefficients.iter().enumerate() {
        distinct.entry(f.clone()).or_insert(i);
    }
    let affine: Vec<Affine> = distinct.keys().cloned().collect();

    let mut domain_rows: Vec<(Vec<Rational>, Rational)> = domain
        .constraints
        .iter()
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rational::zero());
            (r, rhs.clone())
        })
        .collect();
    let mut t_row = vec![rational::zero(); dim + 1];
    t_row[dim] = rational::one();
    domain_rows.push((t_row.clone(), rational::one()));

    let first = (0..affine.len()).min_by(|&i, &j| affine[i].constant.cmp(&affine[j].constant)).unwrap();
    let mut cuts = vec![first];
    let mut objective = vec![rational::zero(); dim + 1];
    objective[dim] = rational::one();
    let x = cutting_plane(&affine, &domain_rows, &[], &objective, &mut cuts)?;
    let value = x[dim].clone();

    // lexicographic tie-break on the density components
    let mut extra = vec![(t_row.iter().map(|v| -v).collect::<Vec<_>>(), -value.clone())];
    let mut x = x;
    for c in 0..domain.base.len() {
        let mut row: Vec<Rational> = domain.directions.iter().map(|d| d[c].clone()).collect();
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        row.push(rational::zero());
        let objective: Vec<Rational> = row.iter().map(|v| -v).collect();
        x = cutting_plane(&affine, &domain_rows, &extra, &objective, &mut cuts)?;
        let reached: Rational = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        extra.push((row, reached));
    }

    let point = &x[..dim];
    let density = domain.components_at(point);
    let active = coefficients.iter().enumerate().filter(|(_, f)| f.at(point) == value).map(|(i, _)| i).collect();
    Ok(MaxBound { value, density, active, kmax: types.kmax })
}

/// `1 / (r l)` where `l` is the largest sum in the weak spectrum, for
/// families whose weak spectrum is invariant under permuting colors.
pub fn symmetric_bound(family: &Family<Color>) -> Result<Rational> {
    let spectrum = clique_spectrum(family, Mode::Weak);
    let r = Colors::r(&family.universe()) as usize;
    let mut perm: Vec<usize> = (0..r).collect();
    let mut symmetric = true;
    for_each_permutation(&mut perm, &mut |p| {
        if symmetric {
            symmetric = spectrum
                .tuples
                .iter()
                .all(|t| spectrum.contains(&SpectrumTuple(p.iter().map(|&i| t.entries()[i]).collect())));
        }
    });
    if !symmetric {
        return Err(Error::AsymmetricFamily);
    }
    let l = spectrum.max_sum();
    if l == 0 {
        return Err(Error::TrivialProperty);
    }
    Ok(rational::ratio(1, (r * l) as i64))
}

/// One grid row: density components and the upper bound there.
#[derive(Clone, Debug)]
pub struct GridPoint<C: PairColor> {
    pub density: Vec<Rational>,
    pub bound: DistBound<C>,
}

/// `dist_upper` at every lattice point of the density domain.
pub fn distfn_grid<C: PairColor>(types: &TypeSet<C>, step: &Rational) -> Result<Vec<GridPoint<C>>> {
    let domain = types.universe.domain();
    let points = domain.lattice(step)?;
    points
        .into_iter()
        .map(|x| {
            let density = domain.components_at(&x);
            let bound = types.upper(&types.universe.raw_density(&density))?;
            Ok(GridPoint { density, bound })
        })
        .collect()
}

/// Checks that every entry of `m` lies in `[0, 1]` and `m` is symmetric.
pub fn is_penalty_matrix(m: &Matrix) -> bool {
    let k = m.len();
    (0..k).all(|i| {
        m[i].len() == k && (0..k).all(|j| m[i][j] == m[j][i] && !m[i][j].is_negative() && m[i][j] <= rational::one())
    })
}
