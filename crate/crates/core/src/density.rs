//! Density vectors and the domains they range over.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::color::Palette;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A probability vector `(p_1, ..., p_r)` over the colors `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensityVector {
    entries: Vec<Rational>,
}

impl DensityVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidDensity("need at least two entries".into()));
        }
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDensity("negative entry".into()));
        }
        let total: Rational = entries.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDensity(format!("entries sum to {total}, not 1")));
        }
        Ok(DensityVector { entries })
    }

    pub(crate) fn new_unchecked(entries: Vec<Rational>) -> Self {
        DensityVector { entries }
    }

    pub fn uniform(r: usize) -> Self {
        DensityVector { entries: vec![rational::ratio(1, r as i64); r] }
    }

    /// All mass on `color` (1-based).
    pub fn point(r: usize, color: usize) -> Self {
        let mut entries = vec![rational::zero(); r];
        entries[color - 1] = rational::one();
        DensityVector { entries }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for DensityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.entries.iter().map(rational::format).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Directed densities: `p` for `-`, `q` for each of `->` and `<-`, and
/// `1 - p - 2q` for `o`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirDensity {
    p: Rational,
    q: Rational,
    palette: Palette,
}

impl DirDensity {
    pub fn new(p: Rational, q: Rational, palette: Palette) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidDensity(format!("{m} (p={p}, q={q}, palette {palette})")));
        if p.is_negative() || q.is_negative() {
            return bad("negative density");
        }
        let empty = Rational::one() - &p - &q * rational::int(2);
        if empty.is_negative() {
            return bad("p + 2q exceeds 1");
        }
        let ok = match palette {
            Palette::Full => true,
            Palette::Compl => empty.is_zero(),
            Palette::Orien => p.is_zero(),
            Palette::Undir => q.is_zero(),
            Palette::Tourn => p.is_zero() && empty.is_zero(),
        };
        if !ok {
            return bad("density violates the palette");
        }
        Ok(DirDensity { p, q, palette })
    }

    pub(crate) fn new_unchecked(p: Rational, q: Rational, palette: Palette) -> Self {
        DirDensity { p, q, palette }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn p_empty(&self) -> Rational {
        Rational::one() - &self.p - &self.q * rational::int(2)
    }

    pub fn palette(&self) -> Palette {
        self.palette
    }
}

impl fmt::Display for DirDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A density domain parameterised by `x >= 0` with `A x <= b`.
///
/// Density components are affine in `x`: `base + sum_i x_i * directions[i]`.
/// The origin is always a feasible point.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub dim: usize,
    pub constraints: Vec<(Vec<Rational>, Rational)>,
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl Domain {
    /// `(p_1, ..., p_r)` with `x = (p_1, ..., p_{r-1})`.
    pub fn simplex(r: usize) -> Domain {
        let mut base = vec![rational::zero(); r];
        base[r - 1] = rational::one();
        let directions = (0..r - 1)
            .map(|i| {
                let mut d = vec![rational::zero(); r];
                d[i] = rational::one();
                d[r - 1] = -rational::one();
                d
            })
            .collect();
        Domain { dim: r - 1, constraints: vec![(vec![rational::one(); r - 1], rational::one())], base, directions }
    }

    /// `(p, q)` restricted by the palette.
    pub fn palette(palette: Palette) -> Domain {
        let (z, o, half) = (rational::zero(), rational::one(), rational::ratio(1, 2));
        let two = rational::int(2);
        match palette {
            Palette::Full => Domain {
                dim: 2,
                constraints: vec![(vec![o.clone(), two], o.clone())],
                base: vec![z.clone(), z.clone()],
                directions: vec![vec![o.clone(), z.clone()], vec![z, o]],
            },
            Palette::Compl => Domain {
                dim: 1,
                constraints: vec![(vec![o.clone()], half)],
                base: vec![o.clone(), z],
                directions: vec![vec![-two, o]],
            },
            Palette::Orien => Domain {
                dim: 1,
                constraints: vec![(vec![o.clone()], half)],
                base: vec![z.clone(), z.clone()],
                directions: vec![vec![z, o]],
            },
            Palette::Undir => Domain {
                dim: 1,
                constraints: vec![(vec![o.clone()], o.clone())],
                base: vec![z.clone(), z.clone()],
                directions: vec![vec![o, z]],
            },
            Palette::Tourn => Domain { dim: 0, constraints: vec![], base: vec![z, half], directions: vec![] },
        }
    }

    pub fn components_at(&self, x: &[Rational]) -> Vec<Rational> {
        let mut c = self.base.clone();
        for (xi, dir) in x.iter().zip(&self.directions) {
            for (cj, dj) in c.iter_mut().zip(dir) {
                *cj += xi * dj;
            }
        }
        c
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|(a, b)| {
                let lhs: Rational = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum();
                lhs <= *b
            })
    }

    /// Lattice points with coordinates in `step * N` inside the domain.
    pub fn lattice(&self, step: &Rational) -> Result<Vec<Vec<Rational>>> {
        if !step.is_positive() || !(Rational::one() / step).is_integer() {
            return Err(Error::InvalidArgument(format!("grid step {step} must divide 1")));
        }
        let steps = (Rational::one() / step).to_integer();
        let steps: usize = steps.try_into().map_err(|_| Error::InvalidArgument("grid step too small".into()))?;
        let mut out = Vec::new();
        let mut x = Vec::with_capacity(self.dim);
        self.lattice_rec(step, steps, &mut x, &mut out);
        Ok(out)
    }

    fn lattice_rec(&self, step: &Rational, steps: usize, x: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        if x.len() == self.dim {
            if self.contains(x) {
                out.push(x.clone());
            }
            return;
        }
        for i in 0..=steps {
            x.push(step * rational::int(i as i64));
            // prune on the partial point, remaining coordinates at zero
            let mut probe = x.clone();
            probe.resize(self.dim, rational::zero());
            let feasible = self.contains(&probe);
            if feasible {
                self.lattice_rec(step, steps, x, out);
            }
            x.pop();
            if !feasible {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn density_vector_must_sum_to_one() {
        assert!(DensityVector::new(vec![ratio(1, 2), ratio(1, 2)]).is_ok());
        assert!(DensityVector::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(DensityVector::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
    }

    #[test]
    fn dir_density_respects_palettes() {
        let (z, h, o) = (ratio(0, 1), ratio(1, 2), ratio(1, 1));
        assert!(DirDensity::new(z.clone(), h.clone(), Palette::Tourn).is_ok());
        assert!(DirDensity::new(z.clone(), ratio(1, 4), Palette::Tourn).is_err());
        assert!(DirDensity::new(o.clone(), z.clone(), Palette::Undir).is_ok());
        assert!(DirDensity::new(z.clone(), ratio(1, 4), Palette::Undir).is_err());
        assert!(DirDensity::new(ratio(1, 2), ratio(1, 4), Palette::Compl).is_ok());
        assert!(DirDensity::new(ratio(1, 4), ratio(1, 4), Palette::Compl).is_err());
        assert!(DirDensity::new(ratio(1, 4), z.clone(), Palette::Orien).is_err());
        assert!(DirDensity::new(ratio(1, 2), ratio(1, 2), Palette::Full).is_err());
        assert_eq!(DirDensity::new(ratio(1, 4), ratio(1, 8), Palette::Full).unwrap().p_empty(), ratio(1, 2));
    }

    #[test]
    fn simplex_lattice_counts() {
        // compositions of 12 into 3 parts
        let pts = Domain::simplex(3).lattice(&ratio(1, 12)).unwrap();
        assert_eq!(pts.len(), 91);
        let pts = Domain::palette(Palette::Full).lattice(&ratio(1, 4)).unwrap();
        // p + 2q <= 1 on quarters: q=0: 5, q=1/4: 3, q=1/2: 1
        assert_eq!(pts.len(), 9);
        assert_eq!(Domain::palette(Palette::Tourn).lattice(&ratio(1, 4)).unwrap().len(), 1);
        assert!(Domain::simplex(3).lattice(&ratio(2, 5)).is_err());
    }

    #[test]
    fn lattice_points_map_to_valid_densities() {
        for pal in Palette::ALL {
            let d = Domain::palette(pal);
            for x in d.lattice(&ratio(1, 6)).unwrap() {
                let c = d.components_at(&x);
                DirDensity::new(c[0].clone(), c[1].clone(), pal).unwrap();
            }
        }
    }
}
