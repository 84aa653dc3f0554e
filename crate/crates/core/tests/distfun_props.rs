mod common;

use common::*;
use edk::distfun::{dist_lower_turan, dist_max_upper, is_penalty_matrix, m_matrix, TypeSet};
use edk::linalg::Matrix;
use edk::qp::{f_value, g_value, is_stationary};
use edk::rational::{self, ratio, Rational};
use edk::spectrum::chromatic_number;
use edk::types::EnumLimits;
use edk::{DensityVector, Family, Mode, PairColor, Palette, Universe};
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(k: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = vec![vec![rational::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = ratio(rng.random_range(0..=10), 10);
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    m
}

fn random_density<U: Universe>(u: U, rng: &mut impl Rng) -> U::Density {
    let d = u.domain();
    let pts = d.lattice(&ratio(1, 12)).unwrap();
    u.density_from_components(&d.components_at(&pts[rng.random_range(0..pts.len())])).unwrap()
}

fn types<C: PairColor>(f: &Family<C>, kmax: usize) -> TypeSet<C> {
    TypeSet::enumerate(f, kmax, EnumLimits::default()).unwrap()
}

fn mix(t: &Rational, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| t * x + (rational::one() - t) * y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g_at_most_f_and_stationary(seed in any::<u64>(), k in 1usize..6) {
        let mut rng = rng(seed);
        let m = random_matrix(k, &mut rng);
        let sol = g_value(&m);
        prop_assert!(sol.value <= f_value(&m));
        prop_assert!(is_stationary(&m, &sol.weights));
        prop_assert_eq!(sol.weights.iter().sum::<Rational>(), rational::one());
    }

    #[test]
    fn penalty_matrices_of_types(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let k = random_type(colors(3), rng.random_range(1..=4), &mut rng);
        prop_assert!(is_penalty_matrix(&m_matrix(&k, &random_density(colors(3), &mut rng))));
        let p = random_palette(&mut rng);
        let k = random_type(p, rng.random_range(1..=4), &mut rng);
        prop_assert!(is_penalty_matrix(&m_matrix(&k, &random_density(p, &mut rng))));
    }

    #[test]
    fn upper_bound_is_concave(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_rfamily(&mut rng);
        let ts = types(&f, 2);
        prop_assume!(!ts.is_empty());
        let u = f.universe();
        let (a, b) = (random_density(u, &mut rng), random_density(u, &mut rng));
        let (ua, ub) = (ts.upper(&a).unwrap().value, ts.upper(&b).unwrap().value);
        for t in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let m = DensityVector::new(mix(&t, a.entries(), b.entries())).unwrap();
            prop_assert!(ts.upper(&m).unwrap().value >= &t * &ua + (rational::one() - &t) * &ub);
        }
    }

    #[test]
    fn more_types_never_raise_the_bound(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_family(colors(2), 3..=4, &mut rng);
        let d = random_density(colors(2), &mut rng);
        let values: Vec<Rational> = (1..=3)
            .map(|kmax| types(&f, kmax))
            .filter(|ts| !ts.is_empty())
            .map(|ts| ts.upper(&d).unwrap().value)
            .collect();
        prop_assert!(values.windows(2).all(|w| w[1] <= w[0]));
        let p = [Palette::Full, Palette::Orien, Palette::Tourn][rng.random_range(0..3)];
        let f = random_family(p, 3..=3, &mut rng);
        let d = random_density(p, &mut rng);
        let values: Vec<Rational> = (1..=2)
            .map(|kmax| types(&f, kmax))
            .filter(|ts| !ts.is_empty())
            .map(|ts| ts.upper(&d).unwrap().value)
            .collect();
        prop_assert!(values.windows(2).all(|w| w[1] <= w[0]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sandwich(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_rfamily(&mut rng);
        let weak = chromatic_number(&f, Mode::Weak);
        prop_assume!(!weak.trivial);
        let ts = types(&f, 2).with_spectrum_types(&f).unwrap();
        let upper = dist_max_upper(&ts).unwrap().value;
        prop_assert!(dist_lower_turan(&f).unwrap().value <= upper);
        prop_assert!(upper <= ratio(1, weak.value as i64 - 1));
    }
}
