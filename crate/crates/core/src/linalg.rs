//! Dense exact linear algebra over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve(mut a: Matrix, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::from_integer(1.into()) / &a[col][col];
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..n {
                let delta = &factor * &a[col][j];
                a[r][j] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    Some(b)
}

pub fn mat_vec(m: &Matrix, x: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `x^T m x`.
pub fn quadratic_form(m: &Matrix, x: &[Rational]) -> Rational {
    mat_vec(m, x).iter().zip(x).map(|(a, b)| a * b).sum()
}
