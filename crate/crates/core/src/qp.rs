//! Minimizing a quadratic form over the probability simplex.
//!
//! The matrices here are generally indefinite, so the minimum is found by
//! enumerating supports: on the relative interior of a face with support
//! `S`, a minimizer satisfies `(M w)_i = lambda` for `i` in `S` and
//! `sum w = 1`. Each such system is solved exactly; singular systems are
//! skipped because their minima also occur on smaller supports.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::{mat_vec, quadratic_form, solve, Matrix};
use crate::rational::{self, Rational};

/// Average of all entries, i.e. the form at the uniform weights.
pub fn f_value(m: &Matrix) -> Rational {
    let k = m.len();
    if k == 0 {
        return rational::zero();
    }
    let total: Rational = m.iter().flatten().sum();
    total / rational::int((k * k) as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QpSolution {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub value: Rational,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub weights: Vec<Rational>,
}

/// The stationary point on support `mask`, if the system is regular and
/// the weights are nonnegative.
fn support_candidate(m: &Matrix, mask: u32) -> Option<QpSolution> {
    let k = m.len();
    let support: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
    let s = support.len();
    // unknowns: w_S then lambda
    let mut a = vec![vec![rational::zero(); s + 1]; s + 1];
    let mut b = vec![rational::zero(); s + 1];
    for (row, &i) in support.iter().enumerate() {
        for (col, &j) in support.iter().enumerate() {
            a[row][col] = m[i][j].clone();
        }
        a[row][s] = -Rational::one();
    }
    for col in 0..s {
        a[s][col] = Rational::one();
    }
    b[s] = Rational::one();
    let x = solve(a, b)?;
    if x[..s].iter().any(Signed::is_negative) {
        return None;
    }
    let mut weights = vec![rational::zero(); k];
    for (col, &i) in support.iter().enumerate() {
        weights[i] = x[col].clone();
    }
    Some(QpSolution { value: x[s].clone(), weights })
}

/// Global minimum of `w^T M w` over the simplex with an optimal `w`.
///
/// Supports are visited by size and then index order; the first minimum
/// found is kept, so the result is deterministic.
pub fn g_value(m: &Matrix) -> QpSolution {
    let k = m.len();
    assert!(k > 0 && k < 32, "g_value needs 1..32 rows");
    let mut masks: Vec<u32> = (1..(1u32 << k)).collect();
    masks.sort_by_key(|&s| (s.count_ones(), s.reverse_bits()));
    let mut best: Option<QpSolution> = None;
    for mask in masks {
        if let Some(c) = support_candidate(m, mask) {
            if best.as_ref().is_none_or(|b| c.value < b.value) {
                best = Some(c);
            }
        }
    }
    best.expect("singleton supports are always regular")
}

/// `(M w)_i` is the same on the support of `w` and equals `w^T M w`.
pub fn is_stationary(m: &Matrix, w: &[Rational]) -> bool {
    let value = quadratic_form(m, w);
    mat_vec(m, w).iter().zip(w).all(|(mw, wi)| wi.is_zero() || *mw == value)
}
