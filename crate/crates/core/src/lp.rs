//! Exact linear programming: maximize `c x` subject to `A x <= b`, `x >= 0`.
//!
//! Dictionary simplex with Bland's rule, and a first phase with an
//! auxiliary variable when the origin is infeasible.

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Rows read `x_basic[i] = d[i][0] + sum_j d[i][j + 1] * x_nonbasic[j]`;
/// the objective row has the same shape.
struct Dictionary {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    d: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Dictionary {
    fn pivot(&mut self, row: usize, col: usize) {
        let a = self.d[row][col + 1].clone();
        // solve row for the entering variable
        let mut pivot_row: Vec<Rational> = self.d[row].iter().map(|v| -v / &a).collect();
        pivot_row[col + 1] = Rational::from_integer(1.into()) / &a;
        let substitute = |target: &mut Vec<Rational>| {
            let coef = target[col + 1].clone();
            if coef.is_zero() {
                return;
            }
            target[col + 1] = rational::zero();
            for (t, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *t += &coef * p;
                }
            }
        };
        for (i, r) in self.d.iter_mut().enumerate() {
            if i != row {
                substitute(r);
            }
        }
        substitute(&mut self.obj);
        self.d[row] = pivot_row;
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }

    fn step(&mut self, forbidden: Option<usize>) -> Step {
        let entering = (0..self.nonbasic.len())
            .filter(|&j| Some(self.nonbasic[j]) != forbidden && self.obj[j + 1].is_positive())
            .min_by_key(|&j| self.nonbasic[j]);
        let Some(col) = entering else { return Step::Optimal };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..self.d.len() {
            let a = &self.d[i][col + 1];
            if !a.is_negative() {
                continue;
            }
            let ratio = -&self.d[i][0] / a;
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && self.basic[i] < self.basic[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        match leave {
            None => Step::Unbounded,
            Some((row, _)) => {
                self.pivot(row, col);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self, forbidden: Option<usize>) -> bool {
        loop {
            match self.step(forbidden) {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = b.len();
    assert_eq!(a.len(), m);
    let aux = n + m;
    let needs_phase_one = b.iter().any(Signed::is_negative);

    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut d: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = Vec::with_capacity(n + 2);
            r.push(bi.clone());
            r.extend(row.iter().map(|v| -v));
            r
        })
        .collect();
    if needs_phase_one {
        nonbasic.push(aux);
        for r in &mut d {
            r.push(rational::one());
        }
    }
    let width = nonbasic.len() + 1;
    let mut dict = Dictionary { basic: (n..n + m).collect(), nonbasic, d, obj: vec![rational::zero(); width] };

    if needs_phase_one {
        dict.obj[width - 1] = -rational::one();
        let row = (0..m).min_by(|&i, &j| dict.d[i][0].cmp(&dict.d[j][0]).then(i.cmp(&j))).unwrap();
        dict.pivot(row, width - 2);
        dict.run(None);
        if dict.obj[0].is_negative() {
            return LpOutcome::Infeasible;
        }
        if let Some(row) = dict.basic.iter().position(|&v| v == aux) {
            if let Some(col) = (0..dict.nonbasic.len()).find(|&j| !dict.d[row][j + 1].is_zero()) {
                dict.pivot(row, col);
            }
        }
        // drop the auxiliary column if nonbasic
        if let Some(col) = dict.nonbasic.iter().position(|&v| v == aux) {
            dict.nonbasic.remove(col);
            for r in &mut dict.d {
                r.remove(col + 1);
            }
        }
    }

    let width = dict.nonbasic.len() + 1;
    let mut obj = vec![rational::zero(); width];
    for (j, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        if let Some(col) = dict.nonbasic.iter().position(|&v| v == j) {
            obj[col + 1] += cj;
        } else if let Some(row) = dict.basic.iter().position(|&v| v == j) {
            for (o, v) in obj.iter_mut().zip(&dict.d[row]) {
                *o += cj * v;
            }
        }
    }
    dict.obj = obj;
    if !dict.run(Some(aux)) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![rational::zero(); n];
    for (i, &v) in dict.basic.iter().enumerate() {
        if v < n {
            x[v] = dict.d[i][0].clone();
        }
    }
    LpOutcome::Optimal { value: dict.obj[0].clone(), x }
}
