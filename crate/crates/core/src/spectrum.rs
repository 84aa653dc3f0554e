//! Good tuples, clique spectra and chromatic numbers.
//!
//! A tuple `(a_1, .., a_r)` asks for a partition of some forbidden graph
//! into `a_i` parts of each kind `i`, where the kind fixes what a part may
//! induce (see [`PartRule`]). Parts may be empty. The spectrum is the set of
//! tuples for which no forbidden graph admits such a partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::color::{PairColor, Universe};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::CompleteGraph;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Strong,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}, expected weak or strong"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        })
    }
}

/// What a single part of a partition may induce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartRule<C> {
    /// No pair of this color.
    Avoid(C),
    /// Every pair has this color.
    Only(C),
    /// The single arcs inside the part form an acyclic digraph.
    Acyclic,
    /// The part is a transitive tournament.
    Transitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpectrumTuple(pub Vec<usize>);

impl SpectrumTuple {
    pub fn zeros(len: usize) -> Self {
        SpectrumTuple(vec![0; len])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &SpectrumTuple) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for SpectrumTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

/// A chromatic number. `trivial` is set when the spectrum is `{0}`, so
/// the property contains only finitely many graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chi {
    pub value: usize,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSpectrum {
    pub mode: Mode,
    /// Descending lexicographic order.
    pub tuples: Vec<SpectrumTuple>,
}

impl CliqueSpectrum {
    pub fn contains(&self, t: &SpectrumTuple) -> bool {
        self.tuples.contains(t)
    }

    pub fn max_sum(&self) -> usize {
        self.tuples.iter().map(SpectrumTuple::sum).max().unwrap_or(0)
    }

    pub fn chi(&self) -> Chi {
        let value = 1 + self.max_sum();
        Chi { value, trivial: value == 1 }
    }

    /// Tuples attaining the maximum sum, in spectrum order.
    pub fn max_tuples(&self) -> Vec<SpectrumTuple> {
        let m = self.max_sum();
        self.tuples.iter().filter(|t| t.sum() == m).cloned().collect()
    }

    /// Closed under coordinatewise decrease.
    pub fn is_downset(&self) -> bool {
        self.tuples.iter().all(|t| {
            (0..t.len()).all(|i| {
                if t.0[i] == 0 {
                    return true;
                }
                let mut s = t.clone();
                s.0[i] -= 1;
                self.contains(&s)
            })
        })
    }
}

fn arc<C: PairColor>(g: &CompleteGraph<C>, x: usize, y: usize) -> bool {
    C::arrow(true).is_some_and(|a| g.color(x, y) == a)
}

/// Whether the single arcs among `vertices` form an acyclic digraph.
pub fn acyclic_on<C: PairColor>(g: &CompleteGraph<C>, vertices: &[usize]) -> bool {
    let k = vertices.len();
    let mut indegree = vec![0usize; k];
    for (a, &x) in vertices.iter().enumerate() {
        for (b, &y) in vertices.iter().enumerate() {
            if a != b && arc(g, x, y) {
                indegree[b] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..k).filter(|&a| indegree[a] == 0).collect();
    let mut seen = 0;
    while let Some(a) = queue.pop() {
        seen += 1;
        for b in 0..k {
            if a != b && arc(g, vertices[a], vertices[b]) {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    queue.push(b);
                }
            }
        }
    }
    seen == k
}

/// The single-arc pairs contain no directed cycle.
pub fn is_acyclic<C: PairColor>(g: &CompleteGraph<C>) -> bool {
    let all: Vec<usize> = (0..g.order()).collect();
    acyclic_on(g, &all)
}

/// Every pair is a single arc and the arcs form a strict total order.
pub fn is_transitive_tournament<C: PairColor>(g: &CompleteGraph<C>) -> bool {
    g.pairs().iter().all(|c| c.is_arrow()) && is_acyclic(g)
}

fn accepts<C: PairColor>(g: &CompleteGraph<C>, part: &[usize], v: usize, rule: PartRule<C>) -> bool {
    match rule {
        PartRule::Avoid(c) => part.iter().all(|&u| g.color(u, v) != c),
        PartRule::Only(c) => part.iter().all(|&u| g.color(u, v) == c),
        PartRule::Acyclic | PartRule::Transitive => {
            if rule == PartRule::Transitive && !part.iter().all(|&u| g.color(u, v).is_arrow()) {
                return false;
            }
            let mut with = part.to_vec();
            with.push(v);
            acyclic_on(g, &with)
        }
    }
}

fn check_tuple<U: Universe>(universe: &U, t: &SpectrumTuple, mode: Mode) -> Result<Vec<PartRule<U::Color>>> {
    let rules = universe.spectrum_rules(mode);
    if t.len() != rules.len() {
        return Err(Error::DimensionMismatch { expected: rules.len(), actual: t.len() });
    }
    let mut parts = Vec::with_capacity(t.sum());
    for (i, (&a, rule)) in t.0.iter().zip(&rules).enumerate() {
        match rule {
            Some(rule) => parts.extend(std::iter::repeat_n(*rule, a)),
            None if a > 0 => {
                return Err(Error::InvalidArgument(format!("coordinate {i} of {t} must be 0 over {universe}")))
            }
            None => {}
        }
    }
    Ok(parts)
}

/// Parts with equal rules are interchangeable, so a vertex opens at most
/// the first empty part of its group.
fn partition_exists<C: PairColor>(g: &CompleteGraph<C>, rules: &[PartRule<C>]) -> bool {
    fn go<C: PairColor>(g: &CompleteGraph<C>, rules: &[PartRule<C>], parts: &mut Vec<Vec<usize>>, v: usize) -> bool {
        if v == g.order() {
            return true;
        }
        for p in 0..rules.len() {
            if parts[p].is_empty() && p > 0 && rules[p - 1] == rules[p] && parts[p - 1].is_empty() {
                continue;
            }
            if accepts(g, &parts[p], v, rules[p]) {
                parts[p].push(v);
                let found = go(g, rules, parts, v + 1);
                parts[p].pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut parts = vec![Vec::new(); rules.len()];
    go(g, rules, &mut parts, 0)
}

fn is_good<C: PairColor>(family: &Family<C>, t: &SpectrumTuple, mode: Mode) -> Result<bool> {
    let rules = check_tuple(&family.universe(), t, mode)?;
    Ok(family.forbidden().iter().any(|h| partition_exists(h, &rules)))
}

pub fn is_weakly_good<C: PairColor>(family: &Family<C>, t: &SpectrumTuple) -> Result<bool> {
    is_good(family, t, Mode::Weak)
}

pub fn is_strongly_good<C: PairColor>(family: &Family<C>, t: &SpectrumTuple) -> Result<bool> {
    is_good(family, t, Mode::Strong)
}

/// All tuples with sum `< bound` whose forced-zero coordinates are zero.
pub fn candidate_tuples<U: Universe>(universe: &U, bound: usize) -> Vec<SpectrumTuple> {
    let free: Vec<bool> = universe.spectrum_rules(Mode::Weak).iter().map(Option::is_some).collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; free.len()];
    fn go(free: &[bool], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<SpectrumTuple>) {
        if i == free.len() {
            out.push(SpectrumTuple(cur.clone()));
            return;
        }
        let top = if free[i] { left } else { 0 };
        for a in (0..=top).rev() {
            cur[i] = a;
            go(free, i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if bound > 0 {
        go(&free, 0, bound - 1, &mut cur, &mut out);
    }
    out
}

pub fn clique_spectrum<C: PairColor>(family: &Family<C>, mode: Mode) -> CliqueSpectrum {
    let candidates = candidate_tuples(&family.universe(), family.min_order());
    let good = par::map(&candidates, |t| is_good(family, t, mode).unwrap_or(true));
    let tuples = candidates.into_iter().zip(good).filter(|(_, g)| !g).map(|(t, _)| t).collect();
    CliqueSpectrum { mode, tuples }
}

pub fn chromatic_number<C: PairColor>(family: &Family<C>, mode: Mode) -> Chi {
    clique_spectrum(family, mode).chi()
}
