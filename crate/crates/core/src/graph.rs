//! Colored complete graphs and digraphs stored over unordered pairs.
//!
//! The color of the pair `{i, j}` is stored once, relative to the ordered
//! pair `(min, max)`. [`CompleteGraph::color`] reorients on the fly.

use std::fmt;

use crate::color::{Color, DirColor, PairColor, Universe};
use crate::error::{Error, Result};

/// Index of the pair `{i, j}`, `i < j`, in column-major upper-triangle order.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CompleteGraph<C: PairColor> {
    n: usize,
    universe: C::Universe,
    pairs: Vec<C>,
}

/// An r-edge-coloring of a complete graph.
pub type ColoredGraph = CompleteGraph<Color>;

/// A digraph viewed as a coloring of pairs by `o - > <`.
pub type DiGraph = CompleteGraph<DirColor>;

impl<C: PairColor> CompleteGraph<C> {
    pub fn filled(universe: C::Universe, n: usize, color: C) -> Result<Self> {
        Self::from_fn(universe, n, |_, _| color)
    }

    /// Builds a graph from `color(i, j)` for `i < j`.
    pub fn from_fn(universe: C::Universe, n: usize, mut color: impl FnMut(usize, usize) -> C) -> Result<Self> {
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for j in 1..n {
            for i in 0..j {
                pairs.push(color(i, j));
            }
        }
        Self::from_pairs(universe, n, pairs)
    }

    pub fn from_pairs(universe: C::Universe, n: usize, pairs: Vec<C>) -> Result<Self> {
        if pairs.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidGraph(format!("{} pair colors given for {n} vertices", pairs.len())));
        }
        if let Some(c) = pairs.iter().find(|&&c| !universe.contains(c)) {
            return Err(Error::InvalidGraph(format!("color {c} not allowed in {universe}")));
        }
        Ok(CompleteGraph { n, universe, pairs })
    }

    /// Builds from upper-triangle rows: `rows[i]` lists `color(i, j)` for `j > i`.
    pub fn from_rows(universe: C::Universe, rows: &[Vec<C>]) -> Result<Self> {
        let n = rows.len() + 1;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - 1 - i {
                return Err(Error::InvalidGraph(format!("row {i} has {} entries, expected {}", row.len(), n - 1 - i)));
            }
        }
        Self::from_fn(universe, n, |i, j| rows[i][j - i - 1])
    }

    pub fn empty(universe: C::Universe) -> Self {
        CompleteGraph { n: 0, universe, pairs: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> C::Universe {
        self.universe
    }

    /// Pair colors in column-major upper-triangle order.
    pub fn pairs(&self) -> &[C] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Color of the ordered pair `(i, j)`, `i != j`.
    #[inline]
    pub fn color(&self, i: usize, j: usize) -> C {
        if i < j {
            self.pairs[pair_index(i, j)]
        } else {
            self.pairs[pair_index(j, i)].reversed()
        }
    }

    /// Sets the color of the ordered pair `(i, j)`.
    pub fn set_color(&mut self, i: usize, j: usize, color: C) {
        debug_assert!(self.universe.contains(color));
        if i < j {
            self.pairs[pair_index(i, j)] = color;
        } else {
            self.pairs[pair_index(j, i)] = color.reversed();
        }
    }

    pub(crate) fn set_pair(&mut self, index: usize, color: C) {
        self.pairs[index] = color;
    }

    /// Rows of the upper triangle, `color(i, j)` for `j > i`.
    pub fn rows(&self) -> Vec<Vec<C>> {
        (0..self.n.saturating_sub(1)).map(|i| (i + 1..self.n).map(|j| self.color(i, j)).collect()).collect()
    }

    /// The subgraph induced by `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for b in 1..k {
            for a in 0..b {
                pairs.push(self.color(vertices[a], vertices[b]));
            }
        }
        CompleteGraph { n: k, universe: self.universe, pairs }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inverse = vec![0; self.n];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        self.induced(&inverse)
    }

    /// Number of pairs on which the two colorings differ.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(self.pairs.iter().zip(&other.pairs).filter(|(a, b)| a != b).count())
    }

    /// Hamming distance divided by the number of pairs.
    pub fn normalized_hamming(&self, other: &Self) -> Result<f64> {
        let d = self.hamming(other)?;
        Ok(if self.pairs.is_empty() { 0.0 } else { d as f64 / self.pairs.len() as f64 })
    }

    pub fn density(&self) -> Result<<C::Universe as Universe>::Density> {
        self.universe.density_of(self)
    }

    /// Per-vertex color histogram, indexed by color bit position.
    pub(crate) fn color_degrees(&self) -> Vec<[u16; 8]> {
        let mut deg = vec![[0u16; 8]; self.n];
        for (v, d) in deg.iter_mut().enumerate() {
            for w in 0..self.n {
                if w != v {
                    d[self.color(v, w).bit().trailing_zeros() as usize] += 1;
                }
            }
        }
        deg
    }
}

impl ColoredGraph {
    pub fn r(&self) -> u8 {
        self.universe.r()
    }
}

impl DiGraph {
    /// Counts of `(o, -, ->, <-)` over pairs `i < j`.
    pub fn color_counts(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for c in &self.pairs {
            counts[*c as usize] += 1;
        }
        counts
    }
}

impl<C: PairColor> fmt::Debug for CompleteGraph<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompleteGraph({}, n={}, [", self.universe, self.n)?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for c in row {
                write!(f, "{c}")?;
            }
        }
        f.write_str("])")
    }
}

/// All injective maps of `pattern` into `host` that preserve every pair color.
///
/// `visit` receives `map[v]` = host vertex of pattern vertex `v` and returns
/// `false` to stop the search. Returns whether the search was stopped.
pub fn for_each_induced<C: PairColor>(
    host: &CompleteGraph<C>,
    pattern: &CompleteGraph<C>,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    let k = pattern.order();
    if k > host.order() {
        return false;
    }
    if k == 0 {
        return !visit(&[]);
    }
    let host_deg = host.color_degrees();
    let pat_deg = pattern.color_degrees();
    let candidates: Vec<Vec<usize>> = pat_deg
        .iter()
        .map(|pd| (0..host.order()).filter(|&v| host_deg[v].iter().zip(pd).all(|(h, p)| h >= p)).collect())
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }
    // most constrained pattern vertices first
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (candidates[v].len(), v));

    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; host.order()];
    let mut stopped = false;
    search(host, pattern, &order, &candidates, 0, &mut map, &mut used, &mut visit, &mut stopped);
    stopped
}

#[allow(clippy::too_many_arguments)]
fn search<C: PairColor>(
    host: &CompleteGraph<C>,
    pattern: &CompleteGraph<C>,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> bool,
    stopped: &mut bool,
) {
    if depth == order.len() {
        if !visit(map) {
            *stopped = true;
        }
        return;
    }
    let a = order[depth];
    for &v in &candidates[a] {
        if used[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&b| host.color(map[b], v) == pattern.color(b, a));
        if !consistent {
            continue;
        }
        map[a] = v;
        used[v] = true;
        search(host, pattern, order, candidates, depth + 1, map, used, visit, stopped);
        used[v] = false;
        map[a] = usize::MAX;
        if *stopped {
            return;
        }
    }
}

/// Some induced copy of `pattern` in `host`, as a map of pattern vertices.
pub fn find_induced<C: PairColor>(host: &CompleteGraph<C>, pattern: &CompleteGraph<C>) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_induced(host, pattern, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

pub fn contains_induced<C: PairColor>(host: &CompleteGraph<C>, pattern: &CompleteGraph<C>) -> bool {
    find_induced(host, pattern).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{Colors, Palette};

    fn c3() -> Colors {
        Colors::new(3).unwrap()
    }

    /// K5 whose color-1 edges form the cycle 0-1-2-3-4-0.
    fn pentagon() -> ColoredGraph {
        let c2 = Colors::new(2).unwrap();
        ColoredGraph::from_fn(c2, 5, |i, j| {
            let d = (j - i) % 5;
            if d == 1 || d == 4 {
                Color(1)
            } else {
                Color(2)
            }
        })
        .unwrap()
    }

    #[test]
    fn pair_index_is_dense() {
        let mut seen = [false; 10];
        for j in 1..5 {
            for i in 0..j {
                seen[pair_index(i, j)] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn induced_identity_and_monochromatic() {
        let g = pentagon();
        assert_eq!(g.induced(&[0, 1, 2, 3, 4]), g);
        let k4 = ColoredGraph::filled(c3(), 4, Color(2)).unwrap();
        let k3 = k4.induced(&[0, 2, 3]);
        assert_eq!(k3, ColoredGraph::filled(c3(), 3, Color(2)).unwrap());
    }

    #[test]
    fn pentagon_four_subsets_have_both_colors() {
        let g = pentagon();
        for skip in 0..5 {
            let s: Vec<usize> = (0..5).filter(|&v| v != skip).collect();
            let h = g.induced(&s);
            assert!(h.pairs().contains(&Color(1)));
            assert!(h.pairs().contains(&Color(2)));
        }
    }

    #[test]
    fn contains_induced_examples() {
        let k4 = ColoredGraph::filled(c3(), 4, Color(1)).unwrap();
        let k3 = ColoredGraph::filled(c3(), 3, Color(1)).unwrap();
        let t112 = ColoredGraph::from_rows(c3(), &[vec![Color(1), Color(1)], vec![Color(2)]]).unwrap();
        assert!(contains_induced(&k4, &k3));
        assert!(!contains_induced(&k4, &t112));
        let g = pentagon();
        let c2 = Colors::new(2).unwrap();
        for c in [Color(1), Color(2)] {
            assert!(!contains_induced(&g, &ColoredGraph::filled(c2, 3, c).unwrap()));
        }
    }

    #[test]
    fn digraph_orientation_is_respected() {
        // 0 -> 1 -> 2 -> 0
        let cyc =
            DiGraph::from_rows(Palette::Tourn, &[vec![DirColor::Forward, DirColor::Backward], vec![DirColor::Forward]])
                .unwrap();
        assert_eq!(cyc.color(1, 0), DirColor::Backward);
        assert_eq!(cyc.color(2, 0), DirColor::Forward);
        let trans = DiGraph::from_fn(Palette::Tourn, 3, |_, _| DirColor::Forward).unwrap();
        assert!(!contains_induced(&cyc, &trans));
        assert!(contains_induced(&cyc, &cyc.permuted(&[1, 2, 0])));
    }

    #[test]
    fn hamming_counts_pairs() {
        let a = ColoredGraph::filled(c3(), 3, Color(1)).unwrap();
        let mut b = a.clone();
        assert_eq!(a.hamming(&b).unwrap(), 0);
        b.set_color(2, 0, Color(2));
        assert_eq!(a.hamming(&b).unwrap(), 1);
        let c = ColoredGraph::filled(c3(), 4, Color(1)).unwrap();
        assert!(a.hamming(&c).is_err());
    }

    #[test]
    fn densities() {
        let k4 = ColoredGraph::filled(c3(), 4, Color(2)).unwrap();
        let d = k4.density().unwrap();
        assert_eq!(d.entries(), &[crate::rational::zero(), crate::rational::one(), crate::rational::zero()]);
        let d = pentagon().density().unwrap();
        assert_eq!(d.entries(), &[crate::rational::ratio(1, 2), crate::rational::ratio(1, 2)]);
        let dd = DiGraph::filled(Palette::Undir, 4, DirColor::Double).unwrap().density().unwrap();
        assert_eq!(dd.p(), &crate::rational::one());
        assert_eq!(dd.q(), &crate::rational::zero());
        assert!(ColoredGraph::filled(c3(), 1, Color(1)).unwrap().density().is_err());
    }
}
