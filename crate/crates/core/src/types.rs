//! Types: complete graphs whose vertices and edges carry sets of allowed
//! colors, plus embeddings of forbidden graphs into them and bounded
//! enumeration of the types no forbidden graph embeds into.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::color::{Color, DirColor, PairColor, Universe};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{pair_index, CompleteGraph};
use crate::par;
use crate::spectrum::{acyclic_on, Mode, PartRule, SpectrumTuple};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeGraph<C: PairColor> {
    universe: C::Universe,
    vertex: Vec<u8>,
    /// Upper-triangle masks, oriented from the lower to the higher index.
    edges: Vec<u8>,
}

pub type RType = TypeGraph<Color>;
pub type DirType = TypeGraph<DirColor>;

impl<C: PairColor> TypeGraph<C> {
    pub fn new(universe: C::Universe, vertex: Vec<u8>, edges: Vec<u8>) -> Result<Self> {
        let k = vertex.len();
        if k == 0 {
            return Err(Error::InvalidType("a type needs at least one vertex".into()));
        }
        if edges.len() != k * (k - 1) / 2 {
            return Err(Error::InvalidType(format!(
                "{k} vertices need {} edge sets, got {}",
                k * (k - 1) / 2,
                edges.len()
            )));
        }
        let vertex: Vec<u8> = vertex.into_iter().map(<C::Universe as Universe>::normalize_vertex_mask).collect();
        for (i, &m) in vertex.iter().enumerate() {
            if !universe.is_vertex_mask(m) {
                return Err(Error::InvalidType(format!(
                    "vertex {i} set {} is not a nonempty proper subset",
                    universe.format_mask(m)
                )));
            }
        }
        for &m in &edges {
            if !universe.is_edge_mask(m) {
                return Err(Error::InvalidType(format!(
                    "edge set {} is empty or outside {universe}",
                    universe.format_mask(m)
                )));
            }
        }
        Ok(TypeGraph { universe, vertex, edges })
    }

    pub fn single(universe: C::Universe, mask: u8) -> Result<Self> {
        Self::new(universe, vec![mask], Vec::new())
    }

    /// The type whose vertices avoid what the tuple's parts avoid, with
    /// every edge carrying all colors.
    pub fn simple(universe: C::Universe, tuple: &SpectrumTuple) -> Result<Self> {
        let rules = universe.spectrum_rules(Mode::Weak);
        if tuple.len() != rules.len() {
            return Err(Error::DimensionMismatch { expected: rules.len(), actual: tuple.len() });
        }
        let full = universe.mask();
        let mut vertex = Vec::new();
        for (&a, rule) in tuple.entries().iter().zip(&rules) {
            let mask = match rule {
                _ if a == 0 => continue,
                Some(PartRule::Avoid(c)) => full & !c.bit(),
                Some(PartRule::Acyclic) => full & !C::arrow(false).map_or(0, |c| c.bit()),
                _ => return Err(Error::InvalidArgument(format!("tuple {tuple} uses a coordinate fixed at 0"))),
            };
            vertex.extend(std::iter::repeat_n(mask, a));
        }
        let k = vertex.len();
        Self::new(universe, vertex, vec![full; k * k.saturating_sub(1) / 2])
    }

    pub fn k(&self) -> usize {
        self.vertex.len()
    }

    pub fn universe(&self) -> C::Universe {
        self.universe
    }

    pub fn vertex_set(&self, i: usize) -> u8 {
        self.vertex[i]
    }

    /// Colors allowed on the ordered pair `(i, j)`; the vertex set when `i == j`.
    pub fn edge_set(&self, i: usize, j: usize) -> u8 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.vertex[i],
            Less => self.edges[pair_index(i, j)],
            Greater => <C::Universe as Universe>::reverse_mask(self.edges[pair_index(j, i)]),
        }
    }

    /// Restriction to `vertices`, in the given order.
    pub fn sub_type(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.k()) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.k() });
        }
        Ok(self.relabel(vertices))
    }

    /// Vertex `a` of the result is vertex `perm[a]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.relabel(perm)
    }

    fn relabel(&self, order: &[usize]) -> Self {
        let vertex = order.iter().map(|&v| self.vertex[v]).collect();
        let mut edges = Vec::with_capacity(order.len() * order.len().saturating_sub(1) / 2);
        for b in 1..order.len() {
            for a in 0..b {
                edges.push(self.edge_set(order[a], order[b]));
            }
        }
        // edges are pushed column by column, matching pair_index
        TypeGraph { universe: self.universe, vertex, edges }
    }

    /// Vertex masks followed by edge masks.
    pub fn encoding(&self) -> Vec<u8> {
        let mut e = self.vertex.clone();
        e.extend_from_slice(&self.edges);
        e
    }

    /// The permutation with the lexicographically smallest encoding.
    pub fn canonical(&self) -> Self {
        let mut perm: Vec<usize> = (0..self.k()).collect();
        let mut best = self.clone();
        let mut best_code = best.encoding();
        for_each_permutation(&mut perm, &mut |p| {
            let t = self.relabel(p);
            let code = t.encoding();
            if code < best_code {
                best_code = code;
                best = t;
            }
        });
        best
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.k() == other.k() && self.canonical().encoding() == other.canonical().encoding()
    }

    /// A vertex map from `h` witnessing `h -> self`, if any.
    pub fn embedding(&self, h: &CompleteGraph<C>) -> Option<Vec<usize>> {
        let n = h.order();
        let mut map = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); self.k()];
        if self.extend(h, 0, &mut map, &mut classes) {
            Some(map)
        } else {
            None
        }
    }

    pub fn embeds(&self, h: &CompleteGraph<C>) -> bool {
        self.embedding(h).is_some()
    }

    fn extend(&self, h: &CompleteGraph<C>, v: usize, map: &mut [usize], classes: &mut [Vec<usize>]) -> bool {
        if v == h.order() {
            return true;
        }
        for u in 0..self.k() {
            if !self.fits(h, v, u, map, &classes[u]) {
                continue;
            }
            map[v] = u;
            classes[u].push(v);
            let found = self.extend(h, v + 1, map, classes);
            classes[u].pop();
            if found {
                return true;
            }
        }
        map[v] = usize::MAX;
        false
    }

    fn fits(&self, h: &CompleteGraph<C>, v: usize, u: usize, map: &[usize], class: &[usize]) -> bool {
        let own = self.vertex[u];
        for w in 0..v {
            let c = h.color(w, v);
            let ok = if map[w] == u {
                <C::Universe as Universe>::class_allows(own, c)
            } else {
                self.edge_set(map[w], u) & c.bit() != 0
            };
            if !ok {
                return false;
            }
        }
        if <C::Universe as Universe>::class_needs_acyclic(own) && class.iter().any(|&w| h.color(w, v).is_arrow()) {
            let mut with = class.to_vec();
            with.push(v);
            return acyclic_on(h, &with);
        }
        true
    }

    /// No forbidden graph embeds.
    pub fn in_admissible_set(&self, family: &Family<C>) -> bool {
        family.forbidden().iter().all(|h| !self.embeds(h))
    }

    /// Rows of the upper triangle including the diagonal, as color sets.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.k()).map(|i| (i..self.k()).map(|j| self.universe.format_mask(self.edge_set(i, j))).collect()).collect()
    }

    /// `type k=<k>` followed by one row per vertex: its own set, then the
    /// sets of the edges to later vertices.
    pub fn to_text(&self) -> String {
        let mut out = format!("type k={}\n", self.k());
        for row in self.rows() {
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

impl<C: PairColor> fmt::Debug for TypeGraph<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| r.join(" ")).collect();
        write!(f, "TypeGraph[{}]", rows.join(" | "))
    }
}

/// Heap's algorithm; `visit` sees every ordering of `items` once.
pub(crate) fn for_each_permutation(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Ceiling on the candidate count examined per enumeration level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_candidates: u128,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_candidates: 200_000_000 }
    }
}

/// Every admissible type on at most `kmax` vertices, one per isomorphism
/// class, ordered by vertex count and then canonical encoding.
///
/// Admissibility is hereditary, so level `k` only extends canonical
/// representatives of level `k - 1`, and a new vertex must form an
/// admissible two-vertex type with each existing one.
pub fn enumerate_types<C: PairColor>(family: &Family<C>, kmax: usize, limits: EnumLimits) -> Result<Vec<TypeGraph<C>>> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    let u = family.universe();
    let singles: Vec<u8> = u
        .vertex_masks()
        .into_iter()
        .filter(|&m| TypeGraph::single(u, m).is_ok_and(|t| t.in_admissible_set(family)))
        .collect();
    let edge_masks = u.edge_masks();
    let mut out: Vec<TypeGraph<C>> = singles.iter().map(|&m| TypeGraph::single(u, m).unwrap()).collect();
    if kmax == 1 || singles.is_empty() {
        return Ok(out);
    }

    // pair_ok[a][b] lists the edge masks e with (singles[a], singles[b], e) admissible
    let pairs: Vec<(usize, usize)> = (0..singles.len()).flat_map(|a| (0..singles.len()).map(move |b| (a, b))).collect();
    let pair_ok: Vec<Vec<u8>> = par::map(&pairs, |&(a, b)| {
        edge_masks
            .iter()
            .copied()
            .filter(|&e| {
                TypeGraph::<C>::new(u, vec![singles[a], singles[b]], vec![e]).is_ok_and(|t| t.in_admissible_set(family))
            })
            .collect()
    });
    let index_of = |mask: u8| singles.iter().position(|&m| m == mask).unwrap();

    let mut level: Vec<TypeGraph<C>> = out.clone();
    for k in 2..=kmax {
        let bound = (level.len() as u128)
            .saturating_mul(singles.len() as u128)
            .saturating_mul((edge_masks.len() as u128).saturating_pow(k as u32 - 1));
        if bound > limits.max_candidates {
            return Err(Error::ResourceGuard { bound, limit: limits.max_candidates });
        }
        let found: Vec<Vec<TypeGraph<C>>> = par::map(&level, |base| {
            let base_idx: Vec<usize> = base.vertex.iter().map(|&m| index_of(m)).collect();
            let mut found = Vec::new();
            for (b, &mask) in singles.iter().enumerate() {
                let options: Vec<&Vec<u8>> = base_idx.iter().map(|&a| &pair_ok[a * singles.len() + b]).collect();
                if options.iter().any(|o| o.is_empty()) {
                    continue;
                }
                let mut choice = vec![0usize; options.len()];
                loop {
                    let mut vertex = base.vertex.clone();
                    vertex.push(mask);
                    let mut edges = base.edges.clone();
                    edges.extend(choice.iter().zip(&options).map(|(&c, o)| o[c]));
                    let t = TypeGraph { universe: u, vertex, edges };
                    if t.in_admissible_set(family) {
                        found.push(t.canonical());
                    }
                    // odometer over the edge choices
                    let mut i = 0;
                    while i < choice.len() {
                        choice[i] += 1;
                        if choice[i] < options[i].len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == choice.len() {
                        break;
                    }
                }
            }
            found
        });
        let unique: BTreeSet<Vec<u8>> = found.into_iter().flatten().map(|t| t.encoding()).collect();
        level = unique.into_iter().map(|code| from_encoding(u, k, &code)).collect();
        if level.is_empty() {
            break;
        }
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

fn from_encoding<C: PairColor>(universe: C::Universe, k: usize, code: &[u8]) -> TypeGraph<C> {
    TypeGraph { universe, vertex: code[..k].to_vec(), edges: code[k..].to_vec() }
}
