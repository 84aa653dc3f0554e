//! Pair colors and the color universes they live in.
//!
//! A multicolor graph uses [`Color`] values `1..=r` from a [`Colors`]
//! universe; a digraph uses [`DirColor`] values from a [`Palette`]. Type
//! vertices and edges carry color *sets*, encoded as bitmasks over
//! [`PairColor::bit`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::density::{DensityVector, DirDensity, Domain};
use crate::error::{Error, Result};
use crate::graph::CompleteGraph;
use crate::rational::{self, Rational};
use crate::spectrum::{Mode, PartRule};

pub trait PairColor: Copy + Eq + Ord + Hash + Debug + Display + Send + Sync + 'static {
    type Universe: Universe<Color = Self>;

    /// The color of `(j, i)` when `self` is the color of `(i, j)`.
    fn reversed(self) -> Self;

    fn bit(self) -> u8;

    fn is_arrow(self) -> bool {
        false
    }

    /// The single arc `x -> y` (`forward`) or `y -> x` on an ordered pair.
    fn arrow(_forward: bool) -> Option<Self> {
        None
    }
}

/// The alphabet a graph, type or family is defined over.
pub trait Universe: Copy + Eq + Debug + Display + Send + Sync + 'static {
    type Color: PairColor<Universe = Self>;
    type Density: Clone + Debug + PartialEq + Send + Sync;

    /// All colors, in ascending order.
    fn colors(&self) -> Vec<Self::Color>;

    fn contains(&self, color: Self::Color) -> bool {
        self.mask() & color.bit() != 0
    }

    fn mask(&self) -> u8 {
        self.colors().iter().fold(0, |m, c| m | c.bit())
    }

    fn mask_colors(&self, mask: u8) -> Vec<Self::Color> {
        self.colors().into_iter().filter(|c| mask & c.bit() != 0).collect()
    }

    /// Edge set seen from the other endpoint.
    fn reverse_mask(mask: u8) -> u8;

    /// Whether two vertices mapped to the same type vertex may have `color`.
    fn class_allows(mask: u8, color: Self::Color) -> bool {
        mask & color.bit() != 0
    }

    /// Whether the class of a type vertex must be acyclic.
    fn class_needs_acyclic(_mask: u8) -> bool {
        false
    }

    fn normalize_vertex_mask(mask: u8) -> u8 {
        mask
    }

    fn is_vertex_mask(&self, mask: u8) -> bool {
        mask != 0 && mask & !self.mask() == 0 && mask != self.mask()
    }

    fn is_edge_mask(&self, mask: u8) -> bool {
        mask != 0 && mask & !self.mask() == 0
    }

    /// Distinct vertex color sets, ascending.
    fn vertex_masks(&self) -> Vec<u8> {
        (1..=self.mask()).filter(|&m| self.is_vertex_mask(m) && Self::normalize_vertex_mask(m) == m).collect()
    }

    fn edge_masks(&self) -> Vec<u8> {
        (1..=self.mask()).filter(|&m| self.is_edge_mask(m)).collect()
    }

    /// Total density of the colors in `mask`.
    fn mask_weight(&self, mask: u8, density: &Self::Density) -> Rational;

    /// One rule per spectrum coordinate; `None` marks a coordinate forced to zero.
    fn spectrum_rules(&self, mode: Mode) -> Vec<Option<PartRule<Self::Color>>>;

    fn density_of(&self, graph: &CompleteGraph<Self::Color>) -> Result<Self::Density>;

    fn density_components(density: &Self::Density) -> Vec<Rational>;

    fn density_from_components(&self, components: &[Rational]) -> Result<Self::Density>;

    /// Builds a density without validation; used for affine extrapolation.
    fn raw_density(&self, components: &[Rational]) -> Self::Density;

    fn domain(&self) -> Domain;

    /// Constant `c` in the Turán lower bound `1 / (c (chi_s - 1))`.
    fn turan_factor(&self) -> u32;

    fn parse_color(&self, token: &str) -> Option<Self::Color>;

    fn format_mask(&self, mask: u8) -> String {
        let items: Vec<String> = self.mask_colors(mask).iter().map(|c| c.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    fn is_directed() -> bool;
}

/// A multicolor edge color, `1..=r`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Color(pub u8);

impl Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PairColor for Color {
    type Universe = Colors;

    fn reversed(self) -> Self {
        self
    }

    fn bit(self) -> u8 {
        1 << (self.0 - 1)
    }
}

/// The color set `{1..r}`, `2 <= r <= 8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Colors {
    r: u8,
}

impl Colors {
    pub const MAX_R: u8 = 8;

    pub fn new(r: u8) -> Result<Self> {
        if !(2..=Self::MAX_R).contains(&r) {
            return Err(Error::InvalidArgument(format!("r must be in 2..=8, got {r}")));
        }
        Ok(Colors { r })
    }

    pub fn r(&self) -> u8 {
        self.r
    }
}

impl Display for Colors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "multicolor r={}", self.r)
    }
}

impl Universe for Colors {
    type Color = Color;
    type Density = DensityVector;

    fn colors(&self) -> Vec<Color> {
        (1..=self.r).map(Color).collect()
    }

    fn mask(&self) -> u8 {
        ((1u16 << self.r) - 1) as u8
    }

    fn reverse_mask(mask: u8) -> u8 {
        mask
    }

    fn mask_weight(&self, mask: u8, density: &DensityVector) -> Rational {
        density.entries().iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p).sum()
    }

    fn spectrum_rules(&self, mode: Mode) -> Vec<Option<PartRule<Color>>> {
        self.colors()
            .into_iter()
            .map(|c| {
                Some(match mode {
                    Mode::Weak => PartRule::Avoid(c),
                    Mode::Strong => PartRule::Only(c),
                })
            })
            .collect()
    }

    fn density_of(&self, graph: &CompleteGraph<Color>) -> Result<DensityVector> {
        let n = graph.order();
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let mut counts = vec![0i64; self.r as usize];
        for c in graph.pairs() {
            counts[(c.0 - 1) as usize] += 1;
        }
        let total = rational::binomial2(n) as i64;
        DensityVector::new(counts.into_iter().map(|c| rational::ratio(c, total)).collect())
    }

    fn density_components(density: &DensityVector) -> Vec<Rational> {
        density.entries().to_vec()
    }

    fn density_from_components(&self, components: &[Rational]) -> Result<DensityVector> {
        if components.len() != self.r as usize {
            return Err(Error::DimensionMismatch { expected: self.r as usize, actual: components.len() });
        }
        DensityVector::new(components.to_vec())
    }

    fn raw_density(&self, components: &[Rational]) -> DensityVector {
        DensityVector::new_unchecked(components.to_vec())
    }

    fn domain(&self) -> Domain {
        Domain::simplex(self.r as usize)
    }

    fn turan_factor(&self) -> u32 {
        self.r as u32
    }

    fn parse_color(&self, token: &str) -> Option<Color> {
        token.parse::<u8>().ok().filter(|c| (1..=self.r).contains(c)).map(Color)
    }

    fn is_directed() -> bool {
        false
    }
}

/// Pair color of a digraph, relative to the ordered pair `(i, j)`.
///
/// Declaration order is the order used whenever a "smallest allowed color"
/// is needed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DirColor {
    /// No arc (`o`).
    Empty,
    /// Arcs both ways (`-`).
    Double,
    /// Single arc `i -> j` (`>`).
    Forward,
    /// Single arc `j -> i` (`<`).
    Backward,
}

impl DirColor {
    pub const ALL: [DirColor; 4] = [DirColor::Empty, DirColor::Double, DirColor::Forward, DirColor::Backward];

    pub const ARROWS: u8 = 0b1100;

    pub fn symbol(self) -> char {
        match self {
            DirColor::Empty => 'o',
            DirColor::Double => '-',
            DirColor::Forward => '>',
            DirColor::Backward => '<',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "o" | "○" => Some(DirColor::Empty),
            "-" | "−" => Some(DirColor::Double),
            ">" | "→" => Some(DirColor::Forward),
            "<" | "←" => Some(DirColor::Backward),
            _ => None,
        }
    }
}

impl Debug for DirColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Display for DirColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl PairColor for DirColor {
    type Universe = Palette;

    fn reversed(self) -> Self {
        match self {
            DirColor::Forward => DirColor::Backward,
            DirColor::Backward => DirColor::Forward,
            c => c,
        }
    }

    fn bit(self) -> u8 {
        match self {
            DirColor::Empty => 0b0001,
            DirColor::Double => 0b0010,
            DirColor::Forward => 0b0100,
            DirColor::Backward => 0b1000,
        }
    }

    fn is_arrow(self) -> bool {
        matches!(self, DirColor::Forward | DirColor::Backward)
    }

    fn arrow(forward: bool) -> Option<Self> {
        Some(if forward { DirColor::Forward } else { DirColor::Backward })
    }
}

/// Allowed pair colors of a digraph. Arrows come in pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Palette {
    Full,
    Compl,
    Orien,
    Undir,
    Tourn,
}

impl Palette {
    pub const ALL: [Palette; 5] = [Palette::Full, Palette::Compl, Palette::Orien, Palette::Undir, Palette::Tourn];

    pub fn name(self) -> &'static str {
        match self {
            Palette::Full => "full",
            Palette::Compl => "compl",
            Palette::Orien => "orien",
            Palette::Undir => "undir",
            Palette::Tourn => "tourn",
        }
    }

    /// Palette with exactly the given allowed colors, if it is one of the five.
    pub fn from_mask(mask: u8) -> Option<Palette> {
        Palette::ALL.into_iter().find(|p| p.mask() == mask)
    }

    pub fn allowed(self) -> Vec<DirColor> {
        self.colors()
    }

    pub fn has_arrows(self) -> bool {
        self.mask() & DirColor::ARROWS != 0
    }
}

impl FromStr for Palette {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Palette::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown palette {s:?}")))
    }
}

impl Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Universe for Palette {
    type Color = DirColor;
    type Density = DirDensity;

    fn colors(&self) -> Vec<DirColor> {
        DirColor::ALL.into_iter().filter(|c| self.mask() & c.bit() != 0).collect()
    }

    fn mask(&self) -> u8 {
        match self {
            Palette::Full => 0b1111,
            Palette::Compl => 0b1110,
            Palette::Orien => 0b1101,
            Palette::Undir => 0b0011,
            Palette::Tourn => 0b1100,
        }
    }

    fn reverse_mask(mask: u8) -> u8 {
        (mask & 0b0011) | ((mask & 0b0100) << 1) | ((mask & 0b1000) >> 1)
    }

    fn class_allows(mask: u8, color: DirColor) -> bool {
        if color.is_arrow() {
            mask & DirColor::ARROWS != 0
        } else {
            mask & color.bit() != 0
        }
    }

    fn class_needs_acyclic(mask: u8) -> bool {
        (mask & DirColor::ARROWS).count_ones() == 1
    }

    /// A lone `<` on a vertex means the same as a lone `>`.
    fn normalize_vertex_mask(mask: u8) -> u8 {
        if mask & DirColor::ARROWS == 0b1000 {
            (mask & 0b0011) | 0b0100
        } else {
            mask
        }
    }

    fn mask_weight(&self, mask: u8, density: &DirDensity) -> Rational {
        let mut w = rational::zero();
        if mask & DirColor::Empty.bit() != 0 {
            w += density.p_empty();
        }
        if mask & DirColor::Double.bit() != 0 {
            w += density.p();
        }
        let arrows = (mask & DirColor::ARROWS).count_ones() as i64;
        w + density.q() * rational::int(arrows)
    }

    fn spectrum_rules(&self, mode: Mode) -> Vec<Option<PartRule<DirColor>>> {
        let has = |c: DirColor| self.contains(c);
        let (empty, arrows, double) = match mode {
            Mode::Weak => (PartRule::Avoid(DirColor::Empty), PartRule::Acyclic, PartRule::Avoid(DirColor::Double)),
            Mode::Strong => (PartRule::Only(DirColor::Empty), PartRule::Transitive, PartRule::Only(DirColor::Double)),
        };
        vec![
            has(DirColor::Empty).then_some(empty),
            self.has_arrows().then_some(arrows),
            has(DirColor::Double).then_some(double),
        ]
    }

    fn density_of(&self, graph: &CompleteGraph<DirColor>) -> Result<DirDensity> {
        let n = graph.order();
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let total = rational::binomial2(n) as i64;
        let double = graph.pairs().iter().filter(|&&c| c == DirColor::Double).count() as i64;
        let arrows = graph.pairs().iter().filter(|c| c.is_arrow()).count() as i64;
        DirDensity::new(rational::ratio(double, total), rational::ratio(arrows, 2 * total), *self)
    }

    fn density_components(density: &DirDensity) -> Vec<Rational> {
        vec![density.p().clone(), density.q().clone()]
    }

    fn density_from_components(&self, components: &[Rational]) -> Result<DirDensity> {
        match components {
            [p, q] => DirDensity::new(p.clone(), q.clone(), *self),
            _ => Err(Error::DimensionMismatch { expected: 2, actual: components.len() }),
        }
    }

    fn raw_density(&self, components: &[Rational]) -> DirDensity {
        DirDensity::new_unchecked(components[0].clone(), components[1].clone(), *self)
    }

    fn domain(&self) -> Domain {
        Domain::palette(*self)
    }

    fn turan_factor(&self) -> u32 {
        match self {
            Palette::Full => 4,
            Palette::Compl | Palette::Orien => 3,
            Palette::Undir | Palette::Tourn => 2,
        }
    }

    fn parse_color(&self, token: &str) -> Option<DirColor> {
        DirColor::from_symbol(token)
    }

    fn is_directed() -> bool {
        true
    }
}
