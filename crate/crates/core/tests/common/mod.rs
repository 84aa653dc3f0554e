//! Seeded generators shared by the property tests.
#![allow(dead_code)]

use edk::types::TypeGraph;
use edk::{Color, ColoredGraph, Colors, CompleteGraph, DiGraph, DirColor, Family, PairColor, Palette, Universe};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph<U: Universe>(u: U, n: usize, rng: &mut impl Rng) -> CompleteGraph<U::Color> {
    let colors = u.colors();
    CompleteGraph::from_fn(u, n, |_, _| colors[rng.random_range(0..colors.len())]).unwrap()
}

pub fn colors(r: u8) -> Colors {
    Colors::new(r).unwrap()
}

pub fn random_rgraph(r: u8, n: usize, rng: &mut impl Rng) -> ColoredGraph {
    random_graph(colors(r), n, rng)
}

pub fn random_family<U: Universe>(
    u: U,
    orders: std::ops::RangeInclusive<usize>,
    rng: &mut impl Rng,
) -> Family<U::Color> {
    let count = rng.random_range(1..=2);
    let forbidden = (0..count).map(|_| random_graph(u, rng.random_range(orders.clone()), rng)).collect();
    Family::new(u, forbidden).unwrap()
}

pub fn random_rfamily(rng: &mut impl Rng) -> Family<Color> {
    let r = rng.random_range(2..=3);
    random_family(colors(r), 3..=4, rng)
}

/// Palettes with arrows, so forbidden graphs can use them.
pub const ARROW_PALETTES: [Palette; 4] = [Palette::Full, Palette::Compl, Palette::Orien, Palette::Tourn];

pub fn random_palette(rng: &mut impl Rng) -> Palette {
    Palette::ALL[rng.random_range(0..Palette::ALL.len())]
}

pub fn random_dfamily(rng: &mut impl Rng) -> Family<DirColor> {
    random_family(random_palette(rng), 3..=4, rng)
}

pub fn random_type<U: Universe>(u: U, k: usize, rng: &mut impl Rng) -> TypeGraph<U::Color> {
    let vm = u.vertex_masks();
    let em = u.edge_masks();
    let vertex = (0..k).map(|_| vm[rng.random_range(0..vm.len())]).collect();
    let edges = (0..k * (k - 1) / 2).map(|_| em[rng.random_range(0..em.len())]).collect();
    TypeGraph::new(u, vertex, edges).unwrap()
}

pub fn permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn pick<C: PairColor>(u: C::Universe, mask: u8, rng: &mut impl Rng) -> C {
    let cs = u.mask_colors(mask);
    cs[rng.random_range(0..cs.len())]
}

/// A random graph of type `k` on `n` vertices: a random vertex partition,
/// class pairs drawn from the vertex sets (single-arrow classes oriented
/// along a random order) and cross pairs from the edge sets.
pub fn graph_of_type<C: PairColor>(k: &TypeGraph<C>, n: usize, rng: &mut impl Rng) -> CompleteGraph<C> {
    let u = k.universe();
    let part: Vec<usize> = (0..n).map(|_| rng.random_range(0..k.k())).collect();
    let order = permutation(n, rng);
    let mut g = CompleteGraph::filled(u, n, u.colors()[0]).unwrap();
    for y in 1..n {
        for x in 0..y {
            let (a, b) = (part[x], part[y]);
            let c = if a != b {
                pick::<C>(u, k.edge_set(a, b), rng)
            } else {
                let mask = k.vertex_set(a);
                let c: C = pick(u, mask, rng);
                if c.is_arrow() && <C::Universe as Universe>::class_needs_acyclic(mask) {
                    C::arrow(order[x] < order[y]).unwrap()
                } else {
                    c
                }
            };
            g.set_color(x, y, c);
        }
    }
    g
}

pub fn random_digraph(p: Palette, n: usize, rng: &mut impl Rng) -> DiGraph {
    random_graph(p, n, rng)
}
