//! Reference computations for the known examples: clique spectra of small
//! families, triangle families over three colors, and directed triangles
//! and tournaments.

use serde::Serialize;

use crate::color::{Color, Colors, DirColor, PairColor, Palette, Universe};
use crate::density::{DensityVector, DirDensity};
use crate::distfun::{dist_lower_turan, dist_max_upper, Certificate, TypeSet};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::linalg::mat_vec;
use crate::rational::{self, ratio, Rational};
use crate::spectrum::{chromatic_number, clique_spectrum, CliqueSpectrum, Mode, SpectrumTuple};
use crate::types::EnumLimits;

/// Forbidden families used by the reference cases.
pub mod families {
    use super::*;
    use crate::graph::{ColoredGraph, DiGraph};

    pub fn colors(r: u8) -> Colors {
        Colors::new(r).expect("2 <= r <= 8")
    }

    pub fn triangle(u: Colors, a: u8, b: u8, c: u8) -> ColoredGraph {
        ColoredGraph::from_rows(u, &[vec![Color(a), Color(b)], vec![Color(c)]]).expect("colors in range")
    }

    /// Triangles colored 1,1,2 and 2,2,3.
    pub fn two_triangles_112_223() -> Family<Color> {
        let u = colors(3);
        Family::new(u, vec![triangle(u, 1, 1, 2), triangle(u, 2, 2, 3)]).unwrap()
    }

    /// A triangle colored 1,1,2 over `r` colors.
    pub fn triangle_112(r: u8) -> Family<Color> {
        let u = colors(r);
        Family::new(u, vec![triangle(u, 1, 1, 2)]).unwrap()
    }

    /// The 5-cycle coloring of `K_5`: both color classes are 5-cycles.
    pub fn pentagon() -> Family<Color> {
        let u = colors(2);
        let h = ColoredGraph::from_fn(u, 5, |i, j| if matches!(j - i, 1 | 4) { Color(1) } else { Color(2) }).unwrap();
        Family::new(u, vec![h]).unwrap()
    }

    pub fn mono_triangle(r: u8, c: u8) -> Family<Color> {
        let u = colors(r);
        Family::new(u, vec![triangle(u, c, c, c)]).unwrap()
    }

    pub fn two_mono_triangles() -> Family<Color> {
        let u = colors(3);
        Family::new(u, vec![triangle(u, 1, 1, 1), triangle(u, 2, 2, 2)]).unwrap()
    }

    pub fn bichromatic_triangles() -> Family<Color> {
        let u = colors(3);
        let mut f = Vec::new();
        for a in 1..=3 {
            for b in 1..=3 {
                if a != b {
                    f.push(triangle(u, a, a, b));
                }
            }
        }
        Family::new(u, f).unwrap()
    }

    pub fn rainbow_triangle() -> Family<Color> {
        let u = colors(3);
        Family::new(u, vec![triangle(u, 1, 2, 3)]).unwrap()
    }

    pub fn cyclic_triangle_graph(p: Palette) -> DiGraph {
        DiGraph::from_rows(p, &[vec![DirColor::Forward, DirColor::Backward], vec![DirColor::Forward]]).unwrap()
    }

    pub fn transitive_tournament_graph(p: Palette, n: usize) -> DiGraph {
        DiGraph::filled(p, n, DirColor::Forward).unwrap()
    }

    pub fn cyclic_triangle(p: Palette) -> Family<DirColor> {
        Family::new(p, vec![cyclic_triangle_graph(p)]).unwrap()
    }

    pub fn transitive_triangle(p: Palette) -> Family<DirColor> {
        Family::new(p, vec![transitive_tournament_graph(p, 3)]).unwrap()
    }

    pub fn both_triangles(p: Palette) -> Family<DirColor> {
        Family::new(p, vec![transitive_tournament_graph(p, 3), cyclic_triangle_graph(p)]).unwrap()
    }

    pub fn transitive_tournament(p: Palette, n: usize) -> Family<DirColor> {
        Family::new(p, vec![transitive_tournament_graph(p, n)]).unwrap()
    }

    /// Quadratic residue tournament on 7 vertices: `i -> j` iff `j - i` is
    /// 1, 2 or 4 modulo 7.
    pub fn paley7_graph() -> DiGraph {
        DiGraph::from_fn(Palette::Tourn, 7, |i, j| {
            if matches!((j - i) % 7, 1 | 2 | 4) {
                DirColor::Forward
            } else {
                DirColor::Backward
            }
        })
        .unwrap()
    }

    pub fn paley7() -> Family<DirColor> {
        Family::new(Palette::Tourn, vec![paley7_graph()]).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub case: String,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn check(case: &str, name: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Check {
    let (expected, computed) = (expected.to_string(), computed.to_string());
    Check { case: case.into(), name: name.into(), pass: expected == computed, expected, computed }
}

pub const CASES: [&str; 6] = [
    "example-spectra",
    "triangles",
    "tournament-triangle",
    "transitive-tourn-trivial",
    "directed-triangles",
    "tournaments",
];

/// Runs one case, or every case for `"all"`.
pub fn run(case: &str) -> Result<Vec<Check>> {
    match case {
        "all" => {
            let mut out = Vec::new();
            for c in CASES {
                out.extend(run(c)?);
            }
            Ok(out)
        }
        "example-spectra" => example_spectra(),
        "triangles" => triangles(),
        "tournament-triangle" => tournament_triangle(),
        "transitive-tourn-trivial" => transitive_tourn_trivial(),
        "directed-triangles" => directed_triangles(),
        "tournaments" => tournaments(),
        other => {
            Err(Error::InvalidArgument(format!("unknown case {other:?}; expected one of {} or all", CASES.join(", "))))
        }
    }
}

fn tuples_text(s: &CliqueSpectrum) -> String {
    let mut t: Vec<&SpectrumTuple> = s.tuples.iter().collect();
    t.sort();
    let items: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn tuples_of(v: &[&[usize]]) -> String {
    let spectrum = CliqueSpectrum { mode: Mode::Weak, tuples: v.iter().map(|t| SpectrumTuple(t.to_vec())).collect() };
    tuples_text(&spectrum)
}

fn example_spectra() -> Result<Vec<Check>> {
    let case = "example-spectra";
    let mut out = Vec::new();
    let f = families::two_triangles_112_223();
    out.push(check(
        case,
        "triangles 112 and 223: weak spectrum",
        tuples_of(&[&[0, 1, 0], &[0, 0, 0]]),
        tuples_text(&clique_spectrum(&f, Mode::Weak)),
    ));
    out.push(check(case, "triangles 112 and 223: weak chi", 2, chromatic_number(&f, Mode::Weak).value));
    out.push(check(case, "triangles 112 and 223: strong chi", 2, chromatic_number(&f, Mode::Strong).value));
    let f = families::triangle_112(3);
    out.push(check(
        case,
        "triangle 112: weak spectrum",
        tuples_of(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
        tuples_text(&clique_spectrum(&f, Mode::Weak)),
    ));
    out.push(check(case, "triangle 112: weak chi", 2, chromatic_number(&f, Mode::Weak).value));
    out.push(check(case, "triangle 112: strong chi", 3, chromatic_number(&f, Mode::Strong).value));
    let f = families::pentagon();
    out.push(check(
        case,
        "pentagon coloring of K5: spectrum",
        tuples_of(&[&[2, 0], &[1, 0], &[1, 1], &[0, 2], &[0, 1], &[0, 0]]),
        tuples_text(&clique_spectrum(&f, Mode::Weak)),
    ));
    out.push(check(case, "pentagon coloring of K5: chi", 3, chromatic_number(&f, Mode::Weak).value));
    Ok(out)
}

fn dv(v: &[Rational]) -> DensityVector {
    DensityVector::new(v.to_vec()).expect("reference densities are valid")
}

fn upper_at<C: PairColor>(
    family: &Family<C>,
    kmax: usize,
    density: &<C::Universe as Universe>::Density,
) -> Result<Rational> {
    Ok(TypeSet::enumerate(family, kmax, EnumLimits::default())?.upper(density)?.value)
}

/// Compares the upper bound with `expected(p)` at every grid point.
fn grid_agrees(
    family: &Family<Color>,
    kmax: usize,
    step: &Rational,
    expected: impl Fn(&[Rational]) -> Rational,
) -> Result<(usize, usize)> {
    let types = TypeSet::enumerate(family, kmax, EnumLimits::default())?;
    let grid = crate::distfun::distfn_grid(&types, step)?;
    let total = grid.len();
    let agree = grid.iter().filter(|pt| pt.bound.value == expected(&pt.density)).count();
    Ok((agree, total))
}

fn triangles() -> Result<Vec<Check>> {
    let case = "triangles";
    let (z, h, o, t) = (ratio(0, 1), ratio(1, 2), ratio(1, 1), ratio(1, 3));
    let half = "1/2";
    let mut out = vec![
        check(
            case,
            "mono triangle at (1,0,0)",
            half,
            upper_at(&families::mono_triangle(3, 1), 2, &dv(&[o.clone(), z.clone(), z.clone()]))?,
        ),
        check(
            case,
            "triangle 112 at (1/2,1/2,0)",
            half,
            upper_at(&families::triangle_112(3), 2, &dv(&[h.clone(), h.clone(), z.clone()]))?,
        ),
        check(
            case,
            "two mono triangles at (1/2,1/2,0)",
            half,
            upper_at(&families::two_mono_triangles(), 3, &dv(&[h.clone(), h.clone(), z.clone()]))?,
        ),
        check(
            case,
            "bichromatic triangles at uniform p",
            "2/3",
            upper_at(&families::bichromatic_triangles(), 1, &dv(&[t.clone(), t.clone(), t.clone()]))?,
        ),
        check(
            case,
            "rainbow triangle at uniform p",
            "1/3",
            upper_at(&families::rainbow_triangle(), 1, &dv(&[t.clone(), t.clone(), t]))?,
        ),
    ];
    let maxima: [(&str, Family<Color>, &str); 5] = [
        ("mono triangle", families::mono_triangle(3, 1), "1/2"),
        ("triangle 112", families::triangle_112(3), "1/2"),
        ("two mono triangles", families::two_mono_triangles(), "1/2"),
        ("bichromatic triangles", families::bichromatic_triangles(), "2/3"),
        ("rainbow triangle", families::rainbow_triangle(), "1/3"),
    ];
    for (name, family, value) in maxima {
        out.push(check(case, format!("{name}: maximum over densities"), value, max_upper(&family, 2)?));
    }
    let step = ratio(1, 12);
    let (agree, total) =
        grid_agrees(&families::bichromatic_triangles(), 1, &step, |p| rational::one() - p.iter().max().unwrap())?;
    out.push(check(
        case,
        "bichromatic triangles: 1 - max p on the 1/12 grid",
        format!("{total}/{total}"),
        format!("{agree}/{total}"),
    ));
    let (agree, total) = grid_agrees(&families::rainbow_triangle(), 1, &step, |p| p.iter().min().unwrap().clone())?;
    out.push(check(
        case,
        "rainbow triangle: min p on the 1/12 grid",
        format!("{total}/{total}"),
        format!("{agree}/{total}"),
    ));
    Ok(out)
}

fn max_upper<C: PairColor>(family: &Family<C>, kmax: usize) -> Result<Rational> {
    Ok(dist_max_upper(&TypeSet::enumerate(family, kmax, EnumLimits::default())?)?.value)
}

fn tourn_density() -> DirDensity {
    DirDensity::new(ratio(0, 1), ratio(1, 2), Palette::Tourn).unwrap()
}

fn tournament_triangle() -> Result<Vec<Check>> {
    let case = "tournament-triangle";
    let f = families::cyclic_triangle(Palette::Tourn);
    Ok(vec![
        check(case, "cyclic triangle, tournaments: chi", 2, chromatic_number(&f, Mode::Weak).value),
        check(case, "cyclic triangle, tournaments: upper bound", "1/2", upper_at(&f, 1, &tourn_density())?),
        check(case, "cyclic triangle, tournaments: lower bound", "1/2", dist_lower_turan(&f)?.value),
    ])
}

fn transitive_tourn_trivial() -> Result<Vec<Check>> {
    let case = "transitive-tourn-trivial";
    let f = families::transitive_triangle(Palette::Tourn);
    let chi = chromatic_number(&f, Mode::Weak);
    let types = TypeSet::enumerate(&f, 2, EnumLimits::default())?;
    Ok(vec![
        check(case, "transitive triangle, tournaments: trivial", true, chi.trivial),
        check(case, "transitive triangle, tournaments: admissible types", 0, types.len()),
    ])
}

fn palette_density(p: Palette) -> DirDensity {
    DirDensity::new(ratio(0, 1), ratio(1, 2), p).unwrap()
}

fn directed_triangles() -> Result<Vec<Check>> {
    let case = "directed-triangles";
    let mut out = Vec::new();
    for p in [Palette::Full, Palette::Compl, Palette::Orien, Palette::Tourn] {
        let f = families::cyclic_triangle(p);
        let bound = TypeSet::enumerate(&f, 1, EnumLimits::default())?.upper(&palette_density(p))?;
        out.push(check(case, format!("cyclic triangle, {p}: value at (0,1/2)"), "1/2", &bound.value));
        out.push(check(
            case,
            format!("cyclic triangle, {p}: certificate"),
            "single-arrow vertex, stationary",
            certificate_shape(&bound.certificate, &palette_density(p)),
        ));
    }
    for p in [Palette::Full, Palette::Compl, Palette::Orien] {
        out.push(check(
            case,
            format!("transitive triangle, {p}: value at (0,1/2)"),
            "1/2",
            upper_at(&families::transitive_triangle(p), 2, &palette_density(p))?,
        ));
        out.push(check(
            case,
            format!("both triangles, {p}: value at (0,1/2)"),
            "1/2",
            upper_at(&families::both_triangles(p), 2, &palette_density(p))?,
        ));
    }
    for p in [Palette::Full, Palette::Compl, Palette::Orien, Palette::Tourn] {
        out.push(check(
            case,
            format!("cyclic triangle, {p}: maximum over densities"),
            "1/2",
            max_upper(&families::cyclic_triangle(p), 1)?,
        ));
    }
    for p in [Palette::Full, Palette::Compl, Palette::Orien] {
        out.push(check(
            case,
            format!("transitive triangle, {p}: maximum over densities"),
            "1/2",
            max_upper(&families::transitive_triangle(p), 2)?,
        ));
        out.push(check(
            case,
            format!("both triangles, {p}: maximum over densities"),
            "1/2",
            max_upper(&families::both_triangles(p), 2)?,
        ));
    }
    Ok(out)
}

/// Describes an optimal directed certificate: whether every vertex holds a
/// single arrow and `M w` is constant on the support.
fn certificate_shape(cert: &Certificate<DirColor>, d: &DirDensity) -> String {
    let Certificate::Type { type_graph, weights, .. } = cert else { return "not a type".into() };
    let single = (0..type_graph.k()).all(|i| (type_graph.vertex_set(i) & DirColor::ARROWS).count_ones() == 1);
    let m = crate::distfun::m_matrix(type_graph, d);
    let mw = mat_vec(&m, weights);
    let value = crate::linalg::quadratic_form(&m, weights);
    let stationary = weights.iter().zip(&mw).all(|(w, x)| num_traits::Zero::is_zero(w) || *x == value);
    match (single, stationary) {
        (true, true) => "single-arrow vertex, stationary".into(),
        (s, t) => format!("single-arrow {s}, stationary {t}"),
    }
}

fn tournaments() -> Result<Vec<Check>> {
    let case = "tournaments";
    let mut out = tournament_triangle()?;
    for c in &mut out {
        c.case = case.into();
    }
    let tt4 = families::transitive_tournament(Palette::Tourn, 4);
    let chi = chromatic_number(&tt4, Mode::Weak);
    out.push(check(case, "transitive 4-tournament: chi", 1, chi.value));
    out.push(check(case, "transitive 4-tournament: trivial", true, chi.trivial));
    let q = families::paley7();
    let chi = chromatic_number(&q, Mode::Weak);
    out.push(check(case, "quadratic residue 7-tournament: chi", 3, chi.value));
    let expected = ratio(1, 2 * (chi.value as i64 - 1));
    out.push(check(case, "quadratic residue 7-tournament: upper bound", &expected, upper_at(&q, 2, &tourn_density())?));
    out.push(check(case, "quadratic residue 7-tournament: lower bound", &expected, dist_lower_turan(&q)?.value));
    Ok(out)
}
