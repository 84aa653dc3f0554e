//! Forbidden families and the line-oriented property file format.
//!
//! ```text
//! # comments run to the end of a line
//! multicolor r=3              # or: directed palette=tourn
//! graph n=3
//! 1 1                         # row 0: colors of (0,1) (0,2)
//! 2                           # row 1: color of (1,2)
//! ```
//!
//! Directed rows use `o - > <` where `>` in row `i`, column `j` means the
//! single arc `i -> j`.

use std::fmt::Write as _;

use crate::color::{Color, Colors, DirColor, PairColor, Palette, Universe};
use crate::error::{Error, Result};
use crate::graph::{contains_induced, CompleteGraph};

/// `H = Forb(F)` for a finite nonempty family `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family<C: PairColor> {
    universe: C::Universe,
    forbidden: Vec<CompleteGraph<C>>,
}

impl<C: PairColor> Family<C> {
    pub fn new(universe: C::Universe, forbidden: Vec<CompleteGraph<C>>) -> Result<Self> {
        if forbidden.is_empty() {
            return Err(Error::InvalidGraph("forbidden family is empty".into()));
        }
        for h in &forbidden {
            if h.order() == 0 {
                return Err(Error::InvalidGraph("forbidden graph without vertices".into()));
            }
            if h.universe() != universe {
                return Err(Error::InvalidGraph(format!(
                    "forbidden graph over {} in a family over {universe}",
                    h.universe()
                )));
            }
        }
        Ok(Family { universe, forbidden })
    }

    pub fn universe(&self) -> C::Universe {
        self.universe
    }

    pub fn forbidden(&self) -> &[CompleteGraph<C>] {
        &self.forbidden
    }

    pub fn min_order(&self) -> usize {
        self.forbidden.iter().map(CompleteGraph::order).min().unwrap_or(0)
    }

    pub fn max_order(&self) -> usize {
        self.forbidden.iter().map(CompleteGraph::order).max().unwrap_or(0)
    }

    /// `G` has no induced copy of any forbidden graph.
    pub fn is_member(&self, g: &CompleteGraph<C>) -> bool {
        self.forbidden.iter().all(|h| !contains_induced(g, h))
    }
}

/// A parsed property file: either setting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyFamily {
    Multicolor(Family<Color>),
    Directed(Family<DirColor>),
}

impl PropertyFamily {
    pub fn parse(text: &str) -> Result<Self> {
        parse_property(text)
    }
}

#[derive(Clone, Copy)]
enum Header {
    Multicolor(Colors),
    Directed(Palette),
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { inner, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.inner.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.inner.last().map_or(1, |l| l.0)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn key_value<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected `{key}=...`, found `{token}`")))
}

fn parse_header(line: usize, text: &str) -> Result<Header> {
    let mut words = text.split_whitespace();
    let kind = words.next().unwrap_or("");
    let arg = words.next().ok_or_else(|| syntax(line, "incomplete header"))?;
    if words.next().is_some() {
        return Err(syntax(line, "trailing tokens after header"));
    }
    match kind {
        "multicolor" => {
            let r: u8 = key_value(line, arg, "r")?.parse().map_err(|_| syntax(line, "r must be an integer"))?;
            let colors = Colors::new(r).map_err(|e| syntax(line, e.to_string()))?;
            Ok(Header::Multicolor(colors))
        }
        "directed" => {
            let p = key_value(line, arg, "palette")?;
            let palette: Palette = p.parse().map_err(|e: Error| syntax(line, e.to_string()))?;
            Ok(Header::Directed(palette))
        }
        other => Err(syntax(line, format!("unknown header `{other}`"))),
    }
}

fn is_header(text: &str) -> bool {
    text.starts_with("multicolor") || text.starts_with("directed")
}

/// Colors that can be read from a property or graph file.
pub trait ColorToken: PairColor {
    fn parse_token(universe: &Self::Universe, line: usize, token: &str) -> Result<Self>;
}

impl ColorToken for Color {
    fn parse_token(universe: &Colors, line: usize, token: &str) -> Result<Color> {
        let value: i64 = token.parse().map_err(|_| syntax(line, format!("`{token}` is not a color")))?;
        universe.parse_color(token).ok_or(Error::ColorOutOfRange { line, color: value.to_string(), r: universe.r() })
    }
}

impl ColorToken for DirColor {
    fn parse_token(palette: &Palette, line: usize, token: &str) -> Result<DirColor> {
        let c = DirColor::from_symbol(token).ok_or_else(|| syntax(line, format!("`{token}` is not one of o - > <")))?;
        if !palette.contains(c) {
            return Err(Error::PaletteViolation { line, color: token.to_string(), palette: palette.to_string() });
        }
        Ok(c)
    }
}

fn parse_blocks<C: ColorToken>(universe: C::Universe, lines: &mut Lines<'_>) -> Result<Vec<CompleteGraph<C>>> {
    let mut graphs = Vec::new();
    while let Some((line, text)) = lines.next() {
        let mut words = text.split_whitespace();
        if words.next() != Some("graph") {
            return Err(syntax(line, format!("expected `graph n=...`, found `{text}`")));
        }
        let arg = words.next().ok_or_else(|| syntax(line, "missing n="))?;
        let n: usize =
            key_value(line, arg, "n")?.parse().map_err(|_| syntax(line, "n must be a nonnegative integer"))?;
        if n == 0 {
            return Err(syntax(line, "a forbidden graph needs at least one vertex"));
        }
        let mut rows = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let (row_line, row_text) = lines
                .next()
                .ok_or_else(|| syntax(lines.last_line(), format!("graph at line {line}: missing row {i}")))?;
            let row = row_text
                .split_whitespace()
                .map(|t| C::parse_token(&universe, row_line, t))
                .collect::<Result<Vec<C>>>()?;
            if row.len() != n - 1 - i {
                return Err(syntax(row_line, format!("row {i} has {} colors, expected {}", row.len(), n - 1 - i)));
            }
            rows.push(row);
        }
        graphs.push(CompleteGraph::from_rows(universe, &rows)?);
    }
    Ok(graphs)
}

/// Parses a property file.
pub fn parse_property(text: &str) -> Result<PropertyFamily> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(1, "empty property file"))?;
    let header = parse_header(line, header)?;
    let last = lines.last_line();
    let check = |graphs: usize| if graphs == 0 { Err(syntax(last, "no forbidden graphs")) } else { Ok(()) };
    match header {
        Header::Multicolor(u) => {
            let graphs = parse_blocks::<Color>(u, &mut lines)?;
            check(graphs.len())?;
            Ok(PropertyFamily::Multicolor(Family::new(u, graphs)?))
        }
        Header::Directed(p) => {
            let graphs = parse_blocks::<DirColor>(p, &mut lines)?;
            check(graphs.len())?;
            Ok(PropertyFamily::Directed(Family::new(p, graphs)?))
        }
    }
}

/// A single graph in the file format. The header line is optional; when
/// present it must agree with `universe`.
pub fn parse_graph<C: ColorToken>(text: &str, universe: C::Universe) -> Result<CompleteGraph<C>> {
    let mut lines = Lines::new(text);
    if let Some((line, t)) = lines.peek() {
        if is_header(t) {
            let declared = parse_header(line, t)?;
            if header_text(&universe) != header_line(declared) {
                return Err(Error::InvalidArgument(format!(
                    "graph file declares `{}`, property is `{}`",
                    header_line(declared),
                    header_text(&universe)
                )));
            }
            lines.next();
        }
    }
    let mut graphs = parse_blocks::<C>(universe, &mut lines)?;
    if graphs.len() != 1 {
        return Err(syntax(lines.last_line(), format!("expected one graph, found {}", graphs.len())));
    }
    Ok(graphs.remove(0))
}

fn header_line(h: Header) -> String {
    match h {
        Header::Multicolor(c) => header_text(&c),
        Header::Directed(p) => header_text(&p),
    }
}

/// The header line declaring `universe`.
pub fn header_text<U: Universe>(universe: &U) -> String {
    if U::is_directed() {
        format!("directed palette={universe}")
    } else {
        universe.to_string()
    }
}

/// Writes a graph block (`graph n=...` plus rows).
pub fn format_graph_block<C: PairColor>(g: &CompleteGraph<C>) -> String {
    let mut out = format!("graph n={}\n", g.order());
    for row in g.rows() {
        let items: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", items.join(" "));
    }
    out
}

/// Writes a complete graph file including the header.
pub fn format_graph<C: PairColor>(g: &CompleteGraph<C>) -> String {
    format!("{}\n{}", header_text(&g.universe()), format_graph_block(g))
}

pub fn format_family<C: PairColor>(family: &Family<C>) -> String {
    let mut out = format!("{}\n", header_text(&family.universe()));
    for h in family.forbidden() {
        out.push('\n');
        out.push_str(&format_graph_block(h));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    const EX2: &str = "\
# triangle with colors 1,1,2
multicolor r=3
graph n=3
1 1
2
";

    #[test]
    fn parses_multicolor_family() {
        let PropertyFamily::Multicolor(f) = parse_property(EX2).unwrap() else { panic!() };
        assert_eq!(f.universe().r(), 3);
        assert_eq!(f.forbidden().len(), 1);
        let h = &f.forbidden()[0];
        assert_eq!(h.color(0, 1), Color(1));
        assert_eq!(h.color(0, 2), Color(1));
        assert_eq!(h.color(1, 2), Color(2));
    }

    #[test]
    fn parses_directed_family() {
        let text = "directed palette=tourn\ngraph n=3\n> <\n>\n";
        let PropertyFamily::Directed(f) = parse_property(text).unwrap() else { panic!() };
        let h = &f.forbidden()[0];
        assert_eq!(h.color(0, 1), DirColor::Forward);
        assert_eq!(h.color(2, 0), DirColor::Forward);
        assert_eq!(f.universe(), Palette::Tourn);
    }

    #[test]
    fn reports_errors_with_lines() {
        let err = parse_property("multicolor r=2\ngraph n=2\n3\n").unwrap_err();
        assert_eq!(err, Error::ColorOutOfRange { line: 3, color: "3".into(), r: 2 });
        assert!(err.to_string().contains("color out of range"));

        let err = parse_property("directed palette=orien\ngraph n=2\n-\n").unwrap_err();
        assert!(matches!(err, Error::PaletteViolation { line: 3, .. }));

        let err = parse_property("multicolor r=3\ngraph n=3\n1\n2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");

        let err = parse_property("multicolour r=3\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));

        assert!(parse_property("multicolor r=3\n").is_err());
        assert!(parse_property("multicolor r=3\ngraph n=3\n1 1\n").is_err());
    }

    #[test]
    fn blank_lines_and_single_vertex_blocks() {
        let text = "multicolor r=2\n\ngraph n=1\n\ngraph n=2\n1\n";
        let PropertyFamily::Multicolor(f) = parse_property(text).unwrap() else { panic!() };
        assert_eq!(f.forbidden().len(), 2);
        assert_eq!(f.min_order(), 1);
    }

    #[test]
    fn directed_files_round_trip() {
        let g = crate::graph::DiGraph::from_fn(Palette::Full, 4, |i, j| DirColor::ALL[(i + 2 * j) % 4]).unwrap();
        let text = format_graph(&g);
        assert!(text.starts_with("directed palette=full\n"));
        assert_eq!(parse_graph::<DirColor>(&text, Palette::Full).unwrap(), g);
    }

    #[test]
    fn graph_files_round_trip() {
        let u = Colors::new(3).unwrap();
        let g = ColoredGraph::from_fn(u, 5, |i, j| Color(((i * 7 + j) % 3 + 1) as u8)).unwrap();
        let text = format_graph(&g);
        assert_eq!(parse_graph::<Color>(&text, u).unwrap(), g);
        let body = format_graph_block(&g);
        assert_eq!(parse_graph::<Color>(&body, u).unwrap(), g);
        assert!(parse_graph::<Color>(&text, Colors::new(4).unwrap()).is_err());
    }

    #[test]
    fn membership() {
        let PropertyFamily::Multicolor(f) = parse_property("multicolor r=2\ngraph n=3\n1 1\n1\n").unwrap() else {
            panic!()
        };
        let u = f.universe();
        assert!(!f.is_member(&ColoredGraph::filled(u, 3, Color(1)).unwrap()));
        assert!(f.is_member(&ColoredGraph::filled(u, 2, Color(1)).unwrap()));
        assert!(f.is_member(&ColoredGraph::empty(u)));
    }
}
