//! `edk`: command line access to spectra, types, distance bounds, editing
//! and the exact oracle.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use edk::distfun::{dist_lower_turan, dist_max_upper, distfn_grid, Certificate, TypeSet};
use edk::editing::{edit_by_type, edit_trial};
use edk::family::{format_graph, parse_graph, ColorToken};
use edk::oracle::{estimate_dist, exact_dist, guard_limit, sample_with, EstimateMode, GUARD_ENV};
use edk::rational::{self, Rational};
use edk::spectrum::{clique_spectrum, CliqueSpectrum};
use edk::types::{EnumLimits, TypeGraph};
use edk::{par, verify, Colors, Family, Mode, Palette, PropertyFamily, Universe};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "edk", version, about = "Edit distances to hereditary properties of colored graphs and digraphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for enumeration and trials; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    /// Plain text where a command has one (graphs, types, verification table).
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Clique spectrum of a property.
    Spectrum(ChiArgs),
    /// Chromatic number of a property.
    Chi(ChiArgs),
    /// Admissible types up to a size.
    Types(TypesArgs),
    /// Upper bounds on the edit distance function.
    Distfn(DistfnArgs),
    /// Randomized editing of a graph toward an admissible type.
    Edit(EditArgs),
    /// Exact edit distance of a small graph.
    Oracle(OracleArgs),
    /// A random graph with given color densities.
    Sample(SampleArgs),
    /// Monte Carlo estimate of the distance of random graphs.
    Estimate(EstimateArgs),
    /// Re-derives the reference values of the known examples.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct ChiArgs {
    #[arg(long)]
    property: PathBuf,
    #[arg(long, default_value = "weak")]
    mode: Mode,
}

#[derive(Args)]
struct TypeLimit {
    /// Largest type size.
    #[arg(long, default_value_t = 2)]
    kmax: usize,
    /// Refuse enumerations whose search bound exceeds this.
    #[arg(long, default_value_t = EnumLimits::default().max_candidates)]
    max_candidates: u128,
}

#[derive(Args)]
struct TypesArgs {
    #[arg(long)]
    property: PathBuf,
    #[command(flatten)]
    limit: TypeLimit,
}

#[derive(Args)]
#[command(group(ArgGroup::new("at").required(true).args(["p", "grid", "max"])))]
struct DistfnArgs {
    #[arg(long)]
    property: PathBuf,
    #[command(flatten)]
    limit: TypeLimit,
    /// Density: `p1,...,pr` for r colors, `p,q` for a palette.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Evaluate on every grid point with this step, e.g. `1/12`.
    #[arg(long)]
    grid: Option<String>,
    /// Maximize the bound over all densities.
    #[arg(long)]
    max: bool,
    /// Also use the simple types of the maximal spectrum tuples.
    #[arg(long)]
    spectrum_types: bool,
}

#[derive(Args)]
struct EditArgs {
    #[arg(long)]
    property: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    limit: TypeLimit,
    /// Index into the admissible types, as listed by `types`.
    #[arg(long)]
    type_index: usize,
    /// Part weights; uniform when omitted.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    property: PathBuf,
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    /// Density: `p1,...,pr`, or `p,q` together with `--palette`.
    #[arg(long)]
    p: String,
    /// Sample a digraph over this palette.
    #[arg(long)]
    palette: Option<Palette>,
    #[arg(long)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimateKind {
    Exact,
    Algorithmic,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    property: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = EstimateKind::Exact)]
    mode: EstimateKind,
    #[command(flatten)]
    limit: TypeLimit,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the case names, or `all`.
    #[arg(long, default_value = "all")]
    case: String,
}

/// A failure and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<edk::Error> for Failure {
    fn from(e: edk::Error) -> Self {
        Failure { code: if e.is_input_error() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome<T> = Result<T, Failure>;

/// A command result in every format it supports.
struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    text: Option<String>,
    /// Exit code on success paths; verification failures use 1.
    code: u8,
}

impl Report {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        Report { json, header: header.iter().map(|s| s.to_string()).collect(), rows, text: None, code: 0 }
    }

    fn with_header(mut self, header: Vec<String>) -> Report {
        self.header = header;
        self
    }

    fn with_text(mut self, text: String) -> Report {
        self.text = Some(text);
        self
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_property(path: &Path) -> Outcome<PropertyFamily> {
    PropertyFamily::parse(&read(path)?).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn load_graph<C: ColorToken>(path: &Path, universe: C::Universe) -> Outcome<edk::CompleteGraph<C>> {
    parse_graph(&read(path)?, universe).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn fmt_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt).collect()
}

/// CSV column names of density components.
fn component_names<U: Universe>(len: usize) -> Vec<String> {
    if U::is_directed() {
        vec!["p".into(), "q".into()]
    } else {
        (1..=len).map(|i| format!("p{i}")).collect()
    }
}

/// A malformed density flag is a usage error.
fn parse_density<U: Universe>(u: &U, text: &str) -> Outcome<U::Density> {
    rational::parse_list(text)
        .and_then(|parts| u.density_from_components(&parts))
        .map_err(|e| usage(format!("--p {text:?}: {e}")))
}

fn warn_guard<U: Universe>() {
    let (limit, overridden) = guard_limit::<U>();
    if overridden {
        eprintln!("warning: {GUARD_ENV} overrides the exact search limit to {limit} vertices");
    }
}

fn type_set<C: ColorToken>(family: &Family<C>, limit: &TypeLimit) -> Outcome<TypeSet<C>> {
    Ok(TypeSet::enumerate(family, limit.kmax, EnumLimits { max_candidates: limit.max_candidates })?)
}

fn type_json<C: ColorToken>(index: usize, k: &TypeGraph<C>) -> Value {
    let u = k.universe();
    json!({
        "index": index,
        "k": k.k(),
        "vertex": (0..k.k()).map(|i| u.format_mask(k.vertex_set(i))).collect::<Vec<_>>(),
        "rows": k.rows(),
    })
}

fn spectrum_report(s: &CliqueSpectrum, len: usize) -> Report {
    let mut tuples: Vec<Vec<usize>> = s.tuples.iter().map(|t| t.0.clone()).collect();
    tuples.sort_by(|a, b| b.cmp(a));
    let chi = s.chi();
    let header: Vec<String> = (1..=len).map(|i| format!("a{i}")).collect();
    let rows = tuples.iter().map(|t| t.iter().map(ToString::to_string).collect()).collect();
    Report::new(json!({"mode": s.mode, "tuples": tuples, "chi": chi.value, "trivial": chi.trivial}), &[], rows)
        .with_header(header)
}

fn spectrum_cmd<C: ColorToken>(family: &Family<C>, mode: Mode) -> Report {
    let len = family.universe().spectrum_rules(mode).len();
    spectrum_report(&clique_spectrum(family, mode), len)
}

fn chi_cmd<C: ColorToken>(family: &Family<C>, mode: Mode) -> Report {
    let chi = clique_spectrum(family, mode).chi();
    Report::new(
        json!({"mode": mode, "chi": chi.value, "trivial": chi.trivial}),
        &["mode", "chi", "trivial"],
        vec![vec![mode.to_string(), chi.value.to_string(), chi.trivial.to_string()]],
    )
}

fn types_cmd<C: ColorToken>(family: &Family<C>, args: &TypesArgs) -> Outcome<Report> {
    let ts = type_set(family, &args.limit)?;
    let mut text = format!("{}\n", edk::family::header_text(&family.universe()));
    let mut rows = Vec::new();
    for (i, k) in ts.types.iter().enumerate() {
        text.push_str(&format!("\n# index {i}\n{}", k.to_text()));
        let u = k.universe();
        let vertex: Vec<String> = (0..k.k()).map(|v| u.format_mask(k.vertex_set(v))).collect();
        let edges: Vec<String> = (1..k.k())
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| u.format_mask(k.edge_set(i, j)))
            .collect();
        rows.push(vec![i.to_string(), k.k().to_string(), vertex.join(" "), edges.join(" ")]);
    }
    let types: Vec<Value> = ts.types.iter().enumerate().map(|(i, k)| type_json(i, k)).collect();
    Ok(Report::new(
        json!({"kmax": ts.kmax, "count": ts.len(), "types": types}),
        &["index", "k", "vertex_sets", "edge_sets"],
        rows,
    )
    .with_text(text))
}

fn distfn_cmd<C: ColorToken>(family: &Family<C>, args: &DistfnArgs) -> Outcome<Report> {
    let u = family.universe();
    let mut ts = type_set(family, &args.limit)?;
    if args.spectrum_types {
        ts = ts.with_spectrum_types(family)?;
    }
    if let Some(p) = &args.p {
        let density = parse_density(&u, p)?;
        let bound = ts.upper(&density)?;
        let Certificate::Type { index, type_graph, weights } = &bound.certificate else {
            return Err(usage("upper bound without a type certificate"));
        };
        let components = fmt_all(&<C::Universe as Universe>::density_components(&density));
        let mut header = component_names::<C::Universe>(components.len());
        header.extend(["value", "type_index", "weights"].map(String::from));
        let mut row = components.clone();
        row.extend([fmt(&bound.value), index.to_string(), fmt_all(weights).join(" ")]);
        let json = json!({
            "density": components,
            "value": fmt(&bound.value),
            "kmax": ts.kmax,
            "type_index": index,
            "certificate_type": type_graph.to_text(),
            "weights": fmt_all(weights),
        });
        return Ok(Report::new(json, &[], vec![row]).with_header(header));
    }
    if let Some(step) = &args.grid {
        let step = rational::parse(step)?;
        let grid = distfn_grid(&ts, &step)?;
        let dim = grid.first().map_or(0, |g| g.density.len());
        let mut header = component_names::<C::Universe>(dim);
        header.push("value".into());
        let rows = grid
            .iter()
            .map(|pt| {
                let mut row = fmt_all(&pt.density);
                row.push(fmt(&pt.bound.value));
                row
            })
            .collect();
        let points: Vec<Value> = grid
            .iter()
            .map(|pt| {
                let index = match &pt.bound.certificate {
                    Certificate::Type { index, .. } => Some(*index),
                    Certificate::Turan { .. } => None,
                };
                json!({"density": fmt_all(&pt.density), "value": fmt(&pt.bound.value), "type_index": index})
            })
            .collect();
        return Ok(
            Report::new(json!({"kmax": ts.kmax, "step": fmt(&step), "points": points}), &[], rows).with_header(header)
        );
    }
    let max = dist_max_upper(&ts)?;
    let lower = match dist_lower_turan(family) {
        Ok(b) => Some(fmt(&b.value)),
        Err(edk::Error::TrivialProperty) => None,
        Err(e) => return Err(e.into()),
    };
    let mut header = component_names::<C::Universe>(max.density.len());
    header.extend(["value", "turan_lower"].map(String::from));
    let mut row = fmt_all(&max.density);
    row.extend([fmt(&max.value), lower.clone().unwrap_or_default()]);
    let json = json!({
        "value": fmt(&max.value),
        "density": fmt_all(&max.density),
        "active": max.active,
        "kmax": max.kmax,
        "turan_lower": lower,
    });
    Ok(Report::new(json, &[], vec![row]).with_header(header))
}

fn edit_cmd<C: ColorToken>(family: &Family<C>, args: &EditArgs) -> Outcome<Report> {
    let g = load_graph::<C>(&args.graph, family.universe())?;
    let ts = type_set(family, &args.limit)?;
    let k =
        ts.types.get(args.type_index).ok_or(edk::Error::IndexOutOfRange { index: args.type_index, len: ts.len() })?;
    let weights = match &args.weights {
        Some(w) => rational::parse_list(w)?,
        None => vec![rational::ratio(1, k.k() as i64); k.k()],
    };
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if args.trials == 1 {
        let out = edit_by_type(&g, k, &weights, args.seed)?;
        let member = family.is_member(&out.graph);
        let json = json!({
            "type_index": args.type_index,
            "changes": out.changes,
            "normalized": fmt(&out.normalized()),
            "member": member,
            "graph": format_graph(&out.graph),
        });
        let row = vec!["0".into(), out.changes.to_string(), fmt(&out.normalized()), member.to_string()];
        return Ok(Report::new(json, &["trial", "changes", "normalized", "member"], vec![row])
            .with_text(format_graph(&out.graph)));
    }
    let runs = par::map_range(args.trials, |t| edit_trial(&g, k, &weights, args.seed, t as u64));
    let runs = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let members: Vec<bool> = par::map(&runs, |o| family.is_member(&o.graph));
    let changes: Vec<usize> = runs.iter().map(|o| o.changes).collect();
    let mean = rational::ratio(changes.iter().sum::<usize>() as i64, changes.len() as i64);
    let rows = runs
        .iter()
        .zip(&members)
        .enumerate()
        .map(|(t, (o, m))| vec![t.to_string(), o.changes.to_string(), fmt(&o.normalized()), m.to_string()])
        .collect();
    let json = json!({
        "type_index": args.type_index,
        "trials": args.trials,
        "changes": changes,
        "mean_changes": fmt(&mean),
        "member": members.iter().all(|&m| m),
    });
    Ok(Report::new(json, &["trial", "changes", "normalized", "member"], rows))
}

fn oracle_cmd<C: ColorToken>(family: &Family<C>, args: &OracleArgs) -> Outcome<Report> {
    warn_guard::<C::Universe>();
    let g = load_graph::<C>(&args.graph, family.universe())?;
    let d = exact_dist(&g, family)?;
    let json = json!({
        "n": g.order(),
        "edits": d.edits,
        "normalized": fmt(&d.normalized()),
        "member": family.is_member(&d.witness),
        "witness": format_graph(&d.witness),
    });
    let row = vec![g.order().to_string(), d.edits.to_string(), fmt(&d.normalized())];
    Ok(Report::new(json, &["n", "edits", "normalized"], vec![row]).with_text(format_graph(&d.witness)))
}

fn sample_report<U: Universe>(u: U, args: &SampleArgs) -> Outcome<Report> {
    let density = parse_density(&u, &args.p)?;
    let g = sample_with(u, args.n, &density, &mut edk::editing::trial_rng(args.seed, 0));
    let text = format_graph(&g);
    let mut rows = Vec::new();
    for j in 1..g.order() {
        for i in 0..j {
            rows.push(vec![i.to_string(), j.to_string(), g.color(i, j).to_string()]);
        }
    }
    rows.sort();
    let json = json!({"n": args.n, "seed": args.seed, "graph": text});
    Ok(Report::new(json, &["i", "j", "color"], rows).with_text(text))
}

fn sample_cmd(args: &SampleArgs) -> Outcome<Report> {
    match args.palette {
        Some(p) => sample_report(p, args),
        None => {
            let r = args.p.split(',').count();
            let r = u8::try_from(r).map_err(|_| usage("too many colors"))?;
            sample_report(Colors::new(r)?, args)
        }
    }
}

fn estimate_cmd<C: ColorToken>(family: &Family<C>, args: &EstimateArgs) -> Outcome<Report> {
    let density = parse_density(&family.universe(), &args.p)?;
    let (mode, types) = match args.mode {
        EstimateKind::Exact => {
            warn_guard::<C::Universe>();
            (EstimateMode::Exact, None)
        }
        EstimateKind::Algorithmic => (EstimateMode::Algorithmic, Some(type_set(family, &args.limit)?)),
    };
    let e = estimate_dist(args.n, &density, family, args.trials, args.seed, mode, types.as_ref())?;
    let rows = e.values.iter().enumerate().map(|(t, v)| vec![t.to_string(), fmt(v)]).collect();
    let json = serde_json::to_value(&e).map_err(|err| Failure { code: 1, message: err.to_string() })?;
    Ok(Report::new(json, &["trial", "normalized"], rows))
}

fn verify_cmd(args: &VerifyArgs) -> Outcome<Report> {
    if args.case != "all" && !verify::CASES.contains(&args.case.as_str()) {
        return Err(usage(format!(
            "unknown case {:?}; expected one of {} or all",
            args.case,
            verify::CASES.join(", ")
        )));
    }
    let checks = verify::run(&args.case)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut text = String::new();
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "{status}  {:<24} {:<width$}  expected {}  computed {}\n",
            c.case, c.name, c.expected, c.computed
        ));
    }
    text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    let rows = checks
        .iter()
        .map(|c| vec![c.case.clone(), c.name.clone(), c.expected.clone(), c.computed.clone(), c.pass.to_string()])
        .collect();
    let json = json!({"checks": checks, "passed": checks.len() - failed, "failed": failed});
    let mut r = Report::new(json, &["case", "name", "expected", "computed", "pass"], rows).with_text(text);
    r.code = u8::from(failed > 0);
    Ok(r)
}

macro_rules! on_family {
    ($family:expr, $f:ident $(, $arg:expr)*) => {
        match $family {
            PropertyFamily::Multicolor(f) => $f(&f $(, $arg)*),
            PropertyFamily::Directed(f) => $f(&f $(, $arg)*),
        }
    };
}

fn run(cli: &Cli) -> Outcome<Report> {
    match &cli.command {
        Command::Spectrum(a) => Ok(on_family!(load_property(&a.property)?, spectrum_cmd, a.mode)),
        Command::Chi(a) => Ok(on_family!(load_property(&a.property)?, chi_cmd, a.mode)),
        Command::Types(a) => on_family!(load_property(&a.property)?, types_cmd, a),
        Command::Distfn(a) => on_family!(load_property(&a.property)?, distfn_cmd, a),
        Command::Edit(a) => on_family!(load_property(&a.property)?, edit_cmd, a),
        Command::Oracle(a) => on_family!(load_property(&a.property)?, oracle_cmd, a),
        Command::Sample(a) => sample_cmd(a),
        Command::Estimate(a) => on_family!(load_property(&a.property)?, estimate_cmd, a),
        Command::VerifyPaper(a) => verify_cmd(a),
    }
}

fn render(report: &Report, format: Format) -> Outcome<String> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&report.json).map_err(|e| Failure { code: 1, message: e.to_string() })?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure { code: 1, message: e.to_string() };
            w.write_record(&report.header).map_err(io)?;
            for row in &report.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure { code: 1, message: e.to_string() })?;
            String::from_utf8(bytes).map_err(|e| Failure { code: 1, message: e.to_string() })
        }
        Format::Text => report.text.clone().ok_or_else(|| usage("this command has no text output; use json or csv")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = par::with_jobs(cli.jobs, || run(&cli).and_then(|r| render(&r, cli.format).map(|s| (s, r.code))));
    match result {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
