//! `degcolor`: command-line front end for the multigraph invariants,
//! degree-colorings and conjecture scans.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use degcolor_core::canon::canonical_form;
use degcolor_core::degree::find_unrealizable_degree_coloring;
use degcolor_core::harness::{run_scan, write_report, CheckKind, ScanParameters, ScanReport};
use degcolor_core::invariants::density_ratio;
use degcolor_core::named;
use degcolor_core::regularize::RegularizationProperty;
use degcolor_core::{
    chromatic_index, check_cover_condition, check_degree_condition, check_matching_condition,
    density, exists_coloring_with_palette, is_degree_coloring, is_proper, omega_star, pi,
    regularize, tau, verify_regularization, Budget, EdgeColoring, Found, GraphError, Multigraph,
    PaletteAssignment, ScanError, SearchOutcome,
};

const EXIT_OK: u8 = 0;
const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_UNDECIDED: u8 = 4;
const EXIT_ASSERTION: u8 = 5;

#[derive(Parser)]
#[command(name = "degcolor", version, about = "Edge-coloring and degree-coloring invariants of multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print n, m, Δ, p, ω, ω* and max(Δ, ω); optionally χ' and τ.
    Invariants {
        graph: PathBuf,
        #[arg(long)]
        chi: bool,
        #[arg(long)]
        tau: bool,
        #[arg(long, default_value_t = 10)]
        budget: u64,
    },
    /// Check a palette assignment against the degree, cover and matching conditions.
    CheckAssignment { graph: PathBuf, palette: PathBuf },
    /// Write R(G) and its embedding map.
    Regularize {
        graph: PathBuf,
        #[arg(long, short)]
        output: PathBuf,
        /// Embedding file; defaults to `<output>.map`.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Exhaustive scan over small multigraph classes.
    Scan {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
        #[arg(long, default_value_t = 9)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        budget: u64,
        /// Sampled deeper deletions per graph for the monotonicity check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value = "scan-report.json")]
        report: PathBuf,
    },
    /// Search a graph family for a degree-coloring that no edge coloring induces.
    FindUnrealizable {
        #[arg(long, value_enum, default_value_t = Family::Multicycle)]
        family: Family,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_mult: u32,
        /// Only this color count; otherwise every count up to --max-colors.
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_colors: usize,
        #[arg(long, default_value_t = 10)]
        budget: u64,
    },
    /// Exact chromatic index with a witness coloring.
    Chi {
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        budget: u64,
    },
    /// Exact degree-coloring index with a witness palette assignment.
    Tau {
        graph: PathBuf,
        #[arg(long, default_value_t = 10)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Tau,
    Monotone,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Multicycle,
    SingleEdge,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

impl From<std::fmt::Error> for Failure {
    fn from(e: std::fmt::Error) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants {
            graph,
            chi,
            tau,
            budget,
        } => cmd_invariants(&graph, chi, tau, budget),
        Command::CheckAssignment { graph, palette } => cmd_check_assignment(&graph, &palette),
        Command::Regularize { graph, output, map } => cmd_regularize(&graph, &output, map),
        Command::Scan {
            max_vertices,
            max_mult,
            max_edges,
            check,
            jobs,
            seed,
            budget,
            samples,
            report,
        } => {
            let params = ScanParameters {
                max_vertices,
                max_mult,
                max_edges,
                check: match check {
                    Check::Tau => CheckKind::Tau,
                    Check::Monotone => CheckKind::Monotone,
                    Check::All => CheckKind::All,
                },
                samples_per_graph: samples,
                seed,
                budget_secs: budget,
            };
            cmd_scan(&params, jobs, &report)
        }
        Command::FindUnrealizable {
            family,
            max_vertices,
            max_mult,
            colors,
            max_colors,
            budget,
        } => cmd_find_unrealizable(family, max_vertices, max_mult, colors, max_colors, budget),
        Command::Chi { graph, budget } => cmd_chi(&graph, budget),
        Command::Tau { graph, budget } => cmd_tau(&graph, budget),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    Multigraph::parse(&read_text(path)?)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn read_palette(path: &Path) -> Result<PaletteAssignment, Failure> {
    PaletteAssignment::parse(&read_text(path)?)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn used_palette_colors(mu: &PaletteAssignment) -> usize {
    mu.masks().iter().fold(0u64, |acc, m| acc | m).count_ones() as usize
}

/// Value of an optimal edge coloring, recomputed from the witness.
fn verified_chi(g: &Multigraph, col: &EdgeColoring, claimed: usize) -> Result<usize, Failure> {
    if !is_proper(g, col)? {
        return Err(Failure::new(EXIT_ASSERTION, "solver returned an improper coloring"));
    }
    let used = col.distinct_colors();
    if used != claimed {
        return Err(Failure::new(
            EXIT_ASSERTION,
            format!("coloring uses {used} colors, solver reported {claimed}"),
        ));
    }
    Ok(used)
}

/// Value of an optimal degree-coloring, recomputed from the witness.
fn verified_tau(g: &Multigraph, mu: &PaletteAssignment, claimed: usize) -> Result<usize, Failure> {
    if !is_degree_coloring(g, mu)? {
        return Err(Failure::new(EXIT_ASSERTION, "solver returned an invalid degree-coloring"));
    }
    let used = used_palette_colors(mu);
    if used != claimed {
        return Err(Failure::new(
            EXIT_ASSERTION,
            format!("palette uses {used} colors, solver reported {claimed}"),
        ));
    }
    Ok(used)
}

fn chi_section(out: &mut String, g: &Multigraph, budget: u64) -> Result<bool, Failure> {
    match chromatic_index(g, Budget::seconds(budget))? {
        SearchOutcome::Exact {
            value,
            witness,
            optimality_certified,
            ..
        } => {
            let value = verified_chi(g, &witness, value)?;
            writeln!(out, "chi' = {value}")?;
            writeln!(out, "chi' certified = {optimality_certified}")?;
            out.push_str(&witness.to_text());
            Ok(true)
        }
        SearchOutcome::Undecided { lower, upper, .. } => {
            writeln!(out, "chi' undecided in [{lower}, {upper}]")?;
            Ok(false)
        }
    }
}

fn tau_section(out: &mut String, g: &Multigraph, budget: u64) -> Result<bool, Failure> {
    match tau(g, Budget::seconds(budget))? {
        SearchOutcome::Exact {
            value,
            witness,
            optimality_certified,
            ..
        } => {
            let value = verified_tau(g, &witness, value)?;
            writeln!(out, "tau = {value}")?;
            writeln!(out, "tau certified = {optimality_certified}")?;
            out.push_str(&witness.to_text());
            Ok(true)
        }
        SearchOutcome::Undecided { lower, upper, .. } => {
            writeln!(out, "tau undecided in [{lower}, {upper}]")?;
            Ok(false)
        }
    }
}

fn cmd_invariants(path: &Path, chi: bool, with_tau: bool, budget: u64) -> Outcome {
    let g = read_graph(path)?;
    let mut out = String::new();
    let delta = g.max_degree();
    writeln!(out, "n = {}", g.n())?;
    writeln!(out, "m = {}", g.edge_count())?;
    writeln!(out, "delta = {delta}")?;
    writeln!(out, "p = {}", g.max_multiplicity())?;

    let w = density(&g)?;
    let s = w.witness_set;
    let omega = if s.len() >= 2 {
        density_ratio(g.induced_edge_count(s), s.len())
    } else {
        0
    };
    writeln!(out, "omega = {omega} on {s}")?;

    let ws = omega_star(&g)?;
    let f = &ws.witness_edges;
    let omega_star = if f.is_empty() {
        0
    } else {
        (f.size() as usize).div_ceil(pi(&g, f))
    };
    writeln!(out, "omega* = {omega_star} on {f}")?;
    writeln!(out, "fractional chi' = {}", delta.max(omega))?;

    let mut decided = true;
    if chi {
        decided &= chi_section(&mut out, &g, budget)?;
    }
    if with_tau {
        decided &= tau_section(&mut out, &g, budget)?;
    }
    Ok((out, if decided { EXIT_OK } else { EXIT_UNDECIDED }))
}

fn cmd_chi(path: &Path, budget: u64) -> Outcome {
    let g = read_graph(path)?;
    let mut out = String::new();
    let decided = chi_section(&mut out, &g, budget)?;
    Ok((out, if decided { EXIT_OK } else { EXIT_UNDECIDED }))
}

fn cmd_tau(path: &Path, budget: u64) -> Outcome {
    let g = read_graph(path)?;
    let mut out = String::new();
    let decided = tau_section(&mut out, &g, budget)?;
    Ok((out, if decided { EXIT_OK } else { EXIT_UNDECIDED }))
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_check_assignment(graph: &Path, palette: &Path) -> Outcome {
    let g = read_graph(graph)?;
    let mu = read_palette(palette)?;
    let mut out = String::new();
    let degree_ok = check_degree_condition(&g, &mu)?;
    writeln!(out, "degree: {}", pass(degree_ok))?;
    if !degree_ok {
        for x in 0..g.n() {
            if mu.set_size(x) != g.degree(x) {
                writeln!(out, "  vertex {x}: {} colors, degree {}", mu.set_size(x), g.degree(x))?;
            }
        }
    }
    let cover = check_cover_condition(&g, &mu)?;
    writeln!(out, "cover: {}", pass(cover.is_none()))?;
    if let Some(v) = &cover {
        writeln!(out, "  S = {}: |E(S)| = {} > {}", v.set, v.lhs, v.rhs)?;
    }
    let bad = check_matching_condition(&g, &mu)?;
    writeln!(out, "matching: {}", pass(bad.is_empty()))?;
    for color in &bad {
        writeln!(out, "  color {color}: class without a perfect matching")?;
    }
    let code = if degree_ok && cover.is_none() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    };
    Ok((out, code))
}

fn cmd_regularize(graph: &Path, output: &Path, map: Option<PathBuf>) -> Outcome {
    let g = read_graph(graph)?;
    let res = regularize(&g)?;
    let report = verify_regularization(&g, &res)?;
    let map = map.unwrap_or_else(|| {
        let mut p = output.as_os_str().to_owned();
        p.push(".map");
        PathBuf::from(p)
    });
    let write = |path: &Path, text: String| {
        fs::write(path, text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
    };
    write(output, res.graph.to_text())?;
    write(&map, res.embedding_text())?;

    let r = &res.graph;
    let degrees = r.degrees();
    let regular = degrees.iter().all(|&d| d == report.rho);
    let mut out = String::new();
    writeln!(out, "rho = {}", report.rho)?;
    writeln!(out, "identity = {}", res.is_identity())?;
    writeln!(out, "R: n = {}, m = {}", r.n(), r.edge_count())?;
    writeln!(out, "regular: {}", pass(regular))?;
    writeln!(out, "max degree {} = rho: {}", report.delta_r, pass(report.delta_r == report.rho))?;
    writeln!(
        out,
        "omega(G) = {} <= omega(R) = {} <= rho: {}",
        report.omega_g,
        report.omega_r,
        pass(report.omega_g <= report.omega_r && report.omega_r <= report.rho)
    )?;
    let induced = !report.failures.contains(&RegularizationProperty::InducedEmbedding);
    writeln!(out, "induced embedding: {}", pass(induced))?;
    writeln!(out, "wrote {} and {}", output.display(), map.display())?;
    let code = if report.passed() { EXIT_OK } else { EXIT_ASSERTION };
    Ok((out, code))
}

fn scan_failure(e: ScanError) -> Failure {
    match e {
        ScanError::Graph(g) => Failure::new(EXIT_USAGE, g.to_string()),
        other => Failure::new(EXIT_ASSERTION, other.to_string()),
    }
}

fn cmd_scan(params: &ScanParameters, jobs: usize, report_path: &Path) -> Outcome {
    if jobs == 0 {
        return Err(Failure::new(EXIT_USAGE, "--jobs must be at least 1"));
    }
    let report = run_scan(params, jobs).map_err(scan_failure)?;
    write_report(&report, report_path).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    Ok((scan_summary(&report, report_path)?, scan_exit_code(&report)))
}

fn scan_exit_code(report: &ScanReport) -> u8 {
    if report.has_counterexample() {
        EXIT_COUNTEREXAMPLE
    } else if report.has_undecided() {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

fn scan_summary(report: &ScanReport, path: &Path) -> Result<String, Failure> {
    let s = &report.summary;
    let mut out = String::new();
    writeln!(out, "classes = {}", s.classes)?;
    if report.parameters.check.includes_tau() {
        writeln!(out, "confirmed = {}", s.confirmed)?;
        writeln!(out, "counterexamples = {}", s.counterexamples)?;
        writeln!(out, "undecided = {}", s.undecided)?;
    }
    if report.parameters.check.includes_monotone() {
        writeln!(out, "monotonicity pairs = {}", s.monotonicity_pairs)?;
        writeln!(out, "monotonicity violations = {}", s.monotonicity_violations)?;
        writeln!(out, "monotonicity undecided = {}", s.monotonicity_undecided)?;
    }
    writeln!(out, "search nodes = {}", s.search_nodes)?;
    for c in &report.counterexamples {
        writeln!(out, "counterexample {}: {}", c.key, c.detail)?;
    }
    writeln!(out, "report written to {}", path.display())?;
    Ok(out)
}

fn family_graphs(family: Family, max_vertices: usize, max_mult: u32) -> Result<Vec<Multigraph>, Failure> {
    if max_mult == 0 {
        return Err(Failure::new(EXIT_USAGE, "--max-mult must be at least 1"));
    }
    let graphs = match family {
        Family::SingleEdge => vec![named::single_edge()],
        Family::Multicycle => {
            if max_vertices > 10 {
                return Err(Failure::new(EXIT_USAGE, "--max-vertices is limited to 10"));
            }
            let mut seen = std::collections::BTreeSet::new();
            let mut graphs = Vec::new();
            for k in 1..=max_mult {
                graphs.push(named::parallel_edge(k));
            }
            for n in 3..=max_vertices {
                let mut mults = vec![1u32; n];
                loop {
                    let g = named::multicycle(&mults);
                    if seen.insert(canonical_form(&g)?) {
                        graphs.push(g);
                    }
                    let Some(i) = mults.iter().rposition(|&k| k < max_mult) else {
                        break;
                    };
                    mults[i] += 1;
                    mults[i + 1..].iter_mut().for_each(|k| *k = 1);
                }
            }
            graphs
        }
    };
    Ok(graphs)
}

fn cmd_find_unrealizable(
    family: Family,
    max_vertices: usize,
    max_mult: u32,
    colors: Option<usize>,
    max_colors: usize,
    budget: u64,
) -> Outcome {
    let graphs = family_graphs(family, max_vertices, max_mult)?;
    let counts: Vec<usize> = match colors {
        Some(c) => vec![c],
        None => (1..=max_colors).collect(),
    };
    let (mut pairs, mut nodes, mut colorings, mut undecided) = (0u64, 0u64, 0u64, 0u64);
    for g in &graphs {
        for &c in &counts {
            if c < g.max_degree() {
                continue;
            }
            pairs += 1;
            let search = find_unrealizable_degree_coloring(g, c, Budget::seconds(budget))?;
            nodes += search.nodes;
            colorings += search.degree_colorings;
            match search.result {
                Found::Yes(mu) => return Ok((witness_output(g, &mu)?, EXIT_OK)),
                Found::Undecided => undecided += 1,
                Found::No => {}
            }
        }
    }
    let mut out = String::new();
    writeln!(out, "no unrealizable degree-coloring found")?;
    writeln!(out, "graphs = {}", graphs.len())?;
    writeln!(out, "graph/color-count pairs searched = {pairs}")?;
    writeln!(out, "degree-colorings examined = {colorings}")?;
    writeln!(out, "search nodes = {nodes}")?;
    writeln!(out, "undecided pairs = {undecided}")?;
    Ok((out, EXIT_UNDECIDED))
}

/// Re-checks the witness from scratch before printing it.
fn witness_output(g: &Multigraph, mu: &PaletteAssignment) -> Result<String, Failure> {
    let degree_ok = check_degree_condition(g, mu)?;
    let cover_ok = check_cover_condition(g, mu)?.is_none();
    let bad = check_matching_condition(g, mu)?;
    let realizable = exists_coloring_with_palette(g, mu)?.is_some();
    if !(degree_ok && cover_ok && !bad.is_empty() && !realizable) {
        return Err(Failure::new(EXIT_ASSERTION, "witness failed re-verification"));
    }
    let mut out = String::new();
    writeln!(out, "unrealizable degree-coloring found")?;
    writeln!(out, "graph:")?;
    out.push_str(&g.to_text());
    writeln!(out, "palette:")?;
    out.push_str(&mu.to_text());
    writeln!(out, "degree: pass")?;
    writeln!(out, "cover: pass")?;
    let list: Vec<String> = bad.iter().map(|c| c.to_string()).collect();
    writeln!(out, "matching: FAIL (colors {})", list.join(" "))?;
    writeln!(out, "edge coloring with this palette: none")?;
    Ok(out)
}
