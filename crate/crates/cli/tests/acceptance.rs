//! Acceptance suite. Runs every criterion in order and prints one
//! `criterion N ... PASS|FAIL` line each; exits nonzero if any fails.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use degcolor_core::canon::{are_isomorphic, enumerate_multigraphs, EnumerationBounds};
use degcolor_core::degree::find_degree_coloring;
use degcolor_core::harness::{read_report, ConjectureStatus, ScanReport};
use degcolor_core::named::*;
use degcolor_core::oracle::{brute_force_matching_size, naive_tau, omega_star_all_instances};
use degcolor_core::{
    check_cover_condition, check_degree_condition, check_matching_condition, chromatic_index,
    density, exists_coloring_with_palette, is_degree_coloring, maximum_matching, omega_star,
    palette, regularize, tau, Budget, Found, Multigraph, PaletteAssignment, SearchOutcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

const SCALE: [&str; 6] = ["--max-vertices", "5", "--max-mult", "3", "--max-edges", "9"];

fn degcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Scans {
    jobs8: Result<(ScanReport, Vec<u8>, Duration), String>,
    jobs1: Result<Vec<u8>, String>,
}

fn scan(dir: &Path, jobs: &str) -> Result<(ScanReport, Vec<u8>, Duration), String> {
    let path = dir.join(format!("report-{jobs}.json"));
    let mut args = vec!["scan", "--check", "all", "--samples", "20", "--seed", "0", "--jobs", jobs];
    args.extend(SCALE);
    let path_str = path.to_str().unwrap().to_string();
    args.extend(["--report", &path_str]);
    let start = Instant::now();
    let out = degcolor(&args);
    let elapsed = start.elapsed();
    let code = out.status.code();
    ensure(matches!(code, Some(0) | Some(1)), || {
        format!("scan exited {code:?}: {}", String::from_utf8_lossy(&out.stderr))
    })?;
    let report = read_report(&path).map_err(|e| e.to_string())?;
    let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    Ok((report, bytes, elapsed))
}

fn criterion_1(scans: &Scans) -> Check {
    let (report, _, elapsed) = scans.jobs8.as_ref().map_err(Clone::clone)?;
    ensure(*elapsed < Duration::from_secs(30 * 60), || format!("took {elapsed:?}"))?;
    ensure(report.records.len() == report.summary.classes, || "record count".into())?;
    for r in &report.records {
        let (lower, upper) = (r.tau.lower(), r.chi_prime.upper());
        let rho = r.delta.max(r.omega);
        ensure(rho <= r.tau.upper() && lower <= upper, || format!("sandwich at {}", r.key))?;
        ensure(r.omega <= r.omega_star && r.omega_star <= upper, || format!("omega* at {}", r.key))?;
        ensure(r.omega_star == rho, || format!("omega* identity at {}", r.key))?;
        ensure(r.chi_prime.lower() <= r.delta + r.p as usize, || format!("vizing at {}", r.key))?;
        let p = &r.pipeline;
        ensure(p.tau_r_shortcut == Some(rho) && p.omega_r <= rho, || format!("R(G) at {}", r.key))?;
    }
    Ok(format!("{} classes in {:.1?}", report.summary.classes, elapsed))
}

fn criterion_2(scans: &Scans) -> Check {
    let (report, _, _) = scans.jobs8.as_ref().map_err(Clone::clone)?;
    let s = &report.summary;
    ensure(s.confirmed + s.counterexamples + s.undecided == s.classes, || "bookkeeping".into())?;
    ensure(s.undecided == 0, || format!("{} undecided", s.undecided))?;
    ensure(s.counterexamples == 0, || {
        let first = report
            .counterexamples
            .iter()
            .find(|c| c.graph.is_empty() || c.witnesses.is_empty());
        format!("{} counterexamples (bundle incomplete: {})", s.counterexamples, first.is_some())
    })?;
    ensure(
        report.records.iter().all(|r| r.conjecture_status == ConjectureStatus::Confirmed),
        || "status".into(),
    )?;
    Ok(format!("{} confirmed", s.confirmed))
}

fn exact<W>(outcome: SearchOutcome<W>) -> Result<(usize, W, bool), String> {
    match outcome {
        SearchOutcome::Exact {
            value,
            witness,
            optimality_certified,
            ..
        } => Ok((value, witness, optimality_certified)),
        SearchOutcome::Undecided { lower, upper, .. } => Err(format!("undecided [{lower}, {upper}]")),
    }
}

fn criterion_3() -> Check {
    let cases: [(&str, Multigraph, [usize; 4]); 6] = [
        ("K3", complete(3), [2, 3, 3, 3]),
        ("C5", cycle(5), [2, 3, 3, 3]),
        ("P3", path(3), [2, 2, 2, 2]),
        ("triple edge", parallel_edge(3), [3, 3, 3, 3]),
        ("doubled triangle", doubled_triangle(), [4, 6, 6, 6]),
        ("Petersen", petersen(), [3, 3, 4, 3]),
    ];
    for (name, g, expected) in cases {
        let start = Instant::now();
        let (chi, _, chi_cert) = exact(chromatic_index(&g, Budget::seconds(60)).map_err(|e| e.to_string())?)?;
        let (t, _, tau_cert) = exact(tau(&g, Budget::seconds(60)).map_err(|e| e.to_string())?)?;
        let got = [g.max_degree(), density(&g).map_err(|e| e.to_string())?.value, chi, t];
        ensure(got == expected, || format!("{name}: got {got:?}, expected {expected:?}"))?;
        ensure(chi_cert && tau_cert, || format!("{name}: optimality not certified"))?;
        ensure(start.elapsed() < Duration::from_secs(60), || format!("{name}: too slow"))?;
    }
    let g = petersen();
    let (found, _) = find_degree_coloring(&g, 2, Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(found == Found::No, || "Petersen tau at 2".into())?;
    Ok("six instances exact".into())
}

fn criterion_4() -> Check {
    let iso = |g: &Multigraph, h: &Multigraph| -> Result<bool, String> {
        let r = regularize(g).map_err(|e| e.to_string())?;
        are_isomorphic(&r.graph, h).map_err(|e| e.to_string())
    };
    ensure(iso(&path(3), &cycle(6))?, || "R(P3) is not C6".into())?;
    ensure(iso(&complete(3), &prism())?, || "R(K3) is not the prism".into())?;
    let r = regularize(&petersen()).map_err(|e| e.to_string())?;
    ensure(r.graph == petersen() && r.is_identity(), || "R(Petersen) differs".into())?;
    Ok("P3, K3, Petersen".into())
}

fn criterion_5(scans: &Scans) -> Check {
    let (report, _, _) = scans.jobs8.as_ref().map_err(Clone::clone)?;
    let s = &report.summary;
    ensure(report.parameters.samples_per_graph == 20 && report.parameters.seed == 0, || "parameters".into())?;
    ensure(s.monotonicity_pairs > 0, || "no pairs checked".into())?;
    ensure(s.monotonicity_violations == 0, || format!("{} violations", s.monotonicity_violations))?;
    ensure(s.monotonicity_undecided == 0, || format!("{} undecided", s.monotonicity_undecided))?;
    Ok(format!("{} pairs", s.monotonicity_pairs))
}

fn criterion_6() -> Check {
    // τ against the no-pruning oracle.
    let bounds = EnumerationBounds {
        max_vertices: 4,
        max_mult: 2,
        max_edges: 12,
    };
    let mut tau_cases = 0;
    for g in enumerate_multigraphs(bounds).map_err(|e| e.to_string())? {
        let (t, _, _) = exact(tau(&g, Budget::unlimited()).map_err(|e| e.to_string())?)?;
        ensure(t == naive_tau(&g), || format!("tau mismatch on {g:?}"))?;
        tau_cases += 1;
    }

    // Matching: every labelled simple graph on 6 vertices, plus seeded
    // sparse graphs on up to 14 vertices, all with at most 10 support edges.
    let mut matching_cases = 0;
    let mut check_matching = |g: &Multigraph| -> Result<(), String> {
        ensure(maximum_matching(g).len() == brute_force_matching_size(g), || format!("matching on {g:?}"))?;
        matching_cases += 1;
        Ok(())
    };
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() > 10 {
            continue;
        }
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(u, v))| (u, v, 1))
            .collect();
        check_matching(&Multigraph::from_edges(6, &edges).unwrap())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20_000 {
        let n = rng.gen_range(7..=14);
        let mut g = Multigraph::new(n).unwrap();
        let target = rng.gen_range(1..=10);
        while g.pairs().count() < target {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && g.mult(u, v) == 0 {
                g.add_edges(u, v, 1).unwrap();
            }
        }
        check_matching(&g)?;
    }

    // ω* against the all-instances oracle.
    let bounds = EnumerationBounds {
        max_vertices: 5,
        max_mult: 3,
        max_edges: 10,
    };
    let mut omega_cases = 0;
    for g in enumerate_multigraphs(bounds).map_err(|e| e.to_string())? {
        let fast = omega_star(&g).map_err(|e| e.to_string())?.value;
        ensure(fast == omega_star_all_instances(&g), || format!("omega* mismatch on {g:?}"))?;
        omega_cases += 1;
    }
    Ok(format!("tau {tau_cases}, matching {matching_cases}, omega* {omega_cases} graphs"))
}

fn criterion_7(scans: &Scans) -> Check {
    let (report, _, _) = scans.jobs8.as_ref().map_err(Clone::clone)?;
    ensure(report.records.iter().all(|r| r.chi_palette_sound), || "report: unsound palette".into())?;
    ensure(report.records.iter().all(|r| r.tau_certified), || "report: uncertified tau".into())?;
    // Independent recheck of every witness over the same classes.
    let bounds = EnumerationBounds {
        max_vertices: 5,
        max_mult: 3,
        max_edges: 9,
    };
    let mut checked = 0;
    for g in enumerate_multigraphs(bounds).map_err(|e| e.to_string())? {
        let err = |e: degcolor_core::GraphError| e.to_string();
        let (_, col, _) = exact(chromatic_index(&g, Budget::unlimited()).map_err(err)?)?;
        let mu = palette(&g, &col).map_err(err)?;
        ensure(
            is_degree_coloring(&g, &mu).map_err(err)?
                && check_matching_condition(&g, &mu).map_err(err)?.is_empty(),
            || format!("palette of {g:?}"),
        )?;
        let (t, mu, certified) = exact(tau(&g, Budget::unlimited()).map_err(err)?)?;
        ensure(certified && is_degree_coloring(&g, &mu).map_err(err)?, || format!("tau witness of {g:?}"))?;
        if t > 0 {
            let (below, _) = find_degree_coloring(&g, t - 1, Budget::unlimited()).map_err(err)?;
            ensure(below == Found::No, || format!("tau - 1 feasible on {g:?}"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} classes rechecked"))
}

fn section(text: &str, start: &str, end: &str) -> Option<String> {
    let from = text.find(start)? + start.len();
    let to = from + text[from..].find(end)?;
    Some(text[from..to].trim_start_matches('\n').to_string())
}

fn criterion_8() -> Check {
    let out = degcolor(&["find-unrealizable", "--family", "multicycle", "--max-vertices", "6", "--max-mult", "3", "--max-colors", "6"]);
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    match out.status.code() {
        Some(0) => {
            let g = Multigraph::parse(&section(&stdout, "graph:", "palette:").ok_or("no graph")?)
                .map_err(|e| e.to_string())?;
            let mu = PaletteAssignment::parse(&section(&stdout, "palette:", "degree:").ok_or("no palette")?)
                .map_err(|e| e.to_string())?;
            let err = |e: degcolor_core::GraphError| e.to_string();
            ensure(check_degree_condition(&g, &mu).map_err(err)?, || "degree".into())?;
            ensure(check_cover_condition(&g, &mu).map_err(err)?.is_none(), || "cover".into())?;
            ensure(!check_matching_condition(&g, &mu).map_err(err)?.is_empty(), || "matching".into())?;
            ensure(exists_coloring_with_palette(&g, &mu).map_err(err)?.is_none(), || "realizable".into())?;
            Ok(format!("witness on {} vertices, {} colors", g.n(), mu.colors_count()))
        }
        Some(4) => {
            for key in ["graphs =", "degree-colorings examined =", "search nodes =", "undecided pairs ="] {
                ensure(stdout.contains(key), || format!("missing statistic `{key}`"))?;
            }
            Ok("none found, statistics reported".into())
        }
        code => Err(format!("exit {code:?}")),
    }
}

fn criterion_9(scans: &Scans) -> Check {
    let (_, bytes8, _) = scans.jobs8.as_ref().map_err(Clone::clone)?;
    let bytes1 = scans.jobs1.as_ref().map_err(Clone::clone)?;
    ensure(bytes1 == bytes8, || "reports differ".into())?;
    Ok(format!("{} bytes identical", bytes1.len()))
}

fn main() {
    // `cargo test` forwards harness flags; this target has no filters to apply.
    let dir = tempfile::tempdir().expect("temp dir");
    let scans = Scans {
        jobs8: scan(dir.path(), "8"),
        jobs1: scan(dir.path(), "1").map(|(_, bytes, _)| bytes),
    };
    let results: Vec<(usize, &str, Check)> = vec![
        (1, "exhaustive scan with hard assertions", criterion_1(&scans)),
        (2, "tau conjecture scan", criterion_2(&scans)),
        (3, "named instances", criterion_3()),
        (4, "regularization outputs", criterion_4()),
        (5, "monotonicity scan", criterion_5(&scans)),
        (6, "oracle equivalence", criterion_6()),
        (7, "palette soundness", criterion_7(&scans)),
        (8, "unrealizability search", criterion_8()),
        (9, "determinism across worker counts", criterion_9(&scans)),
    ];
    let mut failed = 0;
    for (n, name, result) in &results {
        match result {
            Ok(detail) => println!("criterion {n} {name} ... PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} {name} ... FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
