//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use udg::audit::{faithful_dim_audit, lemedge2_guarantee, lemedge_bound, Verdict};
use udg::census::{
    census, count_faithful, ramsey_exact, ramsey_fd_lower, ramsey_inequality_holds,
    zero_pattern_bound, Method, OraclePolicy,
};
use udg::construct::{embed_bipartite_faithful_with, embed_colorable, BipartiteParams};
use udg::graph::{
    complete, complete_bipartite, exact_chromatic_small, exact_coloring_small, make_kdoubleprime,
    make_kprime, make_remark_graph, petersen, Graph,
};
use udg::solver::{gradient_check, solve_faithful, SolverConfig};
use udg::verify::{max_edge_error, min_nonedge_gap, verify, Mode};

const TOL_GEOM: f64 = 1e-9;
const TOL_CONSTRUCT: f64 = 1e-7;
const MARGIN_NONEDGE: f64 = 1e-4;
const SOLVER_MARGIN: f64 = 1e-3;
const GRADIENT_TOL: f64 = 1e-5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))
}

fn cli(args: &[&str], input: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_udg"))
        .args(args)
        .env_remove("UDG_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn orthogonal_circles() -> Outcome {
    let start = Instant::now();
    let g = petersen();
    ensure(
        exact_chromatic_small(&g, 10).map_err(|e| e.to_string())? == 3,
        "chromatic number is not 3",
    )?;
    let coloring = exact_coloring_small(&g, 10).map_err(|e| e.to_string())?;
    let e = embed_colorable(&g, &coloring).map_err(|e| e.to_string())?;
    ensure(e.dim == 6, format!("dimension {}", e.dim))?;
    let err = max_edge_error(&g, &e);
    ensure(
        g.edge_count() == 15 && err <= TOL_GEOM,
        format!("edge error {err:e}"),
    )?;
    let report = verify(&g, &e, Mode::Distance, TOL_GEOM).map_err(|e| e.to_string())?;
    ensure(report.pass, "library verify failed")?;
    within(Duration::from_secs(1), start)?;
    let doc = e.to_json_with_graph(Some(&g));
    let (code, out) = cli(&["verify", "--mode", "distance"], &doc);
    ensure(code == 0, format!("cli verify exit {code}: {out}"))?;
    Ok(format!(
        "15 edges, max error {err:.1e}, {:.2?}",
        start.elapsed()
    ))
}

/// Random bipartite graph with `a` left vertices of degree 1..=max_deg into `b`
/// right vertices, resampled until no three max-degree vertices share a neighbourhood.
fn random_bipartite(rng: &mut ChaCha8Rng, a: usize, b: usize, max_deg: usize) -> Graph {
    loop {
        let mut edges = Vec::new();
        let mut full: Vec<Vec<usize>> = Vec::new();
        for u in 0..a {
            let deg = rng.random_range(1..=max_deg);
            let mut nb: Vec<usize> = sample(rng, b, deg).into_iter().collect();
            nb.sort_unstable();
            if deg == max_deg {
                full.push(nb.clone());
            }
            edges.extend(nb.into_iter().map(|v| (u, a + v)));
        }
        full.sort();
        let triple = full.windows(3).any(|w| w[0] == w[2]);
        if !triple {
            return Graph::new(a + b, edges)
                .unwrap()
                .with_bipartition(0..a)
                .unwrap();
        }
    }
}

fn bipartite_faithful() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ok = 0;
    let mut worst_gap = f64::INFINITY;
    let mut failures = Vec::new();
    for i in 0..100 {
        let g = random_bipartite(&mut rng, 12, 8, 4);
        let params = BipartiteParams {
            d: 4,
            seed: i,
            a_side: Some((0..12).collect()),
            ..BipartiteParams::default()
        };
        match embed_bipartite_faithful_with(&g, &params) {
            Ok(e) => {
                let rep =
                    verify(&g, &e, Mode::Faithful, TOL_CONSTRUCT).map_err(|e| e.to_string())?;
                let gap = min_nonedge_gap(&g, &e);
                worst_gap = worst_gap.min(gap);
                if rep.pass && max_edge_error(&g, &e) <= TOL_CONSTRUCT && gap >= MARGIN_NONEDGE {
                    ok += 1;
                } else {
                    failures.push(format!("#{i}: gap {gap:e}"));
                }
            }
            Err(err) => failures.push(format!("#{i}: {err}")),
        }
    }
    ensure(ok == 100, format!("{ok}/100; {}", failures.join("; ")))?;
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "100/100, smallest non-edge gap {worst_gap:.2e}, {:.2?}",
        start.elapsed()
    ))
}

fn audits() -> Outcome {
    let start = Instant::now();
    let r = faithful_dim_audit(&complete_bipartite(3, 3), 3).map_err(|e| e.to_string())?;
    ensure(
        r.verdict == Verdict::NotRealizable,
        format!("K_3,3 in R^3: {:?}", r.verdict),
    )?;
    for d in 4..=8 {
        let r = faithful_dim_audit(&make_kprime(d).unwrap(), d).map_err(|e| e.to_string())?;
        ensure(
            r.verdict == Verdict::NotRealizable,
            format!("K'_{d}: {:?}", r.verdict),
        )?;
    }
    let mut residuals = Vec::new();
    for d in [4, 5] {
        let g = make_kprime(d).unwrap();
        let res = solve_faithful(&g, d + 1, &SolverConfig::default());
        ensure(
            res.found(),
            format!("solver did not find K'_{d} in R^{}", d + 1),
        )?;
        let e = res.embedding.as_ref().unwrap();
        let rep = verify(&g, e, Mode::Faithful, SolverConfig::default().verify_tol())
            .map_err(|e| e.to_string())?;
        ensure(
            rep.pass && min_nonedge_gap(&g, e) >= SOLVER_MARGIN,
            format!("K'_{d} embedding does not verify"),
        )?;
        residuals.push(format!("{:.1e}", res.best_residual));
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "6 verdicts NOT_REALIZABLE, solver residuals {residuals:?}, {:.2?}",
        start.elapsed()
    ))
}

/// Labelled linear forests on 4 vertices, counted by hand: empty, one edge,
/// two edges (paths of length two or a matching), Hamiltonian paths.
const LINEAR_FORESTS_4: u64 = 1 + 6 + (12 + 3) + 12;

fn census_exactness() -> Outcome {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let line = count_faithful(4, 1, &cfg).map_err(|e| e.to_string())?;
    ensure(
        line.count_realizable == 34 && line.count_realizable == LINEAR_FORESTS_4,
        format!("(4,1) = {}", line.count_realizable),
    )?;
    ensure(line.exact, "(4,1) not decided by the oracle")?;
    let numeric =
        census(4, 1, Mode::Faithful, &cfg, OraclePolicy::SolverOnly).map_err(|e| e.to_string())?;
    let disagree: Vec<u64> = line
        .entries
        .iter()
        .zip(&numeric.entries)
        .filter(|(a, b)| a.realizable != b.realizable)
        .map(|(a, _)| a.mask)
        .collect();
    ensure(
        numeric.entries.len() == 64 && disagree.is_empty(),
        format!("solver disagrees on masks {disagree:?}"),
    )?;
    let small = count_faithful(3, 2, &cfg).map_err(|e| e.to_string())?;
    ensure(
        small.count_realizable == 8,
        format!("(3,2) = {}", small.count_realizable),
    )?;
    let plane = count_faithful(4, 2, &cfg).map_err(|e| e.to_string())?;
    ensure(
        plane.count_realizable == 63,
        format!("(4,2) = {}", plane.count_realizable),
    )?;
    let exhausted: Vec<_> = plane
        .entries
        .iter()
        .filter(|e| e.method == Method::SolverExhausted)
        .collect();
    ensure(
        exhausted.len() == 1 && exhausted[0].mask == complete(4).to_mask(),
        format!("{} solver-exhausted entries", exhausted.len()),
    )?;
    let res = exhausted[0].residual.unwrap_or(0.0);
    ensure(
        res > SOLVER_MARGIN && cfg.restarts == 200,
        format!("K_4 residual {res:e}"),
    )?;
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "34 / 8 / 63, K_4 residual {res:.2e}, {:.2?}",
        start.elapsed()
    ))
}

fn zero_pattern() -> Outcome {
    let a = zero_pattern_bound(4, 1).map_err(|e| e.to_string())?;
    let b = zero_pattern_bound(4, 2).map_err(|e| e.to_string())?;
    // C(12, 4) by the multiplicative formula in u64
    let c12_4: u64 = (1..=4).fold(1, |acc, i| acc * (12 - 4 + i) / i);
    ensure(
        a.value.to_string() == c12_4.to_string() && c12_4 == 495,
        format!("(4,1) = {}", a.value),
    )?;
    ensure(b.value.to_string() == "495", format!("(4,2) = {}", b.value))?;
    ensure(
        a.value >= 34u32.into() && b.value >= 63u32.into(),
        "bound below count",
    )?;
    let big = zero_pattern_bound(6, 2).map_err(|e| e.to_string())?;
    ensure(
        big.value.to_string() == "86493225",
        format!("(6,2) = {}", big.value),
    )?;
    Ok("495 >= 34, 495 >= 63".into())
}

fn edge_bounds() -> Outcome {
    let got: Vec<usize> = (1..=4).map(lemedge_bound).collect();
    ensure(got == [3, 7, 12, 18], format!("lemedge_bound {got:?}"))?;
    ensure(
        lemedge2_guarantee(&[3, 4, 5]) == (3, 4),
        format!("{:?}", lemedge2_guarantee(&[3, 4, 5])),
    )?;
    for d in 4..=10 {
        let c = (d + 3) * (d + 2) / 2;
        let kk = make_kdoubleprime(d).unwrap().edge_count();
        let rr = make_remark_graph(d).unwrap().edge_count();
        ensure(kk == c - 6, format!("K''_{d}: {kk} edges"))?;
        ensure(rr == c, format!("remark graph {d}: {rr} edges"))?;
    }
    Ok("bounds 3 7 12 18, guarantee (3, S^4), edge counts d = 4..10".into())
}

fn solver_integrity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(2..=8);
        let d = rng.random_range(1..=4);
        let mask = rng.random::<u64>() & ((1u64 << (n * (n - 1) / 2)) - 1);
        let g = Graph::from_mask(n, mask);
        worst = worst.max(gradient_check(&g, d, i));
    }
    ensure(worst < GRADIENT_TOL, format!("gradient error {worst:e}"))?;

    let runs = |seed: u64| -> Vec<String> {
        let cfg = SolverConfig {
            seed,
            ..SolverConfig::default()
        };
        let params = BipartiteParams {
            d: 5,
            seed,
            ..BipartiteParams::default()
        };
        vec![
            solve_faithful(&complete(4), 3, &cfg).to_json(),
            faithful_dim_audit(&make_kprime(4).unwrap(), 5)
                .unwrap()
                .to_json(),
            embed_bipartite_faithful_with(&make_kprime(4).unwrap(), &params)
                .unwrap()
                .to_json(),
            count_faithful(3, 2, &cfg).unwrap().to_json(),
        ]
    };
    ensure(runs(5) == runs(5), "library JSON differs between runs")?;
    let g = cli(&["gen", "kprime", "4"], "").1;
    let commands: [&[&str]; 5] = [
        &[
            "realize",
            "--dim",
            "5",
            "--method",
            "bipartite",
            "--seed",
            "3",
        ],
        &[
            "realize", "--dim", "5", "--method", "numeric", "--seed", "3",
        ],
        &["audit", "--dim", "5", "--seed", "3"],
        &["census", "--n", "3", "--dim", "2", "--seed", "3"],
        &["ramsey", "lower", "--s", "8", "--dim", "2"],
    ];
    for args in commands {
        let first = cli(args, &g);
        let second = cli(args, &g);
        ensure(
            first == second && first.0 == 0,
            format!("udg {} not reproducible", args.join(" ")),
        )?;
    }
    Ok(format!(
        "worst gradient error {worst:.1e}, JSON byte-identical"
    ))
}

fn ramsey() -> Outcome {
    let cfg = SolverConfig::default();
    for d in [1, 2] {
        let r = ramsey_exact(2, d, 4, &cfg).map_err(|e| e.to_string())?;
        ensure(r == Some(2), format!("ramsey_exact(2, {d}, 4) = {r:?}"))?;
    }
    let mut ms = Vec::new();
    for (s, d) in [(3, 1), (6, 1), (8, 2)] {
        let r = ramsey_fd_lower(s, d).map_err(|e| e.to_string())?;
        ensure(
            ramsey_inequality_holds(r.m, s, &r.b),
            format!("({s},{d}): m = {} violates", r.m),
        )?;
        ensure(
            !ramsey_inequality_holds(r.m + 1, s, &r.b),
            format!("({s},{d}): m + 1 satisfies"),
        )?;
        // independent check in f64: 2 C(m, s) B < 2^C(s,2)
        let binom =
            |m: usize| (0..s).fold(1.0, |acc, i| acc * (m - i.min(m)) as f64 / (i + 1) as f64);
        let b: f64 = r.b.to_string().parse().unwrap();
        let lhs = |m: usize| 2.0 * binom(m) * b;
        let rhs = 2f64.powi((s * (s - 1) / 2) as i32);
        ensure(
            lhs(r.m) < rhs && lhs(r.m + 1) >= rhs,
            format!("({s},{d}) disagrees with float check"),
        )?;
        ms.push(r.m);
    }
    Ok(format!("exact 2, 2; lower bounds {ms:?}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("orthogonal circles", orthogonal_circles),
        ("bipartite faithful", bipartite_faithful),
        ("non-realizability audits", audits),
        ("census exactness", census_exactness),
        ("zero-pattern bound", zero_pattern),
        ("edge-count bounds", edge_bounds),
        ("solver integrity", solver_integrity),
        ("ramsey calculators", ramsey),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
