//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when any
//! criterion fails, except those listed in `KNOWN_UNATTAINABLE`, which are
//! still evaluated and reported.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use systolic_core::bounds::{
    best_upper_bound, best_upper_sequence, group_count_bound, kappa_upper_from_systole, subadditivity_violation,
    surface_kappa_bounds, UpperIngredients,
};
use systolic_core::genfun::{detect_linear_recurrence, integerized_log_ratio, shortest_recurrence, RationalSequence};
use systolic_core::graphs::{construct_regular_girth, girth, vertex_window, ConstructionBudget, Girth, Graph};
use systolic_core::groups::{abelianization, heisenberg_presentation};
use systolic_core::homology::{check_s2_torsion_bound, homology, minor_gcd_check};
use systolic_core::sleeve::{assemble, sleeve_volume_single, upper_bound_even, CubicalModel};
use systolic_core::snf::{smith_normal_form, SparseMatrix};
use systolic_core::waring::{min_powers, verify_g4};
use systolic_core::{corpus, Error};
use systolic_oracles::{girth_by_cycle_enumeration, linear_complexity, naive_smith};

/// Criteria reported but not required to pass; see the README.
const KNOWN_UNATTAINABLE: &[u32] = &[8];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let spent = start.elapsed();
    if spent >= limit {
        out.passed = false;
    }
    out.detail = format!("{}; {:.2?} (limit {:?})", out.detail, spent, limit);
    out
}

fn rp2_pipeline() -> Outcome {
    timed(Duration::from_secs(1), || {
        let x = corpus::complex("rp2_min").expect("built-in");
        let counts = x.face_counts();
        let h = homology(&x);
        let h1_z2 = h.betti.get(1) == Some(&0) && h.torsion[1] == vec![BigInt::from(2)];
        let orientable = x.orient().map(|o| o.is_orientable()).unwrap_or(true);
        let admissible = x.is_admissible_dim2().unwrap_or(false);
        let check = check_s2_torsion_bound(&x);
        let passed = counts == [6, 15, 10]
            && h1_z2
            && !orientable
            && admissible
            && check.s2 == 10
            && (check.bound - 1.261_859_507).abs() < 1e-6
            && check.holds;
        outcome(
            passed,
            format!(
                "faces {counts:?}, H1 = Z/2: {h1_z2}, orientable {orientable}, admissible {admissible}, \
                 check ({}, {:.4}, {})",
                check.s2, check.bound, check.holds
            ),
        )
    })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=8);
    let cols = rng.gen_range(1..=8);
    let density: f64 = rng.gen_range(0.2..0.8);
    (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-3..=3) } else { 0 }).collect())
        .collect()
}

fn factors(m: &SparseMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors
}

fn snf_oracle() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let trials = 1000;
        let mut mismatches = 0;
        for _ in 0..trials {
            let dense = random_matrix(&mut rng);
            let m = SparseMatrix::from_dense(&dense);
            let ours = factors(&m);
            let oracle: Vec<BigInt> = naive_smith(&dense).into_iter().map(BigInt::from).collect();
            let mut row_perm: Vec<usize> = (0..m.row_count()).collect();
            let mut col_perm: Vec<usize> = (0..m.col_count()).collect();
            for i in (1..row_perm.len()).rev() {
                row_perm.swap(i, rng.gen_range(0..=i));
            }
            for i in (1..col_perm.len()).rev() {
                col_perm.swap(i, rng.gen_range(0..=i));
            }
            let permuted = factors(&m.permuted(&row_perm, &col_perm));
            let transposed = factors(&m.transpose());
            if ours != oracle || permuted != ours || transposed != ours {
                mismatches += 1;
            }
        }
        outcome(mismatches == 0, format!("{trials} matrices, {mismatches} mismatches"))
    })
}

fn corpus_det_bound() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for entry in corpus::complexes() {
        if entry.complex.dim().unwrap_or(0) < 2 {
            continue;
        }
        let d2 = entry.complex.boundary_matrix(2).expect("dimension >= 2");
        let check = minor_gcd_check(&d2);
        // t(D)^2 <= 3^rank <= 3^{s_2}.
        let exact = &check.t_d * &check.t_d <= num_traits::pow(BigInt::from(3), check.s2);
        checked += 1;
        if !(check.passed() && exact) {
            violations.push(entry.name);
        }
    }
    outcome(checked > 0 && violations.is_empty(), format!("{checked} boundary matrices, violations {violations:?}"))
}

fn heisenberg_family() -> Outcome {
    timed(Duration::from_secs(5), || {
        let bad: Vec<u64> = (1..=200)
            .filter(|&n| {
                let g = abelianization(&heisenberg_presentation(n).expect("n >= 1"));
                let expected: Vec<BigInt> = if n == 1 { Vec::new() } else { vec![BigInt::from(n)] };
                g.free_rank != 2 || g.torsion_factors != expected
            })
            .collect();
        outcome(bad.is_empty(), format!("n = 1..=200, mismatches {bad:?}"))
    })
}

fn waring() -> Outcome {
    timed(Duration::from_secs(60), || {
        let report = match verify_g4(1_000_000) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("verification failed: {e}")),
        };
        let c79 = min_powers(79, 4).map(|d| d.count()).unwrap_or(0);
        outcome(
            report.bound_holds && report.all_verified && report.max_count == 19 && c79 == 19,
            format!(
                "max count {} at {} value(s), count(79) = {c79}, all re-summed: {}",
                report.max_count,
                report.argmax.len(),
                report.all_verified
            ),
        )
    })
}

fn independent_check(graph: &Graph, c: usize, g: usize) -> bool {
    let regular = graph.degrees().iter().all(|&d| d == c);
    let bfs = girth(graph);
    regular && matches!(bfs, Girth::Finite(h) if h >= g) || regular && bfs == Girth::Infinite
}

fn all_graphs_on(n: usize, mut f: impl FnMut(&[(usize, usize)])) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        f(&edges);
    }
}

fn girth_agrees(n: usize, edges: &[(usize, usize)]) -> bool {
    let g = Graph::new(n, edges.iter().copied()).expect("simple graph");
    girth(&g).finite() == girth_by_cycle_enumeration(n, edges)
}

fn girth_construction() -> Outcome {
    let cases = [(3, 5, 30), (3, 6, 40), (7, 4, 168), (7, 5, 400)];
    let mut notes = Vec::new();
    let mut passed = true;
    for (c, g, vertices) in cases {
        match construct_regular_girth(c, g, vertices, 1, ConstructionBudget::default()) {
            Ok(graph) => {
                let ok = graph.vertex_count() == vertices && independent_check(&graph, c, g);
                passed &= ok;
                notes.push(format!("({c},{g}) n={vertices} {}", if ok { "ok" } else { "bad" }));
            }
            Err(e) => {
                passed = false;
                notes.push(format!("({c},{g}) n={vertices} failed: {e}"));
            }
        }
    }
    // Every labelled graph on at most six vertices, then random graphs up to twelve.
    let mut compared = 0usize;
    let mut disagreements = 0usize;
    for n in 1..=6 {
        all_graphs_on(n, |edges| {
            compared += 1;
            disagreements += usize::from(!girth_agrees(n, edges));
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..3000 {
        let n = rng.gen_range(7..=12);
        let p: f64 = rng.gen_range(0.1..0.5);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        compared += 1;
        disagreements += usize::from(!girth_agrees(n, &edges));
    }
    for entry in corpus::graphs() {
        if entry.graph.vertex_count() <= 12 {
            compared += 1;
            disagreements += usize::from(!girth_agrees(entry.graph.vertex_count(), entry.graph.edges()));
        }
    }
    passed &= disagreements == 0;
    notes.push(format!("girth oracle: {compared} graphs, {disagreements} disagreements"));
    outcome(passed, notes.join(", "))
}

fn sleeve_formulas() -> Outcome {
    let mut notes = Vec::new();
    // Volume of 2n sleeves is 4 m n c ε.
    let mut volume_points = 0;
    let mut volume_ok = true;
    for m in 3..=4u32 {
        for c in [2 * m + 1, 2 * m + 3] {
            for n in [1i64, 2, 5, 8, 13] {
                for den in [3i64, 8, 10, 12, 25] {
                    let model = CubicalModel::new(m, c).expect("valid model");
                    let eps = ratio(1, den);
                    let total = sleeve_volume_single(&model, &eps).expect("positive ε") * BigInt::from(2 * n);
                    volume_ok &= total == ratio(4 * i64::from(m) * n * i64::from(c), den);
                    volume_points += 1;
                }
            }
        }
    }
    notes.push(format!("{volume_points} volume points exact: {volume_ok}"));

    let model = CubicalModel::new(3, 7).expect("valid model");
    let target = 3.0 * 7.0 * 6f64.ln();
    let worst = [2u64, 10, 1000, 1_000_000]
        .iter()
        .map(|&n| {
            let two_n = 2.0 * n as f64;
            let recovered = upper_bound_even(&model, n).expect("n >= 2") / (two_n / two_n.ln());
            ((recovered - target) / target).abs()
        })
        .fold(0.0, f64::max);
    let constant_ok = worst <= 1e-12;
    notes.push(format!("constant recovered to {worst:.1e}"));

    let window = vertex_window(7, 5).expect("c >= 7");
    let window_ok = window == (BigInt::from(6216), BigInt::from(7776));
    notes.push(format!("window(7,5) = ({}, {})", window.0, window.1));

    // Regular graphs of known girth g against ε with 2gε <= 1.
    let mut graphs = vec![Graph::complete(8).expect("K8")];
    for (g, n, seed) in [(3, 20, 1), (3, 40, 2), (3, 64, 3), (4, 168, 4), (4, 180, 5), (4, 200, 6)] {
        graphs.push(construct_regular_girth(7, g, n, seed, ConstructionBudget::default()).expect("feasible"));
    }
    let mut rejected = 0;
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    'outer: for graph in graphs.iter().cycle() {
        let g = girth(graph).finite().expect("regular graphs have cycles") as i64;
        for j in 0..5 {
            if cases == 100 {
                break 'outer;
            }
            // 2ε = 1/(g + j) exactly, or a random value no larger than 1/g.
            let eps = if j == 0 { ratio(1, 2 * g) } else { ratio(1, 2 * g + rng.gen_range(0..4 * g)) };
            cases += 1;
            if matches!(assemble(&model, &eps, graph), Err(Error::GirthTooSmall { .. })) {
                rejected += 1;
            }
        }
    }
    notes.push(format!("rejected {rejected}/{cases} adversarial cases"));
    outcome(volume_ok && volume_points == 100 && constant_ok && window_ok && rejected == 100, notes.join(", "))
}

fn best_subadditivity() -> Outcome {
    let ingredients = UpperIngredients { base: vec![(1, 1.0)], log_constants: vec![1.0], linear_slopes: vec![] };
    let seq = best_upper_sequence(1000, &ingredients).expect("valid ingredients");
    let subadditive = subadditivity_violation(&seq[..400]).is_none_or(|(j, k)| j > 200 || k > 200);
    let per_unit = seq.iter().enumerate().map(|(i, b)| b / (i + 1) as f64).collect::<Vec<_>>();
    let monotone = per_unit.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    let best_1 = seq[0];
    let big = best_upper_bound(1_000_000, &ingredients).expect("valid ingredients") / 1e6;
    let decays = big < 0.01 * best_1;
    let mut detail = format!(
        "subadditive for j,k <= 200: {subadditive}, per-unit non-increasing to 1000: {monotone}, \
         best(1e6)/1e6 = {big:.4} vs 0.01 best(1) = {:.4}",
        0.01 * best_1
    );
    if !decays {
        detail.push_str(
            "; with the log bound as the only sublinear ingredient, best(k)/k >= min(base rate, C/ln(1+k)) \
             and best(1) <= C/ln 2, so the ratio stays above ln 2/ln(1e6+1) ~ 0.050 of best(1) at k = 1e6",
        );
    }
    outcome(subadditive && monotone && decays, detail)
}

fn spot_values() -> Outcome {
    let mut notes = Vec::new();
    let s1 = surface_kappa_bounds(1).ok();
    let s2 = surface_kappa_bounds(2).ok();
    let surface_ok =
        s1 == Some((ratio(4, 3), BigInt::from(14))) && s2.as_ref().map(|s| &s.1) == Some(&BigInt::from(24));
    let show = |s: Option<(BigRational, BigInt)>| s.map_or("error".into(), |(lo, hi)| format!("({lo}, {hi})"));
    notes.push(format!("surface l=1 {}, l=2 {}", show(s1.clone()), show(s2.clone())));
    let chain_failures: Vec<u64> =
        (1..=60).filter(|&k| !group_count_bound(k).map(|b| b.chain_holds()).unwrap_or(false)).collect();
    notes.push(format!("group-count chain fails for K in {chain_failures:?}"));
    let floor = std::f64::consts::PI / 16.0;
    let kappa_ok = kappa_upper_from_systole(floor * 0.999).is_err()
        && kappa_upper_from_systole(0.0).is_err()
        && kappa_upper_from_systole(floor).is_ok();
    notes.push(format!("kappa rejects S < π/16: {kappa_ok}"));
    outcome(surface_ok && chain_failures.is_empty() && kappa_ok, notes.join(", "))
}

fn recurrences() -> Outcome {
    let mut notes = Vec::new();
    let constant = RationalSequence::from_integers([7; 20]).expect("non-empty");
    let c = detect_linear_recurrence(&constant, 8).expect("long enough");
    let constant_ok = c.found && c.order == 1;
    let mut fib = vec![1i64, 1];
    while fib.len() < 20 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let f =
        detect_linear_recurrence(&RationalSequence::from_integers(fib).expect("non-empty"), 8).expect("long enough");
    let fib_ok = f.found && f.order == 2 && f.coefficients == vec![ratio(1, 1), ratio(1, 1)];
    let log = detect_linear_recurrence(&integerized_log_ratio(1.0, 60), 12).expect("long enough");
    let log_ok = !log.found;
    let coefficients: Vec<String> = f.coefficients.iter().map(ToString::to_string).collect();
    notes.push(format!(
        "constant order {}, fibonacci order {} with ({}), log ratio recurrence found {}",
        c.order,
        f.order,
        coefficients.join(", "),
        log.found
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut disagreements = 0;
    for _ in 0..500 {
        let len = rng.gen_range(1..=10);
        let terms: Vec<BigRational> = (0..len).map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
        if shortest_recurrence(&terms).0 != linear_complexity(&terms) {
            disagreements += 1;
        }
    }
    notes.push(format!("500 random sequences, {disagreements} disagreements with the Hankel oracle"));
    outcome(constant_ok && fib_ok && log_ok && disagreements == 0, notes.join(", "))
}

fn run_cli(args: &[String]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_systolic")).args(args).output().map_err(|e| e.to_string())?;
    if out.status.code() == Some(0) {
        Ok(out.stdout)
    } else {
        Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))
    }
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("systolic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let spec = dir.join("sleeve.json");
    std::fs::write(
        &spec,
        r#"{"command": "sleeve", "grid": {"m": [3], "c": [7], "eps": ["1/8", "1/10"], "construct": [true]}, "seed": 7}"#,
    )
    .expect("write spec");
    let spec = spec.display().to_string();
    let workspace = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let heisenberg = workspace.join("experiments/heisenberg.json").display().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["homology"],
        vec!["check-torsion-bound", "--format", "json"],
        vec!["build-graph", "--c", "3", "--girth", "6", "--vertices", "40", "--seed", "5"],
        vec!["waring", "verify", "--limit", "20000"],
        vec!["bounds", "best", "--k", "1..60", "--base", "1:1", "--log-c", "1"],
        vec!["sweep", "--spec", &spec],
        vec!["sweep", "--spec", &heisenberg, "--format", "json"],
    ];
    let mut notes = Vec::new();
    let mut passed = true;
    for run in &runs {
        let mut outputs = Vec::new();
        for threads in ["1", "1", "4", "8"] {
            let mut args: Vec<String> = run.iter().map(|s| s.to_string()).collect();
            args.extend(["--threads".to_string(), threads.to_string()]);
            outputs.push(run_cli(&args));
        }
        let ok = outputs[0].is_ok() && outputs.iter().all(|o| o == &outputs[0]);
        passed &= ok;
        if !ok {
            let err = outputs.iter().find_map(|o| o.as_ref().err().cloned()).unwrap_or("output differs".into());
            notes.push(format!("{}: {err}", run.join(" ")));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    if notes.is_empty() {
        notes.push(format!("{} commands, 4 runs each at 1/1/4/8 threads, byte-identical", runs.len()));
    }
    outcome(passed, notes.join("; "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "RP2 pipeline", rp2_pipeline),
        (2, "SNF oracle equivalence", snf_oracle),
        (3, "corpus invariant-factor bound", corpus_det_bound),
        (4, "Heisenberg abelianization", heisenberg_family),
        (5, "Waring fourth powers to 1e6", waring),
        (6, "girth construction and oracle", girth_construction),
        (7, "sleeve formulas", sleeve_formulas),
        (8, "best upper bound composition", best_subadditivity),
        (9, "bound spot values", spot_values),
        (10, "recurrence detection", recurrences),
        (11, "CLI determinism", determinism),
    ];
    let mut required_failures = Vec::new();
    for (id, name, check) in criteria {
        let result = check();
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name}: {}", result.detail);
        if !result.passed && !KNOWN_UNATTAINABLE.contains(&id) {
            required_failures.push(id);
        }
    }
    if !required_failures.is_empty() {
        eprintln!("required criteria failed: {required_failures:?}");
        std::process::exit(1);
    }
}
