//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dps_core::biinterval::{build_dps, BiIntervalGraph, ProductVertex};
use dps_core::cover::find_cover;
use dps_core::generate::{
    black_diagonals, gen_antiparallel, gen_diag, gen_random_bi, gen_random_interval_with, gen_random_layered_dag,
    interior_black, random_interval_graph, RandomIntervalParams, SourcePlacement,
};
use dps_core::interval::Direction;
use dps_core::oracle::{all_pairs_bfs, count_shortest_paths, materialize_product, oracle_cover, oracle_sssp, verify_dps};
use dps_core::sssp::{count_branching, solve_general, solve_leftmost, BranchingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

fn run(number: u32, name: &str, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
        .unwrap_or_else(|_| Outcome::new(false, "panicked"));
    let verdict = if outcome.ok { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {number} {name}: {} [{:.2}s]",
        outcome.detail,
        start.elapsed().as_secs_f64()
    );
    outcome.ok
}

fn dp_optimality() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (placement, base) in [(SourcePlacement::Leftmost, 10_000u64), (SourcePlacement::Interior, 20_000)] {
        for i in 0..150 {
            let seed = base + i;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // An interior source needs two vertices beyond it on each side.
            let smallest = if placement == SourcePlacement::Interior { 6 } else { 3 };
            let n = rng.gen_range(smallest..=10);
            let k = rng.gen_range(1..=4).min(n - 1);
            let inst = match gen_random_interval_with(RandomIntervalParams { n, k, seed, source: placement }) {
                Ok(inst) => inst,
                Err(e) => {
                    failures.push(format!("seed {seed}: generator {e}"));
                    continue;
                }
            };
            let s = inst.source.expect("placement picks a source");
            let solved = match placement {
                SourcePlacement::Leftmost => solve_leftmost(&inst.graph, s, &inst.terminals),
                _ => solve_general(&inst.graph, s, &inst.terminals),
            };
            let expected = oracle_sssp(&inst.graph, s, &inst.terminals);
            checked += 1;
            match (solved, expected) {
                (Ok(sol), Ok(want)) if sol.branching_count == want => {}
                (Ok(sol), Ok(want)) => failures.push(format!("seed {seed}: solver {} oracle {want}", sol.branching_count)),
                (got, want) => failures.push(format!("seed {seed}: solver {:?} oracle {:?}", got.err(), want.err())),
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && checked == 300 && elapsed <= Duration::from_secs(120);
    let mut detail = format!("{}/{checked} instances agree with the oracle in {:.2}s", checked - failures.len(), elapsed.as_secs_f64());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first mismatch {first}"));
    }
    Outcome::new(ok, detail)
}

fn subsets_up_to_three(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, &a) in items.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in items.iter().enumerate().skip(i + 1) {
            out.push(vec![a, b]);
            for &c in &items[j + 1..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn cover_equivalence() -> Outcome {
    let mut disagreements = Vec::new();
    let mut queries = 0;
    let mut positive = 0;
    for seed in 0..50u64 {
        let n = 4 + (seed as usize % 7);
        let dag = gen_random_layered_dag(n, 0.4, 500 + seed).expect("valid parameters");
        for v in 0..n {
            // Targets must lie strictly after the root's layer.
            let depth = dag.layer_of(v).expect("every vertex is layered");
            let others: Vec<usize> = (0..n).filter(|&x| dag.layer_of(x).is_some_and(|l| l > depth)).collect();
            for targets in subsets_up_to_three(&others) {
                queries += 1;
                let fast = find_cover(&dag, v, &targets);
                let slow = oracle_cover(&dag, v, &targets);
                match (fast, slow) {
                    (Ok(Some(tree)), Ok(true)) => {
                        positive += 1;
                        if let Err(e) = tree.validate(&dag) {
                            disagreements.push(format!("seed {seed} root {v} {targets:?}: {e}"));
                        }
                    }
                    (Ok(None), Ok(false)) => {}
                    (fast, slow) => disagreements.push(format!("seed {seed} root {v} {targets:?}: flow {fast:?} oracle {slow:?}")),
                }
            }
        }
    }
    let mut detail = format!("{queries} queries ({positive} covers exist), {} disagreements", disagreements.len());
    if let Some(first) = disagreements.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(disagreements.is_empty(), detail)
}

fn greedy_matches_bfs() -> Outcome {
    let mut violations = Vec::new();
    let mut pairs = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(30_000 + seed);
        let n = rng.gen_range(2..=50);
        let g = random_interval_graph(n, &mut rng).expect("generator");
        let dist = g.distance_matrix();
        for u in 0..n {
            for v in 0..n {
                if u == v || !g.precede(u, v) || dist[u][v].is_none() {
                    continue;
                }
                pairs += 1;
                match g.greedy_path(u, v) {
                    Ok(p) if Some(p.len()) == dist[u][v] => {}
                    other => violations.push(format!("seed {seed} ({u}, {v}): {other:?} vs {:?}", dist[u][v])),
                }
            }
        }
    }
    let mut detail = format!("{pairs} ordered pairs, {} violations", violations.len());
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn product_distance() -> Outcome {
    let mut violations = 0;
    let mut pairs = 0;
    for seed in 0..25u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
        let (nx, ny) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let inst = gen_random_bi(nx, ny, 0, 40_000 + seed).expect("generator");
        let g = &inst.graph;
        let adj = materialize_product(g).expect("at most 12 per axis");
        let dist = all_pairs_bfs(&adj);
        let all: Vec<ProductVertex> = g.vertices().collect();
        for (a, &u) in all.iter().enumerate() {
            for (b, &v) in all.iter().enumerate() {
                pairs += 1;
                if g.product_distance(u, v) != dist[a][b] {
                    violations += 1;
                }
            }
        }
    }
    Outcome::new(violations == 0, format!("{pairs} pairs over 25 instances, {violations} violations"))
}

struct PipelineRun {
    k: usize,
    branching: usize,
}

fn all_pairs_pipeline() -> Outcome {
    let mut problems = Vec::new();
    let mut runs = Vec::new();
    let plan = [(4usize, 34u64), (8, 33), (16, 33)];
    for (k, count) in plan {
        for i in 0..count {
            let seed = 50_000 + 100 * k as u64 + i;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (nx, ny) = (rng.gen_range(8..=40), rng.gen_range(8..=40));
            let inst = gen_random_bi(nx, ny, k, seed).expect("generator");
            let report = match build_dps(&inst.graph, &inst.terminals) {
                Ok(r) => r,
                Err(e) => {
                    problems.push(format!("seed {seed}: {e}"));
                    continue;
                }
            };
            let edges: Vec<(ProductVertex, ProductVertex)> = report.subgraph.edges.iter().copied().collect();
            let check = verify_dps(&inst.graph, &edges, &inst.terminals, &inst.terminals);
            if !check.all_preserved() || check.pairs.len() != k * (k - 1) / 2 {
                problems.push(format!("seed {seed}: distances not preserved"));
            }
            for call in &report.line_calls {
                if call.branching > call.bound {
                    problems.push(format!("seed {seed}: {:?} has {} > {}", call.line, call.branching, call.bound));
                }
            }
            if report.max_column_pseudo > k || report.max_row_pseudo > 2 * k {
                problems.push(format!(
                    "seed {seed}: pseudo-terminals {} per column, {} per row",
                    report.max_column_pseudo, report.max_row_pseudo
                ));
            }
            runs.push(PipelineRun { k, branching: report.branching });
        }
    }
    let c = runs
        .iter()
        .filter(|r| r.k == 4)
        .map(|r| r.branching as f64 / 16.0)
        .fold(0.0, f64::max);
    let mut worst = Vec::new();
    for k in [8usize, 16] {
        let ratio = runs.iter().filter(|r| r.k == k).map(|r| r.branching as f64 / (k * k) as f64).fold(0.0, f64::max);
        worst.push(format!("k={k} max ratio {ratio:.3}"));
        for r in runs.iter().filter(|r| r.k == k) {
            if r.branching as f64 > c * (k * k) as f64 {
                problems.push(format!("k={k}: branching {} exceeds C*k^2 = {:.1}", r.branching, c * (k * k) as f64));
            }
        }
    }
    let mut detail = format!("{} runs, C = {c:.3} from k=4, {}, {} problems", runs.len(), worst.join(", "), problems.len());
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first {first}"));
    }
    Outcome::new(problems.is_empty() && runs.len() == 100, detail)
}

fn lower_bounds() -> Outcome {
    let mut problems = Vec::new();
    for n in [8usize, 16, 32] {
        let ap = gen_antiparallel(n).expect("multiple of 4");
        let g = &ap.instance.graph;
        let east = g.cardinal_path(ap.u, Direction::East);
        let west = g.cardinal_path(ap.v, Direction::West);
        let edges: BTreeSet<(usize, usize)> = east.edges().chain(west.edges()).map(|(a, b)| (a.min(b), a.max(b))).collect();
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let b = count_branching(&edges, BranchingMode::UndirectedDegree);
        if b != n - 1 {
            problems.push(format!("antiparallel n={n}: {b} branching vertices"));
        }
    }

    let board = 8;
    let inst = gen_diag(board).expect("board >= 4");
    let g: &BiIntervalGraph = &inst.graph;
    let adj = materialize_product(g).expect("8 x 8");
    let id = |v: ProductVertex| v.ix * board + v.iy;
    let diagonals = black_diagonals(board);
    let mut on_unique = vec![0usize; board * board];
    for &(a, b) in &diagonals {
        let ways = count_shortest_paths(&adj, id(a), id(b));
        if ways != 1 {
            problems.push(format!("diagonal {a}-{b} has {ways} shortest paths"));
            continue;
        }
        let len = b.ix - a.ix;
        let step: isize = if b.iy > a.iy { 1 } else { -1 };
        for i in 1..len {
            let v = ProductVertex::new(a.ix + i, (a.iy as isize + step * i as isize) as usize);
            on_unique[id(v)] += 1;
        }
    }
    let interior = interior_black(board);
    let forced = interior.iter().filter(|&&v| on_unique[id(v)] >= 2).count();
    if forced != interior.len() {
        problems.push(format!("only {forced} of {} interior black squares are forced", interior.len()));
    }
    match build_dps(g, &inst.terminals) {
        Ok(report) => {
            let edges: Vec<(ProductVertex, ProductVertex)> = report.subgraph.edges.iter().copied().collect();
            let check = verify_dps(g, &edges, &inst.terminals, &inst.terminals);
            if !check.all_preserved() {
                problems.push("diag pipeline output loses a distance".into());
            }
            if report.branching < interior.len() {
                problems.push(format!("diag branching {} below {}", report.branching, interior.len()));
            }
        }
        Err(e) => problems.push(format!("diag pipeline: {e}")),
    }
    let detail = if problems.is_empty() {
        format!(
            "antiparallel n=8,16,32 give n-1; {} black diagonals unique, {} interior black squares forced",
            diagonals.len(),
            interior.len()
        )
    } else {
        problems.join("; ")
    };
    Outcome::new(problems.is_empty(), detail)
}

fn scale_smoke() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let instance = dir.path().join("big.json");
    let result = dir.path().join("big-result.json");
    let bin = env!("CARGO_BIN_EXE_dps");
    let gen = Command::new(bin)
        .args(["gen-random", "--n", "200", "--k", "10", "--seed", "7", "--out"])
        .arg(&instance)
        .output()
        .expect("run generator");
    if !gen.status.success() {
        return Outcome::new(false, format!("gen-random failed: {}", String::from_utf8_lossy(&gen.stderr)));
    }
    let start = Instant::now();
    let solve = Command::new(bin)
        .args(["solve-sssp", "--input"])
        .arg(&instance)
        .arg("--out")
        .arg(&result)
        .output()
        .expect("run solver");
    let elapsed = start.elapsed();
    if !solve.status.success() {
        return Outcome::new(false, format!("solve-sssp failed: {}", String::from_utf8_lossy(&solve.stderr)));
    }
    let text = std::fs::read_to_string(&result).unwrap_or_default();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap_or_default();
    let branching = parsed["branching"]["out_degree"].as_u64();
    Outcome::new(
        elapsed <= Duration::from_secs(60) && branching.is_some(),
        format!(
            "n=200 k=10 solved in {:.2}s, branching {}",
            elapsed.as_secs_f64(),
            branching.map_or("missing".to_string(), |b| b.to_string())
        ),
    )
}

fn main() -> ExitCode {
    let results = [
        run(1, "single-source optimality against the oracle", dp_optimality),
        run(2, "cover search against brute-force covers", cover_equivalence),
        run(3, "greedy paths against BFS", greedy_matches_bfs),
        run(4, "product distance against explicit BFS", product_distance),
        run(5, "all-pairs pipeline", all_pairs_pipeline),
        run(6, "lower-bound instances", lower_bounds),
        run(7, "scale smoke test", scale_smoke),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
