//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a
//! one-screen summary.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use linkdecay_core::evaluation::{age_baseline, evaluate_with, temporal_split};
use linkdecay_core::oracle::check_closed_form;
use linkdecay_core::*;

const CLOSED_FORM_GRAPHS: u64 = 100;
const CLOSED_FORM_NODES: usize = 30;
const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(10);
const CN_ALL_PAIRS_MAX: f64 = 2.0;
const DUALITY_EDGES: usize = 10_000;
const AP_TOLERANCE: f64 = 1e-12;
const MONOTONE_RANKINGS: u64 = 100;
const BASELINE_SEEDS: u64 = 100;
const BASELINE_SIDE: usize = 1000;
const BASELINE_BAND: (f64, f64) = (0.48, 0.52);
const PLANTED_NODES: usize = 5000;
const PLANTED_SEEDS: u64 = 10;
const PLANTED_MIN_AP: f64 = 0.60;
const PLANTED_MIN_LIFT: f64 = 0.08;
const PLANTED_BUDGET: Duration = Duration::from_secs(60);
const ORDERING_MIN_WINS: usize = 8;
const HALF_LIFE: f64 = 23.0;
const HALF_LIFE_TOLERANCE: f64 = 0.05;
const HALF_LIFE_LIFETIMES: usize = 100_000;
const AGE_SEEDS: u64 = 100;
const AGE_BAND: (f64, f64) = (0.48, 0.52);
const DELETION_SHARE_BAND: (f64, f64) = (0.24, 0.31);

fn verdict(id: &str, title: &str, pass: bool, detail: &str) {
    println!(
        "{} {id} {title}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{id} {title}: {detail}");
}

fn corpus() -> Vec<Graph> {
    (0..CLOSED_FORM_GRAPHS)
        .map(|k| {
            let density = 0.1 + 0.2 * k as f64 / (CLOSED_FORM_GRAPHS - 1) as f64;
            random_digraph(CLOSED_FORM_NODES, density, k).unwrap()
        })
        .collect()
}

#[test]
fn c01_closed_form_correctness() {
    let start = Instant::now();
    let graphs = corpus();
    let mut lines = Vec::new();
    let mut pass = true;
    for measure in [Measure::CommonNeighbors, Measure::PreferentialAttachment] {
        for combo in DegreeCombination::ALL {
            let spec = ScoreSpec::new(Model::ComplementNetwork, measure, combo);
            let worst = graphs
                .iter()
                .map(|g| {
                    check_closed_form(g, spec, PairSelection::EdgesOnly)
                        .unwrap()
                        .max_abs_deviation
                })
                .fold(0.0, f64::max);
            pass &= worst == 0.0;
            lines.push(format!("{measure}/{combo} edges={worst}"));
        }
    }
    for combo in DegreeCombination::ALL {
        let spec = ScoreSpec::new(Model::ComplementNetwork, Measure::CommonNeighbors, combo);
        let worst = graphs
            .iter()
            .map(|g| {
                check_closed_form(g, spec, PairSelection::AllPairs)
                    .unwrap()
                    .max_abs_deviation
            })
            .fold(0.0, f64::max);
        pass &= worst <= CN_ALL_PAIRS_MAX;
        lines.push(format!("cn/{combo} all={worst}"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < CLOSED_FORM_BUDGET;
    verdict(
        "C01",
        "closed-form correctness",
        pass,
        &format!("{} in {elapsed:.2?}", lines.join(" ")),
    );
}

#[test]
fn c02_complement_involution_and_degree_identity() {
    let mut pass = true;
    for g in corpus() {
        let c = materialize_complement(&g).unwrap();
        let cc = materialize_complement(&c).unwrap();
        pass &= cc.edges().eq(g.edges());
        let n = g.node_count();
        for v in 0..n as NodeId {
            for mode in [DegreeMode::Out, DegreeMode::In] {
                pass &= c.degree(v, mode).unwrap() + g.degree(v, mode).unwrap() == n - 1;
            }
        }
    }
    verdict(
        "C02",
        "complement involution and degree identity",
        pass,
        &format!("{CLOSED_FORM_GRAPHS} graphs"),
    );
}

/// Link-prediction score straight from a dense adjacency matrix.
fn dense_f(
    adj: &[Vec<bool>],
    i: usize,
    j: usize,
    measure: Measure,
    combo: DegreeCombination,
) -> f64 {
    let n = adj.len();
    let out = |v: usize, k: usize| adj[v][k];
    let inn = |v: usize, k: usize| adj[k][v];
    let either = |v: usize, k: usize| adj[v][k] || adj[k][v];
    let side = |d: Direction, v: usize| -> Vec<bool> {
        (0..n)
            .map(|k| match d {
                Direction::Out => out(v, k),
                Direction::In => inn(v, k),
                Direction::Both => either(v, k),
            })
            .collect()
    };
    let (di, dj, dw) = match combo {
        DegreeCombination::Sym => (Direction::Both, Direction::Both, Direction::Both),
        DegreeCombination::Asym => (Direction::Out, Direction::In, Direction::Both),
        DegreeCombination::In => (Direction::In, Direction::In, Direction::In),
        DegreeCombination::Out => (Direction::Out, Direction::Out, Direction::Out),
    };
    let (si, sj) = (side(di, i), side(dj, j));
    let d1 = si.iter().filter(|&&b| b).count() as f64;
    let d2 = sj.iter().filter(|&&b| b).count() as f64;
    let common: Vec<usize> = (0..n).filter(|&k| si[k] && sj[k]).collect();
    let cn = common.len() as f64;
    match measure {
        Measure::PreferentialAttachment => d1 * d2,
        Measure::CommonNeighbors => cn,
        Measure::Cosine => {
            let den = d1.sqrt() * d2.sqrt();
            if den > 0.0 {
                cn / den
            } else {
                0.0
            }
        }
        Measure::Jaccard => {
            let union = d1 + d2 - cn;
            if union > 0.0 {
                cn / union
            } else {
                0.0
            }
        }
        Measure::AdamicAdar => common
            .iter()
            .map(|&k| {
                let d = side(dw, k).iter().filter(|&&b| b).count();
                if d > 1 {
                    1.0 / (d as f64).ln()
                } else {
                    0.0
                }
            })
            .sum(),
    }
}

#[test]
fn c03_complement_score_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    let mut mismatches = 0;
    let mut graph_seed = 0;
    while checked < DUALITY_EDGES {
        let g = random_digraph(40, rng.random_range(0.05..0.3), graph_seed).unwrap();
        graph_seed += 1;
        let edges: Vec<Edge> = g.edges().collect();
        let mut adj = vec![vec![false; g.node_count()]; g.node_count()];
        for e in &edges {
            adj[e.src as usize][e.dst as usize] = true;
        }
        for _ in 0..250 {
            let e = edges[rng.random_range(0..edges.len())];
            for measure in Measure::ALL {
                for combo in DegreeCombination::ALL {
                    let spec = ScoreSpec::new(Model::ComplementScore, measure, combo);
                    let g1 = score(&g, e, spec).unwrap();
                    let f = dense_f(&adj, e.src as usize, e.dst as usize, measure, combo);
                    if g1 != -f && !(g1 == 0.0 && f == 0.0) {
                        mismatches += 1;
                    }
                }
            }
            checked += 1;
        }
    }
    verdict(
        "C03",
        "complement-score duality",
        mismatches == 0,
        &format!("{checked} edges x 5 measures x 4 combos, {mismatches} mismatches"),
    );
}

fn item(k: u32, score: f64, test: bool) -> RankedItem {
    RankedItem::new(
        Edge::new(k, k + 1),
        score,
        if test { Label::Test } else { Label::Zero },
    )
}

#[test]
fn c04_average_precision_engine() {
    let examples: [(Vec<RankedItem>, f64); 3] = [
        (vec![item(0, 0.9, true), item(1, 0.1, false)], 1.0),
        (vec![item(0, 0.9, false), item(1, 0.1, true)], 0.5),
        (
            vec![
                item(0, 4.0, true),
                item(1, 3.0, false),
                item(2, 2.0, true),
                item(3, 1.0, false),
            ],
            5.0 / 6.0,
        ),
    ];
    let mut pass = true;
    let mut got = Vec::new();
    for (items, want) in &examples {
        let ap = average_precision(items).unwrap().ap;
        pass &= (ap - want).abs() <= AP_TOLERANCE;
        got.push(format!("{ap:.15}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let transforms: [fn(f64) -> f64; 3] = [|x| 3.0 * x + 1.0, |x| x.powi(3) + 2.0 * x, f64::exp];
    let mut invariant = 0;
    for k in 0..MONOTONE_RANKINGS {
        let len = rng.random_range(10..200);
        let items: Vec<RankedItem> = (0..len)
            .map(|i| item(i, rng.random::<f64>(), i == 0 || rng.random_bool(0.4)))
            .collect();
        let base = average_precision(&items).unwrap().ap;
        let f = transforms[(k % 3) as usize];
        let moved: Vec<RankedItem> = items
            .iter()
            .map(|it| RankedItem {
                score: f(it.score),
                ..*it
            })
            .collect();
        if average_precision(&moved).unwrap().ap == base {
            invariant += 1;
        }
    }
    pass &= invariant == MONOTONE_RANKINGS;
    verdict(
        "C04",
        "average precision engine",
        pass,
        &format!(
            "examples [{}], monotone invariance {invariant}/{MONOTONE_RANKINGS}",
            got.join(", ")
        ),
    );
}

#[test]
fn c05_random_baseline() {
    // n distinct edges at t=0, the first half deleted at t=100
    let n = 100u32;
    let mut events = Vec::new();
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    for &(i, j) in pairs.iter().take(2 * BASELINE_SIDE) {
        events.push(EdgeEvent::add(i, j, 0));
    }
    for &(i, j) in pairs.iter().take(BASELINE_SIDE) {
        events.push(EdgeEvent::delete(i, j, 100));
    }
    let (tel, _) =
        TemporalEdgeList::from_events(n as usize, events, &IngestOptions::default()).unwrap();
    let mean = (0..BASELINE_SEEDS)
        .map(|seed| {
            let split = temporal_split(&tel, 0.75, seed).unwrap();
            assert_eq!(
                (split.test_set.len(), split.zero_test_set.len()),
                (BASELINE_SIDE, BASELINE_SIDE)
            );
            random_baseline(&split, seed).unwrap().ap
        })
        .sum::<f64>()
        / BASELINE_SEEDS as f64;
    verdict(
        "C05",
        "random baseline",
        (BASELINE_BAND.0..=BASELINE_BAND.1).contains(&mean),
        &format!("mean AP {mean:.4} over {BASELINE_SEEDS} seeds"),
    );
}

struct PlantedRun {
    decay_pa: f64,
    baseline: f64,
    decay_cn: f64,
    create_cn: f64,
    elapsed: Duration,
}

fn planted_suite() -> Vec<PlantedRun> {
    (0..PLANTED_SEEDS)
        .map(|seed| {
            let start = Instant::now();
            let cfg = GenConfig {
                n_nodes: PLANTED_NODES,
                decay_bias: DecayBias::LowDegree,
                ..GenConfig::with_seed(seed)
            };
            let tel = generate(&cfg).unwrap();
            let pa = ScoreSpec::new(
                Model::ComplementScore,
                Measure::PreferentialAttachment,
                DegreeCombination::Out,
            );
            let run = evaluate_with(&tel, pa, 0.75, seed, TieBreak::Lexicographic).unwrap();
            let elapsed = start.elapsed();
            let cn = ScoreSpec::new(
                Model::ComplementScore,
                Measure::CommonNeighbors,
                DegreeCombination::Sym,
            );
            PlantedRun {
                decay_pa: run.result.ap,
                baseline: random_baseline(&run.split, seed).unwrap().ap,
                decay_cn: run
                    .split
                    .score_with(cn, TieBreak::Lexicographic)
                    .unwrap()
                    .ap,
                create_cn: evaluate_link_prediction(
                    &tel,
                    Measure::CommonNeighbors,
                    DegreeCombination::Sym,
                    0.75,
                    seed,
                )
                .unwrap()
                .ap,
                elapsed,
            }
        })
        .collect()
}

#[test]
fn c06_planted_signal_detection() {
    let runs = planted_suite();
    let k = runs.len() as f64;
    let ap = runs.iter().map(|r| r.decay_pa).sum::<f64>() / k;
    let base = runs.iter().map(|r| r.baseline).sum::<f64>() / k;
    let slowest = runs.iter().map(|r| r.elapsed).max().unwrap();
    verdict(
        "C06",
        "planted-signal detection",
        ap >= PLANTED_MIN_AP && ap - base >= PLANTED_MIN_LIFT && slowest < PLANTED_BUDGET,
        &format!(
            "mean AP {ap:.4}, baseline {base:.4}, lift {:.4}, slowest run {slowest:.2?}",
            ap - base
        ),
    );
}

#[test]
fn c07_creation_easier_than_decay() {
    let runs = planted_suite();
    let wins = runs.iter().filter(|r| r.create_cn > r.decay_cn).count();
    let pairs: Vec<String> = runs
        .iter()
        .map(|r| format!("{:.3}>{:.3}", r.create_cn, r.decay_cn))
        .collect();
    verdict(
        "C07",
        "difficulty ordering",
        wins >= ORDERING_MIN_WINS,
        &format!("{wins}/{PLANTED_SEEDS} seeds [{}]", pairs.join(" ")),
    );
}

#[test]
fn c08_half_life_recovery_and_memorylessness() {
    let cfg = GenConfig {
        n_add_events: HALF_LIFE_LIFETIMES,
        decay_half_life: HALF_LIFE,
        ..GenConfig::with_seed(23)
    };
    let tel = generate(&cfg).unwrap();
    let lifetimes = edge_lifetimes(&tel);
    let fit = fit_exponential_half_life(&lifetimes).unwrap();
    let rel = (fit.half_life / HALF_LIFE - 1.0).abs();

    let ages: Vec<f64> = (0..AGE_SEEDS)
        .into_par_iter()
        .map(|seed| {
            let tel = generate(&GenConfig::with_seed(1000 + seed)).unwrap();
            let split = temporal_split(&tel, 0.75, seed).unwrap();
            age_baseline(&tel, &split).unwrap().ap
        })
        .collect();
    let mean_age = ages.iter().sum::<f64>() / AGE_SEEDS as f64;
    verdict(
        "C08",
        "half-life recovery and memorylessness",
        lifetimes.len() == HALF_LIFE_LIFETIMES
            && rel <= HALF_LIFE_TOLERANCE
            && (AGE_BAND.0..=AGE_BAND.1).contains(&mean_age),
        &format!(
            "half-life {:.3} from {} lifetimes ({} censored), age-scorer mean AP {mean_age:.4} over {AGE_SEEDS} seeds",
            fit.half_life, fit.lifetimes_used, fit.censored
        ),
    );
}

#[test]
fn c09_deletion_share() {
    let shares: Vec<f64> = (0..10u64)
        .into_par_iter()
        .map(|seed| {
            let tel = generate(&GenConfig::with_seed(seed)).unwrap();
            let dels = tel
                .events()
                .iter()
                .filter(|e| e.op == EdgeOp::Delete)
                .count();
            dels as f64 / tel.events().len() as f64
        })
        .collect();
    let (lo, hi) = shares
        .iter()
        .fold((1.0f64, 0.0f64), |(lo, hi), &s| (lo.min(s), hi.max(s)));
    verdict(
        "C09",
        "deletion share",
        lo >= DELETION_SHARE_BAND.0 && hi <= DELETION_SHARE_BAND.1,
        &format!("default config, 10 seeds, share in [{lo:.4}, {hi:.4}]"),
    );
}

fn linkdecay(dir: &Path, args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_linkdecay"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
        .status
        .success()
}

#[test]
fn c10_sweep_rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut identical = linkdecay(
        d,
        &[
            "gen",
            "--seed",
            "10",
            "--n-nodes",
            "1000",
            "--n-add-events",
            "10000",
            "--decay-bias",
            "low_degree",
            "--output",
            "ev.tsv",
        ],
    );
    let mut runs = 0;
    for (seed, ties) in [("1", "lexicographic"), ("2", "expected")] {
        identical &= linkdecay(
            d,
            &[
                "sweep",
                "--input",
                "ev.tsv",
                "--seed",
                seed,
                "--ties",
                ties,
                "--output",
                "first.tsv",
            ],
        );
        identical &= linkdecay(
            d,
            &[
                "sweep",
                "--config",
                "first.tsv.manifest",
                "--output",
                "second.tsv",
            ],
        );
        let a = fs::read(d.join("first.tsv")).unwrap_or_default();
        let b = fs::read(d.join("second.tsv")).unwrap_or_default();
        identical &= !a.is_empty() && a == b;
        runs += 1;
    }
    verdict(
        "C10",
        "sweep determinism",
        identical,
        &format!("{runs} manifest re-runs compared byte for byte"),
    );
}
