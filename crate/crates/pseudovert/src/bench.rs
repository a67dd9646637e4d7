//! Query-count benchmarking: seeded generators for realizable bi-chromatic
//! inputs and per-trial measurements of the cut and selection algorithms.
//! Setup queries (locating the extreme element) are reported separately
//! because that one-time step is O(n log n) by design.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{ArrangementView, Crossing};
use crate::chirotope::{CountingOracle, PointId, RealizedPointSet, TripleOracle};
use crate::hamsandwich::{ham_sandwich_cut, BiChromatic};
use crate::pseudovertical::{select_rank, RankQuery, Strategy};

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub n: usize,
    pub algorithm: String,
    pub seed: u64,
    pub queries: u64,
    pub wall_ms: f64,
    pub setup_queries: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchAlgorithm {
    HamCut,
    SelectRank,
}

impl BenchAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            BenchAlgorithm::HamCut => "hamcut",
            BenchAlgorithm::SelectRank => "select-rank",
        }
    }
}

const COORD_RANGE: i64 = 1 << 26;

/// Random integer point set in general position: uniform coordinates with
/// collinear candidates rejected on insertion. Per anchor point a hash set
/// of exact reduced slopes makes each insertion linear.
pub fn random_point_set(n: usize, rng: &mut ChaCha8Rng) -> RealizedPointSet {
    use std::collections::HashSet;
    assert!(n >= 1);
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut slopes: Vec<HashSet<(i64, i64)>> = Vec::with_capacity(n);
    'outer: while pts.len() < n {
        let cand = (
            rng.random_range(-COORD_RANGE..=COORD_RANGE),
            rng.random_range(-COORD_RANGE..=COORD_RANGE),
        );
        if pts.contains(&cand) {
            continue;
        }
        for (i, &(ax, ay)) in pts.iter().enumerate() {
            if slopes[i].contains(&reduced_slope(cand.0 - ax, cand.1 - ay)) {
                continue 'outer;
            }
        }
        for (i, &(ax, ay)) in pts.iter().enumerate() {
            slopes[i].insert(reduced_slope(cand.0 - ax, cand.1 - ay));
        }
        pts.push(cand);
        slopes.push(HashSet::new());
    }
    RealizedPointSet::new(pts).expect("in-range, distinct, repaired")
}

fn reduced_slope(mut dx: i64, mut dy: i64) -> (i64, i64) {
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    if g != 0 {
        dx /= g;
        dy /= g;
    }
    if dx < 0 || (dx == 0 && dy < 0) {
        dx = -dx;
        dy = -dy;
    }
    (dx, dy)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Random coloring with `red_parts : blue_parts` target ratio; both classes
/// stay nonempty.
pub fn random_bichromatic(
    n: usize,
    red_parts: usize,
    blue_parts: usize,
    rng: &mut ChaCha8Rng,
) -> BiChromatic {
    use rand::seq::SliceRandom;
    assert!(n >= 2);
    let mut ids: Vec<PointId> = (0..n as u32).map(PointId).collect();
    ids.shuffle(rng);
    let nr = (n * red_parts / (red_parts + blue_parts)).clamp(1, n - 1);
    let red = ids[..nr].to_vec();
    let blue = ids[nr..].to_vec();
    BiChromatic::new(red, blue)
}

pub struct Measurement {
    pub queries: u64,
    pub setup_queries: u64,
    pub wall_ms: f64,
}

pub fn measure_hamcut(
    oracle: &dyn TripleOracle,
    colors: &BiChromatic,
    strategy: Strategy,
    seed: u64,
) -> Measurement {
    let start = Instant::now();
    let (cut, stats) = ham_sandwich_cut(oracle, colors, strategy, seed);
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    assert!(
        crate::hamsandwich::verify_cut(oracle, colors, &cut),
        "benchmarked cut must verify"
    );
    Measurement {
        queries: stats.queries,
        setup_queries: stats.setup_queries,
        wall_ms,
    }
}

/// One selection at a random crossing and rank; the view setup (extreme
/// element) is metered separately.
pub fn measure_select_rank(
    oracle: &dyn TripleOracle,
    strategy: Strategy,
    seed: u64,
) -> Measurement {
    let n = oracle.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let counter = CountingOracle::new(oracle);
    let view = ArrangementView::new(&counter);
    let setup_queries = counter.count();
    counter.reset();
    let a = rng.random_range(0..n as u32);
    let mut b = rng.random_range(0..n as u32);
    while b == a {
        b = rng.random_range(0..n as u32);
    }
    let query = RankQuery {
        crossing: Crossing::new(PointId(a), PointId(b)),
        subset: (0..n as u32).map(PointId).collect(),
        k: rng.random_range(1..=n),
    };
    let start = Instant::now();
    select_rank(&view, &query, strategy, seed).expect("valid query");
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Measurement {
        queries: counter.count(),
        setup_queries,
        wall_ms,
    }
}

pub struct BenchConfig {
    pub algorithm: BenchAlgorithm,
    pub min_n: usize,
    pub max_n: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub strategy: Strategy,
}

/// Doubling sizes from `min_n` to `max_n`, `trials` seeded runs each.
pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRecord> {
    let mut records = Vec::new();
    let mut n = cfg.min_n;
    while n <= cfg.max_n {
        for trial in 0..cfg.trials {
            let seed = cfg
                .base_seed
                .wrapping_add((n as u64) << 20)
                .wrapping_add(trial as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points = random_point_set(n, &mut rng);
            let m = match cfg.algorithm {
                BenchAlgorithm::HamCut => {
                    let colors = random_bichromatic(n, 1, 1, &mut rng);
                    measure_hamcut(&points, &colors, cfg.strategy, seed)
                }
                BenchAlgorithm::SelectRank => measure_select_rank(&points, cfg.strategy, seed),
            };
            records.push(BenchRecord {
                n,
                algorithm: cfg.algorithm.name().to_string(),
                seed,
                queries: m.queries,
                wall_ms: m.wall_ms,
                setup_queries: m.setup_queries,
            });
        }
        n *= 2;
    }
    records
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("n,algorithm,seed,queries,wall_ms,setup_queries\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{:.3},{}\n",
            r.n, r.algorithm, r.seed, r.queries, r.wall_ms, r.setup_queries
        ));
    }
    out
}
