//! Command-line driver: ham-sandwich cuts, rank selection, cut
//! verification, query-count benchmarks, and SVG rendering of wiring
//! diagrams. Exit codes: 0 success, 1 parse/validation error, 2 a computed
//! result failed verification.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pseudovert::arrangement::{ArrangementView, Crossing};
use pseudovert::bench::{run_bench, to_csv, BenchAlgorithm, BenchConfig};
use pseudovert::chirotope::{
    table_from_wiring, validate_general_position, PointId, TripleOracle,
};
use pseudovert::hamsandwich::{ham_sandwich_cut, verify_cut, BiChromatic, Cut};
use pseudovert::io::{
    bichromatic_from_colors, parse_colors_file, parse_point_file, parse_wiring_file,
};
use pseudovert::pseudovertical::{gamma_traversal, select_rank, RankQuery, Strategy};
use pseudovert::render::{render_svg, RenderSpec};

#[derive(Parser)]
#[command(name = "pseudovert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Randomized,
    Deterministic,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Randomized => Strategy::Randomized,
            StrategyArg::Deterministic => Strategy::Deterministic,
        }
    }
}

#[derive(Args)]
struct OracleInput {
    /// Point file: "n", then "x y [c]" lines with integer coordinates.
    #[arg(long, conflicts_with = "wiring")]
    input: Option<String>,
    /// Wiring file: "n", then the swap sequence.
    #[arg(long)]
    wiring: Option<String>,
    /// Color file for --wiring inputs: n whitespace-separated r/b tokens.
    #[arg(long, requires = "wiring")]
    colors: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and verify a ham-sandwich cut.
    Hamcut {
        #[command(flatten)]
        input: OracleInput,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "randomized")]
        strategy: StrategyArg,
    },
    /// Select the k-th line along the pseudo-vertical through a crossing.
    SelectRank {
        #[command(flatten)]
        input: OracleInput,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        /// Comma-separated line ids; defaults to all lines.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<u32>>,
        /// Cross-check the answer against the reference traversal.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "randomized")]
        strategy: StrategyArg,
    },
    /// Verify that a red/blue pair bisects both classes.
    VerifyCut {
        /// Point file with colors.
        #[arg(long)]
        input: String,
        #[arg(long)]
        red: u32,
        #[arg(long)]
        blue: u32,
    },
    /// Emit query-count CSV over doubling input sizes.
    Bench {
        #[arg(long, default_value_t = 256)]
        min_n: usize,
        #[arg(long, default_value_t = 2048)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value = "hamcut")]
        algorithm: BenchAlgorithmArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "randomized")]
        strategy: StrategyArg,
    },
    /// Render a wiring diagram (optionally with one pseudo-vertical) as SVG.
    Render {
        #[arg(long)]
        wiring: String,
        /// Crossing "P,Q" whose pseudo-vertical is drawn dotted.
        #[arg(long, value_delimiter = ',')]
        highlight: Option<Vec<u32>>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 400)]
        height: u32,
        /// Output path; stdout when omitted.
        #[arg(long, short)]
        output: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchAlgorithmArg {
    Hamcut,
    SelectRank,
}

fn env_seed() -> u64 {
    std::env::var("PSEUDOVERT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// Oracle plus optional colors loaded from either input flavor.
enum LoadedOracle {
    Points(pseudovert::chirotope::RealizedPointSet),
    Table(pseudovert::chirotope::TripleTable),
}

impl LoadedOracle {
    fn oracle(&self) -> &dyn TripleOracle {
        match self {
            LoadedOracle::Points(ps) => ps,
            LoadedOracle::Table(t) => t,
        }
    }
}

fn load_input(input: &OracleInput) -> Result<(LoadedOracle, Option<BiChromatic>), String> {
    match (&input.input, &input.wiring) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let (ps, colors) = parse_point_file(&text).map_err(|e| format!("{path}: {e}"))?;
            let bad = validate_general_position(&ps);
            if let Some((a, b, c)) = bad.first() {
                return Err(format!("{path}: collinear triple ({a}, {b}, {c})"));
            }
            let colors = colors.map(|cs| bichromatic_from_colors(&cs));
            Ok((LoadedOracle::Points(ps), colors))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let diagram = parse_wiring_file(&text).map_err(|e| format!("{path}: {e}"))?;
            let n = diagram.wires();
            let table = table_from_wiring(&diagram).map_err(|e| format!("{path}: {e}"))?;
            let colors = match &input.colors {
                None => None,
                Some(cpath) => {
                    let ctext = fs::read_to_string(cpath).map_err(|e| format!("{cpath}: {e}"))?;
                    let cs =
                        parse_colors_file(&ctext, n).map_err(|e| format!("{cpath}: {e}"))?;
                    Some(bichromatic_from_colors(&cs))
                }
            };
            Ok((LoadedOracle::Table(table), colors))
        }
        _ => Err("exactly one of --input or --wiring is required".to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Hamcut {
            input,
            seed,
            strategy,
        } => {
            let (oracle, colors) = load_input(&input)?;
            let colors = colors.ok_or("input carries no colors")?;
            let seed = seed.unwrap_or_else(env_seed);
            let (cut, stats) = ham_sandwich_cut(oracle.oracle(), &colors, strategy.into(), seed);
            println!("cut {} {}", cut.red_point, cut.blue_point);
            println!("queries {}", stats.setup_queries + stats.queries);
            if verify_cut(oracle.oracle(), &colors, &cut) {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("internal error: computed cut failed verification");
                Ok(ExitCode::from(2))
            }
        }
        Command::SelectRank {
            input,
            p,
            q,
            k,
            subset,
            check,
            seed,
            strategy,
        } => {
            let (oracle, _) = load_input(&input)?;
            let n = oracle.oracle().size() as u32;
            if p == q || p >= n || q >= n {
                return Err(format!("invalid crossing {p},{q} for {n} lines"));
            }
            let subset: Vec<PointId> = match subset {
                None => (0..n).map(PointId).collect(),
                Some(s) => {
                    if let Some(&bad) = s.iter().find(|&&i| i >= n) {
                        return Err(format!("subset id {bad} out of range"));
                    }
                    s.into_iter().map(PointId).collect()
                }
            };
            let view = ArrangementView::new(oracle.oracle());
            let query = RankQuery {
                crossing: Crossing::new(PointId(p), PointId(q)),
                subset,
                k,
            };
            let seed = seed.unwrap_or_else(env_seed);
            let m = select_rank(&view, &query, strategy.into(), seed)
                .map_err(|e| e.to_string())?;
            println!("{m}");
            if check {
                let gamma = gamma_traversal(&view, query.crossing);
                let expect = gamma.nth_within(&query.subset, query.k);
                if expect != m {
                    eprintln!("check failed: traversal says {expect}");
                    return Ok(ExitCode::from(2));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCut { input, red, blue } => {
            let loaded = load_input(&OracleInput {
                input: Some(input),
                wiring: None,
                colors: None,
            })?;
            let (oracle, colors) = loaded;
            let colors = colors.ok_or("input carries no colors")?;
            let cut = Cut {
                red_point: PointId(red),
                blue_point: PointId(blue),
            };
            if verify_cut(oracle.oracle(), &colors, &cut) {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not a ham-sandwich cut");
                Ok(ExitCode::from(2))
            }
        }
        Command::Bench {
            min_n,
            max_n,
            trials,
            algorithm,
            seed,
            strategy,
        } => {
            if min_n < 4 || max_n < min_n {
                return Err("need 4 <= min-n <= max-n".to_string());
            }
            let cfg = BenchConfig {
                algorithm: match algorithm {
                    BenchAlgorithmArg::Hamcut => BenchAlgorithm::HamCut,
                    BenchAlgorithmArg::SelectRank => BenchAlgorithm::SelectRank,
                },
                min_n,
                max_n,
                trials,
                base_seed: seed.unwrap_or_else(env_seed),
                strategy: strategy.into(),
            };
            print!("{}", to_csv(&run_bench(&cfg)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            wiring,
            highlight,
            width,
            height,
            output,
        } => {
            let text = fs::read_to_string(&wiring).map_err(|e| format!("{wiring}: {e}"))?;
            let diagram = parse_wiring_file(&text).map_err(|e| format!("{wiring}: {e}"))?;
            let n = diagram.wires() as u32;
            let highlight = match highlight {
                None => None,
                Some(hl) => {
                    let [a, b]: [u32; 2] = hl
                        .try_into()
                        .map_err(|_| "highlight takes exactly two wire ids".to_string())?;
                    if a == b || a >= n || b >= n {
                        return Err(format!("invalid highlight crossing for {n} wires"));
                    }
                    Some((PointId(a), PointId(b)))
                }
            };
            let svg = render_svg(&RenderSpec {
                diagram,
                highlight,
                width,
                height,
            });
            match output {
                None => print!("{svg}"),
                Some(path) => fs::write(&path, svg).map_err(|e| format!("{path}: {e}"))?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
