use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use egame_core::admissible::AdmissibleList;
use egame_core::approx::approximate_energies;
use egame_core::exact;
use egame_core::gen::{generate, high_penalty_family, Family, GenSpec};
use egame_core::oracle::{brute_force_energies, brute_force_penalty, OracleBudget};
use egame_core::reductions::{to_bipartite, to_complete_bipartite, to_win_everywhere, ReductionTrace};
use egame_core::viter::{solve_full, solve_with_list};
use egame_core::{verify_minimal, EnergyFunction, GameGraph};
use num_rational::Ratio;
use thiserror::Error;

use egame::format::{emit_energies, emit_game, parse_energies, parse_game, ParseError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Budget(egame_core::Error),
    #[error("{0}")]
    Core(egame_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } => 1,
            CliError::Parse { .. } => 2,
            CliError::Verify(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<egame_core::Error> for CliError {
    fn from(e: egame_core::Error) -> Self {
        match e {
            egame_core::Error::BudgetExceeded { .. } => CliError::Budget(e),
            e => CliError::Core(e),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "egame", version, about = "Minimal energies of two-player energy games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimal energies; without --assume-penalty the penalty is guessed and checked.
    Solve {
        game: PathBuf,
        /// Run the recursion with this penalty lower bound (integer or `p/q`) instead of guessing.
        #[arg(long, value_name = "D")]
        assume_penalty: Option<String>,
        /// Bound on the finite energies; defaults to nW.
        #[arg(long, value_name = "M")]
        bound: Option<i64>,
    },
    /// Lower bound within `c` of the minimal energies when the penalty is at least c/n.
    Approx {
        game: PathBuf,
        #[arg(long, value_name = "C")]
        error: i64,
        #[arg(long, value_name = "M")]
        bound: Option<i64>,
    },
    /// Prints ALICE if Alice wins from the node with finite energy, BOB otherwise.
    Decide {
        game: PathBuf,
        /// Node id, or a letter (`a` is node 0).
        #[arg(long)]
        node: String,
    },
    /// Exits 0 iff the energy file solves the local min/max equations.
    Verify { game: PathBuf, energies: PathBuf },
    /// Minimal energies by strategy enumeration (small games only).
    Oracle {
        game: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Per-node penalties by strategy enumeration (small games only).
    Penalty {
        game: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// One reduction step; the game goes to stdout or --output, the trace to --trace or stderr.
    Reduce {
        #[command(subcommand)]
        step: ReduceStep,
    },
    /// Seeded instance generator.
    Gen(GenArgs),
    /// Runs a benchmark suite and writes a CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on enumerated strategy pairs.
    #[arg(long, default_value_t = OracleBudget::default().max_pairs)]
    max_pairs: u64,
    #[arg(long, default_value_t = OracleBudget::default().max_nodes)]
    max_nodes: usize,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget { max_pairs: self.max_pairs, max_nodes: self.max_nodes }
    }
}

#[derive(Args)]
struct ReduceIo {
    game: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceStep {
    /// Gadget after which one player wins everywhere, keeping the winner at --node.
    Winall {
        #[arg(long)]
        node: String,
        #[command(flatten)]
        io: ReduceIo,
    },
    /// Splits same-owner edges.
    Bipartite {
        #[command(flatten)]
        io: ReduceIo,
    },
    /// Adds every missing cross edge.
    Complete {
        #[command(flatten)]
        io: ReduceIo,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Random,
    Penalty,
    Window,
    Multiples,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Edge count; defaults to 2n.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "max-weight", default_value_t = 10)]
    max_weight: i64,
    #[arg(long, default_value_t = 50)]
    alice_percent: u32,
    #[arg(long)]
    max_out_degree: Option<usize>,
    /// Weight step for `multiples`.
    #[arg(long, default_value_t = 2)]
    step: i64,
    /// Number of centers for `window`.
    #[arg(long, default_value_t = 2)]
    centers: usize,
    #[arg(long, default_value_t = 1)]
    delta: i64,
    /// Branches at the hub for `penalty`.
    #[arg(long, default_value_t = 4)]
    choices: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Wsweep,
    Penalty,
    Window,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_game(path: &Path) -> Result<GameGraph> {
    parse_game(&read(path)?).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

/// The game with self-loops replaced by two-cycles, and its original size.
/// Energies of the original nodes are unchanged.
fn normalized(g: &GameGraph) -> Result<(GameGraph, usize)> {
    let clean = g.eliminate_self_loops();
    clean.validate().into_result()?;
    Ok((clean, g.node_count()))
}

fn truncate(e: EnergyFunction, n: usize) -> EnergyFunction {
    let mut v = e.into_vec();
    v.truncate(n);
    EnergyFunction::new(v)
}

fn parse_node(text: &str, n: usize) -> Result<usize> {
    let id = match text.parse::<usize>() {
        Ok(id) => id,
        Err(_) => match text.as_bytes() {
            [c @ b'a'..=b'z'] => (c - b'a') as usize,
            _ => return Err(CliError::Usage(format!("bad node '{text}': expected an id or a letter"))),
        },
    };
    if id >= n {
        return Err(CliError::Usage(format!("node {id} out of range for a graph with {n} nodes")));
    }
    Ok(id)
}

fn parse_ratio(text: &str) -> Result<Ratio<i64>> {
    let bad = || CliError::Usage(format!("bad penalty '{text}': expected an integer or p/q"));
    match text.split_once('/') {
        None => text.trim().parse().map(Ratio::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
    }
}

fn solve(path: &Path, assume_penalty: Option<&str>, bound: Option<i64>) -> Result<()> {
    let (g, n) = normalized(&load_game(path)?)?;
    match assume_penalty {
        None => {
            let report = exact::solve(&g, bound)?;
            print!("{}", emit_energies(&truncate(report.energies, n)));
            eprintln!("# bound {}", report.bound);
            for guess in &report.guesses {
                let status = match &guess.failure {
                    Some(e) => format!("rejected ({e})"),
                    None if guess.verified => "verified".to_string(),
                    None => "failed verification".to_string(),
                };
                eprintln!("# guess c={} D={} depth={} updates={} {status}", guess.error, guess.penalty, guess.stats.depth, guess.stats.total_updates);
            }
            eprintln!("# fallback {}", report.fallback);
            eprintln!("# updates {} relaxations {}", report.total_updates, report.edge_relaxations);
            Ok(())
        }
        Some(d) => {
            let d = parse_ratio(d)?;
            let bound = bound.unwrap_or_else(|| g.universal_bound());
            let (e, stats) = exact::minimal_energy_with_stats(&g, bound, d).map_err(|e| match e {
                egame_core::Error::AssumptionViolated(_) => CliError::Verify(e.to_string()),
                e => e.into(),
            })?;
            let verified = verify_minimal(&g, &e);
            print!("{}", emit_energies(&truncate(e, n)));
            eprintln!("# depth {} updates {} relaxations {}", stats.depth, stats.total_updates, stats.edge_relaxations);
            eprintln!("# verified {verified}");
            if verified {
                Ok(())
            } else {
                Err(CliError::Verify("result fails the fixed-point check".into()))
            }
        }
    }
}

fn emit_reduction(io: &ReduceIo, g: &GameGraph, trace: &ReductionTrace) -> Result<()> {
    let text = emit_game(g);
    match &io.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    let trace = trace.to_string();
    match &io.trace {
        Some(path) => write(path, &trace),
        None => {
            eprint!("{trace}");
            Ok(())
        }
    }
}

fn reduce(step: &ReduceStep) -> Result<()> {
    match step {
        ReduceStep::Winall { node, io } => {
            let g = load_game(&io.game)?;
            let s = parse_node(node, g.node_count())?;
            let (out, _, trace) = to_win_everywhere(&g, s)?;
            emit_reduction(io, &out, &trace)
        }
        ReduceStep::Bipartite { io } => {
            let (out, trace) = to_bipartite(&load_game(&io.game)?)?;
            emit_reduction(io, &out, &trace)
        }
        ReduceStep::Complete { io } => {
            let (out, trace) = to_complete_bipartite(&load_game(&io.game)?)?;
            emit_reduction(io, &out, &trace)
        }
    }
}

fn gen(args: &GenArgs) -> Result<()> {
    let m = args.m.unwrap_or(2 * args.n);
    let mut spec = GenSpec::random(args.n, m, args.max_weight, args.seed);
    spec.alice_percent = args.alice_percent;
    spec.max_out_degree = args.max_out_degree;
    spec.family = match args.family {
        FamilyName::Random => Family::Random,
        FamilyName::Multiples => Family::Multiples { step: args.step },
        FamilyName::Window => Family::Windowed {
            centers: args.centers,
            delta: args.delta,
            center_range: (-args.max_weight, args.max_weight),
        },
        FamilyName::Penalty => Family::HighPenalty { choices: args.choices },
    };
    let generated = generate(&spec)?;
    let text = emit_game(&generated.graph);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if !generated.centers.is_empty() {
        let centers: Vec<String> = generated.centers.iter().map(i64::to_string).collect();
        eprintln!("# centers {}", centers.join(" "));
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    family: &'static str,
    n: usize,
    m: usize,
    max_weight: i64,
    param: i64,
    seed: u64,
    algorithm: &'static str,
    node_updates: u64,
    edge_relaxations: u64,
    wall_ms: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, String) {
    let start = Instant::now();
    let out = f();
    (out, format!("{:.3}", start.elapsed().as_secs_f64() * 1e3))
}

fn bench_rows(suite: Suite, seeds: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut push = |family, g: &GameGraph, param, seed, algorithm, updates, relaxations, wall_ms| {
        rows.push(Row {
            family,
            n: g.node_count(),
            m: g.edge_count(),
            max_weight: g.max_abs_weight(),
            param,
            seed,
            algorithm,
            node_updates: updates,
            edge_relaxations: relaxations,
            wall_ms,
        })
    };
    for seed in 1..=seeds {
        match suite {
            Suite::Wsweep => {
                for choices in [16usize, 64] {
                    for k in [4u32, 8, 12, 16] {
                        let g = high_penalty_family(choices, 1 << k, seed)?;
                        let p = choices as i64;
                        let (b, t) = timed(|| solve_full(&g));
                        push("penalty", &g, p, seed, "baseline", b.stats.total_updates, b.stats.edge_relaxations, t);
                        let (r, t) = timed(|| exact::solve(&g, None));
                        let r = r?;
                        push("penalty", &g, p, seed, "exact", r.total_updates, r.edge_relaxations, t);
                    }
                }
            }
            Suite::Penalty => {
                for choices in [4usize, 16, 64, 256] {
                    let g = high_penalty_family(choices, 1 << 10, seed)?;
                    let n = g.node_count() as i64;
                    let p = choices as i64;
                    let (b, t) = timed(|| solve_full(&g));
                    push("penalty", &g, p, seed, "baseline", b.stats.total_updates, b.stats.edge_relaxations, t);
                    let (r, t) = timed(|| exact::solve(&g, None));
                    let r = r?;
                    push("penalty", &g, p, seed, "exact", r.total_updates, r.edge_relaxations, t);
                    // error nW/2: penalty W/2 is guaranteed by the family
                    let c = n * g.max_abs_weight() / 2;
                    let (a, t) = timed(|| approximate_energies(&g, g.universal_bound(), c));
                    let a = a?;
                    push("penalty", &g, p, seed, "approx", a.stats.total_updates, a.stats.edge_relaxations, t);
                }
            }
            Suite::Window => {
                for n in [8usize, 16, 32] {
                    let spec = GenSpec::random(n, 3 * n, 1000, seed).with_max_out_degree(4).with_family(
                        Family::Windowed { centers: 2, delta: 1, center_range: (-1000, 1000) },
                    );
                    let generated = generate(&spec)?;
                    let g = &generated.graph;
                    let (b, t) = timed(|| solve_full(g));
                    push("window", g, 2, seed, "baseline", b.stats.total_updates, b.stats.edge_relaxations, t);
                    let (w, t) = timed(|| {
                        AdmissibleList::window(&generated.centers, 1, n, g.universal_bound()).map(|l| solve_with_list(g, &l))
                    });
                    let w = w?;
                    push("window", g, 2, seed, "window", w.stats.total_updates, w.stats.edge_relaxations, t);
                }
            }
        }
    }
    rows.sort();
    Ok(rows)
}

fn bench(suite: Suite, out: &Path, seeds: u64) -> Result<()> {
    let rows = bench_rows(suite, seeds)?;
    let io = |source| CliError::Io { path: out.display().to_string(), source };
    let mut w = csv::Writer::from_path(out).map_err(|e| io(e.into()))?;
    w.write_record(["family", "n", "m", "W", "param", "seed", "algorithm", "node_updates", "edge_relaxations", "wall_ms"])
        .map_err(|e| io(e.into()))?;
    for r in &rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.max_weight.to_string(),
            r.param.to_string(),
            r.seed.to_string(),
            r.algorithm.to_string(),
            r.node_updates.to_string(),
            r.edge_relaxations.to_string(),
            r.wall_ms.clone(),
        ])
        .map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve { game, assume_penalty, bound } => solve(&game, assume_penalty.as_deref(), bound),
        Command::Approx { game, error, bound } => {
            let (g, n) = normalized(&load_game(&game)?)?;
            let bound = bound.unwrap_or_else(|| g.universal_bound());
            let a = approximate_energies(&g, bound, error)?;
            print!("{}", emit_energies(&truncate(a.energies, n)));
            eprintln!("# granularity {} updates {}", a.granularity, a.stats.total_updates);
            Ok(())
        }
        Command::Decide { game, node } => {
            let (g, n) = normalized(&load_game(&game)?)?;
            let s = parse_node(&node, n)?;
            let e = exact::solve(&g, None)?.energies;
            println!("{}", if e[s].is_finite() { "ALICE" } else { "BOB" });
            Ok(())
        }
        Command::Verify { game, energies } => {
            let g = load_game(&game)?;
            g.validate().into_result()?;
            let e = parse_energies(&read(&energies)?, g.node_count())
                .map_err(|source| CliError::Parse { path: energies.display().to_string(), source })?;
            if verify_minimal(&g, &e) {
                println!("ok");
                Ok(())
            } else {
                Err(CliError::Verify("energy function fails the fixed-point check".into()))
            }
        }
        Command::Oracle { game, budget } => {
            let (g, n) = normalized(&load_game(&game)?)?;
            let e = brute_force_energies(&g, &budget.budget())?;
            print!("{}", emit_energies(&truncate(e, n)));
            Ok(())
        }
        Command::Penalty { game, budget } => {
            let (g, n) = normalized(&load_game(&game)?)?;
            let report = brute_force_penalty(&g, &budget.budget())?;
            for (v, p) in report.per_node.iter().enumerate().take(n) {
                println!("v {v} {p} {}", report.per_node_uniform[v]);
            }
            eprintln!("# penalty {} uniform {}", report.graph_penalty(), report.uniform_graph_penalty());
            Ok(())
        }
        Command::Reduce { step } => reduce(&step),
        Command::Gen(args) => gen(&args),
        Command::Bench { suite, out, seeds } => bench(suite, &out, seeds),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
