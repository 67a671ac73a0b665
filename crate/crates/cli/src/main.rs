//! Command-line front end: solve game files, generate instances, verify
//! result files against their games, and run the CSV benchmark harness.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graph_games::reductions::{
    gen_random_gr1, gen_random_ov, gen_random_triangle, ov_to_game, triangle_to_game,
    RandomGameSpec,
};
use graph_games::strategy::{
    check_p1_genbuchi, check_p1_gr1, check_p2_genbuchi, check_p2_gr1,
    extract_genbuchi_strategies, extract_gr1_strategies,
};
use graph_games::{
    gen_random_game, parse_game, parse_result, partition_checksum, serialize_game,
    serialize_result, solve_basic, solve_fast, solve_gr1_basic, solve_gr1_fast,
    solve_via_buchi_reduction, GameGraph, Objective, ResultFile,
    SolveResult, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "graph-games",
    about = "Solvers for games on graphs with generalized Büchi and GR(1) objectives",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a generalized Büchi game file and print the winning partition.
    Solve(SolveArgs),
    /// Solve a GR(1) game file and print the winning partition.
    SolveGr1(SolveGr1Args),
    /// Generate a game file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a result file (winning sets, strategies, certificates) against
    /// its game. Exits 0 on acceptance, 1 on rejection.
    Verify(VerifyArgs),
    /// Run a benchmark suite and write a CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GbAlgo {
    Basic,
    Fast,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gr1Algo {
    Basic,
    Fast,
}

#[derive(Args)]
struct SolveArgs {
    /// Algorithm: the direct iteration, the level-graph variant, or the
    /// reference path through the single-target reduction.
    #[arg(long, value_enum, default_value = "fast")]
    algo: GbAlgo,
    /// Extract strategies and certificates and self-check them.
    #[arg(long)]
    certify: bool,
    /// Reorder target sets ascending by size before solving (helps the
    /// basic algorithm when the first set is large).
    #[arg(long)]
    sort_targets: bool,
    /// Write a result file with the partition, strategy, and certificate.
    #[arg(short, long)]
    output: Option<PathBuf>,
    game: PathBuf,
}

#[derive(Args)]
struct SolveGr1Args {
    #[arg(long, value_enum, default_value = "fast")]
    algo: Gr1Algo,
    /// Extract strategies and certificates and self-check them.
    #[arg(long)]
    certify: bool,
    /// Write a result file with the partition, strategy, and certificate.
    #[arg(short, long)]
    output: Option<PathBuf>,
    game: PathBuf,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Triangle-detection instance, encoded as a game.
    Triangle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.3")]
        edge_prob: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Orthogonal-vectors instance, encoded as a game.
    Ov {
        /// Vectors per set.
        #[arg(long)]
        vectors: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "0.5")]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random generalized Büchi game.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Probability that a vertex belongs to player 1.
        #[arg(long, default_value = "0.5")]
        owner_bias: f64,
        /// Smallest target-set size.
        #[arg(long, default_value = "1")]
        tmin: usize,
        /// Largest target-set size (defaults to n/4, at least 1).
        #[arg(long)]
        tmax: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Random GR(1) game.
    RandomGr1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    game: PathBuf,
    result: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Manifest file: one `<game-file> <algo>` entry per line, where algo is
    /// basic, fast, oracle, gr1-basic, or gr1-fast.
    #[arg(long)]
    suite: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Worker threads.
    #[arg(long, default_value = "1")]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve(args) => solve_cmd(args),
        Command::SolveGr1(args) => solve_gr1_cmd(args),
        Command::Gen(cmd) => gen_cmd(cmd),
        Command::Verify(args) => verify_cmd(args),
        Command::Bench(args) => bench_cmd(args),
    }
}

fn load_game(path: &Path) -> Result<(GameGraph, Objective)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_game(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn print_partition(w1: &VertexSet, w2: &VertexSet) {
    let line = |name: &str, set: &VertexSet| {
        let mut s = String::from(name);
        s.push(':');
        for v in set.iter() {
            let _ = write!(s, " {v}");
        }
        println!("{s}");
    };
    line("W1", w1);
    line("W2", w2);
}

fn solve_cmd(args: SolveArgs) -> Result<ExitCode> {
    let (g, obj) = load_game(&args.game)?;
    let Objective::GenBuchi(mut obj) = obj else {
        bail!("{} holds a GR(1) objective; use `solve-gr1`", args.game.display());
    };
    if args.sort_targets {
        obj = obj.sorted_by_size();
    }
    let want_witnesses = args.certify || args.output.is_some();
    if want_witnesses && args.algo == GbAlgo::Oracle {
        bail!("--certify/--output need a trace; use --algo basic or fast");
    }
    let res = match args.algo {
        GbAlgo::Basic => solve_basic(&g, &obj)?,
        GbAlgo::Fast => solve_fast(&g, &obj)?,
        GbAlgo::Oracle => solve_via_buchi_reduction(&g, &obj)?,
    };
    print_partition(&res.w1, &res.w2);
    if want_witnesses {
        let (strategy, certificate) = extract_genbuchi_strategies(&res, &g, &obj)?;
        check_p1_genbuchi(&strategy, &g, &obj, &res.w1)
            .map_err(|ce| anyhow!("extracted strategy rejected: {ce}"))?;
        check_p2_genbuchi(&certificate, &g, &obj)
            .map_err(|ce| anyhow!("extracted certificate rejected: {ce}"))?;
        if args.certify {
            println!("certified: strategy and certificate accepted");
        }
        if let Some(path) = args.output {
            let rf = ResultFile::GenBuchi {
                w1: res.w1.clone(),
                w2: res.w2.clone(),
                strategy,
                certificate,
            };
            std::fs::write(&path, serialize_result(&rf))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn solve_gr1_cmd(args: SolveGr1Args) -> Result<ExitCode> {
    let (g, obj) = load_game(&args.game)?;
    let Objective::Gr1(obj) = obj else {
        bail!(
            "{} holds a generalized Büchi objective; use `solve`",
            args.game.display()
        );
    };
    let res = match args.algo {
        Gr1Algo::Basic => solve_gr1_basic(&g, &obj)?,
        Gr1Algo::Fast => solve_gr1_fast(&g, &obj)?,
    };
    print_partition(&res.w1, &res.w2);
    if args.certify || args.output.is_some() {
        let (strategy, certificate) = extract_gr1_strategies(&res, &g, &obj)?;
        check_p1_gr1(&strategy, &g, &obj, &res.w1)
            .map_err(|ce| anyhow!("extracted strategy rejected: {ce}"))?;
        check_p2_gr1(&certificate, &g, &obj)
            .map_err(|ce| anyhow!("extracted certificate rejected: {ce}"))?;
        if args.certify {
            println!("certified: strategy and certificate accepted");
        }
        if let Some(path) = args.output {
            let rf = ResultFile::Gr1 {
                w1: res.w1.clone(),
                w2: res.w2.clone(),
                strategy,
                certificate,
            };
            std::fs::write(&path, serialize_result(&rf))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_instance(
    path: &Path,
    metadata: &str,
    g: &GameGraph,
    obj: &Objective,
) -> Result<()> {
    let mut text = format!("# generated: {metadata}\n");
    text.push_str(&serialize_game(g, obj));
    let sinks = (0..g.n() as u32).filter(|&v| g.out_degree(v) == 0).count();
    if sinks > 0 {
        eprintln!(
            "warning: instance has {sinks} vertices without successors; \
             `solve` will reject the file as written"
        );
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn gen_cmd(cmd: GenCommand) -> Result<ExitCode> {
    match cmd {
        GenCommand::Triangle {
            n,
            edge_prob,
            seed,
            output,
        } => {
            let inst = gen_random_triangle(n, edge_prob, seed);
            let (g, obj, _s) = triangle_to_game(&inst)?;
            write_instance(
                &output,
                &format!("triangle n={n} edge-prob={edge_prob} seed={seed}"),
                &g,
                &Objective::GenBuchi(obj),
            )?;
        }
        GenCommand::Ov {
            vectors,
            dim,
            density,
            seed,
            output,
        } => {
            let inst = gen_random_ov(vectors, dim, density, seed);
            let (g, obj, _s) = ov_to_game(&inst)?;
            write_instance(
                &output,
                &format!("ov vectors={vectors} dim={dim} density={density} seed={seed}"),
                &g,
                &Objective::GenBuchi(obj),
            )?;
        }
        GenCommand::Random {
            n,
            m,
            k,
            owner_bias,
            tmin,
            tmax,
            seed,
            output,
        } => {
            let tmax = tmax.unwrap_or_else(|| (n / 4).max(1));
            let spec = RandomGameSpec {
                n,
                m,
                k,
                owner_bias,
                target_size: (tmin, tmax),
                seed,
            };
            let (g, obj) = gen_random_game(&spec);
            write_instance(
                &output,
                &format!(
                    "random n={n} m={m} k={k} owner-bias={owner_bias} \
                     tmin={tmin} tmax={tmax} seed={seed}"
                ),
                &g,
                &Objective::GenBuchi(obj),
            )?;
        }
        GenCommand::RandomGr1 {
            n,
            m,
            k1,
            k2,
            seed,
            output,
        } => {
            let (g, obj) = gen_random_gr1(n, m, k1, k2, seed);
            write_instance(
                &output,
                &format!("random-gr1 n={n} m={m} k1={k1} k2={k2} seed={seed}"),
                &g,
                &Objective::Gr1(obj),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn partition_ok(n: usize, w1: &VertexSet, w2: &VertexSet) -> bool {
    if !w1.is_disjoint(w2) {
        return false;
    }
    let mut union = w1.clone();
    union.union_with(w2);
    union == VertexSet::full(n)
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode> {
    let (g, obj) = load_game(&args.game)?;
    let text = std::fs::read_to_string(&args.result)
        .with_context(|| format!("cannot read {}", args.result.display()))?;
    let rf = parse_result(&text, g.n())
        .with_context(|| format!("cannot parse {}", args.result.display()))?;

    let rejected = |what: &str, detail: String| {
        println!("verification: rejected ({what}: {detail})");
        Ok(ExitCode::from(1))
    };
    match (rf, obj) {
        (
            ResultFile::GenBuchi {
                w1,
                w2,
                strategy,
                certificate,
            },
            Objective::GenBuchi(obj),
        ) => {
            if !partition_ok(g.n(), &w1, &w2) {
                return rejected("partition", "W1 and W2 do not partition the vertex set".into());
            }
            if let Err(ce) = check_p1_genbuchi(&strategy, &g, &obj, &w1) {
                return rejected("strategy", ce.to_string());
            }
            if let Err(ce) = check_p2_genbuchi(&certificate, &g, &obj) {
                return rejected("certificate", ce.to_string());
            }
        }
        (
            ResultFile::Gr1 {
                w1,
                w2,
                strategy,
                certificate,
            },
            Objective::Gr1(obj),
        ) => {
            if !partition_ok(g.n(), &w1, &w2) {
                return rejected("partition", "W1 and W2 do not partition the vertex set".into());
            }
            if let Err(ce) = check_p1_gr1(&strategy, &g, &obj, &w1) {
                return rejected("strategy", ce.to_string());
            }
            if let Err(ce) = check_p2_gr1(&certificate, &g, &obj) {
                return rejected("certificate", ce.to_string());
            }
        }
        _ => bail!("result kind does not match the game's objective"),
    }
    println!("verification: accepted");
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BenchAlgo {
    Basic,
    Fast,
    Oracle,
    Gr1Basic,
    Gr1Fast,
}

impl BenchAlgo {
    fn parse(tag: &str) -> Option<BenchAlgo> {
        match tag {
            "basic" => Some(BenchAlgo::Basic),
            "fast" => Some(BenchAlgo::Fast),
            "oracle" => Some(BenchAlgo::Oracle),
            "gr1-basic" => Some(BenchAlgo::Gr1Basic),
            "gr1-fast" => Some(BenchAlgo::Gr1Fast),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            BenchAlgo::Basic => "basic",
            BenchAlgo::Fast => "fast",
            BenchAlgo::Oracle => "oracle",
            BenchAlgo::Gr1Basic => "gr1-basic",
            BenchAlgo::Gr1Fast => "gr1-fast",
        }
    }
}

struct BenchEntry {
    path: PathBuf,
    algo: BenchAlgo,
}

fn bench_entry_row(entry: &BenchEntry) -> Result<String> {
    let (g, obj) = load_game(&entry.path)?;
    let instance = entry.path.display().to_string();
    let (n, m) = (g.n(), g.m());
    match (&obj, entry.algo) {
        (Objective::GenBuchi(o), BenchAlgo::Basic | BenchAlgo::Fast | BenchAlgo::Oracle) => {
            let start = Instant::now();
            let res: SolveResult = match entry.algo {
                BenchAlgo::Basic => solve_basic(&g, o)?,
                BenchAlgo::Fast => solve_fast(&g, o)?,
                BenchAlgo::Oracle => solve_via_buchi_reduction(&g, o)?,
                _ => unreachable!(),
            };
            let wall_ns = start.elapsed().as_nanos();
            Ok(format!(
                "{instance},{n},{m},{k},,,{algo},{wall_ns},{w1},{iters},{sum:016x}",
                k = o.k(),
                algo = entry.algo.name(),
                w1 = res.w1.len(),
                iters = res.iterations,
                sum = partition_checksum(&res.w1, &res.w2),
            ))
        }
        (Objective::Gr1(o), BenchAlgo::Gr1Basic | BenchAlgo::Gr1Fast) => {
            let start = Instant::now();
            let res = match entry.algo {
                BenchAlgo::Gr1Basic => solve_gr1_basic(&g, o)?,
                _ => solve_gr1_fast(&g, o)?,
            };
            let wall_ns = start.elapsed().as_nanos();
            Ok(format!(
                "{instance},{n},{m},,{k1},{k2},{algo},{wall_ns},{w1},{iters},{sum:016x}",
                k1 = o.k1(),
                k2 = o.k2(),
                algo = entry.algo.name(),
                w1 = res.w1.len(),
                iters = res.iterations,
                sum = partition_checksum(&res.w1, &res.w2),
            ))
        }
        _ => bail!(
            "algorithm `{}` does not fit the objective of {}",
            entry.algo.name(),
            entry.path.display()
        ),
    }
}

fn bench_cmd(args: BenchArgs) -> Result<ExitCode> {
    let manifest = std::fs::read_to_string(&args.suite)
        .with_context(|| format!("cannot read {}", args.suite.display()))?;
    let base = args.suite.parent().unwrap_or(Path::new("."));
    let mut entries = Vec::new();
    for (idx, raw) in manifest.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(path), Some(algo), None) = (parts.next(), parts.next(), parts.next()) else {
            bail!("suite line {}: expected `<game-file> <algo>`", idx + 1);
        };
        let algo = BenchAlgo::parse(algo)
            .ok_or_else(|| anyhow!("suite line {}: unknown algorithm `{algo}`", idx + 1))?;
        let mut file = PathBuf::from(path);
        if file.is_relative() {
            file = base.join(file);
        }
        entries.push(BenchEntry { path: file, algo });
    }

    let jobs = args.jobs.max(1);
    let rows: Mutex<Vec<Option<Result<String>>>> =
        Mutex::new((0..entries.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(entries.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let row = bench_entry_row(&entries[i]);
                rows.lock().unwrap()[i] = Some(row);
            });
        }
    });

    let mut csv = String::from("instance,n,m,k,k1,k2,algo,wall_ns,w1_size,iterations,checksum\n");
    for row in rows.into_inner().unwrap() {
        csv.push_str(&row.expect("all entries processed")?);
        csv.push('\n');
    }
    std::fs::write(&args.output, csv)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    Ok(ExitCode::SUCCESS)
}
