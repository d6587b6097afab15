//! `pathdensity`: command-line front end for the `pathdensity` crate.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 a checked property failed.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pathdensity::bounds::{self, bound_report, crossing_point, sweep, uniform_grid, SWEEP_CSV_HEADER};
use pathdensity::construct::{near_regular, quasi_clique, quasi_star};
use pathdensity::count::CountReport;
use pathdensity::fmt::sig12;
use pathdensity::graph::parse_auto;
use pathdensity::search::{
    extremal_search, p4_extremal_table, table_csv, verify_ahlswede_katona, Statistic, TABLE_CSV_HEADER,
};
use pathdensity::stepfun::{maximize_s_restarts, OptimizerConfig, TRACE_CSV_HEADER};
use pathdensity::verify::{parse_config, verify_all, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "pathdensity", version, about = "Counts and bounds for 4-edge paths in graphs with n vertices and e edges")]
struct Cli {
    /// key = value file supplying defaults for any flag (flags win)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads for search and optimizer restarts
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    QuasiClique,
    QuasiStar,
    NearRegular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a quasi-clique, quasi-star or near-regular graph as an edge list
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: u64,
        /// Write the edge list here instead of stdout
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Exact path and walk counts for a graph (edge list or graph6; `-` reads stdin)
    Count {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Star sizes to count (repeatable)
        #[arg(long = "k", value_name = "K")]
        k: Vec<usize>,
        /// CSV output; without FILE (or with `-`) CSV replaces the text report on stdout
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
    /// Asymptotic bounds for one (n, e), or a density sweep
    Bounds {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        sweep: bool,
        #[arg(long)]
        points: Option<usize>,
        /// Also print the crossing point of the two upper branches
        #[arg(long)]
        crossing: bool,
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
    /// Hill-climb S over step functions of mass c
    Optimize {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Trace CSV of the best restart
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        /// Write the best step function in text form
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Exhaustive max/min of a statistic over all graphs with n <= 8 vertices and e edges
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: u64,
        /// p2 | p4 | walks4 | kstar:K
        #[arg(long, default_value = "p4")]
        stat: String,
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
    /// Check the exact 2-path maximum against both constructions for every e (n <= 7)
    VerifyAk {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive 4-path extremes for all n <= n-max and all e
    P4Table {
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
    /// Run every property suite
    VerifyAll {
        #[arg(long = "n-max")]
        n_max: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// A validation problem (exit 1) or a failed property (exit 2).
enum Failure {
    Invalid(anyhow::Error),
    Property(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<pathdensity::Error> for Failure {
    fn from(e: pathdensity::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Config> {
        let Some(path) = path else {
            return Ok(Config(BTreeMap::new()));
        };
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Ok(Config(parse_config(&text).with_context(|| format!("in config {}", path.display()))?))
    }

    /// Flag value, else config value, else `default`.
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.0.get(key) {
            Some(raw) => raw.parse().map_err(|_| anyhow!("config: bad value {raw:?} for {key}")),
            None => Ok(default),
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Writes to `path`, or stdout for `-`.
fn emit(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn lines(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = Config::load(cli.config.as_deref())?;
    let threads: usize = cfg.pick(cli.threads, "threads", 0)?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    match cli.command {
        Command::Construct { kind, n, e, output } => {
            let g = match kind {
                Kind::QuasiClique => quasi_clique(n, e)?,
                Kind::QuasiStar => quasi_star(n, e)?,
                Kind::NearRegular => near_regular(n, e)?,
            };
            emit(output.as_deref().unwrap_or(Path::new("-")), &g.to_edge_list())?;
        }
        Command::Count { input, k, csv } => {
            let g = parse_auto(&read_input(&input)?).with_context(|| format!("parsing {}", input.display()))?;
            if k.contains(&0) {
                return Err(Failure::Invalid(anyhow!("--k must be at least 1")));
            }
            let mut ks = k;
            ks.sort_unstable();
            ks.dedup();
            let report = CountReport::new(&g, &ks);
            let csv_text = lines(&report.csv_header(), [report.csv_row()]);
            match csv.as_deref() {
                Some(p) if p.as_os_str() == "-" => emit(p, &csv_text)?,
                Some(p) => {
                    print!("{report}");
                    emit(p, &csv_text)?;
                }
                None => print!("{report}"),
            }
        }
        Command::Bounds { n, e, sweep: do_sweep, points, crossing, csv } => {
            if crossing {
                let cp = crossing_point()?;
                println!("c0 {}  residual {}  iterations {}", sig12(cp.c0), sig12(cp.residual), cp.iterations);
            }
            if do_sweep {
                let points: usize = cfg.pick(points, "points", 101)?;
                if points < 2 {
                    return Err(Failure::Invalid(anyhow!("--points must be at least 2")));
                }
                let rows = sweep(&uniform_grid(points))?;
                let text = lines(SWEEP_CSV_HEADER, rows.iter().map(|r| r.csv()));
                emit(csv.as_deref().unwrap_or(Path::new("-")), &text)?;
            } else {
                match (n, e) {
                    (Some(n), Some(e)) => {
                        let r = bound_report(n, e)?;
                        print!("{r}");
                        println!("regime        {}", bounds::ak_regime(n, e)?);
                    }
                    _ if crossing => {}
                    _ => return Err(Failure::Invalid(anyhow!("bounds needs --n and --e, or --sweep"))),
                }
            }
        }
        Command::Optimize { c, blocks, restarts, seed, trace, output } => {
            let blocks = cfg.pick(blocks, "blocks", 6)?;
            let restarts = cfg.pick(restarts, "restarts", 32)?;
            let seed = cfg.pick(seed, "seed", 0)?;
            let mut oc = OptimizerConfig::default();
            oc.patience = cfg.pick(None, "patience", oc.patience)?;
            oc.max_iters = cfg.pick(None, "max_iters", oc.max_iters)?;
            let r = maximize_s_restarts(c, blocks, restarts, seed, &oc)?;
            let star = bounds::upper_star_density(c)?;
            let clique = bounds::upper_clique_density(c)?;
            let bound = star.max(clique);
            println!("c             {}", sig12(c));
            println!("best S        {}", sig12(r.best.s_value));
            println!("bound         {}", sig12(bound));
            println!("gap           {}", sig12(bound - r.best.s_value));
            println!("best restart  {} of {}", r.best_index, restarts);
            println!("iterations    {}", r.best.iterations);
            println!("accepted      {}", r.best.trace.len() - 1);
            println!("blocks        {}", r.best.function.k());
            print!("{}", r.best.function);
            if let Some(p) = trace {
                emit(&p, &lines(TRACE_CSV_HEADER, r.best.trace.iter().map(|t| t.csv())))?;
            }
            if let Some(p) = output {
                emit(&p, &r.best.function.to_string())?;
            }
        }
        Command::Search { n, e, stat, csv } => {
            let stat: Statistic = stat.parse()?;
            let r = extremal_search(n, e, stat)?;
            print!("{r}");
            if let Some(p) = csv {
                emit(&p, &lines(TABLE_CSV_HEADER, [r.csv_row()]))?;
            }
        }
        Command::VerifyAk { n } => {
            let rep = verify_ahlswede_katona(n)?;
            println!("{rep}");
            if !rep.passed() {
                return Err(Failure::Property(format!("2-path maximum check failed for n = {n}")));
            }
        }
        Command::P4Table { n_max, csv } => {
            let n_max = cfg.pick(n_max, "n_max", 6)?;
            let rows = p4_extremal_table(n_max)?;
            emit(csv.as_deref().unwrap_or(Path::new("-")), &table_csv(&rows))?;
        }
        Command::VerifyAll { n_max, seed, tolerance, restarts, samples } => {
            let mut vc = VerifyConfig::default();
            vc.apply(&cfg.0)?;
            vc.n_max = n_max.unwrap_or(vc.n_max);
            vc.seed = seed.unwrap_or(vc.seed);
            vc.tolerance = tolerance.unwrap_or(vc.tolerance);
            vc.restarts = restarts.unwrap_or(vc.restarts);
            vc.samples = samples.unwrap_or(vc.samples);
            let rep = verify_all(&vc)?;
            println!("{rep}");
            if !rep.passed() {
                return Err(Failure::Property("property suites failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Property(msg)) => {
            eprintln!("failed: {msg}");
            ExitCode::from(2)
        }
    }
}
