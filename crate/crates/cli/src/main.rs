//! `cgsbound`: algebraic connectivity bounds from the command line.

mod render;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cgsbound::report::{bench_trial, BenchConfig};
use cgsbound::{analyze, generate, parse_edge_list, table1, Error, GraphFamily, OptimizerOptions, Strategy};

#[derive(Parser, Debug)]
#[command(name = "cgsbound", version, about = "Lower bounds on algebraic connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute lambda2 and every lower bound for one graph.
    Bounds(BoundsArgs),
    /// Reproduce the closed-form table for the standard families.
    Table1(FormatArgs),
    /// Random G(n, p) trials, one CSV row per trial.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct FormatArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args, Debug)]
struct OptimizerArgs {
    /// Relative convergence tolerance of the strategy optimizer.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iters: usize,
}

impl OptimizerArgs {
    fn options(&self) -> OptimizerOptions {
        OptimizerOptions {
            tol: self.tol,
            max_iters: self.max_iters,
        }
    }
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Edge-list file: one `u v` pair per line, `#` comments.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// complete, path, cycle, star, petersen or erdos_renyi.
    #[arg(long, required_unless_present = "input")]
    family: Option<String>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated subset of single_path, uniform, optimized.
    #[arg(long, value_delimiter = ',', default_value = "single_path,uniform,optimized")]
    strategies: Vec<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Embed per-edge scores in JSON output.
    #[arg(long)]
    scores: bool,
    /// Write edge scores of the first strategy as CSV.
    #[arg(long)]
    scores_out: Option<PathBuf>,
    /// Write the optimized strategy's DAG flows as CSV.
    #[arg(long)]
    strategy_out: Option<PathBuf>,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Vertex count, or an inclusive range such as `4..40`.
    #[arg(long, default_value = "12")]
    n: String,
    /// Edge probability, or an inclusive range such as `0.1..0.9`.
    #[arg(long, default_value = "0.3")]
    p: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

/// A bench row broke a guaranteed ordering.
#[derive(Debug)]
struct InvariantViolation {
    seed: u64,
    details: Vec<String>,
}

impl std::fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bound ordering violated for seed {}: {}", self.seed, self.details.join("; "))
    }
}

impl std::error::Error for InvariantViolation {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InvariantViolation>().is_some() {
        return 6;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::SelfLoop { .. } | Error::TooSmall { .. }) => 2,
        Some(Error::NotConnected { .. }) => 3,
        Some(Error::Convergence { .. }) => 4,
        Some(Error::InvalidFlow { .. }) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Bounds(args) => cmd_bounds(&args, &mut out),
        Command::Table1(args) => cmd_table1(args.format, &mut out),
        Command::Bench(args) => cmd_bench(&args, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(anyhow::Error::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn parse_strategies(names: &[String]) -> anyhow::Result<Vec<Strategy>> {
    let mut out = Vec::new();
    for name in names {
        let s: Strategy = name.trim().parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if out.is_empty() {
        bail!("at least one strategy is required");
    }
    Ok(out)
}

fn cmd_bounds<W: Write>(args: &BoundsArgs, out: &mut W) -> anyhow::Result<()> {
    let strategies = parse_strategies(&args.strategies)?;
    let (graph, name) = match (&args.input, &args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            (parse_edge_list(&text)?, path.display().to_string())
        }
        (None, Some(family)) => {
            let fam = GraphFamily::from_name(family, args.n, args.p, args.seed)?;
            (generate(fam)?, fam.to_string())
        }
        (None, None) => bail!("one of --input or --family is required"),
    };
    let analysis = analyze(&graph, &strategies, args.optimizer.options())?;

    if let Some(path) = &args.scores_out {
        let scores = analysis
            .scores(strategies[0])
            .expect("first strategy was computed");
        let mut file = BufWriter::new(fs::File::create(path)?);
        scores.write_csv(&graph, &mut file)?;
        file.flush()?;
    }
    if let Some(path) = &args.strategy_out {
        let Some(opt) = &analysis.optimized else {
            bail!("--strategy-out needs the optimized strategy");
        };
        let mut file = BufWriter::new(fs::File::create(path)?);
        opt.strategy.write_csv(&mut file)?;
        file.flush()?;
    }

    match args.format {
        Format::Table => render::bounds_table(out, &name, &graph, &analysis)?,
        Format::Csv => render::bounds_csv(out, &analysis.report)?,
        Format::Json => render::bounds_json(out, &analysis, &strategies, args.scores)?,
    }
    Ok(())
}

fn cmd_table1<W: Write>(format: Format, out: &mut W) -> anyhow::Result<()> {
    let rows = table1()?;
    match format {
        Format::Table => render::table1_table(out, &rows)?,
        Format::Csv => render::table1_csv(out, &rows)?,
        Format::Json => render::table1_json(out, &rows)?,
    }
    Ok(())
}

fn parse_range<T>(text: &str) -> anyhow::Result<(T, T)>
where
    T: std::str::FromStr + Copy,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    match text.split_once("..") {
        Some((lo, hi)) => Ok((lo.trim().parse()?, hi.trim().trim_start_matches('=').parse()?)),
        None => {
            let v = text.trim().parse()?;
            Ok((v, v))
        }
    }
}

fn cmd_bench<W: Write>(args: &BenchArgs, out: &mut W) -> anyhow::Result<()> {
    let (n_min, n_max) = parse_range::<usize>(&args.n).context("parsing --n")?;
    let (p_min, p_max) = parse_range::<f64>(&args.p).context("parsing --p")?;
    let cfg = BenchConfig {
        n_min,
        n_max,
        p_min,
        p_max,
        trials: args.trials,
        seed: args.seed,
    };
    let plan = cfg.plan()?;
    render::bench_header(out, args.format)?;
    for (n, p, seed) in plan {
        let (row, report) = bench_trial(n, p, seed, args.optimizer.options())?;
        render::bench_row(out, args.format, &row)?;
        let details = report.violations();
        if !details.is_empty() {
            return Err(InvariantViolation { seed, details }.into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<usize>("12").unwrap(), (12, 12));
        assert_eq!(parse_range::<usize>("4..40").unwrap(), (4, 40));
        assert_eq!(parse_range::<usize>("4..=40").unwrap(), (4, 40));
        assert_eq!(parse_range::<f64>("0.1..0.9").unwrap(), (0.1, 0.9));
        assert!(parse_range::<usize>("a..b").is_err());
    }

    #[test]
    fn strategy_lists() {
        let names = vec!["uniform".to_string(), "single_path".into(), "uniform".into()];
        assert_eq!(
            parse_strategies(&names).unwrap(),
            vec![Strategy::Uniform, Strategy::SinglePath]
        );
        assert!(parse_strategies(&["best".to_string()]).is_err());
    }

    #[test]
    fn exit_codes() {
        let parse: anyhow::Error = Error::Parse { line: 1, message: String::new() }.into();
        assert_eq!(exit_code(&parse), 2);
        let disc: anyhow::Error = Error::NotConnected { vertex: 1, label: "b".into() }.into();
        assert_eq!(exit_code(&disc), 3);
        let conv: anyhow::Error = Error::Convergence { sweeps: 100, off_norm: 1.0 }.into();
        assert_eq!(exit_code(&conv), 4);
        let flow: anyhow::Error = Error::InvalidFlow { u: 0, v: 1, vertex: 0, imbalance: 1.0 }.into();
        assert_eq!(exit_code(&flow), 5);
        let bench: anyhow::Error = InvariantViolation { seed: 3, details: vec![] }.into();
        assert_eq!(exit_code(&bench), 6);
    }
}
