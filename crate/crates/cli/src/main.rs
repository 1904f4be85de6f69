use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use synqber::estimator::{effective_degrees, estimate_qber_syndrome, Prior, QberWindowPrior};
use synqber::eval::{
    aggregate, read_blocks_csv, report_csv, run_evaluation, write_outputs, SimulationConfig,
};
use synqber::extension::plan_extension;
use synqber::ldpc::{load_alist, CodePool, DegreeDistribution, PegOptions};
use synqber::{relative_syndrome, BitBlock, Error, Execution};

const EXIT_USAGE: u8 = 1;
const EXIT_ESTIMATION: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "synqber",
    version,
    about = "Syndrome-based QBER estimation for LDPC reconciliation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a pool of PEG codes and write alist files plus a manifest.
    GenCodes(GenCodes),
    /// Run the block-by-block estimator comparison.
    Simulate(Simulate),
    /// Estimate the QBER of one block from the two parties' syndromes.
    Estimate(Estimate),
    /// Recompute aggregate bias/accuracy from a blocks.csv stream.
    Report(Report),
}

#[derive(Args)]
struct GenCodes {
    /// Frame length shared by every code.
    #[arg(long)]
    n: usize,
    /// Comma-separated code rates.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9"
    )]
    rates: Vec<f64>,
    /// Column-degree distribution file (`degree fraction` per line).
    #[arg(long)]
    dist: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for the alist files and manifest.csv.
    #[arg(long)]
    out: PathBuf,
    /// Limit PEG's breadth-first search depth (faster for long codes).
    #[arg(long)]
    max_depth: Option<usize>,
    /// Build the codes in parallel.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct Simulate {
    /// `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Directory for blocks.csv, report.csv and the histograms.
    #[arg(long)]
    out: PathBuf,
    /// Fan blocks out over worker threads (output is identical).
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct Estimate {
    /// Parity-check matrix in alist format.
    #[arg(long)]
    matrix: PathBuf,
    /// Syndrome files holding `0`/`1` characters.
    #[arg(long)]
    syndrome_a: PathBuf,
    #[arg(long)]
    syndrome_b: PathBuf,
    /// `n_s,n_p,seed` of the extension layout.
    #[arg(long, default_value = "0,0,0")]
    layout: String,
    /// `alpha1,alpha2,q_min,q_max`, or `flat`.
    #[arg(long, default_value = "500,500,0.01,0.08")]
    prior: String,
}

#[derive(Args)]
struct Report {
    #[arg(long)]
    blocks: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Estimation(_) => EXIT_ESTIMATION,
        Error::Io { .. } | Error::Parse { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn execution(parallel: bool) -> Execution {
    if parallel && !Execution::parallel_available() {
        eprintln!("warning: built without the `parallel` feature; running sequentially");
    }
    if parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

fn run(command: Command) -> synqber::Result<()> {
    match command {
        Command::GenCodes(args) => {
            let dist = DegreeDistribution::load(&args.dist)?;
            let options = PegOptions {
                max_depth: args.max_depth,
            };
            let pool = CodePool::generate(
                args.n,
                &args.rates,
                &dist,
                args.seed,
                options,
                execution(args.parallel),
            )?;
            pool.save(&args.out)?;
            for code in pool.codes() {
                eprintln!("rate {:.4}: m = {}", code.rate, code.matrix.m());
            }
            Ok(())
        }
        Command::Simulate(args) => {
            let config = SimulationConfig::load(&args.config)?;
            let pool = CodePool::load(&config.pool_dir)?;
            let evaluation = run_evaluation(&config, &pool, execution(args.parallel))?;
            write_outputs(&args.out, &evaluation, config.bin_width)?;
            print!("{}", report_csv(&evaluation.report));
            if evaluation.report.failed_blocks > 0 {
                eprintln!(
                    "{} block(s) excluded after estimator failure",
                    evaluation.report.failed_blocks
                );
            }
            Ok(())
        }
        Command::Estimate(args) => {
            let h = load_alist(&args.matrix)?;
            let s_a = read_bits(&args.syndrome_a)?;
            let s_b = read_bits(&args.syndrome_b)?;
            let (n_s, n_p, seed) = parse_layout(&args.layout)?;
            let prior = parse_prior(&args.prior)?;
            if s_a.len() != h.m() {
                return Err(Error::Argument(format!(
                    "syndrome has {} bits, matrix has {} rows",
                    s_a.len(),
                    h.m()
                )));
            }
            let layout = plan_extension(h.n(), n_s, n_p, seed)?;
            let profile = effective_degrees(&h, &layout)?;
            let delta = relative_syndrome(&s_a, &s_b)?;
            let est = estimate_qber_syndrome(&delta, &profile, &prior)?;
            println!("{}", est.q_est);
            eprintln!("m_eff = {}, converged = {}", est.m_eff, est.converged);
            Ok(())
        }
        Command::Report(args) => {
            let records = read_blocks_csv(&args.blocks)?;
            print!("{}", report_csv(&aggregate(&records)));
            Ok(())
        }
    }
}

fn read_bits(path: &PathBuf) -> synqber::Result<BitBlock> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    text.parse().map_err(|e: Error| Error::Parse {
        source_name: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })
}

fn parse_layout(spec: &str) -> synqber::Result<(usize, usize, u64)> {
    let bad = || Error::Argument(format!("--layout expects n_s,n_p,seed, got {spec:?}"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n_s, n_p, seed] = parts[..] else {
        return Err(bad());
    };
    Ok((
        n_s.parse().map_err(|_| bad())?,
        n_p.parse().map_err(|_| bad())?,
        seed.parse().map_err(|_| bad())?,
    ))
}

fn parse_prior(spec: &str) -> synqber::Result<Prior> {
    if spec.trim() == "flat" {
        return Ok(Prior::Flat);
    }
    let bad = || {
        Error::Argument(format!(
            "--prior expects alpha1,alpha2,q_min,q_max or `flat`, got {spec:?}"
        ))
    };
    let values = spec
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<synqber::Result<Vec<_>>>()?;
    let [a1, a2, q_min, q_max] = values[..] else {
        return Err(bad());
    };
    Ok(Prior::Window(QberWindowPrior::new(a1, a2, q_min, q_max)?))
}
