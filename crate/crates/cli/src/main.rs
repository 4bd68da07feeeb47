use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mckp::bissa::{bissa, BissaOutcome, OptimalReason};
use mckp::harness::{generate, parse_spec_file, run_benchmark, Correlation, GenSpec};
use mckp::kissa::{certify, kissa, KissaConfig, SelectionRule, Termination};
use mckp::oracle::{brute_force, dp_solve};
use mckp::{read_instance, write_instance, Error, Instance, Result};

#[derive(Parser)]
#[command(
    name = "mckp",
    version,
    about = "Multiple-choice knapsack heuristics and exact oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        corr: Corr,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        budget_ratio: f64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run BISSA followed by KISSA.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        rho: f64,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = Rule::MaxProfit)]
        rule: Rule,
        /// Print the weight bisection and every KISSA iteration.
        #[arg(long)]
        trace: bool,
    },
    /// Solve to optimality.
    Exact {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ExactMethod::Dp)]
        method: ExactMethod,
    },
    /// Run a benchmark batch and write a CSV report.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Solve rows one at a time.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Corr {
    Uncorr,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    MaxProfit,
    First,
    BestSlack,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactMethod {
    Dp,
    Brute,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            m,
            n,
            corr,
            seed,
            budget_ratio,
            output,
        } => gen(m, n, corr, seed, budget_ratio, &output),
        Command::Solve {
            file,
            rho,
            eps,
            rule,
            trace,
        } => solve(&file, rho, eps, rule, trace),
        Command::Exact { file, method } => exact(&file, method),
        Command::Bench { spec, out, sequential } => bench(&spec, &out, !sequential),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Infeasible { .. } => 3,
        Error::GuardExceeded(_) => 4,
        _ => 1,
    }
}

fn load(path: &Path) -> Result<Instance> {
    read_instance(&fs::read(path)?)
}

fn gen(m: usize, n: usize, corr: Corr, seed: u64, budget_ratio: f64, output: &Path) -> Result<()> {
    let correlation = match corr {
        Corr::Uncorr => Correlation::Uncorrelated,
        Corr::Weak => Correlation::Weak,
    };
    let spec = GenSpec {
        budget_ratio,
        ..GenSpec::new(m, n, correlation, seed)
    };
    let inst = generate(&spec)?;
    let mut text = format!("# {spec}\n");
    text.push_str(&write_instance(&inst)?);
    fs::write(output, text)?;
    Ok(())
}

fn solve(path: &Path, rho: f64, eps: f64, rule: Rule, trace: bool) -> Result<()> {
    let inst = load(path)?;
    let outcome = bissa(&inst)?;
    if trace {
        for step in &outcome.trace().steps {
            println!(
                "bissa w={} selection={} point={} feasible={}",
                step.weight, step.selection, step.point, step.feasible
            );
        }
    }
    let pair = match outcome {
        BissaOutcome::Optimal {
            selection,
            point,
            reason,
            ..
        } => {
            let why = match reason {
                OptimalReason::MaxProfitFits => "bissa optimal (max profit fits)",
                OptimalReason::ZeroSlack => "bissa optimal (zero slack)",
            };
            print_result(&selection, point.f1, point.cost(), why, true);
            return Ok(());
        }
        BissaOutcome::Straddle(pair) => pair,
    };
    let config = KissaConfig {
        rho,
        epsilon: eps,
        rule: match rule {
            Rule::MaxProfit => SelectionRule::MaxProfit,
            Rule::First => SelectionRule::First,
            Rule::BestSlack => SelectionRule::BestSlack,
        },
        ..KissaConfig::default()
    };
    let run = kissa(&inst, &pair, &config)?;
    if trace {
        println!("bissa xA={} {} xB={} {}", pair.xa, pair.point_a, pair.xb, pair.point_b);
        println!("kissa rho={}", run.rho.rho);
        for it in &run.iterations {
            println!(
                "kissa iter={} J1={:?} J={:?} Jb={:?} chosen={} xA={}",
                it.iter,
                it.j1,
                it.j,
                it.jb,
                it.chosen.map_or("-".to_string(), |j| j.to_string()),
                it.xa_point
            );
        }
    }
    let why = match run.termination {
        Termination::JEmpty => "kissa: no profitable Chebyshev solution (J empty)",
        Termination::JbEmpty => "kissa: no profitable swap fits the budget (Jb empty)",
        Termination::MaxIterations => "kissa: iteration limit",
    };
    let certified = certify(&inst, &run, true);
    println!("improvements: {}", run.improvements);
    print_result(
        &run.final_selection,
        run.final_point.f1,
        run.final_point.cost(),
        why,
        certified,
    );
    Ok(())
}

fn print_result(selection: &mckp::Selection, profit: f64, cost: f64, termination: &str, certificate: bool) {
    println!("selection: {selection}");
    println!("profit: {profit}");
    println!("cost: {cost}");
    println!("termination: {termination}");
    println!("certificate: {certificate}");
}

fn exact(path: &Path, method: ExactMethod) -> Result<()> {
    let inst = load(path)?;
    let result = match method {
        ExactMethod::Dp => dp_solve(&inst)?,
        ExactMethod::Brute => brute_force(&inst)?,
    };
    let point = inst.evaluate(&result.optimum_selection)?;
    println!("selection: {}", result.optimum_selection);
    println!("profit: {}", result.optimum_profit);
    println!("cost: {}", point.cost());
    println!("method: {:?}", result.method);
    Ok(())
}

fn bench(spec: &Path, out: &Path, parallel: bool) -> Result<()> {
    let specs = parse_spec_file(&fs::read_to_string(spec)?)?;
    let report = run_benchmark(&specs, &KissaConfig::default(), parallel);
    fs::write(out, report.to_csv())?;
    print!("{}", report.to_table());
    Ok(())
}
