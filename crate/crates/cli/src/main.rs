//! `vqc-bench`: run benchmark stages, optimizer-seed sweeps and the
//! gradient-variance probe from the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use higgs_vqc::bench::{
    emit_plateau, emit_reports, emit_stage, load_imputed, run_plateau_probe, run_stage_on, run_sweep, write_json,
    StageConfig, StageId, DEFAULT_DATA_SEED, DEFAULT_MAXITER,
};
use higgs_vqc::preprocess::{Label, SENTINEL};
use higgs_vqc::vqc::Readout;

#[derive(Parser)]
#[command(name = "vqc-bench", version, about = "Variational quantum classifier benchmarks on ATLAS Higgs data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train and evaluate one stage.
    Run(RunArgs),
    /// Train several stages over several optimizer seeds and report medians.
    Sweep(SweepArgs),
    /// Measure gradient variance against qubit count.
    Plateau(PlateauArgs),
    /// Parse a dataset and print a summary.
    IngestCheck {
        #[arg(long)]
        data: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// ATLAS Higgs challenge CSV.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DATA_SEED)]
    data_seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAXITER)]
    maxiter: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Estimate probabilities from this many samples instead of exactly.
    #[arg(long)]
    shots: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    stage: StageId,
    #[arg(long, default_value_t = 0)]
    opt_seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "A,B,C")]
    stages: Vec<StageId>,
    /// Number of optimizer seeds, used as 0..N.
    #[arg(long, default_value_t = 5)]
    opt_seeds: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PlateauArgs {
    /// Inclusive range `lo:hi`.
    #[arg(long, default_value = "2:8", value_parser = parse_range)]
    qubits: (usize, usize),
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<usize>().map_err(|e| e.to_string())?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn readout(shots: Option<u64>, seed: u64) -> Readout {
    shots.map_or(Readout::Exact, |shots| Readout::Shots { shots, seed })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let category = err.downcast_ref::<higgs_vqc::Error>().map_or("internal", |e| e.category());
            eprintln!("error [{category}]: {err:#}");
            ExitCode::from(exit_code(category))
        }
    }
}

fn exit_code(category: &str) -> u8 {
    match category {
        "config" => 2,
        "ingestion" | "data" => 3,
        "io" => 4,
        "structural" | "binding" | "dimension" => 5,
        _ => 1,
    }
}

fn execute(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Run(args) => {
            let c = &args.common;
            let events = load_imputed(&c.data)?;
            let mut cfg = StageConfig::new(args.stage, c.data_seed, args.opt_seed, c.maxiter);
            cfg.readout = readout(c.shots, args.opt_seed);
            let outcome = run_stage_on(&cfg, &events)?;
            let (report_path, _) = emit_stage(&outcome, &args.stage.to_string(), &c.out)?;
            let r = &outcome.report;
            println!(
                "stage {} n_params={} train_acc={:.4} test_acc={:.4} best_loss={:.5} evals={} time={:.1}s",
                r.stage, r.n_params, r.train_accuracy, r.test_accuracy, r.best_loss, r.evaluations, r.wall_time_s
            );
            println!("wrote {}", report_path.display());
        }
        Command::Sweep(args) => {
            let c = &args.common;
            let events = load_imputed(&c.data)?;
            let seeds: Vec<u64> = (0..args.opt_seeds).collect();
            let start = Instant::now();
            let (outcomes, summaries) =
                run_sweep(&args.stages, &seeds, &events, c.data_seed, c.maxiter, readout(c.shots, 0))?;
            emit_reports(&outcomes, &c.out)?;
            write_json(&c.out.join("sweep.json"), &summaries)?;
            for s in &summaries {
                let accs: Vec<String> = s.test_accuracies.iter().map(|a| format!("{a:.4}")).collect();
                println!("stage {} median_test_acc={:.4} [{}]", s.stage, s.median_test_accuracy, accs.join(", "));
            }
            println!("sweep finished in {:.1}s, reports in {}", start.elapsed().as_secs_f64(), c.out.display());
        }
        Command::Plateau(args) => {
            let report = run_plateau_probe(args.qubits.0..=args.qubits.1, args.samples, args.seed)?;
            emit_plateau(&report, &args.out)?;
            for e in &report.entries {
                let flag = if e.degenerate { " (degenerate)" } else { "" };
                println!("n={} variance={:.6e}{flag}", e.n_qubits, e.variance);
            }
            println!("slope log2(var) vs n = {:.4}", report.slope);
        }
        Command::IngestCheck { data } => {
            let events =
                higgs_vqc::bench::load_atlas_csv(&data).with_context(|| format!("checking {}", data.display()))?;
            let signal = events.iter().filter(|e| e.label == Label::Signal).count();
            let with_sentinel = events.iter().filter(|e| e.features.contains(&SENTINEL)).count();
            println!("rows: {}", events.len());
            println!("signal: {signal}  background: {}", events.len() - signal);
            println!("rows with undefined features: {with_sentinel}");
        }
    }
    Ok(())
}
