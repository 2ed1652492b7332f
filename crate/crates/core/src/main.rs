use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gridbo::harness::{
    ablate_and_write, parse_step_budget, parse_target_mode, render_from_dir, run_and_write,
    ConfigOverrides, RunConfig, TargetMode,
};

#[derive(Parser)]
#[command(name = "gridbo", version, about = "Grid-map Bayesian optimization level explorer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one trial of a single configuration and write maps + metrics.
    Run(ConfigArgs),
    /// Run the six-configuration ablation matrix and write a report.
    Ablate(ConfigArgs),
    /// Re-emit maps from a directory written by `run`.
    Render {
        /// Directory holding state.json and metrics.json.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// key = value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    level: Option<PathBuf>,
    /// Kernel bandwidth in cells.
    #[arg(long)]
    sigma: Option<f64>,
    /// Uncertainty amplitude.
    #[arg(long)]
    sigma_f: Option<f64>,
    /// bo | random
    #[arg(long, value_parser = parse_mode)]
    target_mode: Option<TargetMode>,
    /// adaptive | constant | none
    #[arg(long)]
    exploration: Option<String>,
    /// Random-action rate for constant exploration.
    #[arg(long)]
    rate: Option<f64>,
    /// Steps before an agent that missed its target is reset, or "auto".
    #[arg(long)]
    step_budget: Option<String>,
    #[arg(long)]
    total_steps: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn parse_mode(s: &str) -> Result<TargetMode, String> {
    parse_target_mode(s).map_err(|e| e.to_string())
}

impl ConfigArgs {
    fn resolve(self) -> gridbo::Result<RunConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| gridbo::Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                ConfigOverrides::parse(&text)?
            }
            None => ConfigOverrides::default(),
        };
        let flags = ConfigOverrides {
            level_path: self.level,
            sigma: self.sigma,
            sigma_f: self.sigma_f,
            target_mode: self.target_mode,
            exploration: self.exploration,
            rate: self.rate,
            step_budget: self.step_budget.as_deref().map(parse_step_budget).transpose()?,
            total_steps: self.total_steps,
            trials: self.trials,
            seed: self.seed,
            out_dir: self.out_dir,
        };
        file.merge(flags).apply(RunConfig::default())
    }
}

fn run(cli: Cli) -> gridbo::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let cfg = args.resolve()?;
            let record = run_and_write(&cfg)?;
            let m = &record.metrics;
            println!(
                "coverage {:.4}  dist_uniform {:.4}  ghost_passes {}  steps {}  seed {}",
                m.coverage, m.dist_uniform, m.ghost_passes, m.steps, m.seed
            );
            println!("wrote {}", cfg.out_dir.display());
        }
        Command::Ablate(args) => {
            let cfg = args.resolve()?;
            let report = ablate_and_write(&cfg)?;
            println!(
                "{:<18} {:>10} {:>10} {:>10} {:>10} {:>8}",
                "config", "coverage", "norm_cov", "dist", "norm_dist", "ghost"
            );
            for r in &report.rows {
                println!(
                    "{:<18} {:>10.4} {:>10.3} {:>10.4} {:>10.3} {:>8.1}",
                    r.label,
                    r.coverage.mean,
                    r.normalized_coverage,
                    r.dist_uniform.mean,
                    r.normalized_dist_uniform,
                    r.ghost_passes.mean
                );
            }
            println!("wrote {}", cfg.out_dir.display());
        }
        Command::Render { input, out_dir } => {
            render_from_dir(&input, &out_dir)?;
            println!("wrote {}", out_dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
