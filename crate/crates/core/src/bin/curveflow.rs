use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curveflow::experiment::{self, ExitStatus, ScenarioConfig};
use curveflow::flow::StepControl;

#[derive(Parser)]
#[command(name = "curveflow", version, about = "Nonlocal power curvature flows of locally convex curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the preset catalog.
    ListPresets,
    /// Run a preset; without --alpha every default exponent runs, each in its own subdirectory.
    Preset {
        name: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long = "N", value_name = "K")]
        grid_size: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn run_one(cfg: &ScenarioConfig) -> ExitStatus {
    let result = experiment::run_scenario(cfg);
    match &result {
        Ok(o) => println!(
            "{} alpha={}: {} -> exit {} ({})",
            cfg.name,
            cfg.params.alpha,
            experiment::verdict_text(&o.verdict()),
            o.status.code(),
            cfg.out_dir.display()
        ),
        Err(e) => eprintln!("{} alpha={}: error: {e}", cfg.name, cfg.params.alpha),
    }
    experiment::exit_status(&result)
}

fn preset_configs(
    name: &str,
    alpha: Option<f64>,
    grid_size: Option<usize>,
    t_end: Option<f64>,
    out: Option<PathBuf>,
) -> curveflow::Result<Vec<ScenarioConfig>> {
    let p = experiment::preset(name)?;
    let alphas = alpha.map_or(p.alphas.clone(), |a| vec![a]);
    let root = out.unwrap_or_else(|| PathBuf::from("out").join(name));
    alphas
        .iter()
        .map(|&a| {
            let mut cfg = ScenarioConfig::from_preset(name, a)?;
            if let Some(n) = grid_size {
                cfg.grid_size = n;
            }
            if let Some(t) = t_end {
                cfg.ctl = StepControl::new(t);
            }
            cfg.out_dir = if alpha.is_some() {
                root.clone()
            } else {
                root.join(format!("alpha-{a}"))
            };
            Ok(cfg)
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::ListPresets => {
            for p in experiment::list_presets() {
                println!(
                    "{:16} {} N={} t_end={} alphas={:?} expect {}\n{:16} {}",
                    p.name, p.kind, p.grid_size, p.t_end, p.alphas, p.expected, "", p.clause
                );
            }
            ExitStatus::Match
        }
        Command::Preset {
            name,
            alpha,
            grid_size,
            t_end,
            out,
        } => match preset_configs(&name, alpha, grid_size, t_end, out) {
            Err(e) => {
                eprintln!("error: {e}");
                ExitStatus::Error
            }
            Ok(cfgs) => std::thread::scope(|scope| {
                let handles: Vec<_> = cfgs.iter().map(|cfg| scope.spawn(move || run_one(cfg))).collect();
                ExitStatus::worst(handles.into_iter().map(|h| h.join().unwrap_or(ExitStatus::Error)))
            }),
        },
        Command::Run { config } => match experiment::parse_config(&config) {
            Ok(cfg) => run_one(&cfg),
            Err(e) => {
                eprintln!("error: {e}");
                ExitStatus::Error
            }
        },
    };
    ExitCode::from(status.code() as u8)
}
