//! Runs a short scenario through the experiment driver and lists the files
//! it produces: CSV time series, JSON-lines snapshots, SVG renders, report.

use curveflow::experiment::{self, ScenarioConfig};

fn main() -> curveflow::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "out/artifacts-example".to_string());
    let cfg_text = format!(
        "preset = ap-h25\nflow.alpha = 1\ngrid.N = 256\nctl.t_end = 0.5\nexpected = explore\nout_dir = {dir}\nrender_times = 0.1, 0.25\n"
    );
    let cfg: ScenarioConfig = experiment::parse_config_str(&cfg_text, "inline")?;
    let outcome = experiment::run_scenario(&cfg)?;
    println!("{}", experiment::verdict_text(&outcome.verdict()));
    let mut files: Vec<_> = std::fs::read_dir(&cfg.out_dir)
        .map_err(|e| curveflow::Error::Io { path: cfg.out_dir.clone(), source: e })?
        .filter_map(|e| e.ok().map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect();
    files.sort();
    for f in files {
        println!("  {}/{f}", cfg.out_dir.display());
    }

    let back = experiment::read_snapshots(cfg.out_dir.join("snapshots.jsonl"))?;
    let last = back.last().expect("at least one snapshot");
    println!("last snapshot: t = {:.4}, N = {}, reproduces state: {}", last.t, last.n, last.to_state()? == outcome.run.final_state);
    Ok(())
}
