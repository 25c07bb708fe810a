//! Scenario driver: presets, config files, artifacts and exit statuses.

pub mod config;
pub mod output;
pub mod presets;

use std::fmt::Write as _;
use std::path::Path;

pub use config::{parse_config, parse_config_str, ScenarioConfig};
pub use output::{read_snapshots, render_svg, write_snapshots, write_timeseries, SnapshotRecord};
pub use presets::{list_presets, preset, Expected, Preset, DEFAULT_ALPHAS};

use crate::curve::{self, ClassReport, CurveClass, SupportState};
use crate::diagnostics::{self, MonitorReport, MonitorTolerances};
use crate::error::{Error, Result};
use crate::flow::{self, RunOptions, RunOutcome, Verdict, VerdictKind};

/// Half-width of the neighbourhood used by the spreading monitor.
pub const SPREADING_EPSILON: f64 = 0.1;
/// Largest probe step for the rate identity printed in the report; halved
/// stable steps are used when that is smaller.
pub const RATE_PROBE_DT: f64 = 1e-5;

/// Process exit status of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Match = 0,
    Error = 1,
    Mismatch = 2,
    InvariantViolation = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    /// Combined status of several runs: error, then invariant violation, then mismatch.
    pub fn worst(statuses: impl IntoIterator<Item = ExitStatus>) -> ExitStatus {
        let rank = |s: &ExitStatus| match s {
            ExitStatus::Match => 0,
            ExitStatus::Mismatch => 1,
            ExitStatus::InvariantViolation => 2,
            ExitStatus::Error => 3,
        };
        statuses.into_iter().max_by_key(rank).unwrap_or(ExitStatus::Match)
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOutcome {
    pub config: ScenarioConfig,
    pub class: ClassReport,
    pub run: RunOutcome,
    pub monitors: MonitorReport,
    pub status: ExitStatus,
}

impl ScenarioOutcome {
    pub fn verdict(&self) -> Verdict {
        self.run.verdict
    }
}

/// Runs a scenario without touching the file system.
pub fn simulate(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    cfg.validate()?;
    let s0 = curve::generate_support(&cfg.curve, cfg.grid_size)?;
    let class = curve::classify(&s0);
    let mut opts = RunOptions::new(cfg.tol_conv);
    if class.class == CurveClass::AbreschLangerType {
        opts.symmetry_order = class.symmetry_order;
    }
    let run = flow::run_with(&s0, &cfg.params, &cfg.ctl, &opts)?;

    let mut monitors = diagnostics::check_monotonicity(&run.series, &cfg.params, &MonitorTolerances::default());
    if run.verdict.kind() != VerdictKind::BlowUp {
        monitors.assert_check(diagnostics::CURVATURE_INTEGRAL_BOUND);
    }
    monitors.merge(diagnostics::spreading_check(&run.states, &cfg.params, SPREADING_EPSILON)?);

    let status = if !monitors.passed() {
        ExitStatus::InvariantViolation
    } else if !cfg.expected.matches(run.verdict.kind()) {
        ExitStatus::Mismatch
    } else {
        ExitStatus::Match
    };
    Ok(ScenarioOutcome {
        config: cfg.clone(),
        class,
        run,
        monitors,
        status,
    })
}

/// Runs a scenario and writes `timeseries.csv`, `snapshots.jsonl`,
/// `curve_t*.svg` and `report.txt` into `cfg.out_dir`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    let dir = &cfg.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let outcome = match simulate(cfg) {
        Ok(o) => o,
        Err(e) => {
            let text = format!("scenario: {}\nerror: {e}\nexit status: 1\n", cfg.name);
            let path = dir.join("report.txt");
            std::fs::write(&path, text).map_err(|io| Error::io(&path, io))?;
            return Err(e);
        }
    };
    write_artifacts(&outcome, dir)?;
    Ok(outcome)
}

/// Exit status of a finished (or failed) scenario.
pub fn exit_status(result: &Result<ScenarioOutcome>) -> ExitStatus {
    result.as_ref().map_or(ExitStatus::Error, |o| o.status)
}

pub fn write_artifacts(outcome: &ScenarioOutcome, dir: &Path) -> Result<()> {
    let run = &outcome.run;
    let params = &outcome.config.params;
    write_timeseries(&run.series, dir.join("timeseries.csv"))?;
    write_snapshots(&run.states, params, dir.join("snapshots.jsonl"))?;
    for s in render_states(&run.states, &outcome.config.render_times) {
        render_svg(s, dir.join(output::svg_file_name(s.t())))?;
    }
    let path = dir.join("report.txt");
    std::fs::write(&path, report_text(outcome)?).map_err(|e| Error::io(&path, e))
}

/// The first and last sampled states plus the sample nearest each requested time.
pub fn render_states<'a>(states: &'a [SupportState], times: &[f64]) -> Vec<&'a SupportState> {
    let mut idx: Vec<usize> = Vec::new();
    if !states.is_empty() {
        idx.push(0);
        idx.push(states.len() - 1);
    }
    for &t in times {
        if let Some((i, _)) = states
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.t() - t).abs().total_cmp(&(b.1.t() - t).abs()))
        {
            idx.push(i);
        }
    }
    idx.sort_unstable();
    idx.dedup();
    idx.into_iter().map(|i| &states[i]).collect()
}

pub fn report_text(o: &ScenarioOutcome) -> Result<String> {
    let cfg = &o.config;
    let run = &o.run;
    let mut r = String::new();
    let first = run.series.first().expect("a run has at least one sample");
    let last = run.series.last().expect("a run has at least one sample");
    let s0 = &run.states[0];
    let probe = RATE_PROBE_DT.min(0.5 * flow::stable_dt(s0, &cfg.params, &cfg.ctl)?);
    let rate = diagnostics::rate_check(s0, &cfg.params, probe)?;

    let _ = writeln!(r, "scenario: {}", cfg.name);
    let _ = writeln!(r, "curve: {:?} (m = {})", cfg.curve.shape, cfg.curve.m);
    let _ = writeln!(
        r,
        "flow: {} alpha = {} N = {} t_end = {} cfl = {} tol_conv = {:e}",
        cfg.params.kind, cfg.params.alpha, cfg.grid_size, cfg.ctl.t_end, cfg.ctl.cfl, cfg.tol_conv
    );
    let _ = writeln!(
        r,
        "class: {:?} (symmetry order {:?}, coprime {}, property P {:?})",
        o.class.class, o.class.symmetry_order, o.class.coprime, o.class.property_p
    );
    let _ = writeln!(r, "expected: {}", cfg.expected);
    let _ = writeln!(r, "verdict: {}", verdict_text(&run.verdict));
    let _ = writeln!(r, "steps: {} (retries {}) samples: {}", run.steps, run.retries, run.series.len());
    let _ = writeln!(r);
    let _ = writeln!(r, "{:>12} {:>22} {:>22}", "", "initial", "final");
    for (name, a, b) in [
        ("t", first.t, last.t),
        ("L", first.length, last.length),
        ("A", first.area, last.area),
        ("lambda", first.lambda, last.lambda),
        ("kappa_min", first.kappa_min, last.kappa_min),
        ("kappa_max", first.kappa_max, last.kappa_max),
        ("E", first.energy, last.energy),
        ("F_int", first.f_int, last.f_int),
        ("psi_max", first.psi_max, last.psi_max),
        ("isop_gap", first.isop_gap, last.isop_gap),
    ] {
        let _ = writeln!(r, "{name:>12} {a:>22.14e} {b:>22.14e}");
    }
    let _ = writeln!(r);
    let _ = writeln!(r, "rate identity at t = 0 (dt_probe = {probe:.3e}): {rate:.3e}");
    let _ = writeln!(r);
    let _ = write!(r, "{}", o.monitors);
    let _ = writeln!(r);
    let _ = writeln!(r, "exit status: {}", o.status.code());
    Ok(r)
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Converged { r_inf } => format!("Converged (r_inf = {r_inf:.12e})"),
        Verdict::BlowUp {
            t_stop,
            kappa_max,
            witness,
        } => format!("BlowUp (t_stop = {t_stop:.12e}, kappa_max = {kappa_max:.6e}, witness {witness:?})"),
        Verdict::TimeLimit => "TimeLimit".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::FlowKind;
    use crate::flow::StepControl;

    fn circle_cfg(dir: &Path) -> ScenarioConfig {
        let mut cfg = ScenarioConfig::from_preset("circle-m3", 1.0).unwrap();
        cfg.ctl = StepControl::new(0.05);
        cfg.grid_size = 64;
        cfg.out_dir = dir.to_path_buf();
        cfg.render_times = vec![0.02];
        cfg
    }

    #[test]
    fn circle_scenario_writes_everything() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = circle_cfg(dir.path());
        let o = run_scenario(&cfg).unwrap();
        assert_eq!(o.status, ExitStatus::Match);
        assert_eq!(o.verdict(), Verdict::TimeLimit);
        let drift = o.run.final_state.h().values().iter().map(|h| (h - 1.0).abs()).fold(0.0, f64::max);
        assert!(drift <= 1e-10);
        for f in ["timeseries.csv", "snapshots.jsonl", "report.txt"] {
            assert!(dir.path().join(f).exists(), "{f}");
        }
        let svgs = std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "svg"))
            .count();
        assert_eq!(svgs, 3);
        let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
        assert!(report.contains("verdict: TimeLimit"));
        assert!(report.contains("exit status: 0"));
    }

    #[test]
    fn mismatch_and_worst_status() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = circle_cfg(dir.path());
        cfg.expected = Expected::Verdict(VerdictKind::Converged);
        assert_eq!(simulate(&cfg).unwrap().status, ExitStatus::Mismatch);
        cfg.params = crate::curve::FlowParams::new(1.0, 3, FlowKind::LengthPreserving).unwrap();
        cfg.expected = Expected::Explore;
        assert_eq!(simulate(&cfg).unwrap().status, ExitStatus::Match);
        use ExitStatus::*;
        assert_eq!(ExitStatus::worst([Match, Mismatch, InvariantViolation]), InvariantViolation);
        assert_eq!(ExitStatus::worst([Error, InvariantViolation]), Error);
        assert_eq!(ExitStatus::worst([]), Match);
    }

    #[test]
    fn failed_run_is_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = circle_cfg(dir.path());
        cfg.ctl.kappa_blowup = 0.5;
        let r = run_scenario(&cfg);
        assert_eq!(exit_status(&r), ExitStatus::Error);
        assert!(dir.path().join("report.txt").exists());
    }
}
