//! Flat `key = value` scenario files.
//!
//! ```text
//! # comments start with '#'
//! preset = ap-h25          # optional; fills every field below
//! flow.kind = AP
//! flow.alpha = 1.0
//! curve.shape = cosine     # cosine | circle | samples
//! curve.m = 2
//! curve.n = 5
//! curve.a = 1.0
//! curve.b = 0.12
//! grid.N = 512
//! ctl.t_end = 20
//! ctl.cfl = 0.25
//! tol_conv = 1e-3
//! expected = Converged     # Converged | BlowUp | TimeLimit | explore
//! out_dir = out/ap-h25
//! render_times = 0, 0.5, 1
//! ```
//!
//! Explicit keys override the preset. Unset step controls fall back to
//! [`StepControl::new`] for the final `t_end`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::presets::{self, Expected};
use crate::curve::{CurveShape, CurveSpec, FlowKind, FlowParams};
use crate::error::{Error, Result};
use crate::flow::StepControl;

pub const DEFAULT_GRID_SIZE: usize = 512;
pub const DEFAULT_TOL_CONV: f64 = 1e-3;

/// Everything needed to execute and judge one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub curve: CurveSpec,
    pub params: FlowParams,
    pub ctl: StepControl,
    pub grid_size: usize,
    pub tol_conv: f64,
    pub expected: Expected,
    pub out_dir: PathBuf,
    pub render_times: Vec<f64>,
}

impl ScenarioConfig {
    /// The preset run at exponent `alpha` with its own grid size and horizon.
    pub fn from_preset(name: &str, alpha: f64) -> Result<Self> {
        let p = presets::preset(name)?;
        let params = FlowParams::new(alpha, p.curve.m, p.kind)?;
        Ok(Self {
            name: p.name.to_string(),
            curve: p.curve,
            params,
            ctl: StepControl::new(p.t_end),
            grid_size: p.grid_size,
            tol_conv: DEFAULT_TOL_CONV,
            expected: p.expected,
            out_dir: PathBuf::from("out").join(p.name),
            render_times: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.curve.validate()?;
        self.ctl.validate()?;
        if self.curve.m != self.params.m {
            return Err(Error::Spec(format!(
                "curve has turning number {} but the flow says {}",
                self.curve.m, self.params.m
            )));
        }
        if !(self.tol_conv > 0.0) {
            return Err(Error::Spec(format!("tol_conv must be positive, got {}", self.tol_conv)));
        }
        Ok(())
    }
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_config_in(&text, &path.display().to_string(), base)
}

/// Parses config text; relative `curve.file` paths resolve against the working directory.
pub fn parse_config_str(text: &str, origin: &str) -> Result<ScenarioConfig> {
    parse_config_in(text, origin, Path::new("."))
}

struct Entries<'a> {
    origin: &'a str,
    map: BTreeMap<String, (usize, String)>,
}

impl Entries<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.origin.to_string(),
            line,
            msg: msg.into(),
        }
    }

    fn line_of(&self, key: &str) -> usize {
        self.map.get(key).map_or(0, |(l, _)| *l)
    }

    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some((line, raw)) => raw
                .parse()
                .map(Some)
                .map_err(|_| self.err(line, format!("cannot parse `{raw}` for `{key}`"))),
        }
    }

    fn take_with<T>(&mut self, key: &str, f: impl FnOnce(&str) -> Result<T>) -> Result<Option<T>> {
        match self.map.remove(key) {
            None => Ok(None),
            Some((line, raw)) => f(&raw).map(Some).map_err(|e| match e {
                Error::Parse { .. } | Error::Convexity { .. } => e,
                other => self.err(line, format!("`{key}`: {other}")),
            }),
        }
    }
}

fn parse_config_in(text: &str, origin: &str, base: &Path) -> Result<ScenarioConfig> {
    let mut e = Entries {
        origin,
        map: BTreeMap::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            return Err(e.err(line, format!("expected `key = value`, got `{content}`")));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(e.err(line, format!("empty key or value in `{content}`")));
        }
        if e.map.insert(k.to_string(), (line, v.to_string())).is_some() {
            return Err(e.err(line, format!("duplicate key `{k}`")));
        }
    }

    let preset_line = e.line_of("preset");
    let preset = match e.take::<String>("preset")? {
        Some(name) => Some(presets::preset(&name).map_err(|err| e.err(preset_line, err.to_string()))?),
        None => None,
    };

    let kind_line = e.line_of("flow.kind");
    let kind = match e.take::<String>("flow.kind")? {
        Some(k) => k.parse::<FlowKind>().map_err(|err| e.err(kind_line, err.to_string()))?,
        None => preset.as_ref().map(|p| p.kind).ok_or_else(|| e.err(0, "missing `flow.kind`"))?,
    };
    let alpha = e.take::<f64>("flow.alpha")?.unwrap_or(1.0);

    let shape_line = e.line_of("curve.shape");
    let shape = e.take::<String>("curve.shape")?;
    let m_line = e.line_of("curve.m");
    let m = e.take::<u32>("curve.m")?;
    let curve_line = [shape_line, m_line, e.line_of("curve.a"), e.line_of("curve.b")]
        .into_iter()
        .max()
        .unwrap_or(0);
    let curve = match shape.as_deref() {
        None => {
            let mut c = preset
                .as_ref()
                .map(|p| p.curve.clone())
                .ok_or_else(|| e.err(0, "missing `curve.shape` (or a `preset`)"))?;
            if let Some(m) = m {
                c.m = m;
            }
            override_cosine(&mut e, c)?
        }
        Some("circle") => {
            let r = e.take::<f64>("curve.r")?.unwrap_or(1.0);
            CurveSpec::circle(r, m.ok_or_else(|| e.err(shape_line, "missing `curve.m`"))?)
        }
        Some("cosine") => {
            let m = m.ok_or_else(|| e.err(shape_line, "missing `curve.m`"))?;
            let mut get = |key: &str| -> Result<f64> {
                e.take::<f64>(key)?
                    .ok_or_else(|| e.err(shape_line, format!("missing `{key}`")))
            };
            let (a, b) = (get("curve.a")?, get("curve.b")?);
            let n = e
                .take::<u32>("curve.n")?
                .ok_or_else(|| e.err(shape_line, "missing `curve.n`"))?;
            CurveSpec::cosine(a, b, n, m)
        }
        Some("samples") => {
            let file = e
                .take::<String>("curve.file")?
                .ok_or_else(|| e.err(shape_line, "missing `curve.file`"))?;
            let c = CurveSpec::from_samples_file(base.join(file))?;
            if let Some(m) = m {
                if m != c.m {
                    return Err(e.err(m_line, format!("curve.m = {m} but the sample file says {}", c.m)));
                }
            }
            c
        }
        Some(other) => return Err(e.err(shape_line, format!("unknown curve shape `{other}`"))),
    };
    match curve.validate() {
        Err(Error::Spec(msg)) => return Err(e.err(curve_line, msg)),
        Err(err) => return Err(err),
        Ok(()) => {}
    }

    let params = FlowParams::new(alpha, curve.m, kind).map_err(|err| e.err(e.line_of("flow.alpha"), err.to_string()))?;
    let t_end = match e.take::<f64>("ctl.t_end")? {
        Some(t) => t,
        None => preset.as_ref().map_or(1.0, |p| p.t_end),
    };
    let mut ctl = StepControl::new(t_end);
    if let Some(x) = e.take("ctl.cfl")? {
        ctl.cfl = x;
    }
    if let Some(x) = e.take("ctl.dt_max")? {
        ctl.dt_max = x;
    }
    if let Some(x) = e.take("ctl.dt_min")? {
        ctl.dt_min = x;
    }
    if let Some(x) = e.take("ctl.kappa_blowup")? {
        ctl.kappa_blowup = x;
    }
    if let Some(x) = e.take("ctl.sample_interval")? {
        ctl.sample_interval = x;
    }
    ctl.validate().map_err(|err| e.err(0, err.to_string()))?;

    let grid_size = e
        .take::<usize>("grid.N")?
        .or(match &curve.shape {
            CurveShape::FromSamples(v) => Some(v.len()),
            _ => preset.as_ref().map(|p| p.grid_size),
        })
        .unwrap_or(DEFAULT_GRID_SIZE);
    let tol_conv = e.take::<f64>("tol_conv")?.unwrap_or(DEFAULT_TOL_CONV);
    let expected_line = e.line_of("expected");
    let expected = match e.take::<String>("expected")? {
        Some(x) => x.parse().map_err(|err: Error| e.err(expected_line, err.to_string()))?,
        None => preset.as_ref().map_or(Expected::Explore, |p| p.expected),
    };
    let name = e
        .take::<String>("name")?
        .or(preset.as_ref().map(|p| p.name.to_string()))
        .unwrap_or_else(|| "scenario".to_string());
    let out_dir = e
        .take::<String>("out_dir")?
        .map_or_else(|| PathBuf::from("out").join(&name), PathBuf::from);
    let render_times = e
        .take_with("render_times", |raw| {
            raw.split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Spec(format!("bad render time `{x}`"))))
                .collect::<Result<Vec<_>>>()
        })?
        .unwrap_or_default();

    if let Some((key, (line, _))) = e.map.iter().next() {
        return Err(e.err(*line, format!("unknown key `{key}`")));
    }

    let cfg = ScenarioConfig {
        name,
        curve,
        params,
        ctl,
        grid_size,
        tol_conv,
        expected,
        out_dir,
        render_times,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn override_cosine(e: &mut Entries, mut c: CurveSpec) -> Result<CurveSpec> {
    let (a, b, n) = (e.take::<f64>("curve.a")?, e.take::<f64>("curve.b")?, e.take::<u32>("curve.n")?);
    let r = e.take::<f64>("curve.r")?;
    match &mut c.shape {
        CurveShape::CosinePerturbed { a: ca, b: cb, n: cn } => {
            *ca = a.unwrap_or(*ca);
            *cb = b.unwrap_or(*cb);
            *cn = n.unwrap_or(*cn);
        }
        CurveShape::MFoldCircle { r: cr } => *cr = r.unwrap_or(*cr),
        CurveShape::FromSamples(_) => {}
    }
    Ok(c)
}
