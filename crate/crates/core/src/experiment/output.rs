//! Run artifacts: CSV time series, JSON-lines snapshots, SVG renders.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::{self, FlowKind, FlowParams, SupportState};
use crate::diagnostics::Diagnostics;
use crate::error::{Error, Result};
use crate::grid::{PeriodicField, PeriodicGrid};

pub const TIMESERIES_HEADER: &str = "t,dt,L,A,lambda,kappa_min,kappa_max,E,F_int,psi_max,h_min,h_max,h_ratio,isop_gap,rado_gap,convexity_margin";

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

pub fn timeseries_csv(series: &[Diagnostics]) -> String {
    let mut out = String::with_capacity(256 * (series.len() + 1));
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for d in series {
        let row = [
            d.t,
            d.dt,
            d.length,
            d.area,
            d.lambda,
            d.kappa_min,
            d.kappa_max,
            d.energy,
            d.f_int,
            d.psi_max,
            d.h_min,
            d.h_max,
            d.h_ratio,
            d.isop_gap,
            d.rado_gap,
            d.convexity_margin,
        ];
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x:.16e}");
        }
        out.push('\n');
    }
    out
}

pub fn write_timeseries(series: &[Diagnostics], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, timeseries_csv(series)).map_err(|e| Error::io(path, e))
}

/// One line of `snapshots.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRecord {
    pub t: f64,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub kind: FlowKind,
    pub h: Vec<f64>,
}

impl SnapshotRecord {
    pub fn new(s: &SupportState, params: &FlowParams) -> Self {
        Self {
            t: s.t(),
            m: s.grid().m(),
            n: s.grid().len(),
            alpha: params.alpha,
            kind: params.kind,
            h: s.h().values().to_vec(),
        }
    }

    pub fn params(&self) -> Result<FlowParams> {
        FlowParams::new(self.alpha, self.m, self.kind)
    }

    pub fn to_state(&self) -> Result<SupportState> {
        let grid = PeriodicGrid::new(self.m, self.n)?;
        SupportState::new(PeriodicField::new(&grid, self.h.clone())?, self.t)
    }
}

pub fn write_snapshots(states: &[SupportState], params: &FlowParams, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    for s in states {
        serde_json::to_writer(&mut w, &SnapshotRecord::new(s, params))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_snapshots(path: impl AsRef<Path>) -> Result<Vec<SnapshotRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// SVG document for the curve of `s`: one closed stroked path, no fill.
pub fn svg_document(s: &SupportState) -> String {
    let pts = curve::reconstruct_points(s);
    let g = curve::geometry(s);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for [x, y] in &pts {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        // SVG's y axis points down
        y0 = y0.min(-y);
        y1 = y1.max(-y);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = 0.05 * size;
    let (vx, vy, vw, vh) = (x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = 0.004 * size;

    let mut d = String::with_capacity(pts.len() * 40);
    for (i, [x, y]) in pts.iter().enumerate() {
        let _ = write!(d, "{}{:.9} {:.9} ", if i == 0 { "M" } else { "L" }, x, -y);
    }
    d.push('Z');

    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{vx:.9} {vy:.9} {vw:.9} {vh:.9}\" width=\"600\" height=\"{height:.0}\">\n\
         <title>t = {t:.6e}, L = {l:.6e}, A = {a:.6e}, kappa_min = {kmin:.6e}, kappa_max = {kmax:.6e}</title>\n\
         <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke:.6e}\" stroke-linejoin=\"round\"/>\n\
         </svg>\n",
        height = 600.0 * vh / vw,
        t = s.t(),
        l = g.length,
        a = g.area,
        kmin = g.kappa_min,
        kmax = g.kappa_max,
    )
}

pub fn render_svg(s: &SupportState, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, svg_document(s)).map_err(|e| Error::io(path, e))
}

/// `curve_t<t>.svg` with a fixed-width time stamp.
pub fn svg_file_name(t: f64) -> String {
    format!("curve_t{t:012.6}.svg")
}
