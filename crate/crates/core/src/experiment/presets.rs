//! Named scenarios, one per clause of the convergence and blow-up results.

use std::f64::consts::PI;

use crate::curve::{CurveSpec, FlowKind};
use crate::error::{Error, Result};
use crate::flow::VerdictKind;

/// Default flow exponents each preset is run with.
pub const DEFAULT_ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

/// What a run is expected to end in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Verdict(VerdictKind),
    /// No verdict is predicted; the run always counts as a match.
    Explore,
}

impl Expected {
    pub fn matches(&self, kind: VerdictKind) -> bool {
        match self {
            Expected::Verdict(v) => *v == kind,
            Expected::Explore => true,
        }
    }
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Verdict(v) => write!(f, "{v}"),
            Expected::Explore => f.write_str("explore"),
        }
    }
}

impl std::str::FromStr for Expected {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("explore") {
            Ok(Expected::Explore)
        } else {
            s.parse().map(Expected::Verdict)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    /// The statement the preset exercises.
    pub clause: &'static str,
    pub curve: CurveSpec,
    pub kind: FlowKind,
    pub expected: Expected,
    pub alphas: Vec<f64>,
    pub grid_size: usize,
    pub t_end: f64,
}

/// Closed-form algebraic area of `a + b cos(nθ/m)`:
/// `mπ [a² + (b²/2)(1 − (n/m)²)]`.
pub fn cosine_area(a: f64, b: f64, n: u32, m: u32) -> f64 {
    let k = f64::from(n) / f64::from(m);
    f64::from(m) * PI * (a * a + 0.5 * b * b * (1.0 - k * k))
}

/// The offset `a` on `(lo, hi)` where the cosine curve has zero area, by bisection.
pub fn zero_area_offset(b: f64, n: u32, m: u32, lo: f64, hi: f64) -> Result<f64> {
    let f = |a| cosine_area(a, b, n, m);
    let (mut lo, mut hi) = (lo, hi);
    if f(lo).signum() == f(hi).signum() {
        return Err(Error::Spec(format!("area does not change sign on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == f(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn list_presets() -> Vec<Preset> {
    let alphas = DEFAULT_ALPHAS.to_vec();
    let zero_a = zero_area_offset(1.0, 8, 7, 0.31, 1.0).expect("area changes sign on the bracket");
    vec![
        Preset {
            name: "ap-h25",
            clause: "AP, n > 2m: highly symmetric curves converge to an m-fold circle",
            curve: CurveSpec::cosine(1.0, 0.12, 5, 2),
            kind: FlowKind::AreaPreserving,
            expected: Expected::Verdict(VerdictKind::Converged),
            alphas: alphas.clone(),
            grid_size: 512,
            t_end: 20.0,
        },
        Preset {
            name: "ap-a34",
            clause: "AP, m < n < 2m with property (P): Abresch-Langer type curves converge",
            curve: CurveSpec::cosine(1.0, 0.5, 4, 3),
            kind: FlowKind::AreaPreserving,
            expected: Expected::Verdict(VerdictKind::Converged),
            alphas: alphas.clone(),
            grid_size: 512,
            t_end: 40.0,
        },
        Preset {
            name: "ap-negarea-78",
            clause: "AP, A(0) < 0: curvature blows up in finite time",
            curve: CurveSpec::cosine(0.35, 1.0, 8, 7),
            kind: FlowKind::AreaPreserving,
            expected: Expected::Verdict(VerdictKind::BlowUp),
            alphas: alphas.clone(),
            grid_size: 1024,
            t_end: 2.0,
        },
        Preset {
            name: "ap-zeroarea-78",
            clause: "AP, A(0) = 0: blow-up or a degenerate limit",
            curve: CurveSpec::cosine(zero_a, 1.0, 8, 7),
            kind: FlowKind::AreaPreserving,
            expected: Expected::Explore,
            alphas: alphas.clone(),
            grid_size: 1024,
            t_end: 2.0,
        },
        Preset {
            name: "lp-h25",
            clause: "LP, highly symmetric initial curve: converges to an m-fold circle",
            curve: CurveSpec::cosine(1.0, 0.12, 5, 2),
            kind: FlowKind::LengthPreserving,
            expected: Expected::Verdict(VerdictKind::Converged),
            alphas: alphas.clone(),
            grid_size: 512,
            t_end: 20.0,
        },
        Preset {
            name: "lp-eneg-32",
            clause: "LP, E(0) <= 0 with nonconstant curvature: blow-up in finite time",
            curve: CurveSpec::cosine(1.0, 0.3, 2, 3),
            kind: FlowKind::LengthPreserving,
            expected: Expected::Verdict(VerdictKind::BlowUp),
            alphas: alphas.clone(),
            grid_size: 1024,
            t_end: 20.0,
        },
        Preset {
            name: "circle-m3",
            clause: "m-fold circle is a fixed point of both flows",
            curve: CurveSpec::circle(1.0, 3),
            kind: FlowKind::AreaPreserving,
            expected: Expected::Verdict(VerdictKind::TimeLimit),
            alphas,
            grid_size: 256,
            t_end: 1.0,
        },
    ]
}

pub fn preset(name: &str) -> Result<Preset> {
    list_presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}
