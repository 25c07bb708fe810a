//! Locally convex closed curves in normal-angle form.
//!
//! A curve with turning number `m` is carried by its support function
//! `h(θ) = <X(θ), (cos θ, sin θ)>` on `I = [0, 2mπ)`; its curvature is
//! `κ = 1 / (h + h_θθ)`. The flow equations also use `v = κ^α`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{self, PeriodicField, PeriodicGrid};

/// Which global quantity the nonlocal term conserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlowKind {
    #[serde(rename = "AP")]
    AreaPreserving,
    #[serde(rename = "LP")]
    LengthPreserving,
}

impl fmt::Display for FlowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlowKind::AreaPreserving => "AP",
            FlowKind::LengthPreserving => "LP",
        })
    }
}

impl FromStr for FlowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AP" | "AREA" | "AREA-PRESERVING" => Ok(FlowKind::AreaPreserving),
            "LP" | "LENGTH" | "LENGTH-PRESERVING" => Ok(FlowKind::LengthPreserving),
            other => Err(Error::Spec(format!("unknown flow kind `{other}` (expected AP or LP)"))),
        }
    }
}

/// Exponent, turning number and flow kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub alpha: f64,
    pub m: u32,
    pub kind: FlowKind,
}

impl FlowParams {
    pub fn new(alpha: f64, m: u32, kind: FlowKind) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Spec(format!("alpha must be a positive number, got {alpha}")));
        }
        if m < 1 {
            return Err(Error::Spec("turning number must be ≥ 1".into()));
        }
        Ok(Self { alpha, m, kind })
    }

    /// `p = 1 + 1/α`, the exponent in the `v` equation.
    pub fn p(&self) -> f64 {
        1.0 + 1.0 / self.alpha
    }
}

/// Sampled support function at flow time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportState {
    h: PeriodicField,
    t: f64,
}

impl SupportState {
    /// Wraps `h`, checking that `h + h_θθ > 0` on the grid.
    pub fn new(h: PeriodicField, t: f64) -> Result<Self> {
        let state = Self { h, t };
        let margin = state.convexity_margin();
        if !(margin > 0.0) {
            return Err(Error::Convexity { margin });
        }
        Ok(state)
    }

    pub(crate) fn from_parts(h: PeriodicField, t: f64) -> Self {
        Self { h, t }
    }

    pub fn h(&self) -> &PeriodicField {
        &self.h
    }

    pub fn grid(&self) -> &PeriodicGrid {
        self.h.grid()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// Radius of curvature `h + h_θθ = 1/κ` at every node.
    pub fn radius_of_curvature(&self) -> Vec<f64> {
        let grid = self.grid();
        let hss = grid.derivative(self.h.values(), 2);
        self.h.values().iter().zip(hss).map(|(h, d)| h + d).collect()
    }

    /// `min(h + h_θθ)`; NaN if any sample is NaN.
    pub fn convexity_margin(&self) -> f64 {
        let rho = self.radius_of_curvature();
        if rho.iter().any(|x| x.is_nan()) {
            return f64::NAN;
        }
        rho.into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Curvature `κ = 1/(h + h_θθ)`; fails when local convexity is lost.
    pub fn curvature(&self) -> Result<Vec<f64>> {
        let rho = self.radius_of_curvature();
        let margin = rho.iter().copied().fold(f64::INFINITY, f64::min);
        if !(margin > 0.0) || rho.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::Convexity { margin });
        }
        Ok(rho.into_iter().map(|r| 1.0 / r).collect())
    }
}

/// `x^e` with exact shortcuts for the exponents the flows use most.
#[inline]
pub(crate) fn pow(x: f64, e: f64) -> f64 {
    if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else if e == 0.5 {
        x.sqrt()
    } else if e == 0.0 {
        1.0
    } else if e == -1.0 {
        1.0 / x
    } else if e == 1.5 {
        x * x.sqrt()
    } else if e == 3.0 {
        x * x * x
    } else if e == -0.5 {
        1.0 / x.sqrt()
    } else {
        x.powf(e)
    }
}

/// Sampled `v = κ^α` at flow time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureState {
    v: PeriodicField,
    t: f64,
}

impl CurvatureState {
    pub fn new(v: PeriodicField, t: f64) -> Result<Self> {
        let min = v.min();
        if !(min > 0.0) {
            return Err(Error::Positivity { min });
        }
        Ok(Self { v, t })
    }

    pub(crate) fn from_parts(v: PeriodicField, t: f64) -> Self {
        Self { v, t }
    }

    pub fn v(&self) -> &PeriodicField {
        &self.v
    }

    pub fn grid(&self) -> &PeriodicGrid {
        self.v.grid()
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Curvature `κ = v^{1/α}`.
    pub fn curvature(&self, alpha: f64) -> Vec<f64> {
        self.v.values().iter().map(|v| pow(*v, 1.0 / alpha)).collect()
    }
}

/// Closed-form initial curves.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveShape {
    /// Circle of radius `r` traversed `m` times.
    MFoldCircle { r: f64 },
    /// `h(θ) = a + b cos(nθ/m)`.
    CosinePerturbed { a: f64, b: f64, n: u32 },
    /// Support values on the uniform grid, no resampling.
    FromSamples(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub shape: CurveShape,
    pub m: u32,
}

impl CurveSpec {
    pub fn circle(r: f64, m: u32) -> Self {
        Self {
            shape: CurveShape::MFoldCircle { r },
            m,
        }
    }

    pub fn cosine(a: f64, b: f64, n: u32, m: u32) -> Self {
        Self {
            shape: CurveShape::CosinePerturbed { a, b, n },
            m,
        }
    }

    /// Reads the plain-text sample format: a header line `m N` followed by
    /// `N` support values.
    pub fn from_samples_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_samples(&text, &path.display().to_string())
    }

    pub fn parse_samples(text: &str, origin: &str) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing `m N` header".into()))?;
        let mut parts = header.split_whitespace();
        let m: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(hl, format!("bad turning number in header `{header}`")))?;
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(hl, format!("bad sample count in header `{header}`")))?;
        let mut values = Vec::with_capacity(n);
        for (ln, l) in lines {
            let x: f64 = l
                .parse()
                .map_err(|_| parse_err(ln, format!("cannot parse support value `{l}`")))?;
            values.push(x);
        }
        if values.len() != n {
            return Err(parse_err(hl, format!("header promises {n} values, found {}", values.len())));
        }
        Ok(Self {
            shape: CurveShape::FromSamples(values),
            m,
        })
    }

    /// Checks parameter ranges and, for the cosine family, the closed-form
    /// convexity margin `a − |b|·|1 − (n/m)²|`.
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::Spec("turning number must be ≥ 1".into()));
        }
        match &self.shape {
            CurveShape::MFoldCircle { r } => {
                if !(r.is_finite() && *r > 0.0) {
                    return Err(Error::Spec(format!("circle radius must be positive, got {r}")));
                }
            }
            CurveShape::CosinePerturbed { a, b, n } => {
                if !(a.is_finite() && *a > 0.0) {
                    return Err(Error::Spec(format!("cosine offset a must be positive, got {a}")));
                }
                if !b.is_finite() || *n < 1 {
                    return Err(Error::Spec(format!("invalid cosine mode b = {b}, n = {n}")));
                }
                let margin = self.cosine_margin().unwrap_or(*a);
                if !(margin > 0.0) {
                    return Err(Error::Convexity { margin });
                }
            }
            CurveShape::FromSamples(values) => {
                grid::check_finite("support samples", values)?;
            }
        }
        Ok(())
    }

    fn cosine_margin(&self) -> Option<f64> {
        match self.shape {
            CurveShape::CosinePerturbed { a, b, n } => {
                let k = f64::from(n) / f64::from(self.m);
                Some(a - b.abs() * (1.0 - k * k).abs())
            }
            _ => None,
        }
    }
}

/// Samples the closed form of `spec` on an `N`-point grid at `t = 0`.
pub fn generate_support(spec: &CurveSpec, n: usize) -> Result<SupportState> {
    spec.validate()?;
    let grid = PeriodicGrid::new(spec.m, n)?;
    let h = match &spec.shape {
        CurveShape::MFoldCircle { r } => grid.sample(|_| *r),
        CurveShape::CosinePerturbed { a, b, n } => {
            let k = f64::from(*n) / f64::from(spec.m);
            grid.sample(|t| a + b * (k * t).cos())
        }
        CurveShape::FromSamples(values) => PeriodicField::new(&grid, values.clone())?,
    };
    SupportState::new(h, 0.0)
}

/// `v = (h + h_θθ)^{-α}` on the same grid and time.
pub fn curvature_of(s: &SupportState, alpha: f64) -> Result<CurvatureState> {
    let kappa = s.curvature()?;
    let v = kappa.into_iter().map(|k| pow(k, alpha)).collect();
    Ok(CurvatureState::from_parts(PeriodicField::from_parts(s.grid(), v), s.t()))
}

/// Recovers the support function from `v` by inverting `h + h_θθ = v^{-1/α}`.
///
/// The translation modes of `h` are zeroed, so the curve is centred at its
/// Steiner point.
pub fn support_of(c: &CurvatureState, alpha: f64, resonance_tol: f64) -> Result<SupportState> {
    let min = c.v().min();
    if !(min > 0.0) {
        return Err(Error::Positivity { min });
    }
    let rho = c.v().map(|v| pow(v, -1.0 / alpha));
    let h = grid::invert_helmholtz(&rho, resonance_tol)?;
    Ok(SupportState::from_parts(h, c.t()))
}

/// `|∫_I κ^{-1} e^{iθ} dθ|`; zero exactly when the curvature closes a curve.
pub fn closure_defect(c: &CurvatureState, alpha: f64) -> f64 {
    let grid = c.grid();
    let sum: Complex64 = c
        .v()
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| Complex64::from_polar(pow(*v, -1.0 / alpha), grid.theta(j)))
        .sum();
    (sum * grid.dtheta()).norm()
}

/// Length, algebraic area and pointwise extremes of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub length: f64,
    pub area: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub convexity_margin: f64,
    pub h_min: f64,
    pub h_max: f64,
    /// `L² − 4mπA`, zero on an m-fold circle.
    pub isop_gap: f64,
    /// `L² − 4π|A|`, non-negative for closed immersed curves.
    pub rado_gap: f64,
}

/// `L = ∫h dθ` and `A = ½∫h(h + h_θθ) dθ`, the integrated-by-parts form of
/// `½∫(h² − h_θ²) dθ`.
pub fn length_and_area(s: &SupportState) -> (f64, f64) {
    let grid = s.grid();
    let h = s.h().values();
    let rho = s.radius_of_curvature();
    let length = grid.integrate(h);
    let area = 0.5 * grid.dtheta() * h.iter().zip(&rho).map(|(a, b)| a * b).sum::<f64>();
    (length, area)
}

pub fn geometry(s: &SupportState) -> GeometrySummary {
    let (length, area) = length_and_area(s);
    let rho = s.radius_of_curvature();
    let rho_min = rho.iter().copied().fold(f64::INFINITY, f64::min);
    let rho_max = rho.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let m = f64::from(s.grid().m());
    let pi = std::f64::consts::PI;
    GeometrySummary {
        length,
        area,
        kappa_min: 1.0 / rho_max,
        kappa_max: 1.0 / rho_min,
        convexity_margin: rho_min,
        h_min: s.h().min(),
        h_max: s.h().max(),
        isop_gap: length * length - 4.0 * m * pi * area,
        rado_gap: length * length - 4.0 * pi * area.abs(),
    }
}

/// Plane points `X = h u + h_θ u⊥` with `u = (cos θ, sin θ)` at each node.
pub fn reconstruct_points(s: &SupportState) -> Vec<[f64; 2]> {
    let grid = s.grid();
    let h = s.h().values();
    let hs = grid.derivative(h, 1);
    (0..grid.len())
        .map(|j| {
            let (sin, cos) = grid.theta(j).sin_cos();
            [h[j] * cos - hs[j] * sin, h[j] * sin + hs[j] * cos]
        })
        .collect()
}

/// Shape class of a rotationally symmetric curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveClass {
    /// n-fold symmetric with `n > 2m`.
    HighlySymmetric,
    /// n-fold symmetric with `m < n < 2m` and monotone support on `(0, mπ/n)`.
    AbreschLangerType,
    Unclassified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    /// Largest `n` with `h(θ + 2mπ/n) = h(θ)`; `None` for a circle.
    pub symmetry_order: Option<u32>,
    pub coprime: bool,
    pub class: CurveClass,
    /// Evaluated only when `m < n < 2m`.
    pub property_p: Option<bool>,
}

/// Relative tolerance on Fourier content used for symmetry decisions.
pub const SYMMETRY_TOL: f64 = 1e-8;
/// Relative tolerance on the sign of `h_θ` and `κ_θ` in the monotone window.
pub const MONOTONE_TOL: f64 = 1e-10;

/// Detects the symmetry order from the spectrum of `h`: the gcd of the
/// indices of every significant non-translation mode.
pub fn symmetry_order(s: &SupportState) -> Option<u32> {
    let grid = s.grid();
    let coeffs = grid.coefficients(s.h().values());
    let scale = s.h().sup_norm();
    let m = grid.m() as usize;
    let mut order = 0usize;
    for (j, c) in coeffs.iter().enumerate().take(grid.len() / 2 + 1).skip(1) {
        if j == m {
            continue;
        }
        if c.norm() > SYMMETRY_TOL * scale {
            order = gcd(order, j);
        }
    }
    (order > 0).then_some(order as u32)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Field is even about `axis`: every coefficient rotated to the axis is real.
fn is_even_about(grid: &PeriodicGrid, values: &[f64], axis: f64, scale: f64) -> bool {
    grid.coefficients(values).iter().enumerate().all(|(idx, c)| {
        let rotated = c * Complex64::from_polar(1.0, grid.wavenumber(idx) * axis);
        rotated.im.abs() <= SYMMETRY_TOL * scale
    })
}

/// Property (P) for symmetry order `n`: `h` and `κ` even about `0` and
/// `mπ/n`, non-increasing on `(0, mπ/n)`, and `h(mπ/n) > 0`.
pub fn property_p(s: &SupportState, n: u32) -> bool {
    let Ok(kappa) = s.curvature() else {
        return false;
    };
    let grid = s.grid();
    let h = s.h().values();
    let window = std::f64::consts::PI * f64::from(grid.m()) / f64::from(n);
    let h_scale = s.h().sup_norm();
    let k_scale = kappa.iter().copied().fold(0.0, f64::max);

    for (values, scale) in [(h, h_scale), (kappa.as_slice(), k_scale)] {
        if !is_even_about(grid, values, 0.0, scale) || !is_even_about(grid, values, window, scale) {
            return false;
        }
    }
    let hs = grid.derivative(h, 1);
    let ks = grid.derivative(&kappa, 1);
    let inside = (1..grid.len()).take_while(|&j| grid.theta(j) < window - 1e-12 * window);
    for j in inside {
        if hs[j] > MONOTONE_TOL * h_scale || ks[j] > MONOTONE_TOL * k_scale {
            return false;
        }
    }
    grid.interpolate(h, window) > 0.0
}

/// Detects the symmetry order and assigns a class label.
pub fn classify(s: &SupportState) -> ClassReport {
    classify_with_order(s, symmetry_order(s))
}

/// Classifies with a caller-supplied symmetry order.
pub fn classify_with_order(s: &SupportState, order: Option<u32>) -> ClassReport {
    let m = s.grid().m();
    let Some(n) = order else {
        return ClassReport {
            symmetry_order: None,
            coprime: false,
            class: CurveClass::Unclassified,
            property_p: None,
        };
    };
    let coprime = gcd(m as usize, n as usize) == 1;
    let property = (m < n && n < 2 * m).then(|| property_p(s, n));
    let class = if coprime && n > 2 * m {
        CurveClass::HighlySymmetric
    } else if coprime && property == Some(true) {
        CurveClass::AbreschLangerType
    } else {
        CurveClass::Unclassified
    };
    ClassReport {
        symmetry_order: Some(n),
        coprime,
        class,
        property_p: property,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::DEFAULT_RESONANCE_TOL;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn h25() -> SupportState {
        generate_support(&CurveSpec::cosine(1.0, 0.12, 5, 2), 256).unwrap()
    }

    #[test]
    fn circle_generation_and_curvature() {
        let s = generate_support(&CurveSpec::circle(2.0, 3), 64).unwrap();
        assert!(s.h().values().iter().all(|&h| h == 2.0));
        let c = curvature_of(&s, 1.5).unwrap();
        for v in c.v().values() {
            assert_relative_eq!(*v, 2f64.powf(-1.5), epsilon = 1e-13);
        }
        let back = support_of(&c, 1.5, DEFAULT_RESONANCE_TOL).unwrap();
        for h in back.h().values() {
            assert_relative_eq!(*h, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn cosine_preset_values() {
        let s = h25();
        assert_relative_eq!(s.h().values()[0], 1.12, epsilon = 1e-15);
        assert_relative_eq!(s.convexity_margin(), 0.37, epsilon = 1e-12);
        let k = s.curvature().unwrap();
        assert_relative_eq!(k[0], 1.0 / 0.37, epsilon = 1e-11);
        assert_relative_eq!(k[0], 2.7027, epsilon = 1e-4);
    }

    #[test]
    fn cosine_curvature_at_antinode() {
        // N = 320 puts a node at θ = 2π/5 where cos(5θ/2) = −1.
        let s = generate_support(&CurveSpec::cosine(1.0, 0.12, 5, 2), 320).unwrap();
        let k = s.curvature().unwrap();
        assert_relative_eq!(k[32], 1.0 / 1.63, epsilon = 1e-12);
        assert_relative_eq!(1.0 / 1.63, 0.61350, epsilon = 1e-5);
    }

    #[test]
    fn convexity_violations_rejected() {
        let err = generate_support(&CurveSpec::cosine(1.0, 0.5, 5, 2), 256).unwrap_err();
        assert!(matches!(err, Error::Convexity { .. }));
        assert!(matches!(
            generate_support(&CurveSpec::circle(-1.0, 1), 64),
            Err(Error::Spec(_))
        ));
        assert!(matches!(
            generate_support(&CurveSpec::cosine(0.0, 0.0, 3, 1), 64),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn samples_must_match_grid() {
        let spec = CurveSpec {
            shape: CurveShape::FromSamples(vec![1.0; 30]),
            m: 1,
        };
        assert!(matches!(generate_support(&spec, 32), Err(Error::LengthMismatch { .. })));
        assert!(generate_support(&spec, 30).is_ok());
    }

    #[test]
    fn sample_file_format() {
        assert!(CurveSpec::parse_samples("2 16\n", "x").is_err());
        let body: String = std::iter::once("1 16".to_string())
            .chain((0..16).map(|_| "1.5".to_string()))
            .collect::<Vec<_>>()
            .join("\n");
        let spec = CurveSpec::parse_samples(&body, "mem").unwrap();
        assert_eq!(spec.m, 1);
        let err = CurveSpec::parse_samples("1 16\n1.0\nfoo\n", "mem").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn round_trip_through_curvature() {
        let s = h25();
        for alpha in [0.5, 1.0, 2.0] {
            let c = curvature_of(&s, alpha).unwrap();
            let back = support_of(&c, alpha, DEFAULT_RESONANCE_TOL).unwrap();
            let err = s
                .h()
                .values()
                .iter()
                .zip(back.h().values())
                .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
            assert!(err < 1e-10, "alpha {alpha}: {err:e}");
        }
    }

    #[test]
    fn resonant_curvature_rejected() {
        let grid = PeriodicGrid::new(1, 64).unwrap();
        let v = grid.sample(|t| 1.0 / (1.0 + 0.1 * t.cos()));
        let c = CurvatureState::new(v, 0.0).unwrap();
        assert!(matches!(
            support_of(&c, 1.0, DEFAULT_RESONANCE_TOL),
            Err(Error::Resonance { .. })
        ));
        let defect = closure_defect(&c, 1.0);
        assert_relative_eq!(defect, 0.1 * PI, epsilon = 1e-12);
        assert!(defect > 1e-3);
    }

    #[test]
    fn closure_of_symmetric_states() {
        let c = curvature_of(&generate_support(&CurveSpec::circle(1.0, 2), 64).unwrap(), 1.0).unwrap();
        assert!(closure_defect(&c, 1.0) < 1e-12);
        let c = curvature_of(&h25(), 2.0).unwrap();
        assert!(closure_defect(&c, 2.0) < 1e-12);
    }

    #[test]
    fn geometry_of_circle() {
        let s = generate_support(&CurveSpec::circle(1.5, 3), 64).unwrap();
        let g = geometry(&s);
        assert_relative_eq!(g.length, 2.0 * 3.0 * PI * 1.5, epsilon = 1e-12);
        assert_relative_eq!(g.area, 3.0 * PI * 1.5 * 1.5, epsilon = 1e-12);
        assert!(g.isop_gap.abs() < 1e-10);
        assert_relative_eq!(g.kappa_max, 1.0 / 1.5, epsilon = 1e-12);
    }

    #[test]
    fn negative_area_preset() {
        let s = generate_support(&CurveSpec::cosine(0.35, 1.0, 8, 7), 256).unwrap();
        let g = geometry(&s);
        assert!(g.area < 0.0);
        assert_relative_eq!(g.area, -0.672, epsilon = 1e-3);
        assert!(g.rado_gap > 0.0);
    }

    #[test]
    fn reconstruction() {
        let s = h25();
        let pts = reconstruct_points(&s);
        assert_relative_eq!(pts[0][0], 1.12, epsilon = 1e-14);
        assert!(pts[0][1].abs() < 1e-13);

        let c = generate_support(&CurveSpec::circle(2.0, 3), 48).unwrap();
        for (j, p) in reconstruct_points(&c).iter().enumerate() {
            assert_relative_eq!(p[0].hypot(p[1]), 2.0, epsilon = 1e-13);
            let ang = c.grid().theta(j);
            assert_relative_eq!(p[0], 2.0 * ang.cos(), epsilon = 1e-13);
        }
    }

    #[test]
    fn class_labels() {
        let r = classify(&h25());
        assert_eq!(r.symmetry_order, Some(5));
        assert!(r.coprime);
        assert_eq!(r.class, CurveClass::HighlySymmetric);

        let a34 = generate_support(&CurveSpec::cosine(1.0, 0.5, 4, 3), 384).unwrap();
        let r = classify(&a34);
        assert_eq!(r.symmetry_order, Some(4));
        assert_eq!(r.property_p, Some(true));
        assert_eq!(r.class, CurveClass::AbreschLangerType);

        let e32 = generate_support(&CurveSpec::cosine(1.0, 0.3, 2, 3), 384).unwrap();
        let r = classify(&e32);
        assert_eq!(r.symmetry_order, Some(2));
        assert_eq!(r.class, CurveClass::Unclassified);

        let circle = generate_support(&CurveSpec::circle(1.0, 3), 64).unwrap();
        assert_eq!(classify(&circle).symmetry_order, None);
    }

    #[test]
    fn property_p_fails_for_shifted_profile() {
        // Rotated by a quarter period: no longer even about 0.
        let g = PeriodicGrid::new(3, 384).unwrap();
        let h = g.sample(|t| 1.0 + 0.5 * (4.0 * t / 3.0 + 0.7).cos());
        let s = SupportState::new(h, 0.0).unwrap();
        assert!(!property_p(&s, 4));
        assert_eq!(classify(&s).class, CurveClass::Unclassified);
    }

    #[test]
    fn flow_kind_parsing() {
        assert_eq!("ap".parse::<FlowKind>().unwrap(), FlowKind::AreaPreserving);
        assert_eq!("LP".parse::<FlowKind>().unwrap(), FlowKind::LengthPreserving);
        assert!("XP".parse::<FlowKind>().is_err());
        assert!(FlowParams::new(0.0, 1, FlowKind::AreaPreserving).is_err());
        assert_relative_eq!(FlowParams::new(0.5, 1, FlowKind::AreaPreserving).unwrap().p(), 3.0);
    }
}
