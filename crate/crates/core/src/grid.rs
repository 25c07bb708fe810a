//! Periodic calculus on the normal-angle circle `I = R / 2mπZ`.
//!
//! Every field is sampled at `N` equispaced nodes `θ_j = jΔθ`, `Δθ = 2mπ/N`,
//! with no duplicated endpoint. Derivatives and the inverse of `w + w_θθ` are
//! computed by Fourier collocation: mode `j` of the discrete transform carries
//! the wavenumber `j/m`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Smallest admissible sample count.
pub const MIN_SAMPLES: usize = 16;

/// Default relative tolerance on frequency-1 content in [`invert_helmholtz`].
pub const DEFAULT_RESONANCE_TOL: f64 = 1e-8;

/// Uniform grid on `[0, 2mπ)` together with cached transform plans.
///
/// Cloning is cheap; the plans and wavenumber table are shared.
#[derive(Clone)]
pub struct PeriodicGrid {
    m: u32,
    n: usize,
    dtheta: f64,
    wavenumbers: Arc<[f64]>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for PeriodicGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicGrid")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("dtheta", &self.dtheta)
            .finish()
    }
}

impl PartialEq for PeriodicGrid {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n
    }
}

impl PeriodicGrid {
    /// Builds the grid for turning number `m` with `n` samples.
    ///
    /// Requires `m ≥ 1`, `n` even and `n ≥ 16`.
    pub fn new(m: u32, n: usize) -> Result<Self> {
        Self::with_min_samples(m, n, MIN_SAMPLES)
    }

    pub(crate) fn with_min_samples(m: u32, n: usize, min_samples: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidGrid(format!("turning number must be ≥ 1, got {m}")));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidGrid(format!("sample count must be even, got {n}")));
        }
        if n < min_samples {
            return Err(Error::InvalidGrid(format!(
                "sample count must be ≥ {min_samples}, got {n}"
            )));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let mf = f64::from(m);
        let wavenumbers: Arc<[f64]> = (0..n)
            .map(|idx| signed_index(idx, n) as f64 / mf)
            .collect();
        Ok(Self {
            m,
            n,
            dtheta: 2.0 * PI * mf / n as f64,
            wavenumbers,
            forward,
            inverse,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    /// Length of the periodic domain, `2mπ`.
    pub fn period(&self) -> f64 {
        2.0 * PI * f64::from(self.m)
    }

    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * self.dtheta
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.theta(j)).collect()
    }

    /// Wavenumber `j/m` attached to transform bin `idx`. The Nyquist bin
    /// carries `+N/(2m)`.
    pub fn wavenumber(&self, idx: usize) -> f64 {
        self.wavenumbers[idx]
    }

    /// Samples `f` at the grid nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> PeriodicField {
        PeriodicField {
            grid: self.clone(),
            values: (0..self.n).map(|j| f(self.theta(j))).collect(),
        }
    }

    /// Normalized Fourier coefficients `c_j` with `f(θ) = Σ c_j e^{i j θ / m}`.
    pub fn coefficients(&self, values: &[f64]) -> Vec<Complex64> {
        debug_assert_eq!(values.len(), self.n);
        let mut buf: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        for c in &mut buf {
            *c *= scale;
        }
        buf
    }

    /// Inverse of [`coefficients`](Self::coefficients), keeping the real part.
    pub fn synthesize(&self, coeffs: &[Complex64]) -> Vec<f64> {
        debug_assert_eq!(coeffs.len(), self.n);
        let mut buf = coeffs.to_vec();
        self.inverse.process(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Spectral derivative of raw samples. The first derivative of the
    /// Nyquist mode is zero; the second derivative keeps it.
    pub fn derivative(&self, values: &[f64], order: u32) -> Vec<f64> {
        let mut coeffs = self.coefficients(values);
        let nyquist = self.n / 2;
        for (idx, c) in coeffs.iter_mut().enumerate() {
            let k = self.wavenumbers[idx];
            *c = match order {
                0 => *c,
                1 if idx == nyquist => Complex64::new(0.0, 0.0),
                1 => *c * Complex64::new(0.0, k),
                2 => *c * (-k * k),
                _ => unreachable!("derivative order must be 0, 1 or 2"),
            };
        }
        let mut buf = coeffs;
        self.inverse.process(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Trapezoid rule `Δθ Σ f_j`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.dtheta * values.iter().sum::<f64>()
    }

    /// Evaluates the trigonometric interpolant of `values` at an arbitrary angle.
    pub fn interpolate(&self, values: &[f64], theta: f64) -> f64 {
        let coeffs = self.coefficients(values);
        let nyquist = self.n / 2;
        coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                let k = self.wavenumbers[idx];
                let phase = Complex64::from_polar(1.0, k * theta);
                if idx == nyquist {
                    // split the Nyquist bin evenly between ±k
                    c.re * (k * theta).cos()
                } else {
                    (c * phase).re
                }
            })
            .sum()
    }

    /// Index of the transform bin holding wavenumber `+1`, if resolved.
    pub fn resonant_bin(&self) -> Option<usize> {
        let m = self.m as usize;
        (m <= self.n / 2).then_some(m)
    }
}

fn signed_index(idx: usize, n: usize) -> i64 {
    if idx <= n / 2 {
        idx as i64
    } else {
        idx as i64 - n as i64
    }
}

/// Real samples of a periodic function on a [`PeriodicGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicField {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl PeriodicField {
    /// Wraps `values`, which must have exactly `grid.len()` finite entries.
    pub fn new(grid: &PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        check_finite("field", &values)?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub(crate) fn from_parts(grid: &PeriodicGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> PeriodicField {
        Self::from_parts(&self.grid, self.values.iter().map(|&x| f(x)).collect())
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

pub(crate) fn check_finite(what: &'static str, values: &[f64]) -> Result<()> {
    match values.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite { what, index }),
        None => Ok(()),
    }
}

/// Builds the grid for turning number `m` with `n` samples.
pub fn build_grid(m: u32, n: usize) -> Result<PeriodicGrid> {
    PeriodicGrid::new(m, n)
}

/// Spectral θ-derivative of order 1 or 2.
pub fn differentiate(f: &PeriodicField, order: u32) -> Result<PeriodicField> {
    if !(1..=2).contains(&order) {
        return Err(Error::Spec(format!("derivative order must be 1 or 2, got {order}")));
    }
    check_finite("differentiate input", f.values())?;
    let grid = f.grid();
    Ok(PeriodicField::from_parts(grid, grid.derivative(f.values(), order)))
}

/// `∫_I f dθ` by the periodic trapezoid rule.
pub fn integrate_periodic(f: &PeriodicField) -> Result<f64> {
    check_finite("integrand", f.values())?;
    Ok(f.grid().integrate(f.values()))
}

/// Solves `w + w_θθ = f` on the circle.
///
/// The kernel of `1 + ∂²` is spanned by the wavenumber-1 modes; their
/// coefficients in `f` must be at most `resonance_tol` times the ℓ² norm of
/// the coefficient vector, and they are set to zero in `w`.
pub fn invert_helmholtz(f: &PeriodicField, resonance_tol: f64) -> Result<PeriodicField> {
    check_finite("helmholtz source", f.values())?;
    let grid = f.grid();
    let mut coeffs = grid.coefficients(f.values());
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let resonant = resonant_magnitude(grid, &coeffs);
    let ratio = if norm > 0.0 { resonant / norm } else { 0.0 };
    if ratio > resonance_tol {
        return Err(Error::Resonance {
            ratio,
            tol: resonance_tol,
        });
    }
    let n = grid.len();
    for (idx, c) in coeffs.iter_mut().enumerate() {
        let j = signed_index(idx, n);
        if j.unsigned_abs() == u64::from(grid.m()) {
            *c = Complex64::new(0.0, 0.0);
        } else {
            let k = grid.wavenumber(idx);
            *c /= 1.0 - k * k;
        }
    }
    Ok(PeriodicField::from_parts(grid, grid.synthesize(&coeffs)))
}

/// Largest magnitude among the wavenumber ±1 coefficients.
pub(crate) fn resonant_magnitude(grid: &PeriodicGrid, coeffs: &[Complex64]) -> f64 {
    let n = grid.len();
    let m = grid.m() as usize;
    if m > n / 2 {
        return 0.0;
    }
    coeffs[m].norm().max(coeffs[(n - m) % n].norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
    }

    #[test]
    fn small_grid_nodes() {
        let g = PeriodicGrid::with_min_samples(1, 4, 2).unwrap();
        let expect = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        for (t, e) in g.thetas().iter().zip(expect) {
            assert_relative_eq!(*t, e, epsilon = 1e-15);
        }
        assert_relative_eq!(g.dtheta(), PI / 2.0);
    }

    #[test]
    fn grid_spacing_and_closure() {
        let g = build_grid(2, 512).unwrap();
        assert_relative_eq!(g.dtheta(), 4.0 * PI / 512.0);
        assert_eq!(g.theta(0), 0.0);
        assert_relative_eq!(g.theta(511) + g.dtheta(), 4.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(matches!(build_grid(2, 511), Err(Error::InvalidGrid(_))));
        assert!(matches!(build_grid(2, 8), Err(Error::InvalidGrid(_))));
        assert!(matches!(build_grid(0, 64), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn derivative_of_resolved_modes() {
        let g = build_grid(1, 64).unwrap();
        let d = differentiate(&g.sample(f64::sin), 1).unwrap();
        let cos: Vec<f64> = g.thetas().iter().map(|t| t.cos()).collect();
        assert!(max_abs_diff(d.values(), &cos) < 1e-13);

        let d2 = differentiate(&g.sample(|t| (2.0 * t).cos()), 2).unwrap();
        let expect: Vec<f64> = g.thetas().iter().map(|t| -4.0 * (2.0 * t).cos()).collect();
        assert!(max_abs_diff(d2.values(), &expect) < 1e-12);
    }

    #[test]
    fn derivative_of_fractional_wavenumber() {
        let g = build_grid(2, 64).unwrap();
        let d = differentiate(&g.sample(|t| (2.5 * t).cos()), 1).unwrap();
        let expect: Vec<f64> = g.thetas().iter().map(|t| -2.5 * (2.5 * t).sin()).collect();
        assert!(max_abs_diff(d.values(), &expect) < 1e-12);
    }

    #[test]
    fn nyquist_first_derivative_vanishes() {
        let g = build_grid(1, 16).unwrap();
        let f = g.sample(|t| (8.0 * t).cos());
        let d = differentiate(&f, 1).unwrap();
        assert!(d.sup_norm() < 1e-12);
        let d2 = differentiate(&f, 2).unwrap();
        assert_relative_eq!(d2.values()[0], -64.0, epsilon = 1e-10);
    }

    #[test]
    fn differentiate_rejects_non_finite() {
        let g = build_grid(1, 16).unwrap();
        let mut v = vec![0.0; 16];
        v[3] = f64::NAN;
        let f = PeriodicField::from_parts(&g, v);
        assert!(matches!(differentiate(&f, 1), Err(Error::NonFinite { index: 3, .. })));
        assert!(PeriodicField::new(&g, vec![f64::INFINITY; 16]).is_err());
        assert!(PeriodicField::new(&g, vec![0.0; 15]).is_err());
    }

    #[test]
    fn quadrature_examples() {
        let g3 = build_grid(3, 64).unwrap();
        assert_relative_eq!(integrate_periodic(&g3.sample(|_| 1.0)).unwrap(), 6.0 * PI, epsilon = 1e-12);
        let g2 = build_grid(2, 64).unwrap();
        assert!(integrate_periodic(&g2.sample(|t| (2.5 * t).cos())).unwrap().abs() < 1e-13);
        assert_relative_eq!(
            integrate_periodic(&g2.sample(|t| (2.5 * t).cos().powi(2))).unwrap(),
            2.0 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn helmholtz_examples() {
        let g = build_grid(2, 64).unwrap();
        let w = invert_helmholtz(&g.sample(|_| 3.0), DEFAULT_RESONANCE_TOL).unwrap();
        assert!(w.values().iter().all(|x| (x - 3.0).abs() < 1e-13));

        let k = 2.5;
        let w = invert_helmholtz(&g.sample(|t| (k * t).cos()), DEFAULT_RESONANCE_TOL).unwrap();
        let expect: Vec<f64> = g.thetas().iter().map(|t| (k * t).cos() / (1.0 - k * k)).collect();
        assert!(max_abs_diff(w.values(), &expect) < 1e-13);

        let err = invert_helmholtz(&g.sample(f64::cos), DEFAULT_RESONANCE_TOL).unwrap_err();
        assert!(matches!(err, Error::Resonance { .. }));
    }

    #[test]
    fn spectral_convergence_on_analytic_function() {
        let m = 2u32;
        let mf = f64::from(m);
        let err_at = |n: usize| {
            let g = build_grid(m, n).unwrap();
            let f = g.sample(|t| (t / mf).cos().exp());
            let d = differentiate(&f, 1).unwrap();
            let exact: Vec<f64> = g
                .thetas()
                .iter()
                .map(|t| -(t / mf).sin() / mf * (t / mf).cos().exp())
                .collect();
            max_abs_diff(d.values(), &exact)
        };
        // N = 16 is coarse enough that truncation dominates round-off.
        let (e16, e32) = (err_at(16), err_at(32));
        assert!(e16 > 1e-10);
        let order = (e16 / e32.max(1e-300)).log2();
        assert!(order >= 6.0, "observed order {order} (e16 = {e16:e}, e32 = {e32:e})");
        // N = 64 is already at machine precision.
        assert!(err_at(64) < 1e-13);
    }

    #[test]
    fn interpolation_matches_closed_form() {
        let g = build_grid(3, 64).unwrap();
        let f = g.sample(|t| 1.0 + 0.3 * (4.0 * t / 3.0).cos());
        let th = 0.123;
        assert_relative_eq!(g.interpolate(f.values(), th), 1.0 + 0.3 * (4.0 * th / 3.0).cos(), epsilon = 1e-13);
    }
}
