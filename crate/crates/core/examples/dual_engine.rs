//! The support-function and curvature-power formulations evolve the same
//! curve; their curvatures agree to round-off once the time step resolves
//! the dynamics.

use curveflow::curve::{self, FlowKind, FlowParams};
use curveflow::flow;
use curveflow::CurveSpec;

fn discrepancy(n: usize, dt: f64, t_end: f64) -> curveflow::Result<f64> {
    let params = FlowParams::new(1.0, 2, FlowKind::AreaPreserving)?;
    let mut s = curve::generate_support(&CurveSpec::cosine(1.0, 0.12, 5, 2), n)?;
    let mut c = curve::curvature_of(&s, 1.0)?;
    for _ in 0..(t_end / dt).round() as usize {
        s = flow::advance_by(&s, &params, dt)?;
        c = flow::advance_curvature_by(&c, &params, dt)?;
    }
    let k1 = s.curvature()?;
    let k2 = c.curvature(1.0);
    Ok(k1.iter().zip(&k2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

fn main() -> curveflow::Result<()> {
    for (n, dt) in [(64, 4e-4), (128, 2e-4), (256, 1e-4), (512, 2.5e-5)] {
        println!("N = {n:4}  dt = {dt:.2e}  max |κ_h − κ_v| at t = 0.1: {:.3e}", discrepancy(n, dt, 0.1)?);
    }
    Ok(())
}
