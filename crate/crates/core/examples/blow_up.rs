//! A curve with negative algebraic area under the area-preserving flow:
//! the curvature blows up in finite time.

use curveflow::curve::{self, FlowKind, FlowParams};
use curveflow::flow::{self, StepControl, Verdict};
use curveflow::CurveSpec;

fn main() -> curveflow::Result<()> {
    let s0 = curve::generate_support(&CurveSpec::cosine(0.35, 1.0, 8, 7), 512)?;
    let g0 = curve::geometry(&s0);
    println!("m = 7, A₀ = {:.6}, kappa_max(0) = {:.4}", g0.area, g0.kappa_max);

    let params = FlowParams::new(1.0, 7, FlowKind::AreaPreserving)?;
    let out = flow::run(&s0, &params, &StepControl::new(1.0), 1e-3)?;
    for d in out.series.iter().rev().take(8).rev() {
        println!(
            "t = {:.8}  dt = {:.3e}  kappa_max = {:.4e}  L = {:.6}  A = {:.12}",
            d.t, d.dt, d.kappa_max, d.length, d.area
        );
    }
    if let Verdict::BlowUp { t_stop, kappa_max, witness } = out.verdict {
        println!("blow-up at t ≈ {t_stop:.6} with kappa_max = {kappa_max:.3e} ({witness:?})");
    } else {
        println!("verdict: {:?}", out.verdict);
    }
    Ok(())
}
