//! Area-preserving flow of a highly symmetric doubly wound curve: the curve
//! converges to a double circle enclosing the initial area.

use curveflow::curve::{self, FlowKind, FlowParams};
use curveflow::flow::{self, StepControl, Verdict};
use curveflow::CurveSpec;

fn main() -> curveflow::Result<()> {
    let s0 = curve::generate_support(&CurveSpec::cosine(1.0, 0.12, 5, 2), 256)?;
    let a0 = curve::geometry(&s0).area;
    for alpha in [0.5, 1.0, 2.0] {
        let params = FlowParams::new(alpha, 2, FlowKind::AreaPreserving)?;
        let out = flow::run(&s0, &params, &StepControl::new(20.0), 1e-3)?;
        let last = out.series.last().expect("non-empty series");
        let drift = (last.area - a0).abs() / a0;
        match out.verdict {
            Verdict::Converged { r_inf } => println!(
                "alpha = {alpha}: converged at t = {:.4} after {} steps, r_inf = {r_inf:.6} (√(A₀/2π) = {:.6}), area drift {drift:.1e}",
                last.t,
                out.steps,
                (a0 / (2.0 * std::f64::consts::PI)).sqrt()
            ),
            other => println!("alpha = {alpha}: {other:?}"),
        }
    }
    Ok(())
}
