//! The length-preserving flow and its energy. A highly symmetric curve has
//! positive energy that decays to zero; a slowly modulated triple curve
//! starts with negative energy, which rules out convergence.

use curveflow::curve::{self, FlowKind, FlowParams};
use curveflow::diagnostics::{self, energy_direct, energy_spectral};
use curveflow::flow::{self, StepControl};
use curveflow::CurveSpec;

fn main() -> curveflow::Result<()> {
    let s = curve::generate_support(&CurveSpec::cosine(1.0, 0.12, 5, 2), 256)?;
    let params = FlowParams::new(1.0, 2, FlowKind::LengthPreserving)?;
    let out = flow::run(&s, &params, &StepControl::new(20.0), 1e-3)?;
    println!("lp-h25: {:?}", out.verdict);
    for d in out.series.iter().step_by(4) {
        println!("  t = {:.4}  L = {:.12}  A = {:.10}  E = {:.6e}", d.t, d.length, d.area, d.energy);
    }

    let s = curve::generate_support(&CurveSpec::cosine(1.0, 0.3, 2, 3), 256)?;
    let kappa = s.curvature()?;
    let e_direct = energy_direct(s.grid(), &kappa);
    let e_parseval = energy_spectral(s.grid(), &kappa);
    let d = diagnostics::snapshot(&s, &FlowParams::new(1.0, 3, FlowKind::LengthPreserving)?)?;
    println!("\nlp-eneg-32 at t = 0: E = {e_direct:.10} (Parseval {e_parseval:.10}), L² − 4mπA = {:.6}", d.isop_gap);
    Ok(())
}
