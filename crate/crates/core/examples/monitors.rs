//! Invariant monitors on a real run and on a corrupted copy of its series.

use curveflow::curve::{self, FlowKind, FlowParams};
use curveflow::diagnostics::{self, MonitorTolerances};
use curveflow::flow::{self, StepControl};
use curveflow::CurveSpec;

fn main() -> curveflow::Result<()> {
    let s0 = curve::generate_support(&CurveSpec::cosine(1.0, 0.5, 4, 3), 256)?;
    let params = FlowParams::new(1.0, 3, FlowKind::AreaPreserving)?;
    let class = curve::classify(&s0);
    let mut opts = flow::RunOptions::new(1e-3);
    opts.symmetry_order = class.symmetry_order;
    let out = flow::run_with(&s0, &params, &StepControl::new(40.0), &opts)?;
    println!("ap-a34 ({:?}): {:?}\n", class.class, out.verdict);

    let tol = MonitorTolerances::default();
    let mut report = diagnostics::check_monotonicity(&out.series, &params, &tol);
    report.merge(diagnostics::spreading_check(&out.states, &params, 0.1)?);
    print!("{report}");

    for kind in [FlowKind::AreaPreserving, FlowKind::LengthPreserving] {
        let p = FlowParams::new(1.0, 3, kind)?;
        let (fd, exact) = diagnostics::rate_pair(&s0, &p, 1e-5)?;
        println!("\n{kind} rate: finite difference {fd:.12}, closed form {exact:.12}");
    }

    let mut broken = out.series.clone();
    let k = broken.len() / 2;
    broken[k].area *= 1.01;
    let report = diagnostics::check_monotonicity(&broken, &params, &tol);
    let c = report.get(diagnostics::AREA_CONSERVATION).expect("AP report has the area check");
    println!("\nafter a 1% area kick at sample {k}: {c}");
    Ok(())
}
