//! Initial curves, geometry and the symmetry classification of the preset catalog.

use curveflow::curve::{self, CurveShape};
use curveflow::experiment::{list_presets, presets::cosine_area};

fn main() -> curveflow::Result<()> {
    println!(
        "{:16} {:>4} {:>4} {:>12} {:>12} {:>10} {:>10}  class",
        "preset", "m", "n", "L", "A", "kappa_min", "kappa_max"
    );
    for p in list_presets() {
        let s = curve::generate_support(&p.curve, 512)?;
        let g = curve::geometry(&s);
        let c = curve::classify(&s);
        let n = c.symmetry_order.map_or("-".to_string(), |n| n.to_string());
        println!(
            "{:16} {:>4} {:>4} {:>12.8} {:>12.8} {:>10.6} {:>10.6}  {:?} (P: {:?})",
            p.name, p.curve.m, n, g.length, g.area, g.kappa_min, g.kappa_max, c.class, c.property_p
        );
        if let CurveShape::CosinePerturbed { a, b, n } = p.curve.shape {
            let closed = cosine_area(a, b, n, p.curve.m);
            assert!((closed - g.area).abs() <= 1e-10 * closed.abs().max(1.0));
        }
    }

    // a shifted copy is the same shape
    let s = curve::generate_support(&curveflow::CurveSpec::cosine(1.0, 0.12, 5, 2), 128)?;
    let pts = curve::reconstruct_points(&s);
    println!("\nfirst reconstructed points of ap-h25: {:?}", &pts[..3]);
    Ok(())
}
