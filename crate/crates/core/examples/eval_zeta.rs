//! Partial sums with explicit tail bounds: zeta(2) and L(E, 2) for 11a1.

use siegel_lift::modform::{CurveData, Gl2Source};
use siegel_lift::predictor::{eval_partial, transfer_object, LObject, Transfer};

fn main() -> siegel_lift::Result<()> {
    let zeta = LObject::zeta(10_000);
    let r = eval_partial(&zeta, 2.0, 10_000)?;
    let exact = std::f64::consts::PI.powi(2) / 6.0;
    println!("zeta(2) ~ {:.10} +- {:.1e} (pi^2/6 = {exact:.10})", r.value, r.tail_bound);

    let eta = Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11))?);
    let obj = transfer_object(&eta, None, Transfer::Gl2, 10_000)?;
    for x in [100, 1_000, 10_000] {
        let r = eval_partial(&obj, 2.0, x)?;
        println!("L(E, 2), X = {x:>6}: {:.10} +- {:.3e}", r.value, r.tail_bound);
    }
    Ok(())
}
