//! Traces of Frobenius and reduction types of a curve.
//!
//!     cargo run --example ap_table -- 1,1,1,-10,-10 60

use siegel_lift::arith::primes_up_to;
use siegel_lift::modform::{reduction, CurveData};

fn main() -> siegel_lift::Result<()> {
    let mut args = std::env::args().skip(1);
    let curve = CurveData::parse(&args.next().unwrap_or_else(|| "0,-1,1,0,0".into()))?;
    let pmax: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);

    println!("E = {}, discriminant {}", curve.label(), curve.discriminant());
    println!("conductor {}", curve.conductor_or_infer()?);
    for p in primes_up_to(pmax) {
        let r = reduction(&curve, p)?;
        println!("{p:>5}  {:<9} {:>4}", r.kind, r.ap);
    }
    Ok(())
}
