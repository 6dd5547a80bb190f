//! Prime-by-prime verification of every identity that applies to
//! 11a1 tensored with the Gaussian character of half-weight 2.

use siegel_lift::arith::primes_up_to;
use siegel_lift::heckechar::{AntiCycChar, ImagQuadField};
use siegel_lift::modform::{CurveData, Gl2Source};
use siegel_lift::predictor::{verify_range, Identity, VerifyInputs};

fn main() -> siegel_lift::Result<()> {
    let eta = Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11))?);
    let chi = AntiCycChar::new(ImagQuadField::new(-4)?, 2)?;
    let inputs = VerifyInputs {
        eta: Some(&eta),
        chi: Some(&chi),
    };
    for id in Identity::ALL {
        println!("{id:<10} {}", id.definition());
    }
    let report = verify_range(&Identity::ALL, inputs, &primes_up_to(40))?;
    print!("{}", report.to_table());
    Ok(())
}
