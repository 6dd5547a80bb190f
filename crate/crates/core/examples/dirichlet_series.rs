//! Dirichlet coefficients of the symmetric cube of 11a1, and the global
//! form of the exterior-square identity checked coefficient by coefficient.

use num_bigint::BigInt;
use siegel_lift::localfactor::{combine, plethysm, tate_twist, Combine, Functor, LocalFactor};
use siegel_lift::modform::{CurveData, Gl2Source};
use siegel_lift::predictor::{compare_coeffwise, dirichlet_coeffs, transfer_object, LObject, Transfer};

fn main() -> siegel_lift::Result<()> {
    let eta = Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11))?);
    let sym3 = transfer_object(&eta, None, Transfer::Sym3, 30)?;
    for (n, a) in dirichlet_coeffs(&sym3, 30)?.iter().enumerate() {
        println!("a_{:<3} = {a}", n + 1);
    }

    let x = 2000;
    let ext2 = transfer_object(&eta, None, Transfer::Ext2, x)?;
    let twisted = LObject::from_fn("Sym4(eta)(pT) zeta(s-3)", 6, x, |p| {
        if p == 11 {
            return Ok(None);
        }
        let sym4 = tate_twist(&plethysm(&eta.local(p)?.factor, Functor::Sym4)?, 1);
        combine(&sym4, &LocalFactor::linear(p, 6, BigInt::from(p).pow(3)), Combine::Sum).map(Some)
    })?;
    println!("up to {x}: {:?}", compare_coeffwise(&ext2, &twisted, x as usize)?);
    Ok(())
}
