//! Symmetric cube of the Euler factor of 11a1, with the degree-5 factor
//! split off its exterior square.

use siegel_lift::localfactor::{is_selfdual_pure, plethysm, Functor};
use siegel_lift::modform::{local_factor_gl2, CurveData, Gl2Source};
use siegel_lift::predictor::degree5_factor;

fn main() -> siegel_lift::Result<()> {
    let eta = Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11))?);
    for p in [2, 3, 5, 19] {
        let f = local_factor_gl2(&eta, p)?;
        let sym3 = plethysm(&f, Functor::Sym3)?;
        let std = degree5_factor(&sym3)?;
        let purity = is_selfdual_pure(&sym3);
        println!("p = {p}");
        println!("  eta_p        {f}");
        println!("  Sym3         {sym3}   (self-dual sign {:?})", purity.sign);
        println!("  standard     {std}");
    }
    Ok(())
}
