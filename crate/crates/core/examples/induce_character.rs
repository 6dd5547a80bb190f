//! Euler factors of the induction of `chi((alpha)) = alpha^(2m)` from an
//! imaginary quadratic field.
//!
//!     cargo run --example induce_character -- -7 1

use siegel_lift::arith::primes_up_to;
use siegel_lift::heckechar::{induced_factor, AntiCycChar, ImagQuadField, PrimeAbove};

fn main() -> siegel_lift::Result<()> {
    let mut args = std::env::args().skip(1);
    let d: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(-4);
    let m: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let k = ImagQuadField::new(d)?;
    let chi = AntiCycChar::new(k, m)?;

    println!("{} ({} units)", chi.label(), k.unit_count());
    for p in primes_up_to(30) {
        let above = match k.prime_above(p)? {
            PrimeAbove::Split(g) => format!("split, ({g})"),
            PrimeAbove::Ramified(g) => format!("ramified, ({g})"),
            PrimeAbove::Inert(_) => "inert".into(),
        };
        println!("{p:>4}  {above:<24} {}", induced_factor(&chi, p)?);
    }
    Ok(())
}
