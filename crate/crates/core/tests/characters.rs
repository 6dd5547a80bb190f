use num_bigint::BigInt;
use proptest::prelude::*;
use siegel_lift::arith::{big_pow, primes_up_to};
use siegel_lift::heckechar::{
    char_value, induced_factor, AntiCycChar, ImagQuadField, PrimeAbove, Splitting, SUPPORTED_DISCRIMINANTS,
};
use siegel_lift::localfactor::is_selfdual_pure;
use siegel_lift::Error;

fn admissible(d: i64, m: u32) -> bool {
    match d {
        -4 => m % 2 == 0,
        -3 => m % 3 == 0,
        _ => true,
    }
}

/// Trace of `pi^n` for any `pi` of norm `p`, from a solution of `a^2 + |D| b^2 = 4p`
/// and the recursion `t_n = a t_(n-1) - p t_(n-2)`.
fn trace_oracle(d: i64, p: u64, n: u32) -> Option<BigInt> {
    let four_p = 4 * p as i64;
    let a = (0..=four_p).find(|a| {
        let rest = four_p - a * a;
        rest >= 0 && rest % (-d) == 0 && {
            let b2 = rest / (-d);
            let b = (b2 as f64).sqrt().round() as i64;
            b * b == b2 && b > 0
        }
    })?;
    let (mut t0, mut t1) = (BigInt::from(2), BigInt::from(a));
    for _ in 0..n {
        let t2 = a * &t1 - BigInt::from(p) * &t0;
        t0 = t1;
        t1 = t2;
    }
    Some(t0)
}

#[test]
fn split_factors_match_trace_oracle() {
    for &d in &SUPPORTED_DISCRIMINANTS {
        let k = ImagQuadField::new(d).unwrap();
        for m in 1..=6 {
            if !admissible(d, m) {
                assert!(matches!(AntiCycChar::new(k, m), Err(Error::UnitIncompatible { .. })));
                continue;
            }
            let chi = AntiCycChar::new(k, m).unwrap();
            for p in primes_up_to(200) {
                let f = induced_factor(&chi, p).unwrap();
                assert_eq!(f.weight(), 2 * m as i64);
                match k.splitting(p) {
                    Splitting::Split => {
                        let t = trace_oracle(d, p, 2 * m).unwrap();
                        let want = [BigInt::from(1), -t, big_pow(p, 2 * m)];
                        assert_eq!(f.integer_coeffs().unwrap(), want, "D = {d}, m = {m}, p = {p}");
                        assert!(is_selfdual_pure(&f).holds);
                    }
                    Splitting::Inert => {
                        assert!(trace_oracle(d, p, 1).is_none());
                        let want = [BigInt::from(1), BigInt::from(0), -big_pow(p, 2 * m)];
                        assert_eq!(f.integer_coeffs().unwrap(), want);
                    }
                    Splitting::Ramified => assert_eq!(f.effective_degree(), 1),
                }
            }
        }
    }
}

proptest! {
    /// Every generator of the prime ideal, and its conjugate's ideal, give the same factor.
    #[test]
    fn generator_independence(di in 0usize..SUPPORTED_DISCRIMINANTS.len(), m in 1u32..=6, pi in 0usize..46) {
        let d = SUPPORTED_DISCRIMINANTS[di];
        prop_assume!(admissible(d, m));
        let p = primes_up_to(200)[pi];
        let k = ImagQuadField::new(d).unwrap();
        let chi = AntiCycChar::new(k, m).unwrap();
        if let PrimeAbove::Split(g) = k.prime_above(p).unwrap() {
            let v = char_value(&chi, &g);
            for u in k.units() {
                prop_assert_eq!(char_value(&chi, &(&u * &g)), v.clone());
            }
            let vbar = char_value(&chi, &g.conj());
            prop_assert_eq!(vbar.trace(), v.trace());
            prop_assert_eq!(vbar.norm(), v.norm());
            prop_assert_eq!(g.norm(), BigInt::from(p));
        }
    }
}

#[test]
fn prime_above_examples() {
    let gauss = ImagQuadField::new(-4).unwrap();
    match gauss.prime_above(5).unwrap() {
        PrimeAbove::Split(g) => assert_eq!((g.x.clone(), g.y.clone()), (BigInt::from(2), BigInt::from(1))),
        other => panic!("{other:?}"),
    }
    assert!(matches!(gauss.prime_above(2).unwrap(), PrimeAbove::Ramified(_)));
    assert!(matches!(gauss.prime_above(7).unwrap(), PrimeAbove::Inert(7)));
    assert!(ImagQuadField::new(-5).is_err());
    assert!(gauss.prime_above(9).is_err());
}

#[test]
fn character_serde() {
    let chi = AntiCycChar::new(ImagQuadField::new(-7).unwrap(), 1).unwrap();
    let json = serde_json::to_string(&chi).unwrap();
    assert_eq!(json, r#"{"D":-7,"m":1}"#);
    assert!(serde_json::from_str::<AntiCycChar>(r#"{"D":-4,"m":1}"#).is_err());
}
