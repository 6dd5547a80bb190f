use num_bigint::BigInt;
use proptest::prelude::*;
use siegel_lift::arith::primes_up_to;
use siegel_lift::heckechar::{AntiCycChar, ImagQuadField};
use siegel_lift::localfactor::{plethysm, Functor, LocalFactor};
use siegel_lift::modform::{CurveData, Gl2Source};
use siegel_lift::predictor::{
    compare_coeffwise, degree5_factor, dirichlet_coeffs, eval_partial, predict_siegel, transfer_object,
    verify_range, CoeffComparison, Construction, LObject, PiLocal, Transfer,
};

fn e11a1() -> Gl2Source {
    Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11)).unwrap())
}

fn gauss(m: u32) -> AntiCycChar {
    AntiCycChar::new(ImagQuadField::new(-4).unwrap(), m).unwrap()
}

#[test]
fn supersingular_sym3_closed_form() {
    // a_19 = 0 for 11a1
    let c = Construction::sym3(e11a1()).unwrap();
    let PiLocal::Good(f) = c.local(19).unwrap() else { panic!() };
    let p3 = 19i64.pow(3);
    assert_eq!(f, LocalFactor::from_integers(19, 3, [1, 0, 2 * p3, 0, p3 * p3]).unwrap());
    let std = degree5_factor(&f).unwrap();
    assert_eq!(std.degree(), 5);
}

#[test]
fn degree5_exists_for_both_constructions() {
    let curves = [[0, -1, 1, 0, 0], [1, 1, 1, -10, -10], [0, 0, 1, -1, 0]];
    for a in curves {
        let eta = Gl2Source::Curve(CurveData::new(a, None).unwrap());
        let constructions = [
            Construction::sym3(eta.clone()).unwrap(),
            Construction::tensor(eta.clone(), gauss(2)).unwrap(),
            Construction::tensor(eta, AntiCycChar::new(ImagQuadField::new(-7).unwrap(), 2).unwrap()).unwrap(),
        ];
        for c in &constructions {
            for p in primes_up_to(300) {
                if let PiLocal::Good(pi) = c.local(p).unwrap() {
                    let std = degree5_factor(&pi).unwrap_or_else(|e| panic!("{} p = {p}: {e}", c.label()));
                    assert_eq!(std.degree(), 5);
                    assert_eq!(std.weight(), 2 * pi.weight());
                }
            }
        }
    }
}

#[test]
fn report_independent_of_thread_count() {
    let c = Construction::tensor(e11a1(), gauss(2)).unwrap();
    let primes = primes_up_to(150);
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| verify_range(&c.identities(), c.inputs(), &primes).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&run(3)).unwrap());
    assert!(one.entries.windows(2).all(|w| (w[0].prime, w[0].identity) < (w[1].prime, w[1].identity)));
}

#[test]
fn delta_tensor_identities() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/delta.eig");
    let eta = Gl2Source::Newform(siegel_lift::modform::read_eigenfile(&path).unwrap());
    let c = Construction::tensor(eta.clone(), gauss(2)).unwrap();
    assert_eq!(c.weight(), 15);
    assert_eq!(c.level().unwrap(), 16);
    let report = verify_range(&c.identities(), c.inputs(), &primes_up_to(200)).unwrap();
    assert!(report.is_ok(), "{}", report.to_table());
    // k = 12 even, w = 2 * 3 even: parity fine; D = -3 needs 3 | m
    assert!(Construction::tensor(eta, AntiCycChar::new(ImagQuadField::new(-3).unwrap(), 3).unwrap()).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn equal_factor_maps_give_equal_series(coeffs in prop::collection::vec((-5i64..=5, -5i64..=5), 25), x in 1usize..100) {
        let mut a = LObject::new("a", 0);
        for (p, (c1, c2)) in primes_up_to(100).into_iter().zip(coeffs) {
            a.insert(LocalFactor::from_integers(p, 0, [1, c1, c2]).unwrap()).unwrap();
        }
        let b = a.clone();
        prop_assert_eq!(compare_coeffwise(&a, &b, x).unwrap(), CoeffComparison::Equal);
    }

    #[test]
    fn coefficients_are_multiplicative(x in 2usize..400) {
        let obj = transfer_object(&e11a1(), None, Transfer::Gl2, x as u64).unwrap();
        let a = dirichlet_coeffs(&obj, x).unwrap();
        for m in 1..=x {
            for n in 1..=x / m {
                if num_integer::gcd(m, n) == 1 {
                    prop_assert_eq!(&a[m * n - 1], &(&a[m - 1] * &a[n - 1]));
                }
            }
        }
    }
}

#[test]
fn gl2_coefficients_match_eta_product() {
    // a_n of 11a1 from q prod (1 - q^n)^2 (1 - q^(11n))^2
    let len = 300;
    let mut q = vec![0i64; len + 1];
    q[1] = 1;
    for n in 1..=len {
        for step in [n, n, 11 * n, 11 * n] {
            for i in (step..=len).rev() {
                q[i] -= q[i - step];
            }
        }
    }
    let obj = transfer_object(&e11a1(), None, Transfer::Gl2, len as u64).unwrap();
    let a = dirichlet_coeffs(&obj, len).unwrap();
    for n in 1..=len {
        assert_eq!(a[n - 1], BigInt::from(q[n]), "n = {n}");
    }
}

#[test]
fn curve_partial_sums_are_consistent() {
    let obj = transfer_object(&e11a1(), None, Transfer::Gl2, 10_000).unwrap();
    let small = eval_partial(&obj, 2.0, 1_000).unwrap();
    let large = eval_partial(&obj, 2.0, 10_000).unwrap();
    assert!((small.value - large.value).abs() <= small.tail_bound);
    assert!(large.tail_bound < small.tail_bound);
    assert!(eval_partial(&obj, 1.5, 100).is_err());
}

#[test]
fn sym3_series_first_terms() {
    let obj = transfer_object(&e11a1(), None, Transfer::Sym3, 4).unwrap();
    let a = dirichlet_coeffs(&obj, 4).unwrap();
    let c3 = Construction::sym3(e11a1()).unwrap().local(3).unwrap();
    assert_eq!(a[0], BigInt::from(1));
    assert_eq!(a[1], BigInt::from(0));
    assert_eq!(a[2], -c3.factor().unwrap().integer_coeffs().unwrap()[1].clone());
    assert_eq!(a[3], BigInt::from(0));
}

#[test]
fn std_object_relates_to_ext2() {
    // Ext2(pi) = std(pi) * (1 - p^w T) at every good prime
    let x = 500;
    let ext2 = transfer_object(&e11a1(), None, Transfer::Ext2, x).unwrap();
    let mut std = transfer_object(&e11a1(), None, Transfer::Std, x).unwrap();
    for p in primes_up_to(x) {
        if p == 11 {
            continue;
        }
        let f = std.factor(p).unwrap().clone();
        let pol = LocalFactor::linear(p, 6, num_traits::pow(BigInt::from(p), 3));
        std.set(siegel_lift::localfactor::combine(&f, &pol, siegel_lift::localfactor::Combine::Sum).unwrap())
            .unwrap();
    }
    assert_eq!(compare_coeffwise(&ext2, &std, x as usize).unwrap(), CoeffComparison::Equal);
    assert_eq!(ext2.unsupported, vec![11]);
}

#[test]
fn prediction_serializes_decimal_strings() {
    let c = Construction::sym3(e11a1()).unwrap();
    let pred = predict_siegel(&c, 10).unwrap();
    let v: serde_json::Value = serde_json::to_value(&pred).unwrap();
    assert_eq!(v["level"], 11);
    assert_eq!(v["arch"]["siegel"]["scalar"], 3);
    assert_eq!(v["spin_factors"]["2"]["coeffs"][4], "64");
    assert_eq!(v["flags"]["cap"], false);
    assert_eq!(v["verification"]["entries"][0]["status"], "OK");
    let sym4 = plethysm(&LocalFactor::from_integers(2, 1, [1, 2, 2]).unwrap(), Functor::Sym4).unwrap();
    assert_eq!(sym4.degree(), 5);
}
