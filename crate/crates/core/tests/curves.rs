use num_bigint::BigInt;
use proptest::prelude::*;
use siegel_lift::arith::primes_up_to;
use siegel_lift::modform::{
    ap_good, ap_naive, parse_eigenfile, read_eigenfile, reduction, CurveData, Gl2Source, ReductionKind,
};

fn data(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn e11a1() -> CurveData {
    CurveData::new([0, -1, 1, 0, 0], Some(11)).unwrap()
}

/// `x = x' + r, y = y' + s x' + t`.
fn translate(a: [i64; 5], r: i64, s: i64, t: i64) -> [i64; 5] {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

fn curve_strategy() -> impl Strategy<Value = CurveData> {
    prop::array::uniform5(-12i64..=12).prop_filter_map("singular", |a| CurveData::new(a, None).ok())
}

/// Coefficients of `q prod (1 - q^n)^2 (1 - q^(11n))^2` up to `q^len`.
fn eta_product_11(len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len + 1];
    c[1] = 1;
    for n in 1..=len {
        for step in [n, n, 11 * n, 11 * n] {
            for i in (step..=len).rev() {
                c[i] -= c[i - step];
            }
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn character_sum_matches_enumeration(curve in curve_strategy()) {
        for p in primes_up_to(100) {
            if curve.is_good(p) {
                prop_assert_eq!(ap_good(&curve, p).unwrap(), ap_naive(&curve, p).unwrap(), "p = {}", p);
            }
        }
    }

    #[test]
    fn translation_preserves_ap(curve in curve_strategy(), r in -3i64..=3, s in -3i64..=3, t in -3i64..=3) {
        let moved = CurveData::new(translate(*curve.coeffs(), r, s, t), None).unwrap();
        prop_assert_eq!(moved.discriminant(), curve.discriminant());
        for p in primes_up_to(60) {
            if curve.is_good(p) {
                prop_assert_eq!(ap_good(&moved, p).unwrap(), ap_good(&curve, p).unwrap());
            }
        }
    }

    #[test]
    fn hasse_bound(curve in curve_strategy()) {
        for p in primes_up_to(200) {
            if curve.is_good(p) {
                let a = ap_good(&curve, p).unwrap();
                prop_assert!((a * a) as u64 <= 4 * p);
            }
        }
    }
}

#[test]
fn e11a1_matches_eta_product() {
    let q = eta_product_11(200);
    for p in primes_up_to(200) {
        if p != 11 {
            assert_eq!(ap_good(&e11a1(), p).unwrap(), q[p as usize], "p = {p}");
        }
    }
    assert_eq!(q[11], 1);
}

#[test]
fn e11a1_table_matches_curve() {
    let form = read_eigenfile(&data("11a1.eig")).unwrap();
    assert_eq!(form.weight, 2);
    assert_eq!(form.level, 11);
    let curve = Gl2Source::Curve(e11a1());
    let table = Gl2Source::Newform(form);
    for p in primes_up_to(200) {
        let a = curve.local(p).unwrap();
        let b = table.local(p).unwrap();
        assert_eq!(a.ap, b.ap, "p = {p}");
        assert_eq!(a.factor, b.factor, "p = {p}");
        assert_eq!(a.kind, b.kind, "p = {p}");
    }
}

/// tau(n) from `q prod (1 - q^n)^24`.
fn tau(len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); len + 1];
    c[1] = BigInt::from(1);
    for n in 1..=len {
        for _ in 0..24 {
            for i in (n..=len).rev() {
                let prev = c[i - n].clone();
                c[i] -= prev;
            }
        }
    }
    c
}

#[test]
fn delta_table_matches_q_expansion() {
    let form = read_eigenfile(&data("delta.eig")).unwrap();
    assert_eq!(form.weight, 12);
    let t = tau(200);
    for p in primes_up_to(200) {
        assert_eq!(form.ap(p).unwrap(), &t[p as usize], "p = {p}");
    }
    assert!(form.ramanujan_violations.is_empty());
}

#[test]
fn reduction_types() {
    let c = CurveData::new([1, 1, 1, -10, -10], None).unwrap();
    assert_eq!(c.bad_primes(), vec![3, 5]);
    assert_eq!(reduction(&c, 3).unwrap().kind, ReductionKind::NonsplitMult);
    assert_eq!(reduction(&c, 5).unwrap().kind, ReductionKind::SplitMult);
    assert_eq!(c.conductor_or_infer().unwrap(), 15);
    assert_eq!(reduction(&e11a1(), 11).unwrap().kind, ReductionKind::SplitMult);
    // y^2 = x^3 + 1 has additive reduction at 2 and 3
    let cm = CurveData::new([0, 0, 0, 0, 1], None).unwrap();
    assert_eq!(reduction(&cm, 3).unwrap().kind, ReductionKind::Additive);
    assert!(cm.conductor_or_infer().is_err());
}

#[test]
fn eigenfile_rejects_bad_input() {
    assert!(parse_eigenfile("weight 2 level 11 character trivial\n4 1\n".as_bytes()).is_err());
    assert!(parse_eigenfile("weight 2 level 11 character trivial\n2 1\n2 1\n".as_bytes()).is_err());
    assert!(parse_eigenfile("weight two\n".as_bytes()).is_err());
    let f = parse_eigenfile("weight 2 level 11 character trivial\n2 3\n".as_bytes()).unwrap();
    assert_eq!(f.ramanujan_violations, vec![2]);
}
