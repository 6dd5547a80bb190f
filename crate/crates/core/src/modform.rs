//! GL(2) inputs: elliptic curves over Q (by point counting) and newforms
//! given as tables of Hecke eigenvalues.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_mod, big_pow, is_prime, kronecker, mod_reduce, valuation};
use crate::error::{Error, Result};
use crate::localfactor::LocalFactor;

/// Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
///
/// The model is taken to be minimal at every prime dividing the
/// discriminant; this is not verified beyond a cheap check at `p >= 5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr")]
pub struct CurveData {
    #[serde(rename = "a")]
    coeffs: [i64; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conductor: Option<u64>,
}

#[derive(Deserialize)]
struct CurveRepr {
    a: [i64; 5],
    #[serde(default)]
    conductor: Option<u64>,
}

impl TryFrom<CurveRepr> for CurveData {
    type Error = Error;

    fn try_from(r: CurveRepr) -> Result<Self> {
        CurveData::new(r.a, r.conductor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub disc: BigInt,
}

pub fn invariants_of(a: &[i64; 5]) -> Result<Invariants> {
    let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
    let b2 = &a1 * &a1 + 4i64 * &a2;
    let b4 = 2i64 * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + 4i64 * &a6;
    let b8 = &a1 * &a1 * &a6 + 4i64 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
    let disc = 9i64 * &b2 * &b4 * &b6 - &b2 * &b2 * &b8 - 8i64 * &b4 * &b4 * &b4 - 27i64 * &b6 * &b6;
    if disc.is_zero() {
        return Err(Error::SingularCurve);
    }
    let c4 = &b2 * &b2 - 24i64 * &b4;
    Ok(Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        disc,
    })
}

// j-invariants of the thirteen CM orders, with the discriminant of the CM field.
const CM_J: [(i64, i64); 13] = [
    (0, -3),
    (54000, -3),
    (-12288000, -3),
    (1728, -4),
    (287496, -4),
    (-3375, -7),
    (16581375, -7),
    (8000, -8),
    (-32768, -11),
    (-884736, -19),
    (-884736000, -43),
    (-147197952000, -67),
    (-262537412640768000, -163),
];

impl CurveData {
    pub fn new(coeffs: [i64; 5], conductor: Option<u64>) -> Result<Self> {
        invariants_of(&coeffs)?;
        Ok(CurveData { coeffs, conductor })
    }

    /// Parse `a1,a2,a3,a4,a6[,N]`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 && parts.len() != 6 {
            return Err(Error::Input(format!(
                "curve {s:?}: expected a1,a2,a3,a4,a6[,N]"
            )));
        }
        let mut coeffs = [0i64; 5];
        for (slot, part) in coeffs.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Input(format!("curve {s:?}: bad coefficient {part:?}")))?;
        }
        let conductor = match parts.get(5) {
            Some(n) => Some(
                n.parse()
                    .ok()
                    .filter(|&n: &u64| n > 0)
                    .ok_or_else(|| Error::Input(format!("curve {s:?}: bad conductor {n:?}")))?,
            ),
            None => None,
        };
        Self::new(coeffs, conductor)
    }

    pub fn coeffs(&self) -> &[i64; 5] {
        &self.coeffs
    }

    pub fn conductor(&self) -> Option<u64> {
        self.conductor
    }

    pub fn with_conductor(mut self, n: u64) -> Self {
        self.conductor = Some(n);
        self
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of(&self.coeffs).expect("validated at construction")
    }

    pub fn discriminant(&self) -> BigInt {
        self.invariants().disc
    }

    pub fn j_invariant(&self) -> BigRational {
        let inv = self.invariants();
        BigRational::new(&inv.c4 * &inv.c4 * &inv.c4, inv.disc)
    }

    /// Discriminant of the CM field when the curve has complex multiplication.
    pub fn cm_discriminant(&self) -> Option<i64> {
        let j = self.j_invariant();
        CM_J.iter()
            .find(|(cm_j, _)| j == BigRational::from_integer(BigInt::from(*cm_j)))
            .map(|&(_, d)| d)
    }

    pub fn is_good(&self, p: u64) -> bool {
        big_mod(&self.discriminant(), p) != 0
    }

    /// Primes dividing the discriminant.
    pub fn bad_primes(&self) -> Vec<u64> {
        let mut d = self.discriminant().abs();
        let mut out = Vec::new();
        let mut q = 2u64;
        while BigInt::from(q) * BigInt::from(q) <= d {
            let qb = BigInt::from(q);
            if (&d % &qb).is_zero() {
                out.push(q);
                while (&d % &qb).is_zero() {
                    d /= &qb;
                }
            }
            q += 1;
        }
        if d > BigInt::from(1) {
            out.push(u64::try_from(d).expect("prime factor fits in u64"));
        }
        out
    }

    /// The conductor if given; otherwise the product of the bad primes when
    /// every one of them is multiplicative.
    pub fn conductor_or_infer(&self) -> Result<u64> {
        if let Some(n) = self.conductor {
            return Ok(n);
        }
        let mut n = 1u64;
        for p in self.bad_primes() {
            match reduction_bad(self, p)?.kind {
                ReductionKind::SplitMult | ReductionKind::NonsplitMult => n *= p,
                _ => {
                    return Err(Error::Input(format!(
                        "additive reduction at {p}: supply the conductor explicitly"
                    )))
                }
            }
        }
        Ok(n)
    }

    fn reduced(&self, p: u64) -> [u64; 5] {
        self.coeffs.map(|a| mod_reduce(a, p))
    }

    pub fn label(&self) -> String {
        let [a1, a2, a3, a4, a6] = self.coeffs;
        format!("[{a1},{a2},{a3},{a4},{a6}]")
    }
}

/// Number of affine points of the reduction mod `p`, by testing every pair.
pub fn count_affine_naive(curve: &CurveData, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = curve.reduced(p);
    let mut count = 0;
    for x in 0..p {
        let rhs = (((x * x % p) * x % p) + a2 * (x * x % p) % p + a4 * x % p + a6) % p;
        for y in 0..p {
            let lhs = (y * y % p + a1 * x % p * y % p + a3 * y % p) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// Affine point count through the quadratic character of
/// `4x^3 + b2 x^2 + 2 b4 x + b6` (odd `p` only).
fn count_affine_character_sum(curve: &CurveData, p: u64) -> u64 {
    debug_assert!(p > 2);
    let inv = curve.invariants();
    let b2 = big_mod(&inv.b2, p);
    let b4 = big_mod(&inv.b4, p);
    let b6 = big_mod(&inv.b6, p);
    let mut is_square = vec![false; p as usize];
    for y in 1..p {
        is_square[(y * y % p) as usize] = true;
    }
    let mut count = 0;
    for x in 0..p {
        let x2 = x * x % p;
        let f = (4 * (x2 * x % p) + b2 * x2 + 2 * b4 % p * x + b6) % p;
        count += if f == 0 {
            1
        } else if is_square[f as usize] {
            2
        } else {
            0
        };
    }
    count
}

/// `a_p = p + 1 - #E(F_p)` by exhaustive enumeration.
pub fn ap_naive(curve: &CurveData, p: u64) -> Result<i64> {
    check_good(curve, p)?;
    Ok(p as i64 - count_affine_naive(curve, p) as i64)
}

/// `a_p = p + 1 - #E(F_p)`; linear-time character sum for odd `p`.
pub fn ap_good(curve: &CurveData, p: u64) -> Result<i64> {
    check_good(curve, p)?;
    let affine = if p == 2 {
        count_affine_naive(curve, p)
    } else {
        count_affine_character_sum(curve, p)
    };
    Ok(p as i64 - affine as i64)
}

fn check_good(curve: &CurveData, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !curve.is_good(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReductionKind {
    Good,
    SplitMult,
    NonsplitMult,
    /// Anything that is neither good nor multiplicative.
    Additive,
}

impl ReductionKind {
    pub fn is_multiplicative(self) -> bool {
        matches!(self, ReductionKind::SplitMult | ReductionKind::NonsplitMult)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ReductionKind::Good => "good",
            ReductionKind::SplitMult => "split",
            ReductionKind::NonsplitMult => "nonsplit",
            ReductionKind::Additive => "additive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    pub prime: u64,
    pub kind: ReductionKind,
    #[serde(serialize_with = "crate::arith::ser_decimal")]
    pub ap: BigInt,
}

/// Classify bad reduction from the singular point of the reduced curve.
pub fn reduction_bad(curve: &CurveData, p: u64) -> Result<ReductionData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if curve.is_good(p) {
        return Err(Error::GoodPrime(p));
    }
    let inv = curve.invariants();
    if p >= 5 {
        let v4 = valuation(&inv.c4, p).unwrap_or(u32::MAX);
        let vd = valuation(&inv.disc, p).expect("nonzero discriminant");
        if v4 >= 4 && vd >= 12 {
            return Err(Error::NonMinimal(p));
        }
    }
    let [a1, a2, a3, a4, a6] = curve.reduced(p);
    let neg = |v: u64| (p - v % p) % p;
    let mut singular = None;
    'search: for x in 0..p {
        for y in 0..p {
            let x2 = x * x % p;
            let f = (y * y + a1 * x % p * y + a3 * y + neg(x2 * x % p) + neg(a2 * x2 % p)
                + neg(a4 * x % p)
                + neg(a6))
                % p;
            let fx = (a1 * y + neg(3 * x2 % p) + neg(2 * a2 % p * x % p) + neg(a4)) % p;
            let fy = (2 * y + a1 * x + a3) % p;
            if f == 0 && fx == 0 && fy == 0 {
                singular = Some(x);
                break 'search;
            }
        }
    }
    let x0 = singular.ok_or(Error::NonMinimal(p))?;
    // Tangent cone at the singular point: Y^2 + a1 XY - (3 x0 + a2) X^2.
    let c = (3 * x0 + a2) % p;
    let slopes = (0..p)
        .filter(|t| (t * t % p + a1 * t % p + neg(c)) % p == 0)
        .count();
    let (kind, ap) = match slopes {
        2 => (ReductionKind::SplitMult, 1),
        0 => (ReductionKind::NonsplitMult, -1),
        _ => (ReductionKind::Additive, 0),
    };
    Ok(ReductionData {
        prime: p,
        kind,
        ap: BigInt::from(ap),
    })
}

/// Reduction type and `a_p` at any prime.
pub fn reduction(curve: &CurveData, p: u64) -> Result<ReductionData> {
    if curve.is_good(p) {
        Ok(ReductionData {
            prime: p,
            kind: ReductionKind::Good,
            ap: BigInt::from(ap_good(curve, p)?),
        })
    } else {
        reduction_bad(curve, p)
    }
}

/// Nebentypus of a newform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Character {
    Trivial,
    /// Quadratic character of the imaginary quadratic field of this discriminant.
    Delta(i64),
}

impl Character {
    pub fn value(self, p: u64) -> i64 {
        match self {
            Character::Trivial => 1,
            Character::Delta(d) => kronecker(d, p),
        }
    }
}

/// A newform given by its weight, level, character and a table of `a_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformData {
    pub weight: u32,
    pub level: u64,
    pub character: Character,
    pub eigenvalues: BTreeMap<u64, BigInt>,
    /// Primes of good reduction where `|a_p| > 2 p^((k-1)/2)`.
    pub ramanujan_violations: Vec<u64>,
}

impl NewformData {
    pub fn new(weight: u32, level: u64, character: Character) -> Result<Self> {
        if weight < 2 {
            return Err(Error::Input(format!("weight {weight} < 2")));
        }
        if level == 0 {
            return Err(Error::Input("level must be positive".into()));
        }
        Ok(NewformData {
            weight,
            level,
            character,
            eigenvalues: BTreeMap::new(),
            ramanujan_violations: Vec::new(),
        })
    }

    pub fn ap(&self, p: u64) -> Result<&BigInt> {
        self.eigenvalues.get(&p).ok_or(Error::MissingEigenvalue(p))
    }

    /// `a_p^2 <= 4 p^(k-1)`.
    pub fn satisfies_ramanujan(&self, p: u64, ap: &BigInt) -> bool {
        ap * ap <= 4 * big_pow(p, self.weight - 1)
    }

    pub fn label(&self) -> String {
        format!("newform(k={}, N={})", self.weight, self.level)
    }
}

pub fn read_eigenfile(path: &Path) -> Result<NewformData> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_eigenfile(std::io::BufReader::new(file))
}

/// Parse the eigenvalue table format:
///
/// ```text
/// weight 12 level 1 character trivial
/// # comment
/// 2 -24
/// 3 252
/// ```
///
/// The character is `trivial` or `delta <D>`.
pub fn parse_eigenfile<R: BufRead>(reader: R) -> Result<NewformData> {
    let mut form: Option<NewformData> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            msg: e.to_string(),
        })?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(form) = form.as_mut() else {
            form = Some(parse_header(&tokens).map_err(perr)?);
            continue;
        };
        let [p, ap] = tokens[..] else {
            return Err(perr(format!("expected `<p> <a_p>`, got {content:?}")));
        };
        let p: u64 = p.parse().map_err(|_| perr(format!("bad prime {p:?}")))?;
        if !is_prime(p) {
            return Err(perr(format!("{p} is not prime")));
        }
        let ap: BigInt = ap.parse().map_err(|_| perr(format!("bad eigenvalue {ap:?}")))?;
        if form.level % p != 0 && !form.satisfies_ramanujan(p, &ap) {
            log::warn!("a_{p} = {ap} exceeds the Ramanujan bound for weight {}", form.weight);
            form.ramanujan_violations.push(p);
        }
        if form.eigenvalues.insert(p, ap).is_some() {
            return Err(Error::DuplicatePrime { p, line: lineno });
        }
    }
    form.ok_or(Error::Parse {
        line: 0,
        msg: "missing header line".into(),
    })
}

fn parse_header(tokens: &[&str]) -> std::result::Result<NewformData, String> {
    let (weight, level, character) = match tokens {
        ["weight", k, "level", n, "character", "trivial"] => (k, n, Character::Trivial),
        ["weight", k, "level", n, "character", "delta", d] => {
            let d: i64 = d.parse().map_err(|_| format!("bad discriminant {d:?}"))?;
            (k, n, Character::Delta(d))
        }
        _ => {
            return Err(
                "header must read `weight <k> level <N> character <trivial|delta D>`".into(),
            )
        }
    };
    let weight: u32 = weight.parse().map_err(|_| format!("bad weight {weight:?}"))?;
    let level: u64 = level.parse().map_err(|_| format!("bad level {level:?}"))?;
    NewformData::new(weight, level, character).map_err(|e| e.to_string())
}

/// The GL(2) datum feeding every transfer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gl2Source {
    Curve(CurveData),
    Newform(NewformData),
}

/// Local GL(2) data at one prime: reduction type plus Euler factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Local {
    pub kind: ReductionKind,
    pub ap: BigInt,
    pub factor: LocalFactor,
}

impl Gl2Source {
    /// Classical weight `k` (2 for curves).
    pub fn weight(&self) -> u32 {
        match self {
            Gl2Source::Curve(_) => 2,
            Gl2Source::Newform(f) => f.weight,
        }
    }

    pub fn character(&self) -> Character {
        match self {
            Gl2Source::Curve(_) => Character::Trivial,
            Gl2Source::Newform(f) => f.character,
        }
    }

    pub fn level(&self) -> Result<u64> {
        match self {
            Gl2Source::Curve(c) => c.conductor_or_infer(),
            Gl2Source::Newform(f) => Ok(f.level),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Gl2Source::Curve(c) => format!("E{}", c.label()),
            Gl2Source::Newform(f) => f.label(),
        }
    }

    pub fn local(&self, p: u64) -> Result<Gl2Local> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let k = self.weight();
        let (kind, ap) = match self {
            Gl2Source::Curve(c) => {
                let r = reduction(c, p)?;
                (r.kind, r.ap)
            }
            Gl2Source::Newform(f) => {
                let ap = f.ap(p)?.clone();
                let kind = if f.level % p != 0 {
                    ReductionKind::Good
                } else if (f.level / p) % p != 0 && !ap.is_zero() {
                    if ap.is_positive() {
                        ReductionKind::SplitMult
                    } else {
                        ReductionKind::NonsplitMult
                    }
                } else {
                    ReductionKind::Additive
                };
                (kind, ap)
            }
        };
        let w = i64::from(k - 1);
        let factor = match kind {
            ReductionKind::Good => {
                let det = BigInt::from(self.character().value(p)) * big_pow(p, k - 1);
                LocalFactor::from_integers(p, w, [BigInt::from(1), -ap.clone(), det])?
            }
            _ => LocalFactor::linear(p, w, ap.clone()).with_degree(2),
        };
        Ok(Gl2Local { kind, ap, factor })
    }
}

/// Euler factor of the GL(2) input at `p`: `1 - a_p T + w(p) p^(k-1) T^2` at good
/// primes, `1 - a_p T` (nominal degree 2) at bad ones.
pub fn local_factor_gl2(source: &Gl2Source, p: u64) -> Result<LocalFactor> {
    Ok(source.local(p)?.factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfactor::is_selfdual_pure;

    fn e11a1() -> CurveData {
        CurveData::new([0, -1, 1, 0, 0], Some(11)).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(e11a1().discriminant(), BigInt::from(-11));
        let c = CurveData::new([0, 0, 0, 0, 1], None).unwrap();
        assert_eq!(c.discriminant(), BigInt::from(-432));
        assert!(matches!(CurveData::new([0; 5], None), Err(Error::SingularCurve)));
    }

    #[test]
    fn ap_of_11a1() {
        let e = e11a1();
        assert_eq!(ap_naive(&e, 2).unwrap(), -2);
        assert_eq!(ap_naive(&e, 3).unwrap(), -1);
        assert_eq!(ap_naive(&e, 5).unwrap(), 1);
        assert_eq!(ap_good(&e, 7).unwrap(), -2);
        assert!(matches!(ap_good(&e, 11), Err(Error::BadPrime(11))));
        assert!(matches!(ap_good(&e, 9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn bad_reduction_types() {
        let r = reduction_bad(&e11a1(), 11).unwrap();
        assert_eq!(r.kind, ReductionKind::SplitMult);
        assert_eq!(r.ap, BigInt::from(1));

        let cusp = CurveData::new([0, 0, 0, 0, 5], None).unwrap();
        let r = reduction_bad(&cusp, 5).unwrap();
        assert_eq!(r.kind, ReductionKind::Additive);
        assert_eq!(r.ap, BigInt::from(0));

        assert!(matches!(reduction_bad(&e11a1(), 2), Err(Error::GoodPrime(2))));
    }

    #[test]
    fn nonsplit_example() {
        // 15a1: nonsplit at 3 (a_3 = -1), split at 5 (a_5 = 1).
        let e = CurveData::new([1, 1, 1, -10, -10], None).unwrap();
        assert_eq!(reduction_bad(&e, 3).unwrap().kind, ReductionKind::NonsplitMult);
        assert_eq!(reduction_bad(&e, 5).unwrap().kind, ReductionKind::SplitMult);
        assert_eq!(e.conductor_or_infer().unwrap(), 15);
    }

    #[test]
    fn non_minimal_model_rejected() {
        // y^2 = x^3 + 5^6: twist-by-scaling of y^2 = x^3 + 1, not minimal at 5.
        let e = CurveData::new([0, 0, 0, 0, 15625], None).unwrap();
        assert!(matches!(reduction_bad(&e, 5), Err(Error::NonMinimal(5))));
    }

    #[test]
    fn factors_of_11a1() {
        let src = Gl2Source::Curve(e11a1());
        let f2 = local_factor_gl2(&src, 2).unwrap();
        assert_eq!(f2, LocalFactor::from_integers(2, 1, [1, 2, 2]).unwrap());
        assert!(is_selfdual_pure(&f2).holds);
        let f11 = local_factor_gl2(&src, 11).unwrap();
        assert_eq!(f11.degree(), 2);
        assert_eq!(f11.effective_degree(), 1);
        assert_eq!(f11.to_string(), "1 - T");
    }

    #[test]
    fn additive_factor_is_one() {
        let src = Gl2Source::Curve(CurveData::new([0, 0, 0, 0, 5], None).unwrap());
        let f = local_factor_gl2(&src, 5).unwrap();
        assert_eq!(f.effective_degree(), 0);
    }

    #[test]
    fn delta_table() {
        let text = "weight 12 level 1 character trivial\n# tau\n2 -24\n";
        let form = parse_eigenfile(text.as_bytes()).unwrap();
        assert_eq!(form.ap(2).unwrap(), &BigInt::from(-24));
        let f = local_factor_gl2(&Gl2Source::Newform(form), 2).unwrap();
        assert_eq!(f, LocalFactor::from_integers(2, 11, [1, 24, 2048]).unwrap());
    }

    #[test]
    fn eigenfile_errors() {
        let empty = parse_eigenfile("weight 2 level 11 character trivial\n".as_bytes()).unwrap();
        assert!(matches!(
            local_factor_gl2(&Gl2Source::Newform(empty), 2),
            Err(Error::MissingEigenvalue(2))
        ));
        let err = parse_eigenfile("weight 2 level 11 character trivial\n4 5\n".as_bytes());
        assert!(matches!(err, Err(Error::Parse { line: 2, ref msg }) if msg.contains("not prime")));
        let dup = parse_eigenfile("weight 2 level 11 character trivial\n2 1\n2 1\n".as_bytes());
        assert!(matches!(dup, Err(Error::DuplicatePrime { p: 2, line: 3 })));
        assert!(parse_eigenfile("weight 1 level 1 character trivial\n".as_bytes()).is_err());
        assert!(parse_eigenfile("level 1\n".as_bytes()).is_err());
        assert!(parse_eigenfile("weight 2 level 11 character trivial\n2\n".as_bytes()).is_err());
    }

    #[test]
    fn ramanujan_warning_is_recorded_not_fatal() {
        let form =
            parse_eigenfile("weight 2 level 11 character trivial\n2 3\n3 -1\n".as_bytes()).unwrap();
        assert_eq!(form.ramanujan_violations, vec![2]);
    }

    #[test]
    fn delta_character_header() {
        let form =
            parse_eigenfile("weight 3 level 4 character delta -4\n3 0\n5 -6\n".as_bytes()).unwrap();
        assert_eq!(form.character, Character::Delta(-4));
        // inert prime: det = -p^2
        let f = local_factor_gl2(&Gl2Source::Newform(form), 3).unwrap();
        assert_eq!(f, LocalFactor::from_integers(3, 2, [1, 0, -9]).unwrap());
    }

    #[test]
    fn cm_detection() {
        assert_eq!(CurveData::new([0, 0, 0, 0, 1], None).unwrap().cm_discriminant(), Some(-3));
        assert_eq!(CurveData::new([0, 0, 0, -1, 0], None).unwrap().cm_discriminant(), Some(-4));
        assert_eq!(e11a1().cm_discriminant(), None);
    }

    #[test]
    fn curve_string_parsing() {
        let c = CurveData::parse("0,-1,1,0,0").unwrap();
        assert_eq!(c, CurveData::new([0, -1, 1, 0, 0], None).unwrap());
        assert_eq!(CurveData::parse("0,-1,1,0,0,11").unwrap().conductor(), Some(11));
        assert!(CurveData::parse("0,-1,1,0").is_err());
        assert!(CurveData::parse("0,-1,x,0,0").is_err());
        let json: CurveData = serde_json::from_str(r#"{"a":[0,-1,1,0,0],"conductor":11}"#).unwrap();
        assert_eq!(json, e11a1());
    }
}
