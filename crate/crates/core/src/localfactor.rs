//! Local Euler factors and their exact algebra.
//!
//! A [`LocalFactor`] is the reciprocal polynomial `P(T) = 1 + c1 T + ... + cd T^d`
//! attached to a prime `p`, with `T` standing for `p^-s`. Its inverse roots are
//! the Frobenius (Satake) eigenvalues in arithmetic normalization: a factor that
//! is pure of motivic weight `w` has inverse roots of absolute value `p^(w/2)`.
//!
//! Every functor on factors (direct sum, tensor product, symmetric and
//! exterior powers) is computed through power sums of the inverse roots, so
//! no algebraic numbers ever appear.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, rat_pow};
use crate::error::{Error, Result};

/// Exact reciprocal Euler polynomial at a prime, with a motivic weight ledger.
///
/// The nominal degree is `coeffs.len() - 1`. Degenerate factors (bad
/// reduction, ramification) keep their nominal degree and carry trailing
/// zeros; [`LocalFactor::effective_degree`] reports the true degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FactorRepr", into = "FactorRepr")]
pub struct LocalFactor {
    prime: u64,
    weight: i64,
    coeffs: Vec<BigRational>,
}

impl LocalFactor {
    pub fn new(prime: u64, weight: i64, coeffs: Vec<BigRational>) -> Result<Self> {
        match coeffs.first() {
            Some(c0) if c0.is_one() => Ok(LocalFactor {
                prime,
                weight,
                coeffs,
            }),
            Some(c0) => Err(Error::Input(format!(
                "constant term of an Euler factor must be 1, got {c0}"
            ))),
            None => Err(Error::Input("empty coefficient list".into())),
        }
    }

    pub fn from_integers<I, C>(prime: u64, weight: i64, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let coeffs = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Self::new(prime, weight, coeffs)
    }

    /// The constant factor `1`, padded to a nominal degree.
    pub fn one(prime: u64, weight: i64, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[0] = BigRational::one();
        LocalFactor {
            prime,
            weight,
            coeffs,
        }
    }

    /// `1 - root * T`.
    pub fn linear(prime: u64, weight: i64, root: BigInt) -> Self {
        LocalFactor {
            prime,
            weight,
            coeffs: vec![BigRational::one(), BigRational::from_integer(-root)],
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn effective_degree(&self) -> usize {
        self.trimmed().len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `T^i`, zero past the nominal degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients with trailing zeros removed (never empty).
    pub fn trimmed(&self) -> &[BigRational] {
        let len = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(1, |i| i + 1);
        &self.coeffs[..len]
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Same prime, weight and polynomial, ignoring nominal-degree padding.
    pub fn same_polynomial(&self, other: &LocalFactor) -> bool {
        self.prime == other.prime && self.weight == other.weight && self.trimmed() == other.trimmed()
    }

    /// Pad (or trim zeros) to the given nominal degree.
    pub fn with_degree(mut self, degree: usize) -> Self {
        let eff = self.effective_degree();
        assert!(degree >= eff, "cannot shrink below effective degree {eff}");
        self.coeffs.resize(degree + 1, BigRational::zero());
        self
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    /// Formal product of the two polynomials. The caller fixes the weight.
    fn product(&self, other: &LocalFactor) -> Vec<BigRational> {
        poly_mul(&self.coeffs, &other.coeffs)
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    p: u64,
    weight: i64,
    coeffs: Vec<String>,
}

impl From<LocalFactor> for FactorRepr {
    fn from(f: LocalFactor) -> Self {
        FactorRepr {
            p: f.prime,
            weight: f.weight,
            coeffs: f.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<FactorRepr> for LocalFactor {
    type Error = Error;

    fn try_from(r: FactorRepr) -> Result<Self> {
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| {
                BigRational::from_str(s.trim())
                    .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LocalFactor::new(r.p, r.weight, coeffs)
    }
}

/// Decimal string for an exact rational: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power sums `s_1..s_M` of the inverse roots of a factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    pub prime: u64,
    pub values: Vec<BigRational>,
}

impl PowerSums {
    /// `s_m`, 1-based.
    pub fn get(&self, m: usize) -> &BigRational {
        &self.values[m - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Newton's identities, coefficient side to power-sum side:
/// `s_m = -m c_m - sum_{i=1}^{m-1} c_i s_{m-i}`.
pub fn power_sums(f: &LocalFactor, count: usize) -> PowerSums {
    let mut values: Vec<BigRational> = Vec::with_capacity(count);
    for m in 1..=count {
        let mut s = -f.coeff(m) * BigRational::from_integer(BigInt::from(m));
        for i in 1..m.min(f.degree() + 1) {
            s -= f.coeff(i) * &values[m - i - 1];
        }
        values.push(s);
    }
    PowerSums {
        prime: f.prime,
        values,
    }
}

/// Inverse of [`power_sums`]: rebuild the degree-`degree` factor whose inverse
/// roots have the given power sums.
pub fn from_power_sums(prime: u64, degree: usize, sums: &PowerSums) -> Result<LocalFactor> {
    if sums.len() < degree {
        return Err(Error::PowerSumsTooShort {
            needed: degree,
            got: sums.len(),
        });
    }
    let mut coeffs = Vec::with_capacity(degree + 1);
    coeffs.push(BigRational::one());
    for m in 1..=degree {
        let mut acc = sums.get(m).clone();
        for i in 1..m {
            acc += &coeffs[i] * sums.get(m - i);
        }
        coeffs.push(-acc / BigRational::from_integer(BigInt::from(m)));
    }
    LocalFactor::new(prime, 0, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    /// Direct sum: the inverse-root multisets are concatenated.
    Sum,
    /// Tensor product: inverse roots multiply pairwise.
    Tensor,
}

pub fn combine(a: &LocalFactor, b: &LocalFactor, mode: Combine) -> Result<LocalFactor> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    match mode {
        Combine::Sum => {
            if a.weight != b.weight {
                return Err(Error::WeightMismatch(a.weight, b.weight));
            }
            LocalFactor::new(a.prime, a.weight, a.product(b))
        }
        Combine::Tensor => {
            let degree = a.degree() * b.degree();
            let sa = power_sums(a, degree);
            let sb = power_sums(b, degree);
            let sums = PowerSums {
                prime: a.prime,
                values: sa.values.iter().zip(&sb.values).map(|(x, y)| x * y).collect(),
            };
            let out = from_power_sums(a.prime, degree, &sums)?.with_weight(a.weight + b.weight);
            debug_assert!(!(a.is_integral() && b.is_integral()) || out.is_integral());
            Ok(out)
        }
    }
}

/// Schur functors available on local factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functor {
    Sym2,
    Sym3,
    Sym4,
    Ext2,
}

impl Functor {
    /// Degree of the functor as a polynomial; the weight multiplies by this.
    pub fn order(self) -> usize {
        match self {
            Functor::Sym2 | Functor::Ext2 => 2,
            Functor::Sym3 => 3,
            Functor::Sym4 => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Functor::Sym2 => "Sym2",
            Functor::Sym3 => "Sym3",
            Functor::Sym4 => "Sym4",
            Functor::Ext2 => "Ext2",
        }
    }

    fn output_degree(self, d: usize) -> Result<usize> {
        match self {
            Functor::Ext2 => Ok(d * d.saturating_sub(1) / 2),
            Functor::Sym2 => Ok(d * (d + 1) / 2),
            Functor::Sym3 | Functor::Sym4 if d != 2 => Err(Error::WrongDegree {
                functor: self.name(),
                expected: 2,
                got: d,
            }),
            Functor::Sym3 => Ok(4),
            Functor::Sym4 => Ok(5),
        }
    }

    /// Cycle-index polynomial evaluated at `s_m, s_2m, ...`.
    fn evaluate(self, s: &PowerSums, m: usize) -> BigRational {
        let p = |j: usize| s.get(j * m);
        let int = |n: i64| BigRational::from_integer(BigInt::from(n));
        match self {
            Functor::Ext2 => (p(1) * p(1) - p(2)) / int(2),
            Functor::Sym2 => (p(1) * p(1) + p(2)) / int(2),
            Functor::Sym3 => {
                let s1 = p(1);
                (s1 * s1 * s1 + int(3) * s1 * p(2) + int(2) * p(3)) / int(6)
            }
            Functor::Sym4 => {
                let s1 = p(1);
                let s2 = p(2);
                let s1sq = s1 * s1;
                (&s1sq * &s1sq
                    + int(6) * &s1sq * s2
                    + int(3) * s2 * s2
                    + int(8) * s1 * p(3)
                    + int(6) * p(4))
                    / int(24)
            }
        }
    }
}

pub fn plethysm(f: &LocalFactor, functor: Functor) -> Result<LocalFactor> {
    let degree = functor.output_degree(f.degree())?;
    let order = functor.order();
    let input = power_sums(f, order * degree);
    let sums = PowerSums {
        prime: f.prime,
        values: (1..=degree).map(|m| functor.evaluate(&input, m)).collect(),
    };
    let out = from_power_sums(f.prime, degree, &sums)?.with_weight(f.weight * order as i64);
    debug_assert!(!f.is_integral() || out.is_integral());
    Ok(out)
}

/// Substitute `T -> p^j T`, shifting the weight by `2j`.
pub fn tate_twist(f: &LocalFactor, j: i64) -> LocalFactor {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * rat_pow(f.prime, i as i64 * j))
        .collect();
    LocalFactor {
        prime: f.prime,
        weight: f.weight + 2 * j,
        coeffs,
    }
}

/// Exact quotient `a / b`; fails unless `b` divides `a` as polynomials.
pub fn exact_divide(a: &LocalFactor, b: &LocalFactor) -> Result<LocalFactor> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    if a.weight != b.weight {
        return Err(Error::WeightMismatch(a.weight, b.weight));
    }
    let num = a.trimmed();
    let den = b.trimmed();
    if den.len() > num.len() {
        return Err(Error::NonzeroRemainder(a.prime));
    }
    let qlen = num.len() - den.len() + 1;
    // c0 = 1 on both sides, so the quotient is the truncated power series a/b.
    let mut q: Vec<BigRational> = Vec::with_capacity(qlen);
    for i in 0..num.len() {
        let mut acc = num[i].clone();
        for (j, d) in den.iter().enumerate().skip(1) {
            if j > i {
                break;
            }
            if let Some(qv) = q.get(i - j) {
                acc -= d * qv;
            }
        }
        if i < qlen {
            q.push(acc);
        } else if !acc.is_zero() {
            return Err(Error::NonzeroRemainder(a.prime));
        }
    }
    let nominal = a.degree().saturating_sub(b.degree()).max(qlen - 1);
    Ok(LocalFactor::new(a.prime, a.weight, q)?.with_degree(nominal))
}

/// Outcome of the self-dual purity witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub holds: bool,
    /// The sign `e` with `c_i p^((d-2i)w/2) = e c_(d-i)`, when one exists.
    pub sign: Option<i8>,
    /// First index where the symmetry fails.
    pub first_failure: Option<usize>,
}

/// Coefficient symmetry `c_i p^((d-2i)w/2) = e c_(d-i)` with one sign `e = ±1`,
/// checked at the nominal degree. Returns `holds = false` at index 0 when
/// `d w` is odd.
pub fn is_selfdual_pure(f: &LocalFactor) -> PurityReport {
    let d = f.degree() as i64;
    let w = f.weight;
    let fail = |i| PurityReport {
        holds: false,
        sign: None,
        first_failure: Some(i),
    };
    if (d * w) % 2 != 0 {
        return fail(0);
    }
    let top = f.coeff(f.degree());
    let scale = BigRational::from_integer(big_pow(f.prime, (d * w / 2).unsigned_abs() as u32));
    let scale = if d * w >= 0 { scale } else { scale.recip() };
    let sign: i8 = if top == scale {
        1
    } else if top == -scale {
        -1
    } else {
        return fail(0);
    };
    let e = BigRational::from_integer(BigInt::from(sign));
    for i in 0..=f.degree() {
        let lhs = f.coeff(i) * rat_pow(f.prime, (d - 2 * i as i64) * w / 2);
        if lhs != &e * f.coeff(f.degree() - i) {
            return fail(i);
        }
    }
    PurityReport {
        holds: true,
        sign: Some(sign),
        first_failure: None,
    }
}
