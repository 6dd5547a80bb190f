//! Finite Euler products: Dirichlet coefficients and partial sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::archimedean::ArchParam;
use crate::arith::{primes_up_to, smallest_prime_factors};
use crate::error::{Error, Result};
use crate::localfactor::{format_rational, LocalFactor};

/// Euler product supported on the primes that carry a factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LObject {
    pub label: String,
    weight: i64,
    factors: BTreeMap<u64, LocalFactor>,
    pub arch: Option<ArchParam>,
    pub level: Option<u64>,
    /// Primes where no factor is known; they carry the factor `1`.
    pub unsupported: Vec<u64>,
}

impl LObject {
    pub fn new(label: impl Into<String>, weight: i64) -> Self {
        LObject {
            label: label.into(),
            weight,
            factors: BTreeMap::new(),
            arch: None,
            level: None,
            unsupported: Vec::new(),
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn factors(&self) -> &BTreeMap<u64, LocalFactor> {
        &self.factors
    }

    pub fn factor(&self, p: u64) -> Option<&LocalFactor> {
        self.factors.get(&p)
    }

    pub fn insert(&mut self, factor: LocalFactor) -> Result<()> {
        if factor.weight() != self.weight {
            return Err(Error::WeightMismatch(self.weight, factor.weight()));
        }
        let p = factor.prime();
        if self.factors.contains_key(&p) {
            return Err(Error::Input(format!("{}: factor at p = {p} already present", self.label)));
        }
        self.factors.insert(p, factor);
        Ok(())
    }

    /// Replace (or add) the factor at one prime.
    pub fn set(&mut self, factor: LocalFactor) -> Result<()> {
        self.factors.remove(&factor.prime());
        self.unsupported.retain(|&q| q != factor.prime());
        self.insert(factor)
    }

    /// Build from a per-prime rule over `p <= bound`; `None` marks the prime
    /// unsupported and stores `1` there.
    pub fn from_fn<F>(label: impl Into<String>, weight: i64, bound: u64, rule: F) -> Result<Self>
    where
        F: Fn(u64) -> Result<Option<LocalFactor>> + Sync,
    {
        let mut obj = LObject::new(label, weight);
        let primes = primes_up_to(bound);
        let computed: Vec<(u64, Option<LocalFactor>)> = primes
            .par_iter()
            .map(|&p| rule(p).map(|f| (p, f)))
            .collect::<Result<_>>()?;
        for (p, f) in computed {
            match f {
                Some(f) => obj.insert(f)?,
                None => {
                    obj.unsupported.push(p);
                    obj.insert(LocalFactor::one(p, weight, 0))?;
                }
            }
        }
        Ok(obj)
    }

    /// Riemann zeta: `1 - T` at every prime.
    pub fn zeta(bound: u64) -> Self {
        LObject::from_fn("zeta", 0, bound, |p| Ok(Some(LocalFactor::linear(p, 0, BigInt::one()))))
            .expect("zeta factors are valid")
    }

    /// Largest effective degree over the stored factors.
    pub fn max_degree(&self) -> usize {
        self.factors.values().map(LocalFactor::effective_degree).max().unwrap_or(0)
    }
}

/// Coefficients of `1/P(T)` up to `T^len`.
fn inverse_series(f: &LocalFactor, len: usize) -> Result<Vec<BigInt>> {
    let c = f.trimmed();
    let mut out: Vec<BigRational> = Vec::with_capacity(len + 1);
    out.push(BigRational::one());
    for j in 1..=len {
        let mut acc = BigRational::zero();
        for i in 1..c.len().min(j + 1) {
            acc -= &c[i] * &out[j - i];
        }
        out.push(acc);
    }
    out.into_iter()
        .map(|b| {
            if b.is_integer() {
                Ok(b.to_integer())
            } else {
                Err(Error::NonIntegral(format!("{} at p = {}", format_rational(&b), f.prime())))
            }
        })
        .collect()
}

/// `a_1, ..., a_X` of the Euler product; `result[n - 1] = a_n`.
pub fn dirichlet_coeffs(obj: &LObject, x: usize) -> Result<Vec<BigInt>> {
    if x == 0 {
        return Ok(Vec::new());
    }
    let primes = primes_up_to(x as u64);
    let missing: Vec<u64> = primes.iter().copied().filter(|p| !obj.factors.contains_key(p)).collect();
    if !missing.is_empty() {
        return Err(Error::MissingPrimes(missing));
    }
    let local: BTreeMap<u64, Vec<BigInt>> = primes
        .par_iter()
        .map(|&p| {
            let mut e = 0;
            let mut q = 1usize;
            while q <= x / p as usize {
                q *= p as usize;
                e += 1;
            }
            inverse_series(&obj.factors[&p], e).map(|s| (p, s))
        })
        .collect::<Result<_>>()?;

    let spf = smallest_prime_factors(x);
    let mut a = vec![BigInt::zero(); x + 1];
    a[1] = BigInt::one();
    for n in 2..=x {
        let p = spf[n];
        let mut m = n;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        a[n] = &local[&(p as u64)][e] * &a[m];
    }
    a.remove(0);
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartialSum {
    pub s: f64,
    pub x: usize,
    pub value: f64,
    /// Upper bound for `|sum_{n > X} a_n n^-s|` under the purity bound.
    pub tail_bound: f64,
}

/// Bound on `sum_{n > X} d_r(n) n^-sigma` from `sum_{n <= t} d_r(n) <= t (1 + log t)^(r-1)`.
fn tail_bound(r: usize, sigma: f64, x: usize) -> f64 {
    let n = r.max(1) - 1;
    let c = sigma - 1.0;
    let l = (x.max(1) as f64).ln();
    let mut total = 0.0;
    let mut falling = 1.0;
    for j in 0..=n {
        if j > 0 {
            falling *= (n - j + 1) as f64;
        }
        total += falling * (1.0 + l).powi((n - j) as i32) / c.powi(j as i32 + 1);
    }
    sigma * (-c * l).exp() * total
}

/// `sum_{n <= X} a_n n^-s` for `s > w/2 + 1`, with a tail estimate.
pub fn eval_partial(obj: &LObject, s: f64, x: usize) -> Result<PartialSum> {
    let bound = obj.weight as f64 / 2.0 + 1.0;
    if !(s > bound) {
        return Err(Error::OutsideConvergence { s, bound });
    }
    let coeffs = dirichlet_coeffs(obj, x)?;
    let value = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a.to_f64().unwrap_or(f64::NAN) * ((i + 1) as f64).powf(-s))
        .sum();
    Ok(PartialSum {
        s,
        x,
        value,
        tail_bound: tail_bound(obj.max_degree(), s - obj.weight as f64 / 2.0, x),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffComparison {
    Equal,
    Mismatch { n: usize, left: String, right: String },
}

/// First index where the two Dirichlet series differ.
pub fn compare_coeffwise(a: &LObject, b: &LObject, x: usize) -> Result<CoeffComparison> {
    let left = dirichlet_coeffs(a, x)?;
    let right = dirichlet_coeffs(b, x)?;
    Ok(left
        .iter()
        .zip(&right)
        .position(|(l, r)| l != r)
        .map_or(CoeffComparison::Equal, |i| CoeffComparison::Mismatch {
            n: i + 1,
            left: left[i].to_string(),
            right: right[i].to_string(),
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_coefficients() {
        let z = LObject::zeta(10);
        assert!(dirichlet_coeffs(&z, 10).unwrap().iter().all(BigInt::is_one));
    }

    #[test]
    fn single_prime_recursion() {
        let mut obj = LObject::new("test", 1);
        obj.insert(LocalFactor::from_integers(2, 1, [1, 2, 2]).unwrap()).unwrap();
        let series = inverse_series(obj.factor(2).unwrap(), 3).unwrap();
        let want: Vec<BigInt> = [1, -2, 2, 0].into_iter().map(BigInt::from).collect();
        assert_eq!(series, want);
        assert!(matches!(dirichlet_coeffs(&obj, 8), Err(Error::MissingPrimes(ref v)) if v == &[3, 5, 7]));
    }

    #[test]
    fn non_integral_series() {
        let mut obj = LObject::new("half", 0);
        let half = BigRational::new(1.into(), 2.into());
        obj.insert(LocalFactor::new(2, 0, vec![BigRational::one(), half]).unwrap()).unwrap();
        assert!(matches!(dirichlet_coeffs(&obj, 2), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn insert_checks_weight_and_duplicates() {
        let mut obj = LObject::new("x", 1);
        assert!(obj.insert(LocalFactor::linear(2, 0, BigInt::one())).is_err());
        obj.insert(LocalFactor::linear(2, 1, BigInt::one())).unwrap();
        assert!(obj.insert(LocalFactor::linear(2, 1, BigInt::one())).is_err());
    }

    #[test]
    fn zeta_two() {
        let z = LObject::zeta(10_000);
        let r = eval_partial(&z, 2.0, 10_000).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((r.value - exact).abs() < 1e-4);
        assert!(exact - r.value <= r.tail_bound);
    }

    #[test]
    fn boundary_rejected() {
        let z = LObject::zeta(10);
        assert!(matches!(eval_partial(&z, 1.0, 10), Err(Error::OutsideConvergence { .. })));
    }

    #[test]
    fn altered_factor_mismatch() {
        let z = LObject::zeta(20);
        let mut y = z.clone();
        y.set(LocalFactor::linear(7, 0, BigInt::from(2))).unwrap();
        assert_eq!(compare_coeffwise(&z, &z, 20).unwrap(), CoeffComparison::Equal);
        assert!(matches!(
            compare_coeffwise(&z, &y, 20).unwrap(),
            CoeffComparison::Mismatch { n: 7, .. }
        ));
    }
}
