//! Class-number-one imaginary quadratic fields and their unramified
//! anti-cyclotomic Hecke characters `chi((alpha)) = alpha^(2m)`.
//!
//! Field elements are written `x + y*tau` in the standard integral basis,
//! `tau = sqrt(D)/2` when `4 | D` and `tau = (1 + sqrt(D))/2` otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{big_pow, is_prime, kronecker};
use crate::error::{Error, Result};
use crate::localfactor::LocalFactor;

pub const SUPPORTED_DISCRIMINANTS: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ImagQuadField {
    disc: i64,
    /// Trace and norm of `tau`; `tau^2 = trace*tau - norm`.
    tau_trace: i64,
    tau_norm: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl ImagQuadField {
    pub fn new(disc: i64) -> Result<Self> {
        if !SUPPORTED_DISCRIMINANTS.contains(&disc) {
            return Err(Error::UnsupportedDiscriminant(disc));
        }
        let (tau_trace, tau_norm) = if disc % 4 == 0 {
            (0, -disc / 4)
        } else {
            (1, (1 - disc) / 4)
        };
        Ok(ImagQuadField {
            disc,
            tau_trace,
            tau_norm,
        })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn element(&self, x: impl Into<BigInt>, y: impl Into<BigInt>) -> QuadInt {
        QuadInt {
            field: *self,
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn tau(&self) -> QuadInt {
        self.element(0, 1)
    }

    pub fn units(&self) -> Vec<QuadInt> {
        let order = match self.disc {
            -4 => 4,
            -3 => 6,
            _ => 2,
        };
        // tau generates the unit group for D = -4 (tau = i) and D = -3
        // (tau a primitive sixth root of unity).
        let gen = if order == 2 { self.element(-1, 0) } else { self.tau() };
        let mut out = Vec::with_capacity(order);
        let mut u = self.element(1, 0);
        for _ in 0..order {
            out.push(u.clone());
            u = &u * &gen;
        }
        out
    }

    pub fn unit_count(&self) -> usize {
        self.units().len()
    }

    /// Kronecker symbol `(D | p)`.
    pub fn delta(&self, p: u64) -> i64 {
        kronecker(self.disc, p)
    }

    pub fn splitting(&self, p: u64) -> Splitting {
        match self.delta(p) {
            1 => Splitting::Split,
            -1 => Splitting::Inert,
            _ => Splitting::Ramified,
        }
    }

    /// A generator of a prime above `p`.
    ///
    /// For split and ramified `p` this is the element `x + y*tau` of norm `p`
    /// with `y > 0` and `(x, y)` lexicographically largest; for inert `p` the
    /// prime ideal is `(p)` itself.
    pub fn prime_above(&self, p: u64) -> Result<PrimeAbove> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let splitting = self.splitting(p);
        if splitting == Splitting::Inert {
            return Ok(PrimeAbove::Inert(p));
        }
        let bound = (2.0 * (p as f64).sqrt()).ceil() as i64 + 1;
        let target = BigInt::from(p);
        let mut best: Option<(i64, i64)> = None;
        for y in 1..=bound {
            for x in -bound..=bound {
                if self.element(x, y).norm() == target && best.is_none_or(|b| (x, y) > b) {
                    best = Some((x, y));
                }
            }
        }
        let (x, y) = best.expect("class number one: every prime of norm p is principal");
        let pi = self.element(x, y);
        Ok(match splitting {
            Splitting::Split => PrimeAbove::Split(pi),
            _ => PrimeAbove::Ramified(pi),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeAbove {
    Split(QuadInt),
    Ramified(QuadInt),
    Inert(u64),
}

/// An algebraic integer `x + y*tau` of a supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadInt {
    field: ImagQuadField,
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadInt {
    pub fn field(&self) -> ImagQuadField {
        self.field
    }

    pub fn norm(&self) -> BigInt {
        let f = &self.field;
        &self.x * &self.x + &self.x * &self.y * f.tau_trace + &self.y * &self.y * f.tau_norm
    }

    pub fn trace(&self) -> BigInt {
        2 * &self.x + &self.y * self.field.tau_trace
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt {
            field: self.field,
            x: &self.x + &self.y * self.field.tau_trace,
            y: -&self.y,
        }
    }

    pub fn pow(&self, mut e: u32) -> QuadInt {
        let mut acc = self.field.element(1, 0);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }
}

impl<'a> std::ops::Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;

    fn mul(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.field, rhs.field, "elements of different fields");
        let f = &self.field;
        let yy = &self.y * &rhs.y;
        QuadInt {
            field: *f,
            x: &self.x * &rhs.x - &yy * f.tau_norm,
            y: &self.x * &rhs.y + &self.y * &rhs.x + &yy * f.tau_trace,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*tau", self.x, self.y)
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Coords {
            x: String,
            y: String,
        }
        Coords {
            x: self.x.to_string(),
            y: self.y.to_string(),
        }
        .serialize(s)
    }
}

/// Unramified anti-cyclotomic character of half-weight `m` (weight `2m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CharRepr", into = "CharRepr")]
pub struct AntiCycChar {
    field: ImagQuadField,
    m: u32,
}

#[derive(Serialize, Deserialize)]
struct CharRepr {
    #[serde(rename = "D")]
    disc: i64,
    m: u32,
}

impl TryFrom<CharRepr> for AntiCycChar {
    type Error = Error;

    fn try_from(r: CharRepr) -> Result<Self> {
        AntiCycChar::new(ImagQuadField::new(r.disc)?, r.m)
    }
}

impl From<AntiCycChar> for CharRepr {
    fn from(c: AntiCycChar) -> Self {
        CharRepr {
            disc: c.field.disc,
            m: c.m,
        }
    }
}

impl AntiCycChar {
    /// Requires `m >= 1` and `u^(2m) = 1` for every unit `u`.
    pub fn new(field: ImagQuadField, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Input("half-weight m must be positive".into()));
        }
        let one = field.element(1, 0);
        if field.units().iter().any(|u| u.pow(2 * m) != one) {
            return Err(Error::UnitIncompatible {
                disc: field.disc,
                m,
            });
        }
        Ok(AntiCycChar { field, m })
    }

    pub fn field(&self) -> ImagQuadField {
        self.field
    }

    pub fn half_weight(&self) -> u32 {
        self.m
    }

    pub fn weight(&self) -> u32 {
        2 * self.m
    }

    pub fn label(&self) -> String {
        format!("chi(D={}, m={})", self.field.disc, self.m)
    }
}

/// `chi((pi)) = pi^(2m)` in arithmetic normalization.
pub fn char_value(chi: &AntiCycChar, pi: &QuadInt) -> QuadInt {
    pi.pow(2 * chi.m)
}

/// Euler factor over Q of the automorphic induction of `chi` at `p`.
pub fn induced_factor(chi: &AntiCycChar, p: u64) -> Result<LocalFactor> {
    let w = i64::from(chi.weight());
    match chi.field.prime_above(p)? {
        PrimeAbove::Split(pi) => {
            let v = char_value(chi, &pi);
            LocalFactor::from_integers(p, w, [BigInt::one(), -v.trace(), v.norm()])
        }
        PrimeAbove::Inert(_) => {
            LocalFactor::from_integers(p, w, [BigInt::one(), BigInt::zero(), -big_pow(p, 2 * chi.m)])
        }
        PrimeAbove::Ramified(pi) => {
            let v = char_value(chi, &pi);
            debug_assert!(v.is_rational(), "unit compatibility forces a rational value");
            Ok(LocalFactor::linear(p, w, v.x).with_degree(2))
        }
    }
}

pub fn char_square(chi: &AntiCycChar) -> AntiCycChar {
    AntiCycChar {
        field: chi.field,
        m: 2 * chi.m,
    }
}

/// Arithmetic value of the restriction of `chi` to Q at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionValue {
    #[serde(serialize_with = "crate::arith::ser_decimal")]
    pub value: BigInt,
    /// Set when `p` ramifies in `K`; the value then follows the same `p^(2m)` convention.
    pub ramified: bool,
}

pub fn restriction_char(chi: &AntiCycChar, p: u64) -> RestrictionValue {
    RestrictionValue {
        value: big_pow(p, chi.weight()),
        ramified: chi.field.splitting(p) == Splitting::Ramified,
    }
}

/// Conductor of the induced representation: `|D|` for an unramified character.
pub fn conductor_ind(chi: &AntiCycChar) -> u64 {
    chi.field.disc.unsigned_abs()
}
