//! Per-prime identity checks between local factors.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::big_pow;
use crate::error::{Error, Result};
use crate::heckechar::{char_square, induced_factor, restriction_char, AntiCycChar, Splitting};
use crate::localfactor::{
    combine, exact_divide, plethysm, tate_twist, Combine, Functor, LocalFactor,
};
use crate::modform::{Gl2Source, ReductionKind};

/// The identities that can be checked prime by prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Identity {
    /// `pi (x) pi = Ext2(pi) + Sym2(pi)` for the degree-4 factor.
    TensorSq,
    /// `Ext2(Sym3 eta)(T) = Sym4(eta)(p^(k-1) T) * (1 - p^(3(k-1)) T)`.
    Sym3Ext2,
    /// `Sym2(Ind chi) = Ind(chi^2) + chi_0`.
    Sym2Ind,
    /// `Ext2(eta (x) Ind chi) = Sym2(eta) (x) (delta chi_0) + det(eta) (x) (Ind chi^2 + chi_0)`.
    ThmbExt2,
    /// `a_p^2 <= 4 p^(k-1)` for the GL(2) input.
    Ramanujan,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::TensorSq,
        Identity::Sym3Ext2,
        Identity::Sym2Ind,
        Identity::ThmbExt2,
        Identity::Ramanujan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::TensorSq => "tensor-sq",
            Identity::Sym3Ext2 => "sym3-ext2",
            Identity::Sym2Ind => "sym2-ind",
            Identity::ThmbExt2 => "thmb-ext2",
            Identity::Ramanujan => "ramanujan",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s)
    }

    /// The identity as checked, in arithmetic normalization.
    pub fn definition(self) -> &'static str {
        match self {
            Identity::TensorSq => "pi (x) pi == Ext2(pi) + Sym2(pi)",
            Identity::Sym3Ext2 => {
                "Ext2(Sym3 eta)(T) == Sym4(eta)(w(p) p^(k-1) T) * (1 - w(p)^3 p^(3(k-1)) T)"
            }
            Identity::Sym2Ind => "Sym2(Ind chi) == Ind(chi^2) + (1 - chi_0(p) T), chi_0(p) = p^w",
            Identity::ThmbExt2 => {
                "Ext2(eta (x) Ind chi) == Sym2(eta) (x) (1 - delta(p) chi_0(p) T) \
                 + (1 - w(p) p^(k-1) T) (x) (Ind(chi^2) + (1 - chi_0(p) T))"
            }
            Identity::Ramanujan => "a_p^2 <= 4 p^(k-1)",
        }
    }

    fn needs_eta(self) -> bool {
        !matches!(self, Identity::Sym2Ind)
    }

    fn needs_chi(self) -> bool {
        matches!(self, Identity::Sym2Ind | Identity::ThmbExt2)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Ok => "OK",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyEntry {
    pub prime: u64,
    pub identity: Identity,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<LocalFactor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<LocalFactor>,
}

impl VerifyEntry {
    fn skipped(prime: u64, identity: Identity, reason: impl Into<String>) -> Self {
        VerifyEntry {
            prime,
            identity,
            status: Status::Skipped,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
        }
    }

    fn compared(prime: u64, identity: Identity, lhs: LocalFactor, rhs: LocalFactor) -> Self {
        let status = if lhs.same_polynomial(&rhs) {
            Status::Ok
        } else {
            Status::Fail
        };
        VerifyEntry {
            prime,
            identity,
            status,
            reason: None,
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }
}

/// Entries in ascending prime order, then identity order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.entries.extend(other.entries);
        self.entries.sort_by_key(|e| (e.prime, e.identity));
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:>6}  {:<10}  {:<8}  {}\n", "p", "identity", "status", "detail");
        for e in &self.entries {
            let detail = match (&e.reason, &e.lhs) {
                (Some(r), _) => r.clone(),
                (None, Some(lhs)) => lhs.to_string(),
                (None, None) => String::new(),
            };
            out.push_str(&format!(
                "{:>6}  {:<10}  {:<8}  {}\n",
                e.prime, e.identity, e.status, detail
            ));
        }
        out.push_str(&format!(
            "# {} ok, {} failed, {} skipped\n",
            self.count(Status::Ok),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

/// What an identity is evaluated on.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyInputs<'a> {
    pub eta: Option<&'a Gl2Source>,
    pub chi: Option<&'a AntiCycChar>,
}

fn linear(p: u64, weight: i64, root: BigInt) -> LocalFactor {
    LocalFactor::linear(p, weight, root)
}

/// `f(T) -> f(-T)`.
fn negate_variable(f: &LocalFactor) -> LocalFactor {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    LocalFactor::new(f.prime(), f.weight(), coeffs).expect("constant term unchanged")
}

/// Check one identity at one prime. Bad, ramified or additive primes give
/// `SKIPPED`; a mismatch gives `FAIL`. Errors only signal missing inputs or
/// missing data (for instance an eigenvalue not in the table).
pub fn verify_identity(identity: Identity, inputs: VerifyInputs<'_>, p: u64) -> Result<VerifyEntry> {
    if identity.needs_eta() && inputs.eta.is_none() {
        return Err(Error::Input(format!("{identity} needs a GL(2) input")));
    }
    if identity.needs_chi() && inputs.chi.is_none() {
        return Err(Error::Input(format!("{identity} needs a Hecke character")));
    }
    if identity == Identity::TensorSq {
        return Ok(match pi_local(inputs, p)? {
            PiLocal::Good(pi) => tensor_square_entry(&pi),
            PiLocal::Steinberg(_) => VerifyEntry::skipped(p, identity, "bad prime (Steinberg)"),
            PiLocal::Skipped(reason) => VerifyEntry::skipped(p, identity, reason),
        });
    }

    let eta_local = match inputs.eta {
        Some(eta) => {
            let local = eta.local(p)?;
            if local.kind != ReductionKind::Good {
                return Ok(VerifyEntry::skipped(p, identity, format!("bad prime ({})", local.kind)));
            }
            Some((eta, local))
        }
        None => None,
    };
    if let Some(chi) = inputs.chi {
        if identity.needs_chi() && chi.field().splitting(p) == Splitting::Ramified {
            return Ok(VerifyEntry::skipped(p, identity, "ramified in K"));
        }
    }

    match identity {
        Identity::Sym3Ext2 => {
            let (eta, local) = eta_local.expect("checked above");
            let k1 = i64::from(eta.weight() - 1);
            let omega = eta.character().value(p);
            let lhs = plethysm(&plethysm(&local.factor, Functor::Sym3)?, Functor::Ext2)?;
            let mut sym4 = tate_twist(&plethysm(&local.factor, Functor::Sym4)?, k1);
            if omega == -1 {
                sym4 = negate_variable(&sym4);
            }
            let tate = linear(p, 6 * k1, omega * big_pow(p, 3 * (eta.weight() - 1)));
            let rhs = combine(&sym4, &tate, Combine::Sum)?;
            Ok(VerifyEntry::compared(p, identity, lhs, rhs))
        }
        Identity::Sym2Ind => {
            let chi = inputs.chi.expect("checked above");
            let w = i64::from(chi.weight());
            let lhs = plethysm(&induced_factor(chi, p)?, Functor::Sym2)?;
            let chi0 = linear(p, 2 * w, restriction_char(chi, p).value);
            let rhs = combine(&induced_factor(&char_square(chi), p)?, &chi0, Combine::Sum)?;
            Ok(VerifyEntry::compared(p, identity, lhs, rhs))
        }
        Identity::ThmbExt2 => {
            let (eta, local) = eta_local.expect("checked above");
            let chi = inputs.chi.expect("checked above");
            let k1 = eta.weight() - 1;
            let w = i64::from(chi.weight());
            let a = &local.factor;
            let b = induced_factor(chi, p)?;
            let lhs = plethysm(&combine(a, &b, Combine::Tensor)?, Functor::Ext2)?;

            let chi0 = restriction_char(chi, p).value;
            let det_b = linear(p, 2 * w, BigInt::from(chi.field().delta(p)) * &chi0);
            let det_a = linear(
                p,
                2 * i64::from(k1),
                BigInt::from(eta.character().value(p)) * big_pow(p, k1),
            );
            let sym2_b = combine(
                &induced_factor(&char_square(chi), p)?,
                &linear(p, 2 * w, chi0),
                Combine::Sum,
            )?;
            let rhs = combine(
                &combine(&plethysm(a, Functor::Sym2)?, &det_b, Combine::Tensor)?,
                &combine(&det_a, &sym2_b, Combine::Tensor)?,
                Combine::Sum,
            )?;
            Ok(VerifyEntry::compared(p, identity, lhs, rhs))
        }
        Identity::Ramanujan => {
            let (eta, local) = eta_local.expect("checked above");
            let bound = 4 * big_pow(p, eta.weight() - 1);
            let ok = &local.ap * &local.ap <= bound;
            Ok(VerifyEntry {
                prime: p,
                identity,
                status: if ok { Status::Ok } else { Status::Fail },
                reason: (!ok).then(|| format!("a_p = {} exceeds 2 p^((k-1)/2)", local.ap)),
                lhs: Some(local.factor),
                rhs: None,
            })
        }
        Identity::TensorSq => unreachable!("handled above"),
    }
}

fn tensor_square_entry(pi: &LocalFactor) -> VerifyEntry {
    let check = || -> Result<(LocalFactor, LocalFactor)> {
        let lhs = combine(pi, pi, Combine::Tensor)?;
        let rhs = combine(
            &plethysm(pi, Functor::Ext2)?,
            &plethysm(pi, Functor::Sym2)?,
            Combine::Sum,
        )?;
        Ok((lhs, rhs))
    };
    let (lhs, rhs) = check().expect("degree-4 factor supports every functor");
    VerifyEntry::compared(pi.prime(), Identity::TensorSq, lhs, rhs)
}

/// Local degree-4 datum of the GL(4) transfer at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiLocal {
    Good(LocalFactor),
    /// Multiplicative reduction under the symmetric cube: `1 - a_p^3 T`.
    Steinberg(LocalFactor),
    Skipped(String),
}

impl PiLocal {
    pub fn factor(&self) -> Option<&LocalFactor> {
        match self {
            PiLocal::Good(f) | PiLocal::Steinberg(f) => Some(f),
            PiLocal::Skipped(_) => None,
        }
    }
}

/// `Sym3(eta)` without a character, `eta (x) Ind chi` with one.
pub fn pi_local(inputs: VerifyInputs<'_>, p: u64) -> Result<PiLocal> {
    let eta = inputs
        .eta
        .ok_or_else(|| Error::Input("the degree-4 transfer needs a GL(2) input".into()))?;
    let local = eta.local(p)?;
    match inputs.chi {
        None => match local.kind {
            ReductionKind::Good => Ok(PiLocal::Good(plethysm(&local.factor, Functor::Sym3)?)),
            kind if kind.is_multiplicative() => {
                let k1 = i64::from(eta.weight() - 1);
                let root = &local.ap * &local.ap * &local.ap;
                Ok(PiLocal::Steinberg(LocalFactor::linear(p, 3 * k1, root).with_degree(4)))
            }
            kind => Ok(PiLocal::Skipped(format!("bad prime ({kind})"))),
        },
        Some(chi) => {
            if local.kind != ReductionKind::Good {
                return Ok(PiLocal::Skipped(format!("bad prime ({})", local.kind)));
            }
            if chi.field().splitting(p) == Splitting::Ramified {
                return Ok(PiLocal::Skipped("ramified in K".into()));
            }
            let b = induced_factor(chi, p)?;
            Ok(PiLocal::Good(combine(&local.factor, &b, Combine::Tensor)?))
        }
    }
}

/// Degree-5 (standard) factor: `Ext2(pi)` divided by the polarization factor
/// `1 - p^w T`, where `w` is the weight of `pi`.
pub fn degree5_factor(pi: &LocalFactor) -> Result<LocalFactor> {
    if pi.degree() != 4 {
        return Err(Error::WrongDegree {
            functor: "degree5",
            expected: 4,
            got: pi.degree(),
        });
    }
    let w = pi.weight();
    let ext2 = plethysm(pi, Functor::Ext2)?;
    let polarization = linear(pi.prime(), 2 * w, big_pow(pi.prime(), w.unsigned_abs() as u32));
    exact_divide(&ext2, &polarization).map_err(|e| match e {
        Error::NonzeroRemainder(p) => Error::NotSymplectic(p),
        other => other,
    })
}

/// Check each identity at each prime, in parallel, merged in prime order.
pub fn verify_range(identities: &[Identity], inputs: VerifyInputs<'_>, primes: &[u64]) -> Result<VerifyReport> {
    let per_prime: Vec<Vec<VerifyEntry>> = primes
        .par_iter()
        .map(|&p| {
            identities
                .iter()
                .map(|&id| verify_identity(id, inputs, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut report = VerifyReport {
        entries: per_prime.into_iter().flatten().collect(),
    };
    report.entries.sort_by_key(|e| (e.prime, e.identity));
    Ok(report)
}
