//! Predicted genus-2 Siegel forms: the GL(4) transfer `pi` (symmetric cube of
//! `eta`, or `eta` tensored with an induced Hecke character), its spin and
//! standard Euler factors, archimedean type, level, and a verification report.

mod lseries;
mod verify;

pub use lseries::{compare_coeffwise, dirichlet_coeffs, eval_partial, CoeffComparison, LObject, PartialSum};
pub use verify::{
    degree5_factor, pi_local, verify_identity, verify_range, Identity, PiLocal, Status, VerifyEntry,
    VerifyInputs, VerifyReport,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::archimedean::{classify, from_character, from_newform, sym3_arch, tensor_arch, ArchParam, Classification};
use crate::arith::{gcd, is_squarefree, primes_up_to};
use crate::error::{Error, Result};
use crate::heckechar::{conductor_ind, AntiCycChar};
use crate::localfactor::LocalFactor;
use crate::modform::{Character, Gl2Source};

/// Which level formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelRule {
    /// Symmetric cube of a square-free level `N`: `M = N`.
    SymCube,
    /// Twisted tensor with an induced character of conductor `N'` prime to `N`:
    /// `M = N^2 N'^2`.
    Tensor { conductor_ind: u64 },
}

pub fn level(rule: LevelRule, n: u64) -> Result<u64> {
    match rule {
        LevelRule::SymCube => {
            if !is_squarefree(n) {
                return Err(Error::UnsupportedLevel(format!("N = {n} is not square-free")));
            }
            Ok(n)
        }
        LevelRule::Tensor { conductor_ind } => {
            if gcd(n, conductor_ind) != 1 {
                return Err(Error::UnsupportedLevel(format!(
                    "N = {n} is not prime to N' = {conductor_ind}"
                )));
            }
            let m = n
                .checked_mul(conductor_ind)
                .and_then(|x| x.checked_mul(x))
                .ok_or_else(|| Error::UnsupportedLevel("level overflows u64".into()))?;
            Ok(m)
        }
    }
}

/// The GL(4) transfer together with the hypotheses under which it lifts.
#[derive(Clone, Debug)]
pub struct Construction {
    eta: Gl2Source,
    chi: Option<AntiCycChar>,
}

impl Construction {
    /// Symmetric cube of a newform of even weight and trivial character,
    /// without complex multiplication when given by a curve.
    pub fn sym3(eta: Gl2Source) -> Result<Self> {
        if eta.weight() % 2 != 0 {
            return Err(Error::Hypothesis(format!(
                "symmetric cube needs even weight, got k = {}",
                eta.weight()
            )));
        }
        if eta.character() != Character::Trivial {
            return Err(Error::Hypothesis("symmetric cube needs trivial character".into()));
        }
        if let Gl2Source::Curve(c) = &eta {
            if let Some(d) = c.cm_discriminant() {
                return Err(Error::Hypothesis(format!("curve has CM by discriminant {d}")));
            }
        }
        Ok(Construction { eta, chi: None })
    }

    /// `eta (x) Ind chi` with `w` and `k` of the same parity and the
    /// character of `eta` trivial (k even) or `delta_K` (k odd).
    pub fn tensor(eta: Gl2Source, chi: AntiCycChar) -> Result<Self> {
        let k = eta.weight();
        let w = chi.weight();
        if (k + w) % 2 != 0 {
            return Err(Error::Hypothesis(format!(
                "weights k = {k} and w = {w} have different parity"
            )));
        }
        let expected = if k % 2 == 0 {
            Character::Trivial
        } else {
            Character::Delta(chi.field().disc())
        };
        if eta.character() != expected {
            return Err(Error::Hypothesis(format!(
                "character of eta must be {expected:?} for k = {k}"
            )));
        }
        if let Gl2Source::Curve(c) = &eta {
            if c.cm_discriminant() == Some(chi.field().disc()) {
                return Err(Error::Hypothesis("K embeds in the endomorphism algebra of E".into()));
            }
        }
        Ok(Construction { eta, chi: Some(chi) })
    }

    pub fn eta(&self) -> &Gl2Source {
        &self.eta
    }

    pub fn chi(&self) -> Option<&AntiCycChar> {
        self.chi.as_ref()
    }

    pub fn inputs(&self) -> VerifyInputs<'_> {
        VerifyInputs {
            eta: Some(&self.eta),
            chi: self.chi.as_ref(),
        }
    }

    pub fn label(&self) -> String {
        match &self.chi {
            None => format!("Sym3({})", self.eta.label()),
            Some(chi) => format!("{} (x) Ind {}", self.eta.label(), chi.label()),
        }
    }

    /// Motivic weight of `pi`: `3(k-1)` or `(k-1) + w`.
    pub fn weight(&self) -> i64 {
        let k1 = i64::from(self.eta.weight() - 1);
        match &self.chi {
            None => 3 * k1,
            Some(chi) => k1 + i64::from(chi.weight()),
        }
    }

    pub fn arch(&self) -> Result<ArchParam> {
        let eta = from_newform(self.eta.weight())?;
        match &self.chi {
            None => sym3_arch(&eta),
            Some(chi) => tensor_arch(&eta, &from_character(chi.weight())?),
        }
    }

    pub fn level(&self) -> Result<u64> {
        let n = self.eta.level()?;
        match &self.chi {
            None => level(LevelRule::SymCube, n),
            Some(chi) => level(
                LevelRule::Tensor {
                    conductor_ind: conductor_ind(chi),
                },
                n,
            ),
        }
    }

    pub fn local(&self, p: u64) -> Result<PiLocal> {
        pi_local(self.inputs(), p)
    }

    /// Identities that apply to this construction.
    pub fn identities(&self) -> Vec<Identity> {
        match self.chi {
            None => vec![Identity::TensorSq, Identity::Sym3Ext2, Identity::Ramanujan],
            Some(_) => vec![
                Identity::TensorSq,
                Identity::Sym2Ind,
                Identity::ThmbExt2,
                Identity::Ramanujan,
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArchReport {
    pub exponents: Vec<u64>,
    pub weight: i64,
    #[serde(flatten)]
    pub classification: Classification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub cap: bool,
    pub endoscopic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiegelPrediction {
    pub label: String,
    pub level: u64,
    /// Level structure at primes dividing the level exactly once.
    pub iwahori_note: Vec<String>,
    pub arch: ArchReport,
    pub spin_factors: BTreeMap<u64, LocalFactor>,
    pub std_factors: BTreeMap<u64, LocalFactor>,
    /// Neither CAP nor endoscopic; recorded, not recomputed.
    pub flags: Flags,
    pub verification: VerifyReport,
    pub notes: Vec<String>,
}

fn iwahori_note(m: u64) -> Vec<String> {
    primes_up_to(m)
        .into_iter()
        .filter(|&p| m % p == 0 && (m / p) % p != 0)
        .map(|p| {
            format!(
                "p = {p}: v_p(M) = 1, invariant vector under K_p = {{k in GSp4(Z_p) : \
                 k = [[*,0,*,*],[*,*,*,*],[0,0,*,*],[0,0,0,*]] mod p}}"
            )
        })
        .collect()
}

/// Spin and standard factors, archimedean type, level and verification for
/// every prime `p <= pmax`.
pub fn predict_siegel(construction: &Construction, pmax: u64) -> Result<SiegelPrediction> {
    let arch = construction.arch()?;
    let classification = classify(&arch);
    let level = construction.level()?;
    let primes = primes_up_to(pmax);

    let locals: Vec<(u64, PiLocal)> = primes
        .par_iter()
        .map(|&p| construction.local(p).map(|l| (p, l)))
        .collect::<Result<_>>()?;
    let mut spin_factors = BTreeMap::new();
    let mut std_factors = BTreeMap::new();
    let mut notes = Vec::new();
    for (p, local) in locals {
        match local {
            PiLocal::Good(pi) => {
                std_factors.insert(p, degree5_factor(&pi)?);
                spin_factors.insert(p, pi);
            }
            PiLocal::Steinberg(pi) => {
                notes.push(format!(
                    "p = {p}: multiplicative; spin factor {pi} from the monodromy-invariant line, \
                     standard factor not computed"
                ));
                spin_factors.insert(p, pi);
            }
            PiLocal::Skipped(reason) => {
                notes.push(format!("p = {p}: {reason}; no local factors"));
            }
        }
    }
    if construction.chi().is_none() && level > 1 {
        notes.push(
            "level follows the square-free rule M = N; the Artin conductor of the symmetric \
             cube at a multiplicative prime is classically p^3"
                .into(),
        );
    }

    let verification = verify_range(&construction.identities(), construction.inputs(), &primes)?;
    Ok(SiegelPrediction {
        label: construction.label(),
        level,
        iwahori_note: iwahori_note(level),
        arch: ArchReport {
            exponents: arch.exponents().to_vec(),
            weight: arch.weight(),
            classification,
        },
        spin_factors,
        std_factors,
        flags: Flags {
            cap: false,
            endoscopic: false,
        },
        verification,
        notes,
    })
}

/// L-objects the command line can expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transfer {
    Gl2,
    Sym3,
    Tensor,
    /// Exterior square of the degree-4 transfer.
    Ext2,
    /// Degree-5 standard factors.
    Std,
}

impl Transfer {
    pub fn from_name(s: &str) -> Option<Transfer> {
        Some(match s {
            "gl2" => Transfer::Gl2,
            "sym3" => Transfer::Sym3,
            "tensor" => Transfer::Tensor,
            "ext2" => Transfer::Ext2,
            "std" => Transfer::Std,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Transfer::Gl2 => "gl2",
            Transfer::Sym3 => "sym3",
            Transfer::Tensor => "tensor",
            Transfer::Ext2 => "ext2",
            Transfer::Std => "std",
        }
    }
}

/// Euler product of `transfer` over `p <= bound`. Primes without a known
/// factor (bad or ramified, outside the Steinberg rule) are recorded as
/// unsupported and carry `1`.
pub fn transfer_object(
    eta: &Gl2Source,
    chi: Option<&AntiCycChar>,
    transfer: Transfer,
    bound: u64,
) -> Result<LObject> {
    if transfer == Transfer::Gl2 {
        let w = i64::from(eta.weight() - 1);
        let mut obj = LObject::from_fn(eta.label(), w, bound, |p| {
            crate::modform::local_factor_gl2(eta, p).map(Some)
        })?;
        obj.arch = Some(from_newform(eta.weight())?);
        obj.level = eta.level().ok();
        return Ok(obj);
    }
    let construction = match (transfer, chi) {
        (Transfer::Sym3, Some(_)) => {
            return Err(Error::Input("the sym3 transfer takes no character".into()))
        }
        (Transfer::Tensor, None) => return Err(Error::Input("the tensor transfer needs --D and --m".into())),
        (_, None) => Construction::sym3(eta.clone())?,
        (_, Some(chi)) => Construction::tensor(eta.clone(), *chi)?,
    };
    let w = construction.weight();
    let label = construction.label();
    let mut obj = match transfer {
        Transfer::Sym3 | Transfer::Tensor => LObject::from_fn(label, w, bound, |p| {
            Ok(construction.local(p)?.factor().cloned())
        })?,
        Transfer::Ext2 => LObject::from_fn(format!("Ext2 {label}"), 2 * w, bound, |p| match construction.local(p)? {
            PiLocal::Good(pi) => Ok(Some(crate::localfactor::plethysm(&pi, crate::localfactor::Functor::Ext2)?)),
            _ => Ok(None),
        })?,
        Transfer::Std => LObject::from_fn(format!("Std {label}"), 2 * w, bound, |p| match construction.local(p)? {
            PiLocal::Good(pi) => Ok(Some(degree5_factor(&pi)?)),
            _ => Ok(None),
        })?,
        Transfer::Gl2 => unreachable!(),
    };
    if matches!(transfer, Transfer::Sym3 | Transfer::Tensor) {
        obj.arch = Some(construction.arch()?);
        obj.level = construction.level().ok();
    }
    Ok(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archimedean::SiegelWeight;
    use crate::heckechar::ImagQuadField;
    use crate::modform::{parse_eigenfile, CurveData};

    fn e11a1() -> Gl2Source {
        Gl2Source::Curve(CurveData::new([0, -1, 1, 0, 0], Some(11)).unwrap())
    }

    #[test]
    fn level_rules() {
        assert_eq!(level(LevelRule::SymCube, 11).unwrap(), 11);
        assert_eq!(level(LevelRule::Tensor { conductor_ind: 4 }, 11).unwrap(), 1936);
        assert!(matches!(level(LevelRule::SymCube, 12), Err(Error::UnsupportedLevel(_))));
        assert!(level(LevelRule::Tensor { conductor_ind: 4 }, 6).is_err());
    }

    #[test]
    fn prediction_for_11a1() {
        let c = Construction::sym3(e11a1()).unwrap();
        let pred = predict_siegel(&c, 10).unwrap();
        assert_eq!(pred.level, 11);
        assert_eq!(pred.arch.classification.siegel, Some(SiegelWeight::Scalar(3)));
        assert_eq!(pred.spin_factors[&2], LocalFactor::from_integers(2, 3, [1, 0, 0, 0, 64]).unwrap());
        assert_eq!(pred.std_factors[&2].degree(), 5);
        assert!(pred.verification.is_ok());
        assert!(!pred.flags.cap && !pred.flags.endoscopic);
        assert!(pred.iwahori_note[0].starts_with("p = 11"));
    }

    #[test]
    fn unit_incompatible_character_rejected() {
        let k = ImagQuadField::new(-4).unwrap();
        assert!(matches!(AntiCycChar::new(k, 1), Err(Error::UnitIncompatible { .. })));
    }

    #[test]
    fn delta_prediction() {
        let text = "weight 12 level 1 character trivial\n2 -24\n3 252\n5 4830\n7 -16744\n";
        let form = parse_eigenfile(text.as_bytes()).unwrap();
        let eta_factor = crate::modform::local_factor_gl2(&Gl2Source::Newform(form.clone()), 2).unwrap();
        let c = Construction::sym3(Gl2Source::Newform(form)).unwrap();
        let pred = predict_siegel(&c, 10).unwrap();
        assert_eq!(pred.level, 1);
        assert!(pred.iwahori_note.is_empty());
        assert_eq!(pred.arch.classification.siegel, Some(SiegelWeight::Vector(33, 11)));
        let want = crate::localfactor::plethysm(&eta_factor, crate::localfactor::Functor::Sym3).unwrap();
        assert_eq!(pred.spin_factors[&2], want);
    }

    #[test]
    fn hypotheses() {
        let chi = AntiCycChar::new(ImagQuadField::new(-7).unwrap(), 1).unwrap();
        let odd = parse_eigenfile("weight 3 level 7 character delta -7\n".as_bytes()).unwrap();
        assert!(Construction::sym3(Gl2Source::Newform(odd.clone())).is_err());
        // k = 3 odd, w = 2 even: parity mismatch
        assert!(matches!(
            Construction::tensor(Gl2Source::Newform(odd), chi),
            Err(Error::Hypothesis(_))
        ));
        let cm = Gl2Source::Curve(CurveData::new([0, 0, 0, 0, 1], None).unwrap());
        assert!(Construction::sym3(cm).is_err());
    }

    #[test]
    fn tensor_prediction() {
        let chi = AntiCycChar::new(ImagQuadField::new(-4).unwrap(), 2).unwrap();
        let c = Construction::tensor(e11a1(), chi).unwrap();
        let pred = predict_siegel(&c, 30).unwrap();
        assert_eq!(pred.level, 1936);
        assert_eq!(pred.arch.exponents, vec![5, 3]);
        assert_eq!(pred.arch.classification.siegel, Some(SiegelWeight::Vector(5, 3)));
        assert!(pred.verification.is_ok());
        assert!(!pred.spin_factors.contains_key(&2));
        assert!(!pred.spin_factors.contains_key(&11));
        assert!(pred.spin_factors.values().all(|f| f.weight() == 5));
    }
}
