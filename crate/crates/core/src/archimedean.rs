//! Self-dual archimedean parameters that are sums of induced characters
//! `Ind (z/|z|)^j`, recorded by their positive exponents `j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchParam {
    /// Positive exponents, largest first.
    exponents: Vec<u64>,
    weight: i64,
}

impl ArchParam {
    pub fn new(mut exponents: Vec<u64>, weight: i64) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::InvalidArch(format!("zero exponent in {exponents:?}")));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ArchParam { exponents, weight })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Half the dimension of the parameter.
    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_regular(&self) -> bool {
        self.exponents.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_algebraic(&self) -> bool {
        self.exponents
            .iter()
            .all(|&j| (j as i64 - self.weight).rem_euclid(2) == 0)
    }

    fn single(&self, what: &str) -> Result<u64> {
        match self.exponents[..] {
            [j] => Ok(j),
            _ => Err(Error::InvalidArch(format!(
                "{what} needs a one-exponent parameter, got {:?}",
                self.exponents
            ))),
        }
    }
}

impl fmt::Display for ArchParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "{{{}}} (weight {})", parts.join(", "), self.weight)
    }
}

/// Parameter of a weight-`k` holomorphic newform: `{k-1}`.
pub fn from_newform(k: u32) -> Result<ArchParam> {
    if k < 2 {
        return Err(Error::InvalidArch(format!("newform weight {k} < 2")));
    }
    ArchParam::new(vec![u64::from(k - 1)], i64::from(k - 1))
}

/// Parameter of the induction of a weight-`w` Hecke character: `{w}`.
pub fn from_character(w: u32) -> Result<ArchParam> {
    ArchParam::new(vec![u64::from(w)], i64::from(w))
}

/// Symmetric cube: `{j} -> {3j, j}`.
pub fn sym3_arch(p: &ArchParam) -> Result<ArchParam> {
    let j = p.single("sym3")?;
    ArchParam::new(vec![3 * j, j], 3 * j as i64)
}

/// Tensor product: `{j} x {w} -> {j + w, |j - w|}`.
pub fn tensor_arch(a: &ArchParam, b: &ArchParam) -> Result<ArchParam> {
    let j = a.single("tensor")?;
    let w = b.single("tensor")?;
    if j == w {
        return Err(Error::NonRegular(format!(
            "tensor of equal exponents {j} has a zero exponent"
        )));
    }
    ArchParam::new(vec![j + w, j.abs_diff(w)], (j + w) as i64)
}

/// Exterior square of a two-exponent parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ext2Arch {
    pub param: ArchParam,
    /// The two-dimensional zero-exponent piece that is discounted.
    pub trivial_summand: bool,
}

/// `{a, b} -> {a+b, a-b}` plus a zero-exponent summand.
pub fn ext2_arch(p: &ArchParam) -> Result<Ext2Arch> {
    let [a, b] = p.exponents[..] else {
        return Err(Error::InvalidArch(format!(
            "ext2 needs two exponents, got {:?}",
            p.exponents
        )));
    };
    if a == b {
        return Err(Error::NonRegular(format!("ext2 of {{{a}, {b}}}")));
    }
    Ok(Ext2Arch {
        param: ArchParam::new(vec![a + b, a - b], 2 * p.weight)?,
        trivial_summand: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SiegelWeight {
    Scalar(u64),
    Vector(u64, u64),
}

impl fmt::Display for SiegelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiegelWeight::Scalar(k) => write!(f, "scalar weight {k}"),
            SiegelWeight::Vector(a, b) => write!(f, "vector-valued, exponents ({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub regular: bool,
    pub algebraic: bool,
    pub siegel: Option<SiegelWeight>,
}

/// Regularity, algebraicity and the Siegel weight read off a parameter.
///
/// Scalar weight `k` corresponds to exponents `{2k-3, 1}`; for `k = 2` these
/// collide and the parameter is not regular, but the scalar weight is still
/// reported.
pub fn classify(p: &ArchParam) -> Classification {
    let regular = p.is_regular();
    let algebraic = p.is_algebraic();
    let siegel = match p.exponents[..] {
        [a, 1] if algebraic && a % 2 == 1 => Some(SiegelWeight::Scalar((a + 3) / 2)),
        [a, b] if algebraic && regular => Some(SiegelWeight::Vector(a, b)),
        _ => None,
    };
    Classification {
        regular,
        algebraic,
        siegel,
    }
}
