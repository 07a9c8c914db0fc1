//! Rational tangles `R(a₁,…,aₙ)` compared through their fractions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projrat::{cf_eval, ProjRat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalTangle {
    coeffs: Vec<i64>,
}

impl RationalTangle {
    pub fn new(coeffs: impl Into<Vec<i64>>) -> Self {
        RationalTangle {
            coeffs: coeffs.into(),
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The continued fraction `[a₁,…,aₙ]`, which classifies the tangle.
    pub fn fraction(&self) -> Result<ProjRat> {
        cf_eval(&self.coeffs)
    }

    /// Two rational tangles are equivalent iff their fractions agree.
    /// A fraction that cannot be evaluated makes the pair inequivalent.
    pub fn equivalent(&self, other: &RationalTangle) -> bool {
        matches!((self.fraction(), other.fraction()), (Ok(a), Ok(b)) if a == b)
    }

    /// The two-twist identity `R(…,c,±2,d,…) = R(…,c±1,∓2,d±1,…)`.
    ///
    /// `index` points at the `±2` entry, which must have a neighbour on both
    /// sides; `positive` selects the upper sign.
    pub fn rewrite_two_twist(&self, index: usize, positive: bool) -> Result<RationalTangle> {
        let s: i64 = if positive { 1 } else { -1 };
        if index == 0 || index + 1 >= self.coeffs.len() {
            return Err(Error::Precondition(format!(
                "two-twist rewrite needs an interior position, got {index} in {self}"
            )));
        }
        if self.coeffs[index] != 2 * s {
            return Err(Error::Precondition(format!(
                "coefficient {} at position {index} of {self} is not {}",
                self.coeffs[index],
                2 * s
            )));
        }
        let bump = |x: i64| x.checked_add(s).ok_or(Error::Overflow);
        let mut out = self.coeffs.clone();
        out[index - 1] = bump(out[index - 1])?;
        out[index] = -2 * s;
        out[index + 1] = bump(out[index + 1])?;
        Ok(RationalTangle::new(out))
    }
}

impl fmt::Display for RationalTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parses `R(a1,a2,...)`; whitespace anywhere is ignored and `R()` is allowed.
impl FromStr for RationalTangle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("R(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected R(a1,...,an), got {s:?}")))?;
        if body.is_empty() {
            return Ok(RationalTangle::new(Vec::new()));
        }
        body.split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(RationalTangle::new)
    }
}

/// The three rational tangles of the Eudave-Muñoz construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmTangles {
    pub a: RationalTangle,
    pub b: RationalTangle,
    pub c: RationalTangle,
}

fn neg(x: i64) -> Result<i64> {
    x.checked_neg().ok_or(Error::Overflow)
}

/// `𝒜 = R(l)`, `𝓑 = R(p,−2,m,−l)`, `𝓒 = R(−n,2,m−1,2,0)`.
pub fn em_tangles(l: i64, m: i64, n: i64, p: i64) -> Result<EmTangles> {
    Ok(EmTangles {
        a: RationalTangle::new(vec![l]),
        b: RationalTangle::new(vec![p, -2, m, neg(l)?]),
        c: RationalTangle::new(vec![
            neg(n)?,
            2,
            m.checked_sub(1).ok_or(Error::Overflow)?,
            2,
            0,
        ]),
    })
}

/// `𝓑′ = R(p,−2,m,0)`, the tangle whose Montesinos link computes `r_c`.
pub fn b_prime(m: i64, p: i64) -> RationalTangle {
    RationalTangle::new(vec![p, -2, m, 0])
}

/// `𝓒′ = R(n,−2,1−m,0)`, 𝓒 rotated into the Montesinos position.
pub fn c_prime(m: i64, n: i64) -> Result<RationalTangle> {
    let a = 1i64.checked_sub(m).ok_or(Error::Overflow)?;
    Ok(RationalTangle::new(vec![n, -2, a, 0]))
}
