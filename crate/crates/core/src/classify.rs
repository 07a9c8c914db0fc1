//! JSJ type, symmetry group and the census of essential annuli.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::emknot::{canonicalize, HandlebodyKnot};
use crate::error::Result;
use crate::invariants::{characteristic_slopes, SlopeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JsjType {
    #[serde(rename = "M")]
    TypeM,
    #[serde(rename = "K")]
    TypeK,
}

impl JsjType {
    pub fn letter(self) -> char {
        match self {
            JsjType::TypeM => 'M',
            JsjType::TypeK => 'K',
        }
    }
}

/// The mapping class group of the knot, which here always equals its
/// orientation-preserving subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mcg {
    Z2,
    Z2xZ2,
}

impl Mcg {
    pub fn name(self) -> &'static str {
        match self {
            Mcg::Z2 => "Z2",
            Mcg::Z2xZ2 => "Z2xZ2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub jsj_type: JsjType,
    pub mcg: Mcg,
    pub mcg_positive_equal: bool,
}

/// Left knots are type K; a right knot is type K iff `l = ±2` or `Δ = ±2`.
pub fn jsj_type(hk: &HandlebodyKnot) -> Result<JsjType> {
    Ok(if hk.is_type_k()? {
        JsjType::TypeK
    } else {
        JsjType::TypeM
    })
}

/// `ℤ₂ × ℤ₂` exactly for type K knots whose two 3-3 slopes coincide.
pub fn mcg(hk: &HandlebodyKnot) -> Result<Mcg> {
    Ok(match characteristic_slopes(hk)? {
        SlopeData::TypeK { r1, r2, .. } if r1 == r2 => Mcg::Z2xZ2,
        _ => Mcg::Z2,
    })
}

pub fn classify(hk: &HandlebodyKnot) -> Result<Classification> {
    Ok(Classification {
        jsj_type: jsj_type(hk)?,
        mcg: mcg(hk)?,
        mcg_positive_equal: true,
    })
}

/// Essential annuli in the exterior.
///
/// For type K the separating non-characteristic annuli form a family `A_l`,
/// `l ∈ ℤ`; `type32_indices` lists the `l` with `A_l` of type 3-2, all others
/// being of type 4-1. For type M there are two characteristic annuli (type
/// 3-2) and a single type 4-1 annulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusCensus {
    pub jsj_type: JsjType,
    pub type32_indices: BTreeSet<i64>,
    /// Non-characteristic annuli not of type 4-1: the type 3-2 members of the
    /// family plus the type 3-3 annulus.
    pub noncharacteristic_non41_count: usize,
    pub has_type33: bool,
    pub characteristic_count: u8,
    pub type41_unique: bool,
}

pub fn annulus_census(hk: &HandlebodyKnot) -> Result<AnnulusCensus> {
    let c = canonicalize(hk)?;
    if !c.is_left() {
        return Ok(AnnulusCensus {
            jsj_type: JsjType::TypeM,
            type32_indices: BTreeSet::new(),
            noncharacteristic_non41_count: 0,
            has_type33: false,
            characteristic_count: 2,
            type41_unique: true,
        });
    }
    let q = c.params();
    let mut idx: BTreeSet<i64> = [-1, 0, 1].into();
    if matches!((q.m, q.n, q.p), (1, _, 0) | (2, 0, 1)) {
        idx.insert(2);
    }
    if matches!((q.m, q.p), (-1, 0)) {
        idx.insert(-2);
    }
    Ok(AnnulusCensus {
        jsj_type: JsjType::TypeK,
        noncharacteristic_non41_count: idx.len() + 1,
        type32_indices: idx,
        has_type33: true,
        characteristic_count: 1,
        type41_unique: false,
    })
}
