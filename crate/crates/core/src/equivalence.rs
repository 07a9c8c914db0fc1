//! Deciding equivalence, mirror equivalence and homeomorphism of exteriors
//! from the slope invariants.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::emknot::{
    double_mirror, horizontal_flip, mirror, rotations, HandlebodyKnot, RotationRule,
};
use crate::error::{Error, Result};
use crate::invariants::{characteristic_slopes, SlopeData};
use crate::projrat::ProjRat;

/// An identity between two presentations of the same handlebody-knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// `(l,m,1,0) ↔ (l,m+1,0,1)`
    DoubleMirror,
    /// `l ↦ m − l` for `m = ±1`, `p = 0`
    HorizontalFlip,
    Rotation { rule: RotationRule, forward: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    #[serde(flatten)]
    pub step: Move,
    #[serde(with = "display_knot")]
    pub from: HandlebodyKnot,
    #[serde(with = "display_knot")]
    pub to: HandlebodyKnot,
}

mod display_knot {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::emknot::HandlebodyKnot;

    pub fn serialize<S: Serializer>(k: &HandlebodyKnot, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(k)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<HandlebodyKnot, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// All single identity applications leaving `hk` at a different presentation.
pub fn neighbours(hk: &HandlebodyKnot) -> Result<Vec<(HandlebodyKnot, Move)>> {
    let mut out = Vec::new();
    if let Ok(k) = double_mirror(hk) {
        out.push((k, Move::DoubleMirror));
    }
    if let Ok(k) = horizontal_flip(hk) {
        if k != *hk {
            out.push((k, Move::HorizontalFlip));
        }
    }
    for (k, rot) in rotations(hk)? {
        out.push((
            k,
            Move::Rotation {
                rule: rot.rule,
                forward: rot.forward,
            },
        ));
    }
    Ok(out)
}

/// Largest parameter magnitude, ignoring the placeholder `l` of left knots.
pub(crate) fn max_abs(hk: &HandlebodyKnot) -> i64 {
    let q = hk.params();
    let l = if hk.is_left() { 0 } else { q.l.saturating_abs() };
    [l, q.m.saturating_abs(), q.n.saturating_abs(), q.p.saturating_abs()]
        .into_iter()
        .max()
        .unwrap_or(0)
}

/// Breadth-first search for a chain of identities from `a` to `b`, exploring
/// at most `max_steps` applications and staying within two units of the
/// largest parameter of either end.
pub fn find_rewrite_chain(
    a: &HandlebodyKnot,
    b: &HandlebodyKnot,
    max_steps: usize,
) -> Result<Option<Vec<RewriteStep>>> {
    if a == b {
        return Ok(Some(Vec::new()));
    }
    let limit = max_abs(a).max(max_abs(b)).saturating_add(2);
    let mut parent: HashMap<HandlebodyKnot, RewriteStep> = HashMap::new();
    let mut queue = VecDeque::from([(*a, 0usize)]);
    while let Some((k, depth)) = queue.pop_front() {
        if depth == max_steps {
            continue;
        }
        for (next, step) in neighbours(&k)? {
            if next == *a || parent.contains_key(&next) || max_abs(&next) > limit {
                continue;
            }
            parent.insert(
                next,
                RewriteStep {
                    step,
                    from: k,
                    to: next,
                },
            );
            if next == *b {
                let mut chain = Vec::new();
                let mut cur = next;
                while cur != *a {
                    let s = parent[&cur];
                    chain.push(s);
                    cur = s.from;
                }
                chain.reverse();
                return Ok(Some(chain));
            }
            queue.push_back((next, depth + 1));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    TypeMismatch,
    SlopeMatch,
    SlopeMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub reason: VerdictReason,
    /// A chain of identities realising the equivalence, when a short one
    /// exists. Informational only.
    pub witness: Option<Vec<RewriteStep>>,
}

const WITNESS_STEPS: usize = 6;

fn same_slopes(a: &SlopeData, b: &SlopeData) -> Option<bool> {
    match (a, b) {
        (SlopeData::TypeM { r_a, r_b }, SlopeData::TypeM { r_a: s_a, r_b: s_b }) => {
            Some((r_a == s_a && r_b == s_b) || (r_a == s_b && r_b == s_a))
        }
        (SlopeData::TypeK { r_c, .. }, SlopeData::TypeK { r_c: s_c, .. }) => Some(r_c == s_c),
        _ => None,
    }
}

/// Equivalent iff the JSJ types agree and the characteristic slopes agree
/// (as an unordered pair for type M).
pub fn equivalent(a: &HandlebodyKnot, b: &HandlebodyKnot) -> Result<EquivalenceVerdict> {
    let sa = characteristic_slopes(a)?;
    let sb = characteristic_slopes(b)?;
    Ok(match same_slopes(&sa, &sb) {
        None => EquivalenceVerdict {
            equivalent: false,
            reason: VerdictReason::TypeMismatch,
            witness: None,
        },
        Some(false) => EquivalenceVerdict {
            equivalent: false,
            reason: VerdictReason::SlopeMismatch,
            witness: None,
        },
        Some(true) => EquivalenceVerdict {
            equivalent: true,
            reason: VerdictReason::SlopeMatch,
            witness: find_rewrite_chain(a, b, WITNESS_STEPS)?,
        },
    })
}

/// Whether `b` is equivalent to the mirror image of `a`.
pub fn mirror_equivalent(a: &HandlebodyKnot, b: &HandlebodyKnot) -> Result<EquivalenceVerdict> {
    equivalent(&mirror(a)?, b)
}

fn char_slope(hk: &HandlebodyKnot) -> Result<ProjRat> {
    match characteristic_slopes(hk)? {
        SlopeData::TypeK { r_c, .. } => Ok(r_c),
        SlopeData::TypeM { .. } => Err(Error::RequiresTypeK),
    }
}

/// For type K knots: the exteriors are homeomorphic iff the characteristic
/// slopes agree modulo ℤ and up to sign.
pub fn exteriors_homeomorphic(a: &HandlebodyKnot, b: &HandlebodyKnot) -> Result<bool> {
    let x = char_slope(a)?.mod_one()?;
    let y = char_slope(b)?;
    Ok(x == y.mod_one()? || x == y.negate().mod_one()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub knot: HandlebodyKnot,
    pub r_c: ProjRat,
}

/// The knots `𝒱_L(∗,m,0,p)` for `p` in a range, with the pairwise verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub m: i64,
    pub members: Vec<FamilyMember>,
    pub pairwise_inequivalent: bool,
    pub pairwise_exteriors_homeomorphic: bool,
}

pub fn enumerate_family(m: i64, p_from: i64, p_to: i64) -> Result<FamilyReport> {
    if matches!(m, 0 | 1) {
        return Err(Error::Precondition(format!("family needs m ∉ {{0,1}}, got m = {m}")));
    }
    if p_from > p_to {
        return Err(Error::Precondition(format!("empty range {p_from}..={p_to}")));
    }
    let members = (p_from..=p_to)
        .map(|p| {
            let knot = HandlebodyKnot::left(m, 0, p)?;
            Ok(FamilyMember {
                knot,
                r_c: char_slope(&knot)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut inequivalent = true;
    let mut homeomorphic = true;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            inequivalent &= a.r_c != b.r_c;
            homeomorphic &= exteriors_homeomorphic(&a.knot, &b.knot)?;
        }
    }
    Ok(FamilyReport {
        m,
        members,
        pairwise_inequivalent: inequivalent,
        pairwise_exteriors_homeomorphic: homeomorphic,
    })
}
