//! Eudave-Muñoz parameters `(l,m,n,p)`, their admissibility constraints, the
//! polynomials Λ, Φ, Δ, and the tangle identities (mirror image, horizontal
//! flip, rotation) acting on parameters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projrat::{add, mul, sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub p: i64,
}

impl Params {
    pub const fn new(l: i64, m: i64, n: i64, p: i64) -> Self {
        Params { l, m, n, p }
    }

    pub fn check(&self) -> Validity {
        check_constraints(self.l, self.m, self.n, self.p)
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_valid()
    }

    fn with_l(self, l: i64) -> Self {
        Params { l, ..self }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l, self.m, self.n, self.p)
    }
}

/// One clause of the admissibility list for `K(l,m,n,p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `n·p = 0`
    KnotCondition,
    /// `l ∉ {0,±1}`
    LNotUnit,
    /// `m ≠ 0`, the `p = 0` branch
    MNonzero,
    /// `(l,m) ≠ (2,1),(−2,−1)`
    LmNotTwoOne,
    /// `(m,n) ≠ (1,0),(−1,1)`
    MnExcluded,
    /// `m ∉ {0,1}`, the `n = 0` branch
    MNotZeroOne,
    /// `(l,m,p) ≠ (2,2,1),(−2,−1,0)`
    LmpExcluded,
}

impl Clause {
    pub fn label(&self) -> &'static str {
        match self {
            Clause::KnotCondition => "np=0",
            Clause::LNotUnit => "l∉{0,±1}",
            Clause::MNonzero => "m≠0",
            Clause::LmNotTwoOne => "(l,m)≠(±2,±1)",
            Clause::MnExcluded => "(m,n)≠(1,0),(−1,1)",
            Clause::MNotZeroOne => "m∉{0,1}",
            Clause::LmpExcluded => "(l,m,p)≠(2,2,1),(−2,−1,0)",
        }
    }

    /// Whether the clause reads `l` at all.
    pub fn involves_l(&self) -> bool {
        matches!(
            self,
            Clause::LNotUnit | Clause::LmNotTwoOne | Clause::LmpExcluded
        )
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validity {
    Valid,
    Invalid(Vec<Clause>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn violations(&self) -> &[Clause] {
        match self {
            Validity::Valid => &[],
            Validity::Invalid(v) => v,
        }
    }
}

/// Evaluates the admissibility list. At `n = p = 0` both branches apply and
/// agree, so the `p = 0` branch is used.
pub fn check_constraints(l: i64, m: i64, n: i64, p: i64) -> Validity {
    let mut bad = Vec::new();
    if n != 0 && p != 0 {
        bad.push(Clause::KnotCondition);
    } else if p == 0 {
        if matches!(l, -1..=1) {
            bad.push(Clause::LNotUnit);
        }
        if m == 0 {
            bad.push(Clause::MNonzero);
        }
        if matches!((l, m), (2, 1) | (-2, -1)) {
            bad.push(Clause::LmNotTwoOne);
        }
        if matches!((m, n), (1, 0) | (-1, 1)) {
            bad.push(Clause::MnExcluded);
        }
    } else {
        if matches!(l, -1..=1) {
            bad.push(Clause::LNotUnit);
        }
        if matches!(m, 0 | 1) {
            bad.push(Clause::MNotZeroOne);
        }
        if matches!((l, m, p), (2, 2, 1) | (-2, -1, 0)) {
            bad.push(Clause::LmpExcluded);
        }
    }
    if bad.is_empty() {
        Validity::Valid
    } else {
        Validity::Invalid(bad)
    }
}

/// Λ = 4mn − 2m + 1, Φ = 2pm − p − m, Δ = −2lmp + lm + lp + 2p − 1, together
/// with the specialisations Λ₀ (n = 0), Φ₀ (p = 0) and Δ₀ (p = 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    #[serde(with = "crate::projrat::wide_int")]
    pub lambda: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub phi: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub delta: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub lambda0: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub phi0: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub delta0: i128,
}

pub fn derived(params: &Params) -> Result<Derived> {
    let (l, m, n, p) = (
        i128::from(params.l),
        i128::from(params.m),
        i128::from(params.n),
        i128::from(params.p),
    );
    let lambda = add(sub(mul(4, mul(m, n)?)?, mul(2, m)?)?, 1)?;
    let phi = sub(sub(mul(2, mul(p, m)?)?, p)?, m)?;
    let lm = mul(l, m)?;
    let delta = [
        mul(-2, mul(lm, p)?)?,
        lm,
        mul(l, p)?,
        mul(2, p)?,
        -1,
    ]
    .into_iter()
    .try_fold(0i128, add)?;
    Ok(Derived {
        lambda,
        phi,
        delta,
        lambda0: add(mul(-2, m)?, 1)?,
        phi0: -m,
        delta0: sub(lm, 1)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Right => 'R',
            Side::Left => 'L',
        }
    }
}

/// The right or left handlebody-knot cut off by the twice-punctured torus in
/// the exterior of `K(l,m,n,p)`.
///
/// A left knot does not depend on `l`; its stored `l` is always the
/// placeholder returned by [`left_placeholder`], so two left knots with the
/// same `(m,n,p)` compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawKnot")]
pub struct HandlebodyKnot {
    side: Side,
    params: Params,
}

#[derive(Deserialize)]
struct RawKnot {
    side: Side,
    params: Params,
}

impl TryFrom<RawKnot> for HandlebodyKnot {
    type Error = Error;

    fn try_from(raw: RawKnot) -> Result<Self> {
        HandlebodyKnot::new(raw.side, raw.params)
    }
}

/// The `l` stored for a left knot: 3 when admissible, otherwise the
/// admissible value of smallest magnitude ≥ 2. `None` if `(m,n,p)` admits no
/// `l` at all.
pub fn left_placeholder(m: i64, n: i64, p: i64) -> Option<i64> {
    // only the clauses pinning l = ±2 depend on a value of |l| ≥ 2
    [3, 2, -2, -3]
        .into_iter()
        .find(|&l| check_constraints(l, m, n, p).is_valid())
}

impl HandlebodyKnot {
    /// Validates `params`; for [`Side::Left`] the given `l` is replaced by the
    /// placeholder.
    pub fn new(side: Side, params: Params) -> Result<Self> {
        match side {
            Side::Right => match params.check() {
                Validity::Valid => Ok(HandlebodyKnot { side, params }),
                Validity::Invalid(violations) => Err(Error::InvalidParams { params, violations }),
            },
            Side::Left => Self::left(params.m, params.n, params.p),
        }
    }

    pub fn right(l: i64, m: i64, n: i64, p: i64) -> Result<Self> {
        Self::new(Side::Right, Params::new(l, m, n, p))
    }

    pub fn left(m: i64, n: i64, p: i64) -> Result<Self> {
        match left_placeholder(m, n, p) {
            Some(l) => Ok(HandlebodyKnot {
                side: Side::Left,
                params: Params::new(l, m, n, p),
            }),
            None => {
                let params = Params::new(3, m, n, p);
                Err(Error::InvalidParams {
                    params,
                    violations: params.check().violations().to_vec(),
                })
            }
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn is_left(&self) -> bool {
        self.side == Side::Left
    }

    pub fn derived(&self) -> Result<Derived> {
        derived(&self.params)
    }

    /// Type K right knots: `l = ±2` or `Δ = ±2`. Left knots are always type K.
    pub fn is_type_k(&self) -> Result<bool> {
        Ok(match self.side {
            Side::Left => true,
            Side::Right => {
                matches!(self.params.l, 2 | -2) || matches!(self.derived()?.delta, 2 | -2)
            }
        })
    }
}

impl fmt::Display for HandlebodyKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Params { l, m, n, p } = self.params;
        match self.side {
            Side::Right => write!(f, "R:{l},{m},{n},{p}"),
            Side::Left => write!(f, "L:{m},{n},{p}"),
        }
    }
}

/// Parses `R:l,m,n,p` or `L:m,n,p`, ignoring whitespace, and validates.
impl FromStr for HandlebodyKnot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (side, rest) = compact
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected R:l,m,n,p or L:m,n,p, got {s:?}")))?;
        let nums = rest
            .split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad parameter {t:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match (side, nums.as_slice()) {
            ("R" | "r", &[l, m, n, p]) => Self::right(l, m, n, p),
            ("L" | "l", &[m, n, p]) => Self::left(m, n, p),
            ("R" | "r", _) => Err(Error::Parse(format!(
                "right knot needs 4 parameters l,m,n,p, got {}",
                nums.len()
            ))),
            ("L" | "l", _) => Err(Error::Parse(format!(
                "left knot needs 3 parameters m,n,p, got {}",
                nums.len()
            ))),
            _ => Err(Error::Parse(format!("unknown side {side:?}, expected R or L"))),
        }
    }
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}

/// Which of the two mirror identities to apply; at `n = p = 0` both do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorForm {
    /// `(l,m,n,0) ↦ (−l,−m,1−n,0)`
    PZero,
    /// `(l,m,0,p) ↦ (−l,1−m,0,1−p)`
    NZero,
}

impl MirrorForm {
    pub fn applies(self, params: &Params) -> bool {
        match self {
            MirrorForm::PZero => params.p == 0,
            MirrorForm::NZero => params.n == 0,
        }
    }

    fn map(self, q: &Params) -> Result<Params> {
        let neg_l = ck(q.l.checked_neg())?;
        Ok(match self {
            MirrorForm::PZero => Params::new(
                neg_l,
                ck(q.m.checked_neg())?,
                ck(1i64.checked_sub(q.n))?,
                0,
            ),
            MirrorForm::NZero => Params::new(
                neg_l,
                ck(1i64.checked_sub(q.m))?,
                0,
                ck(1i64.checked_sub(q.p))?,
            ),
        })
    }
}

/// The mirror image, via the `p = 0` identity unless `p ≠ 0`.
pub fn mirror(hk: &HandlebodyKnot) -> Result<HandlebodyKnot> {
    let form = if hk.params.p != 0 {
        MirrorForm::NZero
    } else {
        MirrorForm::PZero
    };
    mirror_with(hk, form)
}

pub fn mirror_with(hk: &HandlebodyKnot, form: MirrorForm) -> Result<HandlebodyKnot> {
    if !form.applies(&hk.params) {
        return Err(Error::Precondition(format!(
            "mirror form {form:?} does not apply to {hk}"
        )));
    }
    HandlebodyKnot::new(hk.side, form.map(&hk.params)?)
}

/// `(±l,±1,n,0) ↦ (∓l±1,±1,n,0)`, i.e. `l ↦ m − l` for `m = ±1`, `p = 0`.
pub fn horizontal_flip(hk: &HandlebodyKnot) -> Result<HandlebodyKnot> {
    let q = hk.params;
    if q.p != 0 || !matches!(q.m, 1 | -1) {
        return Err(Error::Precondition(format!(
            "horizontal flip needs p = 0 and m = ±1, got {hk}"
        )));
    }
    HandlebodyKnot::new(hk.side, q.with_l(ck(q.m.checked_sub(q.l))?))
}

/// The side-swapping identities
///
/// * `Two`: `(2,m,n,0) ↔ (2,1−m,0,n)`
/// * `MinusTwo`: `(−2,m,n,0) ↔ (−2,−m,0,n)`
/// * `ThreeOne`: `(3,1,n,0) ↔ (−2,−1,0,n)`
/// * `MinusThreeOne`: `(−3,−1,n,0) ↔ (2,2,0,n)`
///
/// each relating `𝓔_R` on one side to `𝓔_L` on the other, in both directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RotationRule {
    Two,
    MinusTwo,
    ThreeOne,
    MinusThreeOne,
}

impl RotationRule {
    pub const ALL: [RotationRule; 4] = [
        RotationRule::Two,
        RotationRule::MinusTwo,
        RotationRule::ThreeOne,
        RotationRule::MinusThreeOne,
    ];

    /// The value of `l` on the `p = 0` side and on the `n = 0` side.
    fn ls(self) -> (i64, i64) {
        match self {
            RotationRule::Two => (2, 2),
            RotationRule::MinusTwo => (-2, -2),
            RotationRule::ThreeOne => (3, -2),
            RotationRule::MinusThreeOne => (-3, 2),
        }
    }

    /// `(l,m,n,0) ↦ (l′,m′,0,n)` if `q` has the `p = 0` shape.
    fn forward(self, q: &Params) -> Result<Option<Params>> {
        let (l0, l1) = self.ls();
        if q.l != l0 || q.p != 0 {
            return Ok(None);
        }
        let m = match self {
            RotationRule::Two => ck(1i64.checked_sub(q.m))?,
            RotationRule::MinusTwo => ck(q.m.checked_neg())?,
            RotationRule::ThreeOne if q.m == 1 => -1,
            RotationRule::MinusThreeOne if q.m == -1 => 2,
            _ => return Ok(None),
        };
        Ok(Some(Params::new(l1, m, 0, q.n)))
    }

    /// `(l′,m′,0,p) ↦ (l,m,p,0)` if `q` has the `n = 0` shape.
    fn backward(self, q: &Params) -> Result<Option<Params>> {
        let (l0, l1) = self.ls();
        if q.l != l1 || q.n != 0 {
            return Ok(None);
        }
        let m = match self {
            RotationRule::Two => ck(1i64.checked_sub(q.m))?,
            RotationRule::MinusTwo => ck(q.m.checked_neg())?,
            RotationRule::ThreeOne if q.m == -1 => 1,
            RotationRule::MinusThreeOne if q.m == 2 => -1,
            _ => return Ok(None),
        };
        Ok(Some(Params::new(l0, m, q.p, 0)))
    }
}

/// One application of a rotation identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rotation {
    pub rule: RotationRule,
    /// `true` when read from the `p = 0` side to the `n = 0` side.
    pub forward: bool,
    /// The concrete parameters the identity was applied to (for a left knot,
    /// `l` is chosen to match the identity).
    pub from: Params,
    pub to: Params,
}

/// Every admissible application of a rotation identity to `hk`. Both ends of
/// each application are admissible parameter tuples.
pub fn rotations(hk: &HandlebodyKnot) -> Result<Vec<(HandlebodyKnot, Rotation)>> {
    let candidates: Vec<Params> = match hk.side {
        Side::Right => vec![hk.params],
        Side::Left => [2, -2, 3, -3]
            .into_iter()
            .map(|l| hk.params.with_l(l))
            .filter(Params::is_valid)
            .collect(),
    };
    let mut out = Vec::new();
    for forward in [true, false] {
        for rule in RotationRule::ALL {
            for q in &candidates {
                let image = if forward {
                    rule.forward(q)?
                } else {
                    rule.backward(q)?
                };
                let Some(to) = image else { continue };
                if !to.is_valid() {
                    continue;
                }
                let target = HandlebodyKnot::new(hk.side.other(), to)?;
                if out.iter().any(|(k, _)| *k == target) {
                    continue;
                }
                out.push((
                    target,
                    Rotation {
                        rule,
                        forward,
                        from: *q,
                        to,
                    },
                ));
            }
        }
    }
    Ok(out)
}

/// Applies the first admissible rotation identity, swapping the side.
pub fn rotate(hk: &HandlebodyKnot) -> Result<(HandlebodyKnot, Rotation)> {
    rotations(hk)?
        .into_iter()
        .next()
        .ok_or(Error::NoRotation(*hk))
}

/// The two mirror identities composed through an `n = p = 0` tuple:
/// `(l,m,1,0) ↔ (l,m+1,0,1)`.
pub fn double_mirror(hk: &HandlebodyKnot) -> Result<HandlebodyKnot> {
    let (first, second) = match (hk.params.n, hk.params.p) {
        (1, 0) => (MirrorForm::PZero, MirrorForm::NZero),
        (0, 1) => (MirrorForm::NZero, MirrorForm::PZero),
        _ => {
            return Err(Error::Precondition(format!(
                "double mirror needs (n,p) = (1,0) or (0,1), got {hk}"
            )))
        }
    };
    mirror_with(&mirror_with(hk, first)?, second)
}

/// Rewrites every type K knot into left form. Type M knots and left knots are
/// returned unchanged.
///
/// Besides the rotation identities this needs [`double_mirror`] for the one
/// family `(3,2,0,1)` with `Δ = −2` and `l ≠ ±2`.
pub fn canonicalize(hk: &HandlebodyKnot) -> Result<HandlebodyKnot> {
    if hk.is_left() || !hk.is_type_k()? {
        return Ok(*hk);
    }
    let mut starts = vec![*hk];
    if let Ok(k) = double_mirror(hk) {
        starts.push(k);
    }
    for start in starts {
        match rotate(&start) {
            Ok((k, _)) if k.is_left() => return Ok(k),
            Ok((k, _)) => {
                return Err(Error::Internal(format!(
                    "rotation of right knot {start} produced {k}"
                )))
            }
            Err(Error::NoRotation(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal(format!(
        "type K right knot {hk} matches no rotation identity"
    )))
}

/// All admissible tuples `(l,m,n,p)` with every entry in `[-bound, bound]`,
/// in lexicographic order.
pub fn valid_params(bound: i64) -> impl Iterator<Item = Params> {
    let r = move || -bound..=bound;
    r().flat_map(move |l| {
        r().flat_map(move |m| {
            r().flat_map(move |n| r().map(move |p| Params::new(l, m, n, p)))
        })
    })
    .filter(Params::is_valid)
}

/// Every right knot and every left knot (once per `(m,n,p)`) in the box.
pub fn knots_in_box(bound: i64) -> Vec<HandlebodyKnot> {
    let mut out: Vec<HandlebodyKnot> = valid_params(bound)
        .map(|q| HandlebodyKnot {
            side: Side::Right,
            params: q,
        })
        .collect();
    let r = || -bound..=bound;
    for m in r() {
        for n in r() {
            for p in r() {
                if let Ok(k) = HandlebodyKnot::left(m, n, p) {
                    out.push(k);
                }
            }
        }
    }
    out
}
