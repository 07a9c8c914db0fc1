//! Exhaustive checks of the identities, estimates and oracles over finite
//! boxes of parameters.
//!
//! Every check runs in parallel over its instances and collects results in
//! input order, so reports do not depend on scheduling.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::emknot::{derived, knots_in_box, mirror, valid_params, HandlebodyKnot, Params};
use crate::equivalence::{max_abs, neighbours};
use crate::error::{Error, Result};
use crate::invariants::{
    characteristic_slopes, em_determinants, horizontal_slopes, left_slopes, montesinos_det,
    r_tilde_b, slope_mod_one, tangle_slope_records, type_m_slopes, vertical_slopes, Direction,
    MontesinosKind, SlopeData,
};
use crate::projrat::{cf_eval, ProjRat};
use crate::tangle::{em_tangles, RationalTangle};

pub const DEFAULT_BOUND: i64 = 8;
pub const DEFAULT_COLLISION_BOUND: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Oracles,
    Collisions,
    All,
}

impl Suite {
    pub fn default_bound(self) -> i64 {
        match self {
            Suite::Collisions => DEFAULT_COLLISION_BOUND,
            _ => DEFAULT_BOUND,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Oracles => "oracles",
            Suite::Collisions => "collisions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "oracles" => Ok(Suite::Oracles),
            "collisions" => Ok(Suite::Collisions),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!(
                "unknown suite {s:?}, expected lemmas, oracles, collisions or all"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub instances_tested: usize,
    pub violations: Vec<Violation>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub box_bound: i64,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

enum Outcome {
    Skip,
    Pass,
    Fail(String),
}

fn holds(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn run_check<T, S, F>(name: &str, items: &[T], subject: S, f: F) -> Result<CheckResult>
where
    T: Sync,
    S: Fn(&T) -> String + Sync,
    F: Fn(&T) -> Result<Outcome> + Sync,
{
    let outcomes = items
        .par_iter()
        .map(|t| f(t).map(|o| (t, o)))
        .collect::<Result<Vec<_>>>()?;
    let mut res = CheckResult {
        name: name.to_string(),
        instances_tested: 0,
        violations: Vec::new(),
    };
    for (t, o) in outcomes {
        match o {
            Outcome::Skip => {}
            Outcome::Pass => res.instances_tested += 1,
            Outcome::Fail(detail) => {
                res.instances_tested += 1;
                res.violations.push(Violation {
                    subject: subject(t),
                    detail,
                });
            }
        }
    }
    Ok(res)
}

fn require_bound(bound: i64) -> Result<()> {
    if bound < 3 {
        return Err(Error::Precondition(format!("bound must be at least 3, got {bound}")));
    }
    Ok(())
}

fn r(n: i128, d: i128) -> ProjRat {
    ProjRat::new(n, d).expect("constant fraction")
}

fn show(q: &Params) -> String {
    q.to_string()
}

fn right(q: &Params) -> HandlebodyKnot {
    HandlebodyKnot::right(q.l, q.m, q.n, q.p).expect("box tuples are admissible")
}

/// Admissible right tuples meeting the type M precondition.
fn is_type_m(q: &Params) -> Result<bool> {
    Ok(!right(q).is_type_k()?)
}

fn within(x: ProjRat, lo: ProjRat, hi: ProjRat) -> bool {
    lo <= x && x <= hi
}

fn report(suite: Suite, bound: i64, start: Instant, checks: Vec<CheckResult>) -> VerificationReport {
    VerificationReport {
        suite,
        box_bound: bound,
        checks,
        elapsed_ms: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
    }
}

fn left_knots(bound: i64) -> Vec<HandlebodyKnot> {
    knots_in_box(bound).into_iter().filter(HandlebodyKnot::is_left).collect()
}

/// Type M slope estimates, shared by the `|r_a|` checks.
fn ra_check(
    name: &str,
    params: &[Params],
    applies: impl Fn(&Params) -> bool + Sync,
    min: ProjRat,
) -> Result<CheckResult> {
    run_check(name, params, show, |q| {
        if !applies(q) || !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let (ra, _) = horizontal_slopes(q)?;
        Ok(holds(ra.abs() >= min, || format!("|r_a| = {}", ra.abs())))
    })
}

/// Non-vanishing claims, identities between Λ, Φ, Δ, and every slope
/// estimate.
pub fn verify_lemmas(bound: i64) -> Result<VerificationReport> {
    require_bound(bound)?;
    let start = Instant::now();
    let params: Vec<Params> = valid_params(bound).collect();
    let lefts = left_knots(bound);
    let ps = params.as_slice();
    let mut checks = Vec::new();

    checks.push(run_check("Δ = −lΦ + 2p − 1", ps, show, |q| {
        let d = derived(q)?;
        let rhs = -i128::from(q.l) * d.phi + 2 * i128::from(q.p) - 1;
        Ok(holds(d.delta == rhs, || format!("Δ = {}, −lΦ+2p−1 = {rhs}", d.delta)))
    })?);
    checks.push(run_check("Λ is odd", ps, show, |q| {
        let d = derived(q)?;
        Ok(holds(d.lambda.rem_euclid(2) == 1, || format!("Λ = {}", d.lambda)))
    })?);
    checks.push(run_check("Φ ≠ 0, Δ ≠ 0, |Λ| > 2", ps, show, |q| {
        let d = derived(q)?;
        Ok(holds(d.phi != 0 && d.delta != 0 && d.lambda.abs() > 2, || {
            format!("Λ = {}, Φ = {}, Δ = {}", d.lambda, d.phi, d.delta)
        }))
    })?);
    checks.push(run_check("(2−4n)Φ + (2p−1)Λ = ±1", ps, show, |q| {
        let d = derived(q)?;
        let v = (2 - 4 * i128::from(q.n)) * d.phi + (2 * i128::from(q.p) - 1) * d.lambda;
        Ok(holds(v.abs() == 1, || format!("value {v}")))
    })?);
    checks.push(run_check("2 − 4n + lΛ ≠ 0", ps, show, |q| {
        let v = em_determinants(q)?.d_h_b;
        Ok(holds(v != 0, || "vanishes".into()))
    })?);
    checks.push(run_check(
        "p ∉ {0,1}, l ≠ ±2: |[p,−2,m,−l]| ≥ 9/4, |Φ| ≥ 4, |Δ| ≥ 9",
        ps,
        show,
        |q| {
            if matches!(q.p, 0 | 1) || matches!(q.l, 2 | -2) {
                return Ok(Outcome::Skip);
            }
            let cf = cf_eval(&[q.p, -2, q.m, -q.l])?;
            let d = derived(q)?;
            Ok(holds(
                cf.abs() >= r(9, 4) && d.phi.abs() >= 4 && d.delta.abs() >= 9,
                || format!("[p,−2,m,−l] = {cf}, Φ = {}, Δ = {}", d.phi, d.delta),
            ))
        },
    )?);

    checks.push(ra_check(
        "type M, n ∉ {0,1}: |r_a| ≥ 14/3",
        ps,
        |q| !matches!(q.n, 0 | 1),
        r(14, 3),
    )?);
    checks.push(ra_check("type M, n = 1: |r_a| ≥ 8/3", ps, |q| q.n == 1, r(8, 3))?);
    checks.push(ra_check(
        "type M, p ∉ {0,1}: |r_a| ≥ 41/3",
        ps,
        |q| !matches!(q.p, 0 | 1),
        r(41, 3),
    )?);
    checks.push(ra_check(
        "type M, p ∉ {0,1}: |r_a| ≥ 35/3",
        ps,
        |q| !matches!(q.p, 0 | 1),
        r(35, 3),
    )?);
    checks.push(ra_check("type M, p = 1: |r_a| ≥ 8/3", ps, |q| q.p == 1, r(8, 3))?);

    checks.push(run_check("type M, p ∉ {0,1}: |r_b| ≤ 7/9", ps, show, |q| {
        if matches!(q.p, 0 | 1) || !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let (_, rb) = horizontal_slopes(q)?;
        Ok(holds(rb.abs() <= r(7, 9), || format!("r_b = {rb}")))
    })?);
    checks.push(run_check("type M, p = 1: 7/5 ≤ r_b ≤ 7/2", ps, show, |q| {
        if q.p != 1 || !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let (_, rb) = horizontal_slopes(q)?;
        Ok(holds(within(rb, r(7, 5), r(7, 2)), || format!("r_b = {rb}")))
    })?);

    checks.push(run_check("type M: l/(lm−1) = [−l,m,0]", ps, show, |q| {
        if !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let a = r_tilde_b(q.l, q.m)?;
        let b = cf_eval(&[-q.l, q.m, 0])?;
        Ok(holds(a == b, || format!("{a} vs {b}")))
    })?);
    checks.push(run_check(
        "type M: |l/(lm−1)| ≤ 3/5 for |m| ≥ 2, in [3/4, 3/2] for m = 1, in [−3/2, −3/4] for m = −1",
        ps,
        show,
        |q| {
            if !is_type_m(q)? {
                return Ok(Outcome::Skip);
            }
            let t = r_tilde_b(q.l, q.m)?;
            let ok = match q.m {
                1 => within(t, r(3, 4), r(3, 2)),
                -1 => within(t, r(-3, 2), r(-3, 4)),
                _ => t.abs() <= r(3, 5),
            };
            Ok(holds(ok, || format!("value {t}")))
        },
    )?);

    let ls = lefts.as_slice();
    let left_show = |k: &HandlebodyKnot| k.to_string();
    let rc_of = |k: &HandlebodyKnot| -> Result<ProjRat> {
        match characteristic_slopes(k)? {
            SlopeData::TypeK { r_c, .. } => Ok(r_c),
            SlopeData::TypeM { .. } => Err(Error::Internal(format!("left knot {k} read as type M"))),
        }
    };
    checks.push(run_check("type K, p ∉ {0,1}: |r_c| ≥ 16/3", ls, left_show, |k| {
        if matches!(k.params().p, 0 | 1) {
            return Ok(Outcome::Skip);
        }
        let rc = rc_of(k)?;
        Ok(holds(rc.abs() >= r(16, 3), || format!("r_c = {rc}")))
    })?);
    checks.push(run_check("type K, n ∉ {0,1}: |r_c| ≤ 4/5", ls, left_show, |k| {
        if matches!(k.params().n, 0 | 1) {
            return Ok(Outcome::Skip);
        }
        let rc = rc_of(k)?;
        Ok(holds(rc.abs() <= r(4, 5), || format!("r_c = {rc}")))
    })?);
    checks.push(run_check("type K, p = 1 or n = 1: 4/3 ≤ r_c ≤ 8/3", ls, left_show, |k| {
        let q = k.params();
        if q.p != 1 && q.n != 1 {
            return Ok(Outcome::Skip);
        }
        let rc = rc_of(k)?;
        Ok(holds(within(rc, r(4, 3), r(8, 3)), || format!("r_c = {rc}")))
    })?);

    checks.push(run_check("type M: r_a ≠ r_b", ps, show, |q| {
        if !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let (ra, rb) = horizontal_slopes(q)?;
        Ok(holds(ra != rb, || format!("r_a = r_b = {ra}")))
    })?);

    Ok(report(Suite::Lemmas, bound, start, checks))
}

fn tangle(c: &[i64]) -> RationalTangle {
    RationalTangle::new(c.to_vec())
}

/// Outcome of a chain of two-twist rewrites that should turn `lhs` into
/// `rhs`, each step preserving the fraction.
fn rewrite_outcome(lhs: RationalTangle, steps: &[(usize, bool)], rhs: &RationalTangle) -> Result<Outcome> {
    let mut cur = lhs.clone();
    for &(i, pos) in steps {
        let next = cur.rewrite_two_twist(i, pos)?;
        if next.fraction()? != cur.fraction()? {
            return Ok(Outcome::Fail(format!("{cur} → {next} changes the fraction")));
        }
        cur = next;
    }
    Ok(holds(
        cur == *rhs && lhs.fraction()? == rhs.fraction()?,
        || format!("{lhs} rewrites to {cur}, expected {rhs}"),
    ))
}

/// Closed-form slopes against the continued-fraction and determinant
/// oracles, the tangle identities, and mirror symmetry.
pub fn verify_oracles(bound: i64) -> Result<VerificationReport> {
    require_bound(bound)?;
    let start = Instant::now();
    let params: Vec<Params> = valid_params(bound).collect();
    let ps = params.as_slice();
    let lefts = left_knots(bound);
    let ls = lefts.as_slice();
    let left_show = |k: &HandlebodyKnot| k.to_string();
    let mut checks = Vec::new();

    checks.push(run_check("type M: horizontal slope residues mod ℤ", ps, show, |q| {
        if !is_type_m(q)? {
            return Ok(Outcome::Skip);
        }
        let e = em_tangles(q.l, q.m, q.n, q.p)?;
        let (ha, hb) = horizontal_slopes(q)?;
        let (oa, ob) = (
            slope_mod_one(&e.a, Direction::Horizontal)?,
            slope_mod_one(&e.b, Direction::Horizontal)?,
        );
        Ok(holds(ha.mod_one()? == oa && hb.mod_one()? == ob, || {
            format!("r_a = {ha} vs {oa}, r_b = {hb} vs {ob}")
        }))
    })?);
    checks.push(run_check("vertical slope residues mod ℤ", ps, show, |q| {
        let e = em_tangles(q.l, q.m, q.n, q.p)?;
        let (va, vb) = vertical_slopes(q)?;
        let (oa, ob) = (
            slope_mod_one(&e.a, Direction::Vertical)?,
            slope_mod_one(&e.b, Direction::Vertical)?,
        );
        Ok(holds(va.mod_one()? == oa && vb.mod_one()? == ob, || {
            format!("r_v = {va}, {vb} vs {oa}, {ob}")
        }))
    })?);
    checks.push(run_check("type K: characteristic slope residue mod ℤ", ls, left_show, |k| {
        let q = k.params();
        let SlopeData::TypeK { r_c, .. } = characteristic_slopes(k)? else {
            return Ok(Outcome::Fail("not type K".into()));
        };
        let o = slope_mod_one(&em_tangles(q.l, q.m, q.n, q.p)?.c, Direction::Vertical)?;
        Ok(holds(r_c.mod_one()? == o, || format!("r_c = {r_c} vs {o}")))
    })?);

    checks.push(run_check(
        "type M: horizontal numerators equal Montesinos determinants",
        ps,
        show,
        |q| {
            if !is_type_m(q)? {
                return Ok(Outcome::Skip);
            }
            let (ha, hb) = horizontal_slopes(q)?;
            let da = montesinos_det(MontesinosKind::HA, q)?;
            let db = montesinos_det(MontesinosKind::HB, q)?;
            let e = em_determinants(q)?;
            Ok(holds(
                ha.num().abs() == da.abs()
                    && hb.num().abs() == db.abs()
                    && da.abs() == e.d_h_a.abs()
                    && db.abs() == e.d_h_b.abs(),
                || format!("r_a = {ha}, r_b = {hb}, det = {da}, {db}"),
            ))
        },
    )?);
    checks.push(run_check("vertical numerators equal |ΛΦ| and |Λ|", ps, show, |q| {
        let (va, vb) = vertical_slopes(q)?;
        let e = em_determinants(q)?;
        Ok(holds(
            va.num().abs() == e.d_v_a.abs() && vb.num().abs() == e.d_v_b.abs(),
            || format!("r_v = {va}, {vb}"),
        ))
    })?);
    checks.push(run_check(
        "type K: characteristic slope numerator equals Montesinos determinant 4Φ",
        ls,
        left_show,
        |k| {
            let q = k.params();
            let SlopeData::TypeK { r_c, .. } = characteristic_slopes(k)? else {
                return Ok(Outcome::Fail("not type K".into()));
            };
            let det = montesinos_det(MontesinosKind::RcNumerator, &q)?;
            let phi = derived(&q)?.phi;
            Ok(holds(det == 4 * phi && r_c.num().abs() == det.abs(), || {
                format!("r_c = {r_c}, det = {det}, 4Φ = {}", 4 * phi)
            }))
        },
    )?);
    checks.push(run_check(
        "type M: slope denominators are |l|, 1, |Δ|, |Φ|",
        ps,
        show,
        |q| {
            if !is_type_m(q)? {
                return Ok(Outcome::Skip);
            }
            let (a, b) = tangle_slope_records(q)?;
            Ok(holds(a.consistent() && b.consistent(), || format!("{a:?} {b:?}")))
        },
    )?);

    checks.push(run_check(
        "type M: specialised slopes equal horizontal slopes",
        ps,
        show,
        |q| {
            if !is_type_m(q)? {
                return Ok(Outcome::Skip);
            }
            let (ha, hb) = horizontal_slopes(q)?;
            let s = type_m_slopes(q)?;
            Ok(holds(s == SlopeData::TypeM { r_a: ha, r_b: hb }, || format!("{s:?}")))
        },
    )?);
    checks.push(run_check(
        "type K: specialised slopes equal vertical slopes",
        ls,
        left_show,
        |k| {
            let q = k.params();
            let d = derived(&q)?;
            let SlopeData::TypeK { r1, r2, .. } = left_slopes(&d)? else {
                return Ok(Outcome::Fail("not type K".into()));
            };
            let (va, vb) = vertical_slopes(&q)?;
            let m = i128::from(q.m);
            let (s1, s2) = if q.p == 0 {
                (ProjRat::new(d.lambda * m, 1)?, ProjRat::new(d.lambda, m)?)
            } else {
                (
                    ProjRat::new((2 * m - 1) * d.phi, 1)?,
                    ProjRat::new(2 * m - 1, d.phi)?,
                )
            };
            Ok(holds((r1, r2) == (va, vb) && (r1, r2) == (s1, s2), || {
                format!("({r1}, {r2}) vs ({va}, {vb}) vs ({s1}, {s2})")
            }))
        },
    )?);

    let span = -bound..=bound;
    let pairs: Vec<(i64, i64)> = span
        .clone()
        .flat_map(|a| span.clone().map(move |b| (a, b)))
        .collect();
    checks.push(run_check(
        "R(n,−2,1−m,−2,1) = R(n−1,2,−m−1,2,0)",
        &pairs,
        |(m, n)| format!("m={m}, n={n}"),
        |&(m, n)| {
            rewrite_outcome(
                tangle(&[n, -2, 1 - m, -2, 1]),
                &[(1, false), (3, false)],
                &tangle(&[n - 1, 2, -m - 1, 2, 0]),
            )
        },
    )?);
    let triples: Vec<(i64, i64, i64)> = pairs
        .iter()
        .flat_map(|&(a, b)| span.clone().map(move |c| (a, b, c)))
        .collect();
    checks.push(run_check(
        "R(−p,2,−m,l) = R(1−p,−2,1−m,l)",
        &triples,
        |(l, m, p)| format!("l={l}, m={m}, p={p}"),
        |&(l, m, p)| {
            rewrite_outcome(
                tangle(&[-p, 2, -m, l]),
                &[(1, true)],
                &tangle(&[1 - p, -2, 1 - m, l]),
            )
        },
    )?);
    let singles: Vec<i64> = span.clone().collect();
    checks.push(run_check(
        "R(1−m,−2,1) = R(−m,2,0)",
        &singles,
        |m| format!("m={m}"),
        |&m| rewrite_outcome(tangle(&[1 - m, -2, 1]), &[(1, false)], &tangle(&[-m, 2, 0])),
    )?);
    checks.push(run_check(
        "R(0,2,−m,2,0) = R(−m,2,0)",
        &singles,
        |m| format!("m={m}"),
        |&m| {
            let a = tangle(&[0, 2, -m, 2, 0]).fraction()?;
            let b = tangle(&[-m, 2, 0]).fraction()?;
            Ok(holds(a == b, || format!("{a} vs {b}")))
        },
    )?);
    checks.push(run_check(
        "two-twist rewrite R(a,c,±2,d) preserves the fraction",
        &triples,
        |(a, c, d)| format!("a={a}, c={c}, d={d}"),
        |&(a, c, d)| {
            for s in [2, -2] {
                let t = tangle(&[a, c, s, d]);
                let u = t.rewrite_two_twist(2, s > 0)?;
                if t.fraction()? != u.fraction()? {
                    return Ok(Outcome::Fail(format!("{t} vs {u}")));
                }
            }
            Ok(Outcome::Pass)
        },
    )?);

    let knots = knots_in_box(bound);
    checks.push(run_check(
        "mirror image negates slope data",
        &knots,
        |k| k.to_string(),
        |k| {
            let s = characteristic_slopes(k)?;
            let mk = mirror(k)?;
            let t = characteristic_slopes(&mk)?;
            Ok(holds(t == s.negate(), || format!("{k}: {s:?}, mirror {mk}: {t:?}")))
        },
    )?);

    Ok(report(Suite::Oracles, bound, start, checks))
}

/// Slope data with the two type M annuli unordered.
fn slope_key(s: &SlopeData) -> SlopeData {
    match *s {
        SlopeData::TypeM { r_a, r_b } if r_b < r_a => SlopeData::TypeM { r_a: r_b, r_b: r_a },
        other => other,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups the knots of the box by slope data and checks that each group is
/// connected by identity moves computed in the box enlarged by 2.
pub fn collision_search(bound: i64) -> Result<VerificationReport> {
    require_bound(bound)?;
    let start = Instant::now();
    let outer = bound + 2;
    let nodes = knots_in_box(outer);
    let index: HashMap<HandlebodyKnot, usize> =
        nodes.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let slopes = nodes
        .par_iter()
        .map(|k| characteristic_slopes(k).map(|s| slope_key(&s)))
        .collect::<Result<Vec<_>>>()?;
    let edges = nodes
        .par_iter()
        .map(|k| {
            Ok(neighbours(k)?
                .into_iter()
                .filter_map(|(n, mv)| index.get(&n).map(|&j| (j, mv)))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sound = CheckResult {
        name: "identity moves preserve slope data".into(),
        instances_tested: 0,
        violations: Vec::new(),
    };
    let mut uf = UnionFind((0..nodes.len()).collect());
    for (i, out) in edges.iter().enumerate() {
        for &(j, mv) in out {
            sound.instances_tested += 1;
            if slopes[i] != slopes[j] {
                sound.violations.push(Violation {
                    subject: format!("{} → {}", nodes[i], nodes[j]),
                    detail: format!("{mv:?}: {:?} vs {:?}", slopes[i], slopes[j]),
                });
            }
            uf.union(i, j);
        }
    }

    let mut groups: HashMap<SlopeData, Vec<usize>> = HashMap::new();
    for (i, k) in nodes.iter().enumerate() {
        if max_abs(k) <= bound {
            groups.entry(slopes[i]).or_default().push(i);
        }
    }
    let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
    groups.sort();
    let mut complete = CheckResult {
        name: "equal slope data implies connected by identity moves".into(),
        instances_tested: 0,
        violations: Vec::new(),
    };
    for g in &groups {
        complete.instances_tested += 1;
        let mut roots: Vec<usize> = g.iter().map(|&i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.len() > 1 {
            complete.violations.push(Violation {
                subject: g.iter().map(|&i| nodes[i].to_string()).collect::<Vec<_>>().join(" "),
                detail: format!("{} components, slopes {:?}", roots.len(), slopes[g[0]]),
            });
        }
    }
    Ok(report(Suite::Collisions, bound, start, vec![sound, complete]))
}

/// Runs the requested suites; `bound` overrides each suite's default.
pub fn run(suite: Suite, bound: Option<i64>) -> Result<Vec<VerificationReport>> {
    let pick = |s: Suite| bound.unwrap_or_else(|| s.default_bound());
    let one = |s: Suite| -> Result<VerificationReport> {
        match s {
            Suite::Lemmas => verify_lemmas(pick(s)),
            Suite::Oracles => verify_oracles(pick(s)),
            Suite::Collisions => collision_search(pick(s)),
            Suite::All => unreachable!("expanded below"),
        }
    };
    match suite {
        Suite::All => [Suite::Lemmas, Suite::Oracles, Suite::Collisions]
            .into_iter()
            .map(one)
            .collect(),
        s => Ok(vec![one(s)?]),
    }
}
