//! Slopes of the characteristic annuli, with the two independent checks on
//! them: residues modulo ℤ from continued fractions, and numerators from
//! determinants of Montesinos link matrices.

use serde::{Deserialize, Serialize};

use crate::emknot::{canonicalize, derived, Derived, HandlebodyKnot, Params, Side};
use crate::error::{Error, Result};
use crate::projrat::{add, cf_eval, mul, sub, ProjRat};
use crate::tangle::RationalTangle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// Residue modulo ℤ of the horizontal or vertical slope of a rational tangle:
/// `(−1)ⁿ[aₙ,…,a₁]⁻¹` and `(−1)ⁿ[aₙ₋₁,…,a₁]⁻¹`.
pub fn slope_mod_one(t: &RationalTangle, direction: Direction) -> Result<ProjRat> {
    let c = t.coeffs();
    let inner: Vec<i64> = match direction {
        Direction::Horizontal => {
            if c.is_empty() {
                return Err(Error::Precondition(
                    "horizontal slope of the empty tangle".into(),
                ));
            }
            c.iter().rev().copied().collect()
        }
        Direction::Vertical => c.iter().rev().skip(1).copied().collect(),
    };
    let mut r = cf_eval(&inner)?.invert();
    if c.len() % 2 == 1 {
        r = r.negate();
    }
    if r.is_infinite() {
        return Err(Error::UnexpectedInfinity("tangle slope residue"));
    }
    r.mod_one()
}

/// Signed closed forms of the four determinants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmDeterminants {
    #[serde(with = "crate::projrat::wide_int")]
    pub d_h_a: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub d_v_a: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub d_h_b: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub d_v_b: i128,
}

/// `d_h^𝒜 = −lΛΦ + 4pn − 1`, `d_v^𝒜 = ΛΦ`, `d_h^𝓑 = 2 − 4n + lΛ`, `d_v^𝓑 = Λ`.
pub fn em_determinants(params: &Params) -> Result<EmDeterminants> {
    let d = derived(params)?;
    let (l, n, p) = wide(params);
    let lam_phi = mul(d.lambda, d.phi)?;
    Ok(EmDeterminants {
        d_h_a: sub(add(mul(-l, lam_phi)?, mul(4, mul(p, n)?)?)?, 1)?,
        d_v_a: lam_phi,
        d_h_b: add(sub(2, mul(4, n)?)?, mul(l, d.lambda)?)?,
        d_v_b: d.lambda,
    })
}

fn wide(q: &Params) -> (i128, i128, i128) {
    (i128::from(q.l), i128::from(q.n), i128::from(q.p))
}

/// The three Montesinos link matrices whose determinants are compared
/// against closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MontesinosKind {
    /// horizontal slope of 𝒜
    HA,
    /// horizontal slope of 𝓑
    HB,
    /// numerator of the slope of the characteristic annulus of a left knot
    RcNumerator,
}

pub fn montesinos_matrix(kind: MontesinosKind, params: &Params) -> Result<[[i128; 4]; 4]> {
    let d = derived(params)?;
    let (l, n, p) = wide(params);
    let m = i128::from(params.m);
    // 2mn − m − n + 1
    let corner = add(sub(sub(mul(2, mul(m, n)?)?, m)?, n)?, 1)?;
    let one_minus_2n = sub(1, mul(2, n)?)?;
    Ok(match kind {
        MontesinosKind::HA => [
            [-2, 0, 0, 1],
            [0, d.delta, 0, d.phi],
            [0, 0, one_minus_2n, corner],
            [1, 1, 1, 0],
        ],
        MontesinosKind::HB => [
            [-2, 0, 0, 1],
            [0, l, 0, 1],
            [0, 0, one_minus_2n, corner],
            [1, 1, 1, 0],
        ],
        MontesinosKind::RcNumerator => [
            [-2, 0, 0, 1],
            [0, 2, 0, 1],
            [0, 0, sub(mul(2, p)?, 1)?, d.phi],
            [1, 1, 1, 0],
        ],
    })
}

pub fn montesinos_det(kind: MontesinosKind, params: &Params) -> Result<i128> {
    determinant(montesinos_matrix(kind, params)?)
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn determinant<const N: usize>(mut a: [[i128; N]; N]) -> Result<i128> {
    if N == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..N {
        if a[k][k] == 0 {
            match (k + 1..N).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..N {
            for j in k + 1..N {
                let t = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    mul(sign, a[N - 1][N - 1])
}

fn ratio(num: i128, den: i128) -> Result<ProjRat> {
    if den == 0 {
        return Err(Error::UnexpectedInfinity("closed-form slope"));
    }
    ProjRat::new(num, den)
}

fn int(k: i128) -> Result<ProjRat> {
    ProjRat::from_int(k)
}

fn require_valid(params: &Params) -> Result<()> {
    match params.check() {
        crate::emknot::Validity::Valid => Ok(()),
        crate::emknot::Validity::Invalid(violations) => Err(Error::InvalidParams {
            params: *params,
            violations,
        }),
    }
}

/// `(r_h^𝒜, r_h^𝓑) = (−ΛΦ − 1/l, (2 − 4n + lΛ)/Δ)`, for `l ≠ ±2`, `Δ ≠ ±2`.
pub fn horizontal_slopes(params: &Params) -> Result<(ProjRat, ProjRat)> {
    require_valid(params)?;
    let d = derived(params)?;
    if matches!(params.l, 2 | -2) || matches!(d.delta, 2 | -2) {
        return Err(Error::Precondition(format!(
            "horizontal slopes need l ≠ ±2 and Δ ≠ ±2, got {params} with Δ = {}",
            d.delta
        )));
    }
    let l = i128::from(params.l);
    let dets = em_determinants(params)?;
    let r_a = int(-mul(d.lambda, d.phi)?)?.checked_sub(ratio(1, l)?)?;
    let r_b = ratio(dets.d_h_b, d.delta)?;
    Ok((r_a, r_b))
}

/// `(r_v^𝒜, r_v^𝓑) = (−ΛΦ, −Λ/Φ)`.
pub fn vertical_slopes(params: &Params) -> Result<(ProjRat, ProjRat)> {
    require_valid(params)?;
    let d = derived(params)?;
    Ok((int(-mul(d.lambda, d.phi)?)?, ratio(-d.lambda, d.phi)?))
}

/// Slope, determinant and denominator data attached to one of the tangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleSlopeRecord {
    pub r_h: ProjRat,
    pub r_v: ProjRat,
    #[serde(with = "crate::projrat::wide_int")]
    pub d_h: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub d_v: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub beta_h: i128,
    #[serde(with = "crate::projrat::wide_int")]
    pub beta_v: i128,
}

impl TangleSlopeRecord {
    /// Numerators and denominators of the slopes match the magnitudes.
    pub fn consistent(&self) -> bool {
        self.r_h.num().abs() == self.d_h
            && self.r_v.num().abs() == self.d_v
            && self.r_h.den() == self.beta_h
            && self.r_v.den() == self.beta_v
    }
}

/// Records for 𝒜 and 𝓑 of a parameter tuple meeting the
/// [`horizontal_slopes`] precondition. Magnitudes come from
/// [`em_determinants`] and the denominators `|l|, 1, |Δ|, |Φ|`.
pub fn tangle_slope_records(params: &Params) -> Result<(TangleSlopeRecord, TangleSlopeRecord)> {
    let (h_a, h_b) = horizontal_slopes(params)?;
    let (v_a, v_b) = vertical_slopes(params)?;
    let d = derived(params)?;
    let dets = em_determinants(params)?;
    let a = TangleSlopeRecord {
        r_h: h_a,
        r_v: v_a,
        d_h: dets.d_h_a.abs(),
        d_v: dets.d_v_a.abs(),
        beta_h: i128::from(params.l).abs(),
        beta_v: 1,
    };
    let b = TangleSlopeRecord {
        r_h: h_b,
        r_v: v_b,
        d_h: dets.d_h_b.abs(),
        d_v: dets.d_v_b.abs(),
        beta_h: d.delta.abs(),
        beta_v: d.phi.abs(),
    };
    Ok((a, b))
}

/// The slope invariants of a handlebody-knot: the two characteristic annuli
/// of a type M knot, or the two 3-2 slopes and the slope of the
/// characteristic annulus of a type K knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SlopeData {
    #[serde(rename = "M")]
    TypeM { r_a: ProjRat, r_b: ProjRat },
    #[serde(rename = "K")]
    TypeK {
        r1: ProjRat,
        r2: ProjRat,
        r_c: ProjRat,
    },
}

impl SlopeData {
    pub fn negate(&self) -> SlopeData {
        match *self {
            SlopeData::TypeM { r_a, r_b } => SlopeData::TypeM {
                r_a: r_a.negate(),
                r_b: r_b.negate(),
            },
            SlopeData::TypeK { r1, r2, r_c } => SlopeData::TypeK {
                r1: r1.negate(),
                r2: r2.negate(),
                r_c: r_c.negate(),
            },
        }
    }

    pub fn is_type_k(&self) -> bool {
        matches!(self, SlopeData::TypeK { .. })
    }
}

/// `(r₁, r₂, r_c) = (−ΛΦ, −Λ/Φ, −4Φ/Λ)` for the left knot with these `m,n,p`.
pub fn left_slopes(d: &Derived) -> Result<SlopeData> {
    Ok(SlopeData::TypeK {
        r1: int(-mul(d.lambda, d.phi)?)?,
        r2: ratio(-d.lambda, d.phi)?,
        r_c: ratio(mul(-4, d.phi)?, d.lambda)?,
    })
}

/// Type M slopes in the specialised `p = 0` and `n = 0` forms.
pub fn type_m_slopes(params: &Params) -> Result<SlopeData> {
    let d = derived(params)?;
    let l = i128::from(params.l);
    let m = i128::from(params.m);
    let n = i128::from(params.n);
    let lm1 = sub(mul(l, m)?, 1)?;
    let (a_num, b_num, b_den) = if params.p == 0 {
        (
            sub(mul(mul(l, m)?, d.lambda)?, 1)?,
            add(mul(sub(mul(4, n)?, 2)?, lm1)?, l)?,
            lm1,
        )
    } else {
        (
            sub(mul(mul(l, sub(mul(2, m)?, 1)?)?, d.phi)?, 1)?,
            add(mul(-2, lm1)?, l)?,
            d.delta,
        )
    };
    Ok(SlopeData::TypeM {
        r_a: ratio(a_num, l)?,
        r_b: ratio(b_num, b_den)?,
    })
}

/// The slope invariants. Type K knots are first rewritten into left form.
pub fn characteristic_slopes(hk: &HandlebodyKnot) -> Result<SlopeData> {
    let c = canonicalize(hk)?;
    match c.side() {
        Side::Left => left_slopes(&c.derived()?),
        Side::Right => type_m_slopes(&c.params()),
    }
}

/// `[−l, m, 0] = l/(lm − 1)`.
pub fn r_tilde_b(l: i64, m: i64) -> Result<ProjRat> {
    let l = i128::from(l);
    ratio(l, sub(mul(l, i128::from(m))?, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emknot::{mirror, valid_params};
    use crate::tangle::{b_prime, c_prime, em_tangles};
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> ProjRat {
        ProjRat::new(n, d).unwrap()
    }

    fn t(c: &[i64]) -> RationalTangle {
        RationalTangle::new(c.to_vec())
    }

    fn pq(l: i64, m: i64, n: i64, p: i64) -> Params {
        Params::new(l, m, n, p)
    }

    /// Leibniz expansion over all permutations.
    fn leibniz(a: &[[i128; 4]; 4]) -> i128 {
        let mut total = 0;
        let mut perm = [0usize, 1, 2, 3];
        let mut visit = |perm: &[usize; 4]| {
            let inversions = (0..4)
                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            total += sign * (0..4).map(|i| a[i][perm[i]]).product::<i128>();
        };
        // Heap's algorithm
        let mut c = [0usize; 4];
        visit(&perm);
        let mut i = 0;
        while i < 4 {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                visit(&perm);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }

    #[test]
    fn mod_one_examples() {
        assert_eq!(slope_mod_one(&t(&[3]), Direction::Horizontal).unwrap(), q(2, 3));
        assert_eq!(slope_mod_one(&t(&[3]), Direction::Vertical).unwrap(), ProjRat::ZERO);
        let b = t(&[0, -2, 1, -3]);
        let d = derived(&pq(3, 1, 1, 0)).unwrap();
        assert_eq!(
            slope_mod_one(&b, Direction::Vertical).unwrap(),
            q(2 - 1, d.phi).mod_one().unwrap()
        );
        assert!(slope_mod_one(&t(&[]), Direction::Horizontal).is_err());
        // [0]⁻¹ = ∞
        assert!(matches!(
            slope_mod_one(&t(&[0]), Direction::Horizontal),
            Err(Error::UnexpectedInfinity(_))
        ));
    }

    #[test]
    fn determinant_examples() {
        let e = em_determinants(&pq(3, 1, 1, 0)).unwrap();
        assert_eq!((e.d_h_a, e.d_v_a, e.d_h_b, e.d_v_b), (8, -3, 7, 3));
        assert_eq!(montesinos_det(MontesinosKind::HA, &pq(3, 1, 1, 0)).unwrap().abs(), 8);
        assert_eq!(montesinos_det(MontesinosKind::HB, &pq(3, 1, 1, 0)).unwrap().abs(), 7);
        assert_eq!(determinant([[0, 1], [1, 0]]).unwrap(), -1);
        assert_eq!(determinant([[1, 2], [2, 4]]).unwrap(), 0);
        assert_eq!(determinant::<0>([]).unwrap(), 1);
    }

    #[test]
    fn bareiss_matches_leibniz_on_box() {
        for p in valid_params(6) {
            for kind in [MontesinosKind::HA, MontesinosKind::HB, MontesinosKind::RcNumerator] {
                let a = montesinos_matrix(kind, &p).unwrap();
                assert_eq!(determinant(a).unwrap(), leibniz(&a), "{kind:?} {p}");
            }
        }
    }

    #[test]
    fn determinants_match_closed_forms() {
        for p in valid_params(8) {
            let e = em_determinants(&p).unwrap();
            let d = derived(&p).unwrap();
            let ha = montesinos_det(MontesinosKind::HA, &p).unwrap();
            let hb = montesinos_det(MontesinosKind::HB, &p).unwrap();
            let rc = montesinos_det(MontesinosKind::RcNumerator, &p).unwrap();
            assert_eq!(ha.abs(), e.d_h_a.abs(), "{p}");
            assert_eq!(hb.abs(), e.d_h_b.abs(), "{p}");
            assert_eq!(rc, 4 * d.phi, "{p}");
        }
    }

    #[test]
    fn slope_examples() {
        assert_eq!(horizontal_slopes(&pq(3, 2, 1, 0)).unwrap().0, q(29, 3));
        assert_eq!(horizontal_slopes(&pq(3, 2, 0, 2)).unwrap().1, q(7, 9));
        assert!(matches!(
            horizontal_slopes(&pq(3, 1, 1, 0)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            horizontal_slopes(&pq(2, 3, 1, 0)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            horizontal_slopes(&pq(0, 3, 1, 0)),
            Err(Error::InvalidParams { .. })
        ));
        assert_eq!(vertical_slopes(&pq(3, 1, 1, 0)).unwrap().0, q(3, 1));
        assert_eq!(vertical_slopes(&pq(3, -1, 0, 2)).unwrap().1, q(3, 5));
        assert_eq!(vertical_slopes(&pq(3, 2, 0, 1)).unwrap(), (q(3, 1), q(3, 1)));
    }

    #[test]
    fn characteristic_examples() {
        let k = HandlebodyKnot::right(3, 2, 1, 0).unwrap();
        assert_eq!(
            characteristic_slopes(&k).unwrap(),
            SlopeData::TypeM { r_a: q(29, 3), r_b: q(13, 5) }
        );
        let k = HandlebodyKnot::left(1, 1, 0).unwrap();
        assert_eq!(
            characteristic_slopes(&k).unwrap(),
            SlopeData::TypeK { r1: q(3, 1), r2: q(3, 1), r_c: q(4, 3) }
        );
        for p in -20..=20 {
            let k = HandlebodyKnot::left(-1, 0, p).unwrap();
            let SlopeData::TypeK { r_c, .. } = characteristic_slopes(&k).unwrap() else {
                panic!("expected type K")
            };
            assert_eq!(r_c, q(12 * i128::from(p) - 4, 3));
        }
        let k = HandlebodyKnot::left(2, 0, 0).unwrap();
        let SlopeData::TypeK { r_c, .. } = characteristic_slopes(&k).unwrap() else {
            panic!()
        };
        assert_eq!(r_c, q(-8, 3));
        // a right knot of type K is read in left form
        let k = HandlebodyKnot::right(3, 1, 1, 0).unwrap();
        assert_eq!(
            characteristic_slopes(&k).unwrap(),
            characteristic_slopes(&HandlebodyKnot::left(-1, 0, 1).unwrap()).unwrap()
        );
        assert_eq!(r_tilde_b(3, 2).unwrap(), q(3, 5));
    }

    #[test]
    fn serde_shape() {
        let s = SlopeData::TypeM { r_a: q(29, 3), r_b: q(13, 5) };
        let v = serde_json::to_value(s).unwrap();
        assert_eq!(v["type"], "M");
        assert_eq!(v["r_a"]["num"], 29);
        assert_eq!(serde_json::from_value::<SlopeData>(v).unwrap(), s);
    }

    fn box_knots(bound: i64) -> Vec<HandlebodyKnot> {
        crate::emknot::knots_in_box(bound)
    }

    #[test]
    fn residues_match_closed_forms() {
        for p in valid_params(8) {
            let k = HandlebodyKnot::right(p.l, p.m, p.n, p.p).unwrap();
            let e = em_tangles(p.l, p.m, p.n, p.p).unwrap();
            let (va, vb) = vertical_slopes(&p).unwrap();
            assert_eq!(va.mod_one().unwrap(), slope_mod_one(&e.a, Direction::Vertical).unwrap());
            assert_eq!(vb.mod_one().unwrap(), slope_mod_one(&e.b, Direction::Vertical).unwrap(), "{p}");
            if k.is_type_k().unwrap() {
                continue;
            }
            let (ha, hb) = horizontal_slopes(&p).unwrap();
            assert_eq!(ha.mod_one().unwrap(), slope_mod_one(&e.a, Direction::Horizontal).unwrap());
            assert_eq!(hb.mod_one().unwrap(), slope_mod_one(&e.b, Direction::Horizontal).unwrap(), "{p}");
            let (ra, rb) = tangle_slope_records(&p).unwrap();
            assert!(ra.consistent(), "{p} {ra:?}");
            assert!(rb.consistent(), "{p} {rb:?}");
        }
    }

    #[test]
    fn left_residues_match() {
        for k in box_knots(8).into_iter().filter(HandlebodyKnot::is_left) {
            let p = k.params();
            let SlopeData::TypeK { r_c, .. } = characteristic_slopes(&k).unwrap() else {
                panic!()
            };
            let c = em_tangles(p.l, p.m, p.n, p.p).unwrap().c;
            assert_eq!(r_c.mod_one().unwrap(), slope_mod_one(&c, Direction::Vertical).unwrap(), "{k}");
            assert_eq!(r_c.num().abs(), montesinos_det(MontesinosKind::RcNumerator, &p).unwrap().abs());
            // the tangles entering the Montesinos link for r_c
            assert!(b_prime(p.m, p.p).fraction().is_ok());
            assert!(c_prime(p.m, p.n).unwrap().fraction().is_ok());
        }
    }

    #[test]
    fn specialisations_agree() {
        for p in valid_params(8) {
            let k = HandlebodyKnot::right(p.l, p.m, p.n, p.p).unwrap();
            let d = derived(&p).unwrap();
            let m = i128::from(p.m);
            // left slopes in specialised form
            let SlopeData::TypeK { r1, r2, r_c } = left_slopes(&d).unwrap() else { panic!() };
            let (s1, s2) = if p.p == 0 {
                (q(d.lambda * m, 1), q(d.lambda, m))
            } else {
                (q((2 * m - 1) * d.phi, 1), q(2 * m - 1, d.phi))
            };
            assert_eq!((r1, r2), (s1, s2), "{p}");
            assert_eq!(r_c, q(-(8 * i128::from(p.p) * m - 4 * i128::from(p.p) - 4 * m), d.lambda));
            if !k.is_type_k().unwrap() {
                let (ha, hb) = horizontal_slopes(&p).unwrap();
                let SlopeData::TypeM { r_a, r_b } = type_m_slopes(&p).unwrap() else { panic!() };
                assert_eq!((r_a, r_b), (ha, hb), "{p}");
                assert_ne!(r_a, r_b, "{p}");
            }
        }
    }

    #[test]
    fn mirror_negates_slopes() {
        for k in box_knots(7) {
            let s = characteristic_slopes(&k).unwrap();
            let mk = mirror(&k).unwrap();
            assert_eq!(characteristic_slopes(&mk).unwrap(), s.negate(), "{k} -> {mk}");
        }
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(a in prop::array::uniform4(prop::array::uniform4(-50i128..50))) {
            prop_assert_eq!(determinant(a).unwrap(), leibniz(&a));
        }

        #[test]
        fn left_slopes_ignore_l(m in -9i64..9, k in -9i64..9, n_form in any::<bool>(), l in 2i64..40) {
            let (n, p) = if n_form { (0, k) } else { (k, 0) };
            if let Ok(left) = HandlebodyKnot::left(m, n, p) {
                let s = characteristic_slopes(&left).unwrap();
                let with_l = left_slopes(&derived(&Params::new(l, m, n, p)).unwrap()).unwrap();
                prop_assert_eq!(s, with_l);
            }
        }
    }
}
