//! Exact arithmetic on the projective line ℚ ∪ {∞}.
//!
//! Every slope and every continued-fraction value in this crate is a
//! [`ProjRat`]. Values are kept in lowest terms with a non-negative
//! denominator, so structural equality is field equality. All arithmetic is
//! checked: an intermediate that does not fit in `i128` surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den >= 0`; `1/0` is the point at infinity.
///
/// Serialized as `{"num": .., "den": ..}`. Entries outside the `i64` range
/// are written as decimal strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFraction", into = "RawFraction")]
pub struct ProjRat {
    num: i128,
    den: i128,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Large(String),
}

impl From<i128> for WireInt {
    fn from(v: i128) -> Self {
        i64::try_from(v).map_or_else(|_| WireInt::Large(v.to_string()), WireInt::Small)
    }
}

impl TryFrom<WireInt> for i128 {
    type Error = Error;

    fn try_from(w: WireInt) -> Result<i128> {
        match w {
            WireInt::Small(v) => Ok(i128::from(v)),
            WireInt::Large(s) => s
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}"))),
        }
    }
}

/// `#[serde(with = "wide_int")]` for `i128` fields: a JSON number when it
/// fits in `i64`, a decimal string otherwise.
pub mod wide_int {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::WireInt;

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        WireInt::from(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        i128::try_from(WireInt::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawFraction {
    num: WireInt,
    den: WireInt,
}

impl TryFrom<RawFraction> for ProjRat {
    type Error = Error;

    fn try_from(raw: RawFraction) -> Result<Self> {
        ProjRat::new(raw.num.try_into()?, raw.den.try_into()?)
    }
}

impl From<ProjRat> for RawFraction {
    fn from(r: ProjRat) -> Self {
        RawFraction {
            num: r.num.into(),
            den: r.den.into(),
        }
    }
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    // callers never pass two i128::MIN values, so this fits
    a as i128
}

pub(crate) fn checked(v: Option<i128>) -> Result<i128> {
    v.filter(|&x| x != i128::MIN).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i128, b: i128) -> Result<i128> {
    checked(a.checked_mul(b))
}

pub(crate) fn add(a: i128, b: i128) -> Result<i128> {
    checked(a.checked_add(b))
}

pub(crate) fn sub(a: i128, b: i128) -> Result<i128> {
    checked(a.checked_sub(b))
}

impl ProjRat {
    pub const INFINITY: ProjRat = ProjRat { num: 1, den: 0 };
    pub const ZERO: ProjRat = ProjRat { num: 0, den: 1 };
    pub const ONE: ProjRat = ProjRat { num: 1, den: 1 };

    /// Builds `num/den` in canonical form. Any `x/0` with `x != 0` is ∞.
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if num == i128::MIN || den == i128::MIN {
            return Err(Error::Overflow);
        }
        match (num, den) {
            (0, 0) => Err(Error::Indeterminate),
            (_, 0) => Ok(Self::INFINITY),
            _ => {
                let g = gcd(num, den);
                let (n, d) = (num / g, den / g);
                Ok(if d < 0 {
                    ProjRat { num: -n, den: -d }
                } else {
                    ProjRat { num: n, den: d }
                })
            }
        }
    }

    pub fn from_int(k: i128) -> Result<Self> {
        Self::new(k, 1)
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `1/x`, with `1/∞ = 0` and `1/0 = ∞`.
    pub fn invert(self) -> Self {
        match (self.num, self.den) {
            (_, 0) => Self::ZERO,
            (0, _) => Self::INFINITY,
            (n, d) if n < 0 => ProjRat { num: -d, den: -n },
            (n, d) => ProjRat { num: d, den: n },
        }
    }

    /// Field negation; `-∞ = ∞`.
    pub fn negate(self) -> Self {
        if self.is_infinite() {
            self
        } else {
            ProjRat {
                num: -self.num,
                den: self.den,
            }
        }
    }

    pub fn abs(self) -> Self {
        ProjRat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    /// `x + k`; `∞ + k = ∞`.
    pub fn add_int(self, k: i128) -> Result<Self> {
        if self.is_infinite() {
            return Ok(self);
        }
        let n = add(self.num, mul(k, self.den)?)?;
        // adding an integer keeps the fraction reduced
        Ok(ProjRat {
            num: n,
            den: self.den,
        })
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Err(Error::Indeterminate),
            (true, false) | (false, true) => Ok(Self::INFINITY),
            (false, false) => {
                let g = gcd(self.den, other.den);
                let (a, b) = (self.den / g, other.den / g);
                let n = add(mul(self.num, b)?, mul(other.num, a)?)?;
                Self::new(n, mul(mul(a, b)?, g)?)
            }
        }
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.checked_add(other.negate())
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        if self.is_infinite() || other.is_infinite() {
            if self.num == 0 || other.num == 0 {
                return Err(Error::Indeterminate);
            }
            return Ok(Self::INFINITY);
        }
        let g1 = gcd(self.num, other.den).max(1);
        let g2 = gcd(other.num, self.den).max(1);
        Self::new(
            mul(self.num / g1, other.num / g2)?,
            mul(self.den / g2, other.den / g1)?,
        )
    }

    pub fn checked_div(self, other: Self) -> Result<Self> {
        self.checked_mul(other.invert())
    }

    /// Greatest integer `<= x` for finite `x`.
    pub fn floor(self) -> Result<i128> {
        if self.is_infinite() {
            return Err(Error::UnexpectedInfinity("floor"));
        }
        Ok(self.num.div_euclid(self.den))
    }

    /// The representative of `x + ℤ` in `[0, 1)`; the denominator is unchanged.
    pub fn mod_one(self) -> Result<Self> {
        if self.is_infinite() {
            return Err(Error::InfiniteResidue);
        }
        Ok(ProjRat {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        })
    }
}

/// Evaluates `[a₁,…,aₙ] = aₙ + 1/(aₙ₋₁ + 1/(… + 1/a₁))`.
///
/// The empty fraction is ∞, so a one-term sequence `[a]` is `a + 1/∞ = a`.
pub fn cf_eval(seq: &[i64]) -> Result<ProjRat> {
    seq.iter().try_fold(ProjRat::INFINITY, |acc, &a| {
        acc.invert().add_int(i128::from(a))
    })
}

/// Comparison of finite values by their continued-fraction expansions, which
/// needs no multiplication and therefore cannot overflow. ∞ is only
/// comparable to itself.
impl PartialOrd for ProjRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => return Some(Ordering::Equal),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        let (mut a, mut b) = ((self.num, self.den), (other.num, other.den));
        let mut flipped = false;
        loop {
            let (qa, ra) = (a.0.div_euclid(a.1), a.0.rem_euclid(a.1));
            let (qb, rb) = (b.0.div_euclid(b.1), b.0.rem_euclid(b.1));
            let ord = match qa.cmp(&qb) {
                Ordering::Equal => match (ra == 0, rb == 0) {
                    (true, true) => Ordering::Equal,
                    (true, false) => Ordering::Less,
                    (false, true) => Ordering::Greater,
                    (false, false) => {
                        // compare a.1/ra with b.1/rb, reversed
                        a = (a.1, ra);
                        b = (b.1, rb);
                        flipped = !flipped;
                        continue;
                    }
                },
                o => o,
            };
            return Some(if flipped { ord.reverse() } else { ord });
        }
    }
}

impl fmt::Display for ProjRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (_, 0) => write!(f, "∞"),
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for ProjRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "∞" || s.eq_ignore_ascii_case("inf") {
            return Ok(Self::INFINITY);
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<i128>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None => Self::from_int(parse(s)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> ProjRat {
        ProjRat::new(n, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(r(4, -6), r(-2, 3));
        assert_eq!(r(-4, 6).den(), 3);
        assert_eq!(r(-5, 0), ProjRat::INFINITY);
        assert_eq!(r(0, -7), ProjRat::ZERO);
        assert_eq!(ProjRat::new(0, 0), Err(Error::Indeterminate));
        assert_eq!(ProjRat::new(i128::MIN, 1), Err(Error::Overflow));
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_eval(&[1, -3]).unwrap(), r(-2, 1));
        assert_eq!(cf_eval(&[]).unwrap(), ProjRat::INFINITY);
        assert_eq!(cf_eval(&[-1, 2, 0, 2, 0]).unwrap(), r(1, 3));
        assert_eq!(cf_eval(&[3, 0]).unwrap(), r(1, 3));
        assert_eq!(cf_eval(&[7]).unwrap(), r(7, 1));
        // 5 + 1/0
        assert_eq!(cf_eval(&[0, 5]).unwrap(), ProjRat::INFINITY);
        assert_eq!(cf_eval(&[0, 5, 1]).unwrap(), r(1, 1));
        assert_eq!(cf_eval(&[0]).unwrap(), ProjRat::ZERO);
    }

    #[test]
    fn cf_overflow_is_reported() {
        // the Fibonacci-like growth of [1,1,…,1] overflows i128 after ~180 terms
        let seq = vec![1_i64; 400];
        assert_eq!(cf_eval(&seq), Err(Error::Overflow));
        let big = vec![i64::MAX; 8];
        assert_eq!(cf_eval(&big), Err(Error::Overflow));
    }

    #[test]
    fn invert_negate_add() {
        assert_eq!(r(1, 3).invert(), r(3, 1));
        assert_eq!(ProjRat::INFINITY.invert(), ProjRat::ZERO);
        assert_eq!(ProjRat::ZERO.invert(), ProjRat::INFINITY);
        assert_eq!(r(-2, 7).invert(), r(-7, 2));
        assert_eq!(r(4, 3).negate(), r(-4, 3));
        assert_eq!(ProjRat::INFINITY.negate(), ProjRat::INFINITY);
        assert_eq!(r(1, 3).add_int(2).unwrap(), r(7, 3));
        assert_eq!(ProjRat::INFINITY.add_int(5).unwrap(), ProjRat::INFINITY);
    }

    #[test]
    fn mod_one_examples() {
        assert_eq!(r(29, 3).mod_one().unwrap(), r(2, 3));
        assert_eq!(r(-1, 3).mod_one().unwrap(), r(2, 3));
        assert_eq!(r(7, 1).mod_one().unwrap(), ProjRat::ZERO);
        assert_eq!(ProjRat::INFINITY.mod_one(), Err(Error::InfiniteResidue));
    }

    #[test]
    fn field_ops() {
        assert_eq!(r(1, 6).checked_add(r(1, 3)).unwrap(), r(1, 2));
        assert_eq!(r(1, 6).checked_sub(r(1, 3)).unwrap(), r(-1, 6));
        assert_eq!(r(-4, 9).checked_mul(r(3, 8)).unwrap(), r(-1, 6));
        assert_eq!(r(2, 3).checked_div(r(4, 3)).unwrap(), r(1, 2));
        assert_eq!(ProjRat::INFINITY.checked_mul(ProjRat::ZERO), Err(Error::Indeterminate));
        assert_eq!(
            ProjRat::INFINITY.checked_add(ProjRat::INFINITY),
            Err(Error::Indeterminate)
        );
    }

    #[test]
    fn ordering() {
        assert!(r(9, 4) > r(2, 1));
        assert!(r(-9, 4) < r(-2, 1));
        assert!(r(7, 9) < r(7, 5));
        assert!(r(-7, 9) > r(-1, 1));
        assert_eq!(r(3, 5).partial_cmp(&r(6, 10)), Some(Ordering::Equal));
        assert_eq!(ProjRat::INFINITY.partial_cmp(&r(1, 1)), None);
        let huge = r(i128::MAX, i128::MAX - 1);
        let huger = r(i128::MAX - 1, i128::MAX - 2);
        assert!(huge < huger);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(r(-29, 3).to_string(), "-29/3");
        assert_eq!(r(4, 1).to_string(), "4");
        assert_eq!(ProjRat::INFINITY.to_string(), "∞");
        assert_eq!("-29/3".parse::<ProjRat>().unwrap(), r(-29, 3));
        assert_eq!(" 6/-4 ".parse::<ProjRat>().unwrap(), r(-3, 2));
        assert!("x".parse::<ProjRat>().is_err());
    }

    #[test]
    fn serde_pairs() {
        let v = r(-4, 3);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"num":-4,"den":3}"#);
        assert_eq!(serde_json::from_str::<ProjRat>(&s).unwrap(), v);
        assert!(serde_json::from_str::<ProjRat>(r#"{"num":0,"den":0}"#).is_err());
        assert_eq!(
            serde_json::from_str::<ProjRat>(r#"{"num":2,"den":-4}"#).unwrap(),
            r(-1, 2)
        );
        let big = r(i128::MAX, 7);
        let v = serde_json::to_value(big).unwrap();
        assert_eq!(v["num"], i128::MAX.to_string());
        assert_eq!(v["den"], 7);
        assert_eq!(serde_json::from_value::<ProjRat>(v).unwrap(), big);
    }

    fn finite() -> impl Strategy<Value = ProjRat> {
        (-10_000i128..10_000, 1i128..10_000).prop_map(|(n, d)| r(n, d))
    }

    fn any_rat() -> impl Strategy<Value = ProjRat> {
        prop_oneof![finite(), Just(ProjRat::INFINITY)]
    }

    fn canonical(x: ProjRat) -> bool {
        x.den() >= 0
            && gcd(x.num(), x.den()) == 1
            && (x.den() != 0 || x.num() == 1)
    }

    proptest! {
        #[test]
        fn cf_is_a_fold(seq in prop::collection::vec(-20i64..20, 1..10)) {
            let (last, init) = seq.split_last().unwrap();
            let lhs = cf_eval(&seq).unwrap();
            let rhs = cf_eval(init).unwrap().invert().add_int(i128::from(*last)).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(canonical(lhs));
        }

        #[test]
        fn involutions(x in any_rat()) {
            prop_assert_eq!(x.invert().invert(), x);
            prop_assert_eq!(x.negate().negate(), x);
            prop_assert!(canonical(x.invert()));
            prop_assert!(canonical(x.negate()));
        }

        #[test]
        fn mod_one_detects_integer_difference(x in finite(), y in finite()) {
            let same = x.mod_one().unwrap() == y.mod_one().unwrap();
            prop_assert_eq!(same, x.checked_sub(y).unwrap().is_integer());
            let m = x.mod_one().unwrap();
            prop_assert!(m >= ProjRat::ZERO && m < ProjRat::ONE);
            prop_assert_eq!(m.den(), x.den());
        }

        #[test]
        fn order_matches_cross_multiplication(x in finite(), y in finite()) {
            let expect = (x.num() * y.den()).cmp(&(y.num() * x.den()));
            prop_assert_eq!(x.partial_cmp(&y), Some(expect));
        }
    }
}
