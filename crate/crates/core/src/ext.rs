//! Extended naturals `{0, 1, 2, ..., inf}` and extended nonnegative rationals `[0, inf]`.
//!
//! Both types are totally ordered with `Inf` as the maximum. Multiplication follows
//! the measure-theory convention `0 * inf = 0`, which is what lets a functional with
//! infinite coefficients still send `0` to `0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num::rational::Ratio;
use num::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational used throughout the crate.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"3"`, `"-2"`, `"3/4"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.parse::<i128>().ok().map(Rational::from_integer),
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

pub const INF: ExtNat = ExtNat::Inf;

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    /// `n * self`, with `0 * inf = 0`.
    pub fn times(self, n: u64) -> ExtNat {
        match self {
            _ if n == 0 => ExtNat::ZERO,
            ExtNat::Fin(a) => ExtNat::Fin(a.checked_mul(n).expect("ExtNat overflow")),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    /// `sup_n n * self`.
    pub fn infinity_multiple(self) -> ExtNat {
        if self.is_zero() {
            ExtNat::ZERO
        } else {
            ExtNat::Inf
        }
    }

    /// Truncated difference `self - other`, saturating at 0; `inf - finite = inf`.
    pub fn monus(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Inf, ExtNat::Fin(_)) => ExtNat::Inf,
            (ExtNat::Inf, ExtNat::Inf) => ExtNat::ZERO,
            (ExtNat::Fin(_), ExtNat::Inf) => ExtNat::ZERO,
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a.saturating_sub(b)),
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;
    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a.checked_add(b).expect("ExtNat overflow")),
            _ => ExtNat::Inf,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            Ok(ExtNat::Inf)
        } else {
            s.parse::<u64>().map(ExtNat::Fin).map_err(|_| format!("expected a natural number or \"inf\", got {s:?}"))
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => serializer.serialize_u64(*n),
            ExtNat::Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtNatVisitor;
        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Fin(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v).map(ExtNat::Fin).map_err(|_| E::custom("negative entry"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(ExtNatVisitor)
    }
}

/// A value in `[0, inf]` with exact rational finite part.
///
/// Invariant: the finite payload is never negative. `0 * inf = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Fin(Rational),
    Inf,
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => a.cmp(b),
            (ExtRational::Fin(_), ExtRational::Inf) => Ordering::Less,
            (ExtRational::Inf, ExtRational::Fin(_)) => Ordering::Greater,
            (ExtRational::Inf, ExtRational::Inf) => Ordering::Equal,
        }
    }
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Fin(Rational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Fin(Rational::one())
    }

    pub fn from_int(n: i128) -> Self {
        assert!(n >= 0, "ExtRational must be nonnegative");
        ExtRational::Fin(int(n))
    }

    pub fn fin(q: Rational) -> Self {
        assert!(!q.is_negative(), "ExtRational must be nonnegative, got {q}");
        ExtRational::Fin(q)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Fin(_))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRational::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Fin(q) if q.is_zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Fin(q) => Some(q),
            ExtRational::Inf => None,
        }
    }

    /// `q * self` for `q >= 0`, with `0 * inf = 0`.
    pub fn scale(&self, q: &Rational) -> ExtRational {
        assert!(!q.is_negative());
        match self {
            _ if q.is_zero() => ExtRational::zero(),
            ExtRational::Fin(a) => ExtRational::Fin(a * q),
            ExtRational::Inf => ExtRational::Inf,
        }
    }

    /// `self * n` for an extended natural, with `0 * inf = inf * 0 = 0`.
    pub fn times_nat(&self, n: ExtNat) -> ExtRational {
        match (self, n) {
            (_, ExtNat::Fin(0)) => ExtRational::zero(),
            (a, _) if a.is_zero() => ExtRational::zero(),
            (ExtRational::Fin(a), ExtNat::Fin(m)) => ExtRational::Fin(a * int(m as i128)),
            _ => ExtRational::Inf,
        }
    }

    /// `self - other` when `other <= self` and `self` is finite.
    pub fn checked_sub(&self, other: &ExtRational) -> Option<ExtRational> {
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) if b <= a => Some(ExtRational::Fin(a - b)),
            _ => None,
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => ExtRational::Fin(a + b),
            _ => ExtRational::Inf,
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: ExtRational) -> ExtRational {
        &self + &rhs
    }
}

impl Mul for &ExtRational {
    type Output = ExtRational;
    fn mul(self, rhs: &ExtRational) -> ExtRational {
        match (self, rhs) {
            (a, b) if a.is_zero() || b.is_zero() => ExtRational::zero(),
            (ExtRational::Fin(a), ExtRational::Fin(b)) => ExtRational::Fin(a * b),
            _ => ExtRational::Inf,
        }
    }
}

impl std::iter::Sum for ExtRational {
    fn sum<I: Iterator<Item = ExtRational>>(iter: I) -> Self {
        iter.fold(ExtRational::zero(), |a, b| a + b)
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::fin(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Fin(q) => f.write_str(&fmt_rational(q)),
            ExtRational::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(ExtRational::Inf);
        }
        match parse_rational(t) {
            Some(q) if !q.is_negative() => Ok(ExtRational::Fin(q)),
            _ => Err(format!("expected a nonnegative rational or \"inf\", got {s:?}")),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative rational (\"3/4\"), integer, or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtRational, E> {
                Ok(ExtRational::from_int(v as i128))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtRational, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_nat_saturates_only_at_inf() {
        assert_eq!(ExtNat::Fin(2) + ExtNat::Fin(3), ExtNat::Fin(5));
        assert_eq!(ExtNat::Fin(2) + INF, INF);
        assert!(ExtNat::Fin(u64::MAX - 1) < INF);
        assert_eq!(INF.times(0), ExtNat::ZERO);
        assert_eq!(ExtNat::Fin(4).monus(ExtNat::Fin(6)), ExtNat::ZERO);
        assert_eq!(INF.monus(ExtNat::Fin(6)), INF);
    }

    #[test]
    fn zero_times_inf_is_zero() {
        assert_eq!(ExtRational::zero().times_nat(INF), ExtRational::zero());
        assert_eq!(ExtRational::Inf.times_nat(ExtNat::ZERO), ExtRational::zero());
        assert_eq!(ExtRational::Inf.scale(&int(0)), ExtRational::zero());
        assert_eq!(&ExtRational::Inf * &ExtRational::zero(), ExtRational::zero());
        assert_eq!(ExtRational::one().times_nat(INF), ExtRational::Inf);
    }

    #[test]
    fn order_puts_inf_on_top() {
        let a: ExtRational = "7/2".parse().unwrap();
        assert!(a < ExtRational::Inf);
        assert!(ExtRational::zero() < a);
        assert_eq!(a.to_string(), "7/2");
        assert!("-1".parse::<ExtRational>().is_err());
    }

    #[test]
    fn serde_forms() {
        let v: Vec<ExtNat> = serde_json::from_str(r#"[0, 3, "inf"]"#).unwrap();
        assert_eq!(v, vec![ExtNat::ZERO, ExtNat::Fin(3), INF]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[0,3,"inf"]"#);
        let q: ExtRational = serde_json::from_str(r#""3/6""#).unwrap();
        assert_eq!(q, ExtRational::fin(rat(1, 2)));
    }
}
