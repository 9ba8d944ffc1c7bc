use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number in lowest terms.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline and
/// combined through `i128` intermediates; anything larger is promoted to a
/// `BigRational`. The representation is canonical, so derived equality and
/// hashing agree with value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // den >= 1, gcd(num, den) = 1, num != i64::MIN
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn small_parts(n: &BigInt, d: &BigInt) -> Option<(i64, i64)> {
    let n = n.to_i64()?;
    let d = d.to_i64()?;
    (n != i64::MIN).then_some((n, d))
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128(num as i128, den as i128)
    }

    pub fn from_int(v: i64) -> Rational {
        Rational::from_i128(v as i128, 1)
    }

    pub fn zero() -> Rational {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Rational {
        Rational(Repr::Small(1, 1))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rational {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational(Repr::Small(n as i64, d as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            ))))
        }
    }

    /// Canonicalizes a big rational, demoting it when it fits inline.
    pub fn from_big(r: BigRational) -> Rational {
        match small_parts(r.numer(), r.denom()) {
            Some((n, d)) => Rational(Repr::Small(n, d)),
            None => Rational(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rational {
        Rational::one() / self
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * self;
        }
        if e < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Integer value when the denominator is one and the numerator fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    fn add_ref(&self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    Rational::from_i128(*a as i128 + *c as i128, 1)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Rational) -> Rational {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn div_ref(&self, o: &Rational) -> Rational {
        assert!(!o.is_zero(), "division by zero");
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => Rational::from_big(self.to_big() / o.to_big()),
        }
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from_int(v as i64)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::from_i128(v as i128, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(v))
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational::from_big(v)
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                self.$imp(o)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$imp(&o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                self.$imp(o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$imp(&o)
            }
        }
        impl $atr<&Rational> for Rational {
            fn $am(&mut self, o: &Rational) {
                *self = self.$imp(o);
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, o: Rational) {
                *self = self.$imp(&o);
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, o: &Rational) -> Rational {
        self.add_ref(&o.neg_ref())
    }
}

binop!(Add, add, add_ref, AddAssign, add_assign);
binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(it: I) -> Rational {
        it.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(it: I) -> Rational {
        it.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(it: I) -> Rational {
        it.fold(Rational::one(), |a, b| a * b)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(Rational::new(8, 4).to_string(), "2");
        assert_eq!("10/-4".parse::<Rational>().unwrap(), Rational::new(-5, 2));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(
            -Rational::from_int(i64::MIN + 1),
            Rational::from_int(i64::MAX)
        );
        let min = Rational::from_big(BigRational::from_integer(BigInt::from(i64::MIN)));
        assert!(matches!(min.0, Repr::Big(_)));
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn serde_round_trip() {
        let v = vec![Rational::new(-3, 4), Rational::from_int(7)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["-3/4","7"]"#);
        let back: Vec<Rational> = serde_json::from_str(r#"["-3/4", 7]"#).unwrap();
        assert_eq!(back, v);
    }
}
