//! Exact rational scalars.
//!
//! Every scalar is a fraction in lowest terms with positive denominator.
//! Values that fit in machine words use a fast inline representation;
//! anything larger is promoted to arbitrary precision transparently.
//! No operation ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number.
#[derive(Clone)]
pub struct Scalar(Repr);

#[derive(Clone)]
enum Repr {
    /// `num/den` with `den > 0` and `gcd(|num|, den) == 1`.
    Small(i64, i64),
    /// Used only when the reduced value does not fit `Small`, so equality
    /// between a `Small` and a `Big` is impossible.
    Big(Box<BigRational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// `num/den` reduced to lowest terms. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Scalar::zero();
        }
        let g = n.gcd(&d);
        n /= g;
        d /= g;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(Box::new(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // Demote when the reduced fraction fits in machine words.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Scalar(Repr::Small(n, d))
        } else {
            Scalar(Repr::Big(Box::new(r)))
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "division by zero");
                Self::from_i128(*d as i128, *n as i128)
            }
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact numerator/denominator as strings (used by reports).
    pub fn to_fraction_string(&self) -> String {
        format!("{}", self)
    }

    /// Denominator of the reduced fraction (always positive).
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    /// Parses "n" or "n/d".
    pub fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            None => {
                let n: BigInt = s.trim().parse().ok()?;
                Some(Self::from_big(BigRational::from_integer(n)))
            }
            Some((a, b)) => {
                let n: BigInt = a.trim().parse().ok()?;
                let d: BigInt = b.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Self::from_big(BigRational::new(n, d)))
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            // A Big value never fits Small, so mixed representations differ.
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(n, d) => Scalar::from_i128(-(*n as i128), *d as i128),
            Repr::Big(r) => Scalar::from_big(-(**r).clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Scalar::from_i128(a * d + c * b, b * d)
            }
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Scalar::from_i128(a * d - c * b, b * d)
            }
            _ => Scalar::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // Cross-reduce first so the products stay small.
                let g1 = (*a as i128).gcd(&(*d as i128));
                let g2 = (*c as i128).gcd(&(*b as i128));
                let n = (*a as i128 / g1) * (*c as i128 / g2);
                let den = (*b as i128 / g2) * (*d as i128 / g1);
                Scalar::from_i128(n, den)
            }
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        self * &rhs.recip()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{}", n),
            Repr::Small(n, d) => write!(f, "{}/{}", n, d),
            Repr::Big(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s).ok_or_else(|| format!("invalid rational: {:?}", s))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalization() {
        assert_eq!(Scalar::ratio(2, 4), Scalar::ratio(1, 2));
        assert_eq!(Scalar::ratio(-2, -4), Scalar::ratio(1, 2));
        assert_eq!(Scalar::ratio(2, -4), Scalar::ratio(-1, 2));
        assert_eq!(Scalar::ratio(0, 5), Scalar::zero());
        assert_eq!(Scalar::ratio(0, -5).to_string(), "0");
    }

    #[test]
    fn overflow_promotes_and_stays_exact() {
        let huge = Scalar::from_int(i64::MAX);
        let sq = &huge * &huge;
        let back = &sq / &huge;
        assert_eq!(back, huge);
        assert_eq!(&sq - &sq, Scalar::zero());
        // demotion back to the small representation
        let one = &huge / &huge;
        assert!(one.is_one());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "7", "-3/4", "22/7"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    proptest! {
        // Cross-check every field operation against num_rational.
        #[test]
        fn matches_bigrational(
            an in -1000i64..1000, ad in 1i64..100,
            bn in -1000i64..1000, bd in 1i64..100,
        ) {
            let a = Scalar::ratio(an, ad);
            let b = Scalar::ratio(bn, bd);
            prop_assert_eq!((&a + &b).to_big(), big(an, ad) + big(bn, bd));
            prop_assert_eq!((&a - &b).to_big(), big(an, ad) - big(bn, bd));
            prop_assert_eq!((&a * &b).to_big(), big(an, ad) * big(bn, bd));
            if bn != 0 {
                prop_assert_eq!((&a / &b).to_big(), big(an, ad) / big(bn, bd));
            }
            prop_assert_eq!(a.cmp(&b), big(an, ad).cmp(&big(bn, bd)));
        }

        #[test]
        fn field_axioms(
            an in -50i64..50, bn in -50i64..50, cn in -50i64..50,
            ad in 1i64..20, bd in 1i64..20, cd in 1i64..20,
        ) {
            let a = Scalar::ratio(an, ad);
            let b = Scalar::ratio(bn, bd);
            let c = Scalar::ratio(cn, cd);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &Scalar::zero(), a.clone());
            prop_assert_eq!(&a * &Scalar::one(), a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.recip()).is_one());
            }
        }
    }
}
