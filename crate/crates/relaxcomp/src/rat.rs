//! Exact rational scalars.
//!
//! Every numeric quantity in this crate (LP data, hull facets, separation
//! margins) is a [`Rat`]. Values that fit in machine words are kept inline;
//! anything larger is promoted to a heap-allocated big rational. The
//! representation is canonical (reduced, positive denominator, small form
//! whenever it fits), so `Eq`/`Ord`/`Hash` agree with mathematical equality.

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

const SMALL_MAX: i128 = i64::MAX as i128;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced fraction with `den > 0`, both magnitudes at most `i64::MAX`.
    Small(i64, i64),
    /// Reduced fraction that does not fit the small form.
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

/// Shorthand for integer-valued rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_int(n)
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    /// Builds `n/d`, reducing to canonical form. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "rational with zero denominator");
        from_i128(n as i128, d as i128)
    }

    pub fn from_big(r: BigRational) -> Rat {
        canonicalize_big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => {
                BigRational::new_raw(BigInt::from(*n), BigInt::from(*d))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.numer().is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(b) => b.numer().is_positive(),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Largest integer `<= self`, as a `Rat`.
    pub fn floor(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat::from_int(n.div_euclid(*d)),
            Repr::Big(b) => canonicalize_big(b.floor()),
        }
    }

    /// Smallest integer `>= self`, as a `Rat`.
    pub fn ceil(&self) -> Rat {
        -((-self.clone()).floor())
    }

    /// Exact integer value if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            Repr::Small(..) => None,
            Repr::Big(b) => {
                if b.is_integer() {
                    b.numer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    /// Approximate value for reporting; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => {
                if *n > 0 {
                    Rat(Repr::Small(*d, *n))
                } else {
                    Rat(Repr::Small(-*d, -*n))
                }
            }
            Repr::Big(b) => canonicalize_big(b.recip()),
        }
    }
}

fn from_i128(mut n: i128, mut d: i128) -> Rat {
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
    if n.abs() <= SMALL_MAX && d <= SMALL_MAX {
        Rat(Repr::Small(n as i64, d as i64))
    } else {
        Rat(Repr::Big(Box::new(BigRational::new_raw(
            n.to_bigint().unwrap(),
            d.to_bigint().unwrap(),
        ))))
    }
}

fn canonicalize_big(r: BigRational) -> Rat {
    // `BigRational` arithmetic keeps values reduced with positive denominator.
    let small = match (r.numer().to_i128(), r.denom().to_i128()) {
        (Some(n), Some(d)) if n.abs() <= SMALL_MAX && d <= SMALL_MAX => Some((n as i64, d as i64)),
        _ => None,
    };
    match small {
        Some((n, d)) => Rat(Repr::Small(n, d)),
        None => Rat(Repr::Big(Box::new(r))),
    }
}

macro_rules! binop_big {
    ($a:expr, $b:expr, $op:tt) => {
        canonicalize_big($a.to_big() $op $b.to_big())
    };
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                // |a*d|, |c*b| <= 2^126, so only the sum can overflow i128.
                match (a * d).checked_add(c * b) {
                    Some(num) => from_i128(num, b * d),
                    None => binop_big!(self, rhs, +),
                }
            }
            _ => binop_big!(self, rhs, +),
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_sub(c * b) {
                    Some(num) => from_i128(num, b * d),
                    None => binop_big!(self, rhs, -),
                }
            }
            _ => binop_big!(self, rhs, -),
        }
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => binop_big!(self, rhs, *),
        }
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => binop_big!(self, rhs, /),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
        impl $assign_trait<Rat> for Rat {
            fn $assign_method(&mut self, rhs: Rat) {
                *self = (&*self).$method(&rhs);
            }
        }
        impl $assign_trait<&Rat> for Rat {
            fn $assign_method(&mut self, rhs: &Rat) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Div, div, DivAssign, div_assign);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self.0 {
            // |n| <= i64::MAX, so negation cannot overflow.
            Repr::Small(n, d) => Rat(Repr::Small(-n, d)),
            Repr::Big(b) => Rat(Repr::Big(Box::new(-*b))),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                // Cross products stay within i128 for canonical small values.
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat::one()
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error when parsing a `p/q` literal.
#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| ParseRatError(s.to_string()))?;
        let den: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| ParseRatError(s.to_string()))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ParseRatError(s.to_string()));
        }
        Ok(canonicalize_big(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        struct RatVisitor;
        impl de::Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" string or integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                v.parse().map_err(|e| E::custom(e))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                i64::try_from(v)
                    .map(Rat::from_int)
                    .map_err(|_| E::custom("integer out of range"))
            }
        }
        deserializer.deserialize_any(RatVisitor)
    }
}

/// Sum of `coeff * x[var]` over a sparse vector.
pub fn sparse_dot(entries: &[(usize, Rat)], x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (j, c) in entries {
        if !c.is_zero() && !x[*j].is_zero() {
            acc += c * &x[*j];
        }
    }
    acc
}

/// Dense dot product.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-2, -4), Rat::new(1, 2));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, 5), Rat::zero());
    }

    #[test]
    fn arithmetic_basics() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(&a + &b, Rat::new(1, 2));
        assert_eq!(&a - &b, Rat::new(1, 6));
        assert_eq!(&a * &b, Rat::new(1, 18));
        assert_eq!(&a / &b, Rat::from_int(2));
        assert_eq!(-a, Rat::new(-1, 3));
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(Rat::new(7, 2).floor(), rat(3));
        assert_eq!(Rat::new(7, 2).ceil(), rat(4));
        assert_eq!(Rat::new(-7, 2).floor(), rat(-4));
        assert_eq!(Rat::new(-7, 2).ceil(), rat(-3));
        assert_eq!(Rat::new(8, 3).ceil(), rat(3));
        assert_eq!(rat(5).ceil(), rat(5));
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["3", "-3", "8/3", "-1/1000", "0"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        assert_eq!("2/4".parse::<Rat>().unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn promotion_and_demotion() {
        let big = Rat::from_int(i64::MAX);
        let sum = &big * &big; // exceeds small range
        let back = &sum / &big;
        assert_eq!(back, big);
        // Canonical: values that fit small must compare equal regardless of path.
        let via_big = Rat::from_big(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(via_big, Rat::new(1, 2));
    }

    fn arb_small() -> impl Strategy<Value = Rat> {
        (any::<i32>(), 1..10_000i32).prop_map(|(n, d)| Rat::new(n as i64, d as i64))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn matches_bigrational(a in arb_small(), b in arb_small()) {
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn field_axioms_spot(a in arb_small(), b in arb_small(), c in arb_small()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }
    }
}
