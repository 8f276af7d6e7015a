//! Exact arbitrary-precision rationals.
//!
//! [`Rational`] is always kept in canonical form: the denominator is positive
//! and coprime to the numerator, so equality is structural.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// Builds the canonical rational `n/d`.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(n, d)
}

impl Rational {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(n.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Greatest integer less than or equal to `self`.
    pub fn floor_of(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Least integer greater than or equal to `self`.
    pub fn ceil_of(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    /// Display only; never fed back into computations.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled: BigInt = self.numer().abs() * &scale * 2 + self.denom();
        let rounded = scaled.div_floor(&(self.denom() * 2));
        let negative = self.is_negative() && !rounded.is_zero();
        let mut body: Vec<u8> = rounded.to_str_radix(10).into_bytes();
        let digits = digits as usize;
        if digits > 0 {
            while body.len() <= digits {
                body.insert(0, b'0');
            }
            body.insert(body.len() - digits, b'.');
        }
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(core::str::from_utf8(&body).expect("ascii digits"));
        out
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `n`, `n/d` or a plain decimal like `-1.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Domain(alloc::format!("cannot parse {s:?} as a rational"));
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int: BigInt = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_val: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let magnitude = int.abs() * &scale + frac_val;
            let n = if negative { -magnitude } else { magnitude };
            return Rational::new(n, scale);
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor like the integer types do; see `checked_div`.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn construction_is_canonical() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        let z = r(0, 7);
        assert_eq!((z.numer().clone(), z.denom().clone()), (0.into(), 1.into()));
        assert_eq!(z.to_string(), "0");
        assert_eq!(rat(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(r(7, 2).floor_of(), 3.into());
        assert_eq!(r(-1, 2).floor_of(), (-1).into());
        assert_eq!(r(4, 1).floor_of(), 4.into());
        assert_eq!(r(-7, 2).ceil_of(), (-3).into());
        assert_eq!(r(7, 2).ceil_of(), 4.into());
    }

    #[test]
    fn parse_and_decimal() {
        assert_eq!("3/-6".parse::<Rational>().unwrap(), r(-1, 2));
        assert_eq!("-1.25".parse::<Rational>().unwrap(), r(-5, 4));
        assert_eq!("-.5".parse::<Rational>().unwrap(), r(-1, 2));
        assert_eq!("12".parse::<Rational>().unwrap(), r(12, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(r(2, 3).to_decimal(4), "0.6667");
        assert_eq!(r(-2, 3).to_decimal(2), "-0.67");
        assert_eq!(r(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(r(36, 5).to_decimal(0), "7");
        assert_eq!(r(1, 2).to_decimal(0), "1");
    }

    #[test]
    fn checked_division() {
        assert_eq!(r(1, 2).checked_div(&Rational::zero()), Err(Error::ZeroDenominator));
        assert_eq!(r(1, 2).checked_div(&r(1, 4)).unwrap(), r(2, 1));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), any::<i64>().prop_filter("nonzero", |d| *d != 0))
            .prop_map(|(n, d)| rat(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + (-&a), Rational::zero());
            prop_assert!(a.denom() > &BigInt::zero());
            prop_assert!(a.numer().gcd(a.denom()).is_one());
        }

        #[test]
        fn division_is_exact(a in arb_rational(), b in arb_rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a / &b) * &b, a);
        }

        #[test]
        fn floor_brackets_value(a in arb_rational()) {
            let f = Rational::from_integer(a.floor_of());
            prop_assert!(f <= a);
            prop_assert!(a < f + Rational::one());
        }

        #[test]
        fn display_parses_back(a in arb_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
