//! Exact arithmetic in the quadratic field ℚ(√3).
//!
//! A [`Scalar`] is `a + b·√3` with rational `a`, `b`. This is the only
//! coefficient ring used by the exact checks: every catalog table is
//! rational except the Cartan cubics, whose `√3` coefficients force the
//! extension.
//!
//! Text form (used verbatim in algebra documents):
//!
//! ```text
//! scalar := rat | rat ('+'|'-') rat 'r3' | ['+'|'-'] rat 'r3'
//! rat    := ['-'] digits [ '/' digits ]
//! ```

mod rational;

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

pub use rational::Rational;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An element `a + b·√3` of ℚ(√3).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { a: Rational::ZERO, b: Rational::ZERO };
    pub const ONE: Scalar = Scalar { a: Rational::ONE, b: Rational::ZERO };

    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::ZERO }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }

    /// `num/den` as a rational scalar.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(Rational::new(num, den))
    }

    /// `√3`.
    pub fn sqrt3() -> Self {
        Scalar { a: Rational::ZERO, b: Rational::ONE }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `√3`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Returns the rational value when there is no `√3` part.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Galois conjugate `a − b√3`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 3b²`, never zero for a nonzero element.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from_integer(3) * &(&self.b * &self.b))
    }

    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::from_rational(self.a.recip().expect("nonzero")));
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "√3 is irrational");
        let conj = self.conjugate();
        Ok(Scalar { a: &conj.a / &n, b: &conj.b / &n })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.checked_inv()?)
    }

    /// Sign of the real number `a + b√3` (−1, 0 or 1), decided exactly.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with 3b².
        let a2 = &self.a * &self.a;
        let b2 = &Rational::from_integer(3) * &(&self.b * &self.b);
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3f64.sqrt()
    }

    /// Exact square root inside ℚ(√3), choosing the nonnegative root.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::ZERO);
        }
        let root = if self.b.is_zero() {
            // (x + y√3)² = p needs xy = 0.
            if let Some(x) = self.a.sqrt() {
                Scalar::from_rational(x)
            } else {
                let y = (&self.a / &Rational::from_integer(3)).sqrt()?;
                Scalar { a: Rational::ZERO, b: y }
            }
        } else {
            // x² + 3y² = p, 2xy = q  ⇒  x² = (p ± √(p² − 3q²)) / 2.
            let (p, q) = (&self.a, &self.b);
            let disc = (p * p - Rational::from_integer(3) * q * q).sqrt()?;
            let two = Rational::from_integer(2);
            let mut found = None;
            for cand in [(p + &disc) / &two, (p - &disc) / &two] {
                if cand.is_zero() {
                    continue;
                }
                if let Some(x) = cand.sqrt() {
                    let y = q / &(&two * &x);
                    found = Some(Scalar { a: x, b: y });
                    break;
                }
            }
            found?
        };
        Some(if root.signum() < 0 { -root } else { root })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let three = Rational::from_integer(3);
        Scalar {
            a: &(&self.a * &rhs.a) + &(&three * &(&self.b * &rhs.b)),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on a zero divisor; see [`Scalar::checked_div`].
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a = &self.a + &rhs.a;
        if !rhs.b.is_zero() {
            self.b = &self.b + &rhs.b;
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a = &self.a - &rhs.a;
        if !rhs.b.is_zero() {
            self.b = &self.b - &rhs.b;
        }
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::ZERO;
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.signum() < 0 { '-' } else { '+' };
        write!(f, "{}{}{}r3", self.a, sign, self.b.abs())
    }
}

struct Cursor<'s> {
    s: &'s [u8],
    pos: usize,
}

impl<'s> Cursor<'s> {
    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'s str, ScalarError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    /// Unsigned `digits ['/' digits]`.
    fn unsigned_rat(&mut self) -> Result<Rational, ScalarError> {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let num: BigInt = self.digits()?.parse().expect("digits");
        let den: BigInt = if self.eat(b'/') {
            let at = self.pos;
            let d: BigInt = self.digits()?.parse().expect("digits");
            if d == BigInt::from(0) {
                return Err(ScalarError::Parse { pos: at, msg: "zero denominator".into() });
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Rational::from_big(BigRational::new(num, den)))
    }

    fn r3(&mut self) -> bool {
        if self.s[self.pos..].starts_with(b"r3") {
            self.pos += 2;
            true
        } else {
            false
        }
    }
}

/// Parses a scalar from the front of `s`, returning it and the number of
/// bytes consumed. Used by the polynomial parser.
pub(crate) fn parse_scalar_prefix(s: &str) -> Result<(Scalar, usize), ScalarError> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let lead_neg = if c.eat(b'-') {
        true
    } else {
        c.eat(b'+');
        false
    };
    let first = c.unsigned_rat()?;
    let first = if lead_neg { -first } else { first };
    if c.r3() {
        return Ok((Scalar { a: Rational::ZERO, b: first }, c.pos));
    }
    // Optional `± rat r3` tail; only taken if it really ends in r3.
    let save = c.pos;
    if let Some(sign @ (b'+' | b'-')) = c.peek() {
        c.pos += 1;
        if let Ok(second) = c.unsigned_rat() {
            if c.r3() {
                let b = if sign == b'-' { -second } else { second };
                return Ok((Scalar { a: first, b }, c.pos));
            }
        }
        c.pos = save;
    }
    Ok((Scalar::from_rational(first), c.pos))
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (x, used) = parse_scalar_prefix(s)?;
        if used != s.len() {
            return Err(ScalarError::Parse { pos: used, msg: "trailing characters".into() });
        }
        Ok(x)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&s("1+2r3") + &s("1/2-1r3"), s("3/2+1r3"));
        assert_eq!(&s("1+1r3") * &s("1-1r3"), Scalar::from_int(-2));
        let inv = Scalar::ONE.checked_div(&s("1+1r3")).unwrap();
        assert_eq!(inv, s("-1/2+1/2r3"));
        assert!((&inv * &s("1+1r3")).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::ONE.checked_div(&Scalar::ZERO), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn parse_grammar_cases() {
        assert_eq!(s("3/2+1r3"), Scalar::new(Rational::new(3, 2), Rational::ONE));
        assert_eq!(s("-1/27"), Scalar::frac(-1, 27));
        assert_eq!(s("0-1/2r3"), Scalar::new(Rational::ZERO, Rational::new(-1, 2)));
        assert_eq!(s("-1/2r3"), Scalar::new(Rational::ZERO, Rational::new(-1, 2)));
        assert_eq!(s("+3r3"), Scalar::new(Rational::ZERO, Rational::from_integer(3)));
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1/0".parse::<Scalar>() {
            Err(ScalarError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match "2+x".parse::<Scalar>() {
            Err(ScalarError::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
        assert!("".parse::<Scalar>().is_err());
        assert!("3/2+1".parse::<Scalar>().is_err());
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(s("6/4").to_string(), "3/2");
        assert_eq!(s("0-1/2r3").to_string(), "0-1/2r3");
        assert_eq!(s("-2r3").to_string(), "0-2r3");
        assert_eq!(s("5+0r3").to_string(), "5");
    }

    #[test]
    fn exact_sign_and_sqrt() {
        assert_eq!(s("2-1r3").signum(), 1);
        assert_eq!(s("1-1r3").signum(), -1);
        assert_eq!(Scalar::frac(1, 27).sqrt(), Some(s("0+1/9r3")));
        assert_eq!(Scalar::frac(2, 3).sqrt(), None);
        assert_eq!(s("4+2r3").sqrt(), Some(s("1+1r3")));
    }
}
