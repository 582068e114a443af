//! Exact arithmetic over the Gaussian rationals Q(i).
//!
//! Every coefficient in this crate is a [`Scalar`]: a pair of arbitrary-precision
//! rationals (real and imaginary part), always kept in reduced canonical form so
//! that structural equality is field equality. The integrality predicate
//! [`Scalar::is_integer`] drives every case split of the decomposition count.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number. Re-exported alias over an arbitrary-precision ratio;
/// the underlying type keeps gcd(numerator, denominator) = 1 and denominator > 0.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid scalar literal {0:?}")]
    Parse(String),
}

/// A Gaussian rational a + b*i with exact components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// p/q as a real scalar. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// a/b + (c/d)i. Panics if b = 0 or d = 0.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar::new(
            Rational::new(BigInt::from(a), BigInt::from(b)),
            Rational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True iff the value lies in Z, viewed inside C.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The integer value, when `is_integer()` holds.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// |a|^2 = a * conj(a), a rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// n! as a scalar.
    pub fn factorial(n: u32) -> Scalar {
        let mut acc = BigInt::one();
        for t in 2..=n {
            acc *= BigInt::from(t);
        }
        Scalar::from_rational(Rational::from_integer(acc))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
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
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
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

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text syntax: "p/q", "p", "p/q+r/si", "r/si", with an optional leading sign
/// and "-" between the parts for a negative imaginary component.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if self.re.is_zero() {
            fmt_rational(&self.im, f)?;
            return write!(f, "i");
        }
        fmt_rational(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, "-")?;
            fmt_rational(&-self.im.clone(), f)?;
        } else {
            write!(f, "+")?;
            fmt_rational(&self.im, f)?;
        }
        write!(f, "i")
    }
}

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    Rational::from_str(s).map_err(|_| ScalarError::Parse(s.to_string()))
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        if let Some(body) = s.strip_suffix('i') {
            // Split at the last top-level sign; a sign at position 0 belongs
            // to the single imaginary part.
            let split = body
                .char_indices()
                .skip(1)
                .find(|&(_, ch)| ch == '+' || ch == '-')
                .map(|(idx, _)| idx);
            match split {
                Some(idx) => {
                    let re = parse_rational(&body[..idx])?;
                    let im_str = &body[idx..];
                    let im = if let Some(rest) = im_str.strip_prefix('+') {
                        parse_rational(rest)?
                    } else {
                        parse_rational(im_str)?
                    };
                    Ok(Scalar::new(re, im))
                }
                None => Ok(Scalar::new(Rational::zero(), parse_rational(body)?)),
            }
        } else {
            Ok(Scalar::from_rational(parse_rational(s)?))
        }
    }
}
