//! Exact arithmetic in the quadratic field Q(√2).
//!
//! Every coordinate in the engine is a [`QSqrt2`], a pair of arbitrary
//! precision rationals `(a, b)` standing for `a + b√2`. Because √2 is
//! irrational the pair is a unique representation, so equality, sign and
//! rationality are all decidable with integer arithmetic alone.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always held in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator must be positive")]
    NonPositiveDenominator,
    #[error("non-canonical number string {0:?}")]
    NonCanonical(String),
    #[error("malformed number string {0:?}")]
    Malformed(String),
}

/// The number `a + b√2`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    a: Rational,
    b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QSqrt2 {
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        QSqrt2::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        QSqrt2 {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// `√2 / 2`, the cosine of a 45° turn.
    pub fn half_sqrt2() -> Self {
        QSqrt2 {
            a: Rational::zero(),
            b: Rational::new(BigInt::from(1), BigInt::from(2)),
        }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √2.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a - b√2`.
    pub fn conjugate(&self) -> Self {
        QSqrt2 {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a² − 2b²`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QSqrt2 {
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact sign of the real value, as -1, 0 or +1.
    ///
    /// With opposite-signed components the larger of `a²` and `2b²` wins.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(BigInt::from(2)) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QSqrt2 {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        // b√2 = sign(b)·√(2·p²)/q; the integer square root gives an estimate
        // within one or two units, then exact sign tests settle it.
        let p = self.b.numer();
        let q = self.b.denom();
        let root = (BigInt::from(2) * p * p).sqrt();
        let est_b = if p.is_negative() {
            -(root / q)
        } else {
            root / q
        };
        let mut n = self.a.floor().to_integer() + est_b;
        loop {
            let lower = self - &QSqrt2::from_rational(Rational::from_integer(n.clone()));
            if lower.is_negative() {
                n -= 1;
                continue;
            }
            let upper = self - &QSqrt2::from_rational(Rational::from_integer(&n + 1));
            if !upper.is_negative() {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Decimal rendering with `digits` places after the point, rounded to
    /// nearest with ties away from zero. Only used for display.
    pub fn approx(&self, digits: usize) -> String {
        assert!(digits >= 1, "decimal_digits must be at least 1");
        let negative = self.is_negative();
        let mag = self.abs();
        let scale = Rational::from_integer(BigInt::from(10).pow(digits as u32));
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let shifted = &mag.scale(&scale) + &QSqrt2::from_rational(half);
        let n = shifted.floor();
        let s = n.to_str_radix(10);
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int_part, frac) = s.split_at(s.len() - digits);
        let sign = if negative && !n.is_zero() { "-" } else { "" };
        format!("{sign}{int_part}.{frac}")
    }

    /// Lossy conversion for display and float-side oracles.
    pub fn to_f64(&self) -> f64 {
        self.approx(17).parse().unwrap_or(f64::NAN)
    }
}

fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<Rational> for QSqrt2 {
    fn from(a: Rational) -> Self {
        QSqrt2::from_rational(a)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        QSqrt2::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a QSqrt2> for &'a QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &'a QSqrt2) -> QSqrt2 {
                let f: fn(&QSqrt2, &QSqrt2) -> QSqrt2 = $body;
                f(self, rhs)
            }
        }
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &'a QSqrt2) -> QSqrt2 {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QSqrt2> for &'a QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| QSqrt2 {
    a: &x.a + &y.a,
    b: &x.b + &y.b
});
forward_binop!(Sub, sub, |x, y| QSqrt2 {
    a: &x.a - &y.a,
    b: &x.b - &y.b
});
forward_binop!(Mul, mul, |x, y| {
    let two = Rational::from_integer(BigInt::from(2));
    QSqrt2 {
        a: &x.a * &y.a + two * &x.b * &y.b,
        b: &x.a * &y.b + &x.b * &y.a,
    }
});
// Panics on a zero divisor, like integer division; use `checked_div` for a Result.
forward_binop!(Div, div, |x, y| x.checked_div(y).expect("division by zero"));

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt2> for QSqrt2 {
    fn sub_assign(&mut self, rhs: &QSqrt2) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Sum for QSqrt2 {
    fn sum<I: Iterator<Item = QSqrt2>>(iter: I) -> Self {
        iter.fold(QSqrt2::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a QSqrt2> for QSqrt2 {
    fn sum<I: Iterator<Item = &'a QSqrt2>>(iter: I) -> Self {
        iter.fold(QSqrt2::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

/// Canonical spelling `p/q±r/s√2`: both fractions in lowest terms with
/// positive denominators, the sign of the √2 coefficient carried by the
/// joining operator.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        write!(
            f,
            "{}/{}{}{}/{}√2",
            self.a.numer(),
            self.a.denom(),
            op,
            b.numer(),
            b.denom()
        )
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigInt, NumError> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return Err(NumError::Malformed(whole.to_string()));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(NumError::NonCanonical(whole.to_string()));
    }
    Ok(s.parse::<BigInt>().expect("digits"))
}

fn parse_fraction(num: &str, den: &str, negative: bool, whole: &str) -> Result<Rational, NumError> {
    let n = parse_digits(num, whole)?;
    let d = parse_digits(den, whole)?;
    if d.is_zero() {
        return Err(NumError::NonPositiveDenominator);
    }
    if !n.gcd(&d).is_one() || (negative && n.is_zero()) {
        return Err(NumError::NonCanonical(whole.to_string()));
    }
    let n = if negative { -n } else { n };
    Ok(Rational::new_raw(n, d))
}

/// Strict parser: accepts only the canonical spelling produced by `Display`.
impl FromStr for QSqrt2 {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || NumError::Malformed(s.to_string());
        let body = s.strip_suffix("√2").ok_or_else(malformed)?;
        let (a_neg, rest) = match body.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, body),
        };
        let op_pos = rest.find(['+', '-']).ok_or_else(malformed)?;
        let (a_part, b_part) = rest.split_at(op_pos);
        let b_neg = b_part.starts_with('-');
        let b_part = &b_part[1..];
        let (an, ad) = a_part.split_once('/').ok_or_else(malformed)?;
        let (bn, bd) = b_part.split_once('/').ok_or_else(malformed)?;
        let a = parse_fraction(an, ad, a_neg, s)?;
        let b = parse_fraction(bn, bd, b_neg, s)?;
        Ok(QSqrt2 { a, b })
    }
}

/// Parses a user-supplied rational: `p/q` or a bare integer, optionally
/// negative. Decimals are rejected. Non-reduced fractions are accepted and
/// normalized; a zero denominator is an error.
pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let ok = |x: &str| !x.is_empty() && x.bytes().all(|c| c.is_ascii_digit());
    if !ok(n) || !ok(d) {
        return Err(NumError::Malformed(s.to_string()));
    }
    let n: BigInt = n.parse().expect("digits");
    let d: BigInt = d.parse().expect("digits");
    if d.is_zero() {
        return Err(NumError::NonPositiveDenominator);
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
