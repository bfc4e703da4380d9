//! Coefficient and correlation value types.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact complex rational `re + i·im`.
pub type CRational = Complex<BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn crat(n: i64) -> CRational {
    Complex::new(rat(n), BigRational::zero())
}

pub fn crat_from_rational(r: BigRational) -> CRational {
    Complex::new(r, BigRational::zero())
}

pub fn conj(v: &CRational) -> CRational {
    Complex::new(v.re.clone(), -v.im.clone())
}

/// `|v|²` as an exact rational.
pub fn norm_sqr(v: &CRational) -> BigRational {
    &v.re * &v.re + &v.im * &v.im
}

/// `num/den` with the denominator always printed.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exact decimal rendering of a rational that is an integer, else `num/den`.
pub fn display_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

/// Human-readable complex rational: `a`, `a+bi`, `bi`.
pub fn display_complex(v: &CRational) -> String {
    if v.im.is_zero() {
        display_rational(&v.re)
    } else if v.re.is_zero() {
        format!("{}i", display_rational(&v.im))
    } else {
        let sign = if v.im.is_negative() { "-" } else { "+" };
        format!("{}{}{}i", display_rational(&v.re), sign, display_rational(&v.im.abs()))
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// A nonnegative magnitude `|v|`, stored exactly as `|v|²`.
///
/// Ordering follows the squared value, which is the same order as the
/// magnitudes themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Magnitude {
    squared: BigRational,
}

impl Magnitude {
    pub fn from_squared(squared: BigRational) -> Self {
        debug_assert!(!squared.is_negative());
        Self { squared }
    }

    pub fn of(v: &CRational) -> Self {
        Self::from_squared(norm_sqr(v))
    }

    pub fn zero() -> Self {
        Self::from_squared(BigRational::zero())
    }

    pub fn squared(&self) -> &BigRational {
        &self.squared
    }

    /// `|v|` itself when it is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        rational_sqrt(&self.squared)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Magnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        self.squared.cmp(&other.squared)
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => f.write_str(&display_rational(&r)),
            None => write!(f, "sqrt({})", display_rational(&self.squared)),
        }
    }
}

/// A correlation value type the scanning code is generic over.
///
/// Binary sequences have integer correlations and use `i64`; every other
/// seed goes through exact complex rationals.
pub trait CorrScalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Norm: Ord + Clone + Send + Sync + fmt::Debug;

    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, k: i64) -> Self;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Norm;
    fn to_exact(&self) -> CRational;
    fn norm_to_rational(n: &Self::Norm) -> BigRational;
}

impl CorrScalar for i64 {
    type Norm = u128;

    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("correlation value overflows i64")
    }
    fn scale(&self, k: i64) -> Self {
        self.checked_mul(k).expect("correlation value overflows i64")
    }
    fn conj(&self) -> Self {
        *self
    }
    fn norm_sqr(&self) -> u128 {
        let a = self.unsigned_abs() as u128;
        a * a
    }
    fn to_exact(&self) -> CRational {
        crat(*self)
    }
    fn norm_to_rational(n: &u128) -> BigRational {
        BigRational::from_integer(BigInt::from(*n))
    }
}

impl CorrScalar for CRational {
    type Norm = BigRational;

    fn zero() -> Self {
        <Complex<BigRational> as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, k: i64) -> Self {
        let k = rat(k);
        Complex::new(&self.re * &k, &self.im * &k)
    }
    fn conj(&self) -> Self {
        conj(self)
    }
    fn norm_sqr(&self) -> BigRational {
        norm_sqr(self)
    }
    fn to_exact(&self) -> CRational {
        self.clone()
    }
    fn norm_to_rational(n: &BigRational) -> BigRational {
        n.clone()
    }
}

/// Integer value of an exact complex rational, if it is one and fits.
pub fn as_i64(v: &CRational) -> Option<i64> {
    (v.im.is_zero() && v.re.is_integer()).then(|| v.re.to_integer().to_i64())?
}

pub fn is_one(v: &CRational) -> bool {
    v.im.is_zero() && v.re.is_one()
}
