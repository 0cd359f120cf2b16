//! Exact arithmetic in the Eisenstein integers `Z[ζ]` and the field `Q(ζ)`.
//!
//! Both types use the basis `{1, ζ}` with `ζ² = −1 − ζ`. Components are
//! arbitrary precision so nothing in the crate has overflow semantics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + bζ` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The primitive cube root of unity `ζ`.
    pub fn zeta() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Complex conjugation, `ζ ↦ ζ² = −1 − ζ`.
    pub fn conj(&self) -> Self {
        Self { a: &self.a - &self.b, b: -&self.b }
    }

    /// `x · conj(x) = a² − ab + b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn to_cyc(&self) -> CycRat {
        CycRat::from(self.clone())
    }
}

/// The six units `(−ζ)^k`, `k = 0..5`: `1, −ζ, ζ², −1, ζ, −ζ²`.
pub fn units() -> Vec<EisensteinInt> {
    let minus_zeta = EisensteinInt::new(0, -1);
    (0..6).map(|k| minus_zeta.pow(k)).collect()
}

impl fmt::Display for EisensteinInt {
    /// Renders as the data-file token `a+b*z` (or `a-b*z`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*z", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*z", self.a, self.b)
        }
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad Eisenstein token {s:?}"));
        let body = s.strip_suffix("*z").ok_or_else(bad)?;
        // the separator is the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(i, _)| i)
            .ok_or_else(bad)?;
        let a: BigInt = body[..split].parse().map_err(|_| bad())?;
        let mut b: BigInt = body[split + 1..].parse().map_err(|_| bad())?;
        if b.is_negative() {
            return Err(bad());
        }
        if &body[split..=split] == "-" {
            b = -b;
        }
        Ok(Self { a, b })
    }
}

impl<'a> Add<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a EisensteinInt> for &'a EisensteinInt {
    type Output = EisensteinInt;
    /// `(a+bζ)(c+dζ) = (ac−bd) + (ad+bc−bd)ζ`.
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &rhs.b;
        EisensteinInt { a: &self.a * &rhs.a - &bd, b: &self.a * &rhs.b + &self.b * &rhs.a - bd }
    }
}

impl Neg for &EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -&self.a, b: -&self.b }
    }
}

/// `p + qζ` with rational coefficients.
///
/// `BigRational` keeps each component reduced with a positive denominator,
/// so derived equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycRat {
    pub p: BigRational,
    pub q: BigRational,
}

impl CycRat {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Self::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()))
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    /// `num/den` as a rational scalar.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn zeta() -> Self {
        Self::from_ints(0, 1)
    }

    /// `ζ²`, also `conj(ζ)`.
    pub fn zeta2() -> Self {
        Self::from_ints(-1, -1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::zeta(),
            _ => Self::zeta2(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { p: &self.p - &self.q, q: -&self.q }
    }

    /// Field norm `p² − pq + q²`; a nonnegative rational.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.p * &self.q + &self.q * &self.q
    }

    /// Rational value when `q = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.q.is_zero().then_some(&self.p)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self { p: c.p / &n, q: c.q / n })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { p: &self.p * r, q: &self.q * r }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Back into `Z[ζ]` when both components are integers.
    pub fn to_eisenstein(&self) -> Option<EisensteinInt> {
        (self.p.is_integer() && self.q.is_integer())
            .then(|| EisensteinInt { a: self.p.to_integer(), b: self.q.to_integer() })
    }

    /// `Some(k)` with `self = ζ^k`, `k ∈ {0,1,2}`.
    pub fn cube_root_exponent(&self) -> Option<u8> {
        (0..3u8).find(|&k| *self == Self::zeta_pow(k as i64))
    }

    /// Double-precision embedding with `ζ = (−1 + i√3)/2`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        num_complex::Complex64::new(p - q / 2.0, q * 3f64.sqrt() / 2.0)
    }
}

impl From<EisensteinInt> for CycRat {
    fn from(x: EisensteinInt) -> Self {
        Self::new(BigRational::from_integer(x.a), BigRational::from_integer(x.b))
    }
}

impl From<i64> for CycRat {
    fn from(x: i64) -> Self {
        Self::from_ints(x, 0)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.q.is_negative() {
            write!(f, "{}-{}*z", self.p, -&self.q)
        } else {
            write!(f, "{}+{}*z", self.p, self.q)
        }
    }
}

impl<'a> Add<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn add(self, rhs: &CycRat) -> CycRat {
        CycRat { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> Sub<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn sub(self, rhs: &CycRat) -> CycRat {
        CycRat { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> Mul<&'a CycRat> for &'a CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        let qs = &self.q * &rhs.q;
        CycRat { p: &self.p * &rhs.p - &qs, q: &self.p * &rhs.q + &self.q * &rhs.p - qs }
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { p: -&self.p, q: -&self.q }
    }
}

macro_rules! owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_binops!(EisensteinInt);
owned_binops!(CycRat);
