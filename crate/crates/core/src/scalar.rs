//! Scalar fields the geometry kernels are generic over.
//!
//! Two implementations exist: [`Rational`], an exact arbitrary-precision
//! rational, and `f64`. Every kernel is written once against [`Scalar`];
//! the caller picks the mode. Exact mode is the default everywhere a choice
//! is made on the caller's behalf.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default relative tolerance for float mode.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// How residuals are judged.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Tolerance {
    /// A residual passes only if it is exactly zero.
    #[default]
    Exact,
    /// `|a - b| <= eps * max(1, |a|, |b|)`.
    Relative(f64),
}

/// Field operations needed by the form and tensor kernels.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;
    /// Short mode tag used in reports.
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact test against zero (no tolerance).
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    fn from_int(k: i64) -> Self {
        Self::from_ratio(k, 1)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    /// `self += a * b`, skipping the product when either factor is zero.
    fn add_prod(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add_ref(&a.mul_ref(b));
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        *self = self.add_ref(other);
    }

    fn scale_int(&self, k: i64) -> Self {
        self.mul_ref(&Self::from_int(k))
    }

    /// Larger of two magnitudes (inputs are assumed non-negative).
    fn max_mag(self, other: Self) -> Self;

    /// Residual rendering: exact rationals as `p/q`, floats in scientific form.
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Exact rational with an `i64` fast path.
///
/// Values that fit are always stored as `Small`; `Big` only holds values whose
/// numerator or denominator overflows `i64`. Structural equality is therefore
/// numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::Small(Ratio::new(num, den))
    }

    pub fn integer(k: i64) -> Rational {
        Rational::Small(Ratio::from_integer(k))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rational::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigRational) -> Rational {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(Ratio::new_raw(n, d)),
            _ => Rational::Big(Box::new(b)),
        }
    }

    pub fn numer_string(&self) -> String {
        match self {
            Rational::Small(r) => r.numer().to_string(),
            Rational::Big(b) => b.numer().to_string(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => r.is_integer(),
            Rational::Big(b) => b.is_integer(),
        }
    }

    fn signum_i(&self) -> i32 {
        match self {
            Rational::Small(r) => r.numer().signum() as i32,
            Rational::Big(b) => {
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
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                if let (Rational::Small(a), Rational::Small(b)) = (&self, &rhs) {
                    if let Some(r) = a.$checked(b) {
                        return Rational::Small(r);
                    }
                }
                Rational::from_big(self.to_big().$method(rhs.to_big()))
            }
        }
    };
}

rational_binop!(Add, add, checked_add);
rational_binop!(Sub, sub, checked_sub);
rational_binop!(Mul, mul, checked_mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Rational::Small(a), Rational::Small(b)) = (&self, &rhs) {
            if let Some(inv) = checked_recip(b) {
                if let Some(r) = a.checked_mul(&inv) {
                    return Rational::Small(r);
                }
            }
        }
        Rational::from_big(self.to_big() / rhs.to_big())
    }
}

fn checked_recip(r: &Ratio<i64>) -> Option<Ratio<i64>> {
    let (n, d) = (*r.numer(), *r.denom());
    if n == i64::MIN {
        return None;
    }
    if n < 0 {
        Some(Ratio::new_raw(d.checked_neg()?, -n))
    } else {
        Some(Ratio::new_raw(d, n))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            other => Rational::from_big(-other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) => write!(f, "{r}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `-p`, `p/q`.
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        Rational::integer(0)
    }

    fn one() -> Self {
        Rational::integer(1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.numer() == &0,
            Rational::Big(b) => b.is_zero(),
        }
    }

    fn abs(&self) -> Self {
        if self.signum_i() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(r) = a.checked_add(b) {
                return Rational::Small(r);
            }
        }
        Rational::from_big(self.to_big() + other.to_big())
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(r) = a.checked_sub(b) {
                return Rational::Small(r);
            }
        }
        Rational::from_big(self.to_big() - other.to_big())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if a.is_integer() && b.is_integer() {
                if let Some(p) = a.numer().checked_mul(b.numer()) {
                    return Rational::Small(Ratio::from_integer(p));
                }
            }
            if let Some(r) = a.checked_mul(b) {
                return Rational::Small(r);
            }
        }
        Rational::from_big(self.to_big() * other.to_big())
    }

    fn max_mag(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn max_mag(self, other: Self) -> Self {
        self.max(other)
    }

    fn render(&self) -> String {
        format!("{self:.6e}")
    }
}

/// A max-norm residual together with the magnitude of the quantities compared.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<S> {
    pub value: S,
    pub scale: S,
}

impl<S: Scalar> Residual<S> {
    pub fn zero() -> Self {
        Residual {
            value: S::zero(),
            scale: S::zero(),
        }
    }

    pub fn of(value: S, scale: S) -> Self {
        Residual {
            value: value.abs(),
            scale: scale.abs(),
        }
    }

    /// Accumulate one comparison `|lhs - rhs|`.
    pub fn observe(&mut self, lhs: &S, rhs: &S) {
        let diff = lhs.sub_ref(rhs).abs();
        if !diff.is_zero() {
            self.value = std::mem::replace(&mut self.value, S::zero()).max_mag(diff);
        }
        if !S::EXACT {
            let mag = lhs.abs().max_mag(rhs.abs());
            self.scale = std::mem::replace(&mut self.scale, S::zero()).max_mag(mag);
        }
    }

    pub fn merge(mut self, other: Residual<S>) -> Self {
        self.value = self.value.max_mag(other.value);
        self.scale = self.scale.max_mag(other.scale);
        self
    }

    pub fn passes(&self, tol: Tolerance) -> bool {
        match tol {
            _ if S::EXACT => self.value.is_zero(),
            Tolerance::Exact => self.value.is_zero(),
            Tolerance::Relative(eps) => {
                self.value.to_f64() <= eps * self.scale.to_f64().abs().max(1.0)
            }
        }
    }

    pub fn render(&self) -> String {
        self.value.render()
    }
}

/// Float-mode equality `|a-b| <= eps * max(1,|a|,|b|)`; exact equality otherwise.
pub fn approx_eq<S: Scalar>(a: &S, b: &S, tol: Tolerance) -> bool {
    let mut r = Residual::zero();
    r.observe(a, b);
    r.passes(tol)
}

/// Parses a rational literal and lifts it into `S`.
pub fn parse_scalar<S: Scalar>(s: &str) -> Result<S> {
    let r: Rational = s.parse()?;
    Ok(S::from_rational(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_path_promotes_on_overflow() {
        let big = Rational::integer(i64::MAX);
        let sum = big.add_ref(&Rational::integer(1));
        assert!(matches!(sum, Rational::Big(_)));
        let back = sum.sub_ref(&Rational::integer(1));
        assert_eq!(back, Rational::integer(i64::MAX));
        assert!(matches!(back, Rational::Small(_)));
    }

    #[test]
    fn product_overflow_is_exact() {
        let a = Rational::new(i64::MAX, 3);
        let sq = a.mul_ref(&a);
        let again = sq / a.clone();
        assert_eq!(again, a);
    }

    #[test]
    fn parse_and_display() {
        let r: Rational = "-14/12".parse().unwrap();
        assert_eq!(r.to_string(), "-7/6");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_and_max() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 2);
        assert_eq!(a.clone().max_mag(b.clone()), b);
        assert_eq!(b.clone().max_mag(a), b);
    }

    #[test]
    fn float_tolerance_is_relative() {
        let tol = Tolerance::Relative(DEFAULT_EPSILON);
        assert!(approx_eq(&1e6, &(1e6 + 1e-4), tol));
        assert!(!approx_eq(&1.0, &(1.0 + 1e-6), tol));
        assert!(approx_eq(&0.0, &1e-10, tol));
    }

    #[test]
    fn exact_residual_requires_zero() {
        let mut r = Residual::<Rational>::zero();
        r.observe(&Rational::new(1, 3), &Rational::new(1, 3));
        assert!(r.passes(Tolerance::Relative(1.0)));
        r.observe(&Rational::new(1, 3), &Rational::new(1, 4));
        assert!(!r.passes(Tolerance::Relative(1.0)));
        assert_eq!(r.render(), "1/12");
    }
}
