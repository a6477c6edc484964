//! Exact arithmetic substrate.
//!
//! Everything downstream counts objects, so every operation here is exact:
//! [`ExactInt`] wraps a 128-bit signed integer whose arithmetic panics on
//! overflow instead of wrapping, [`ExactRational`] keeps fractions in lowest
//! terms, [`IntPolynomial`] is a dense integer polynomial in `p`, and
//! [`TruncatedSeries`] is a power series in `t` with exact integer
//! coefficients. The desk-scale ranges handled by this crate stay far below
//! the 128-bit limit; the checks exist so that exceeding it can never go
//! unnoticed.

mod poly;
mod rational;
mod series;

pub use poly::IntPolynomial;
pub use rational::ExactRational;
pub use series::{TruncatedSeries, DEFAULT_TRUNCATION_ORDER};

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Exact signed integer. Arithmetic is checked: overflow aborts with a
/// distinct panic message rather than wrapping.
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(i128);

impl ExactInt {
    pub const ZERO: ExactInt = ExactInt(0);
    pub const ONE: ExactInt = ExactInt(1);

    pub fn new(value: i128) -> Self {
        ExactInt(value)
    }

    pub fn value(self) -> i128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn abs(self) -> Self {
        ExactInt(self.0.checked_abs().expect("exact integer overflow in abs"))
    }

    /// `self^exp` by repeated squaring, checked.
    pub fn pow(self, exp: u32) -> Self {
        let mut base = self;
        let mut exp = exp;
        let mut acc = ExactInt::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Exact division; panics if `rhs` does not divide `self`.
    pub fn div_exact(self, rhs: ExactInt) -> Self {
        assert!(rhs.0 != 0, "exact division by zero");
        assert!(
            self.0 % rhs.0 == 0,
            "inexact division: {} / {}",
            self.0,
            rhs.0
        );
        ExactInt(self.0 / rhs.0)
    }
}

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! exact_from {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactInt {
            fn from(value: $t) -> Self {
                ExactInt(value as i128)
            }
        }
    )*};
}
exact_from!(i8, i16, i32, i64, i128, u8, u16, u32, u64);

impl Add for ExactInt {
    type Output = ExactInt;
    fn add(self, rhs: ExactInt) -> ExactInt {
        ExactInt(
            self.0
                .checked_add(rhs.0)
                .expect("exact integer overflow in add"),
        )
    }
}

impl Sub for ExactInt {
    type Output = ExactInt;
    fn sub(self, rhs: ExactInt) -> ExactInt {
        ExactInt(
            self.0
                .checked_sub(rhs.0)
                .expect("exact integer overflow in sub"),
        )
    }
}

impl Mul for ExactInt {
    type Output = ExactInt;
    fn mul(self, rhs: ExactInt) -> ExactInt {
        ExactInt(
            self.0
                .checked_mul(rhs.0)
                .expect("exact integer overflow in mul"),
        )
    }
}

impl Neg for ExactInt {
    type Output = ExactInt;
    fn neg(self) -> ExactInt {
        ExactInt(self.0.checked_neg().expect("exact integer overflow in neg"))
    }
}

impl AddAssign for ExactInt {
    fn add_assign(&mut self, rhs: ExactInt) {
        *self = *self + rhs;
    }
}

impl SubAssign for ExactInt {
    fn sub_assign(&mut self, rhs: ExactInt) {
        *self = *self - rhs;
    }
}

impl MulAssign for ExactInt {
    fn mul_assign(&mut self, rhs: ExactInt) {
        *self = *self * rhs;
    }
}

impl Sum for ExactInt {
    fn sum<I: Iterator<Item = ExactInt>>(iter: I) -> ExactInt {
        iter.fold(ExactInt::ZERO, |acc, x| acc + x)
    }
}

/// Binomial coefficient `C(n, k)`, exactly; `0` for `k < 0` or `k > n`.
pub fn binomial(n: u32, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n as u64 {
        return ExactInt::ZERO;
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc: i128 = 1;
    for i in 1..=k as i128 {
        // acc is C(n - k + i - 1, i - 1); the product below is divisible by i.
        acc = acc
            .checked_mul(n as i128 - k as i128 + i)
            .expect("exact integer overflow in binomial");
        acc /= i;
    }
    ExactInt(acc)
}
