use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::ExactInt;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Used by the interpolation layer; floating point is forbidden there, so
/// intermediate values ride on this type until integrality is established.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ExactRational {
    numer: i128,
    denom: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational { numer: 0, denom: 1 };
    pub const ONE: ExactRational = ExactRational { numer: 1, denom: 1 };

    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "rational with zero denominator");
        let sign = denom.signum();
        let (mut n, mut d) = (
            numer
                .checked_mul(sign)
                .expect("exact integer overflow in rational"),
            denom
                .checked_mul(sign)
                .expect("exact integer overflow in rational"),
        );
        let g = gcd(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        ExactRational { numer: n, denom: d }
    }

    pub fn from_int(value: ExactInt) -> Self {
        ExactRational {
            numer: value.value(),
            denom: 1,
        }
    }

    pub fn numer(self) -> ExactInt {
        ExactInt::new(self.numer)
    }

    pub fn denom(self) -> ExactInt {
        ExactInt::new(self.denom)
    }

    pub fn is_zero(self) -> bool {
        self.numer == 0
    }

    pub fn is_integer(self) -> bool {
        self.denom == 1
    }

    /// The integer value, if the fraction is integral.
    pub fn to_integer(self) -> Option<ExactInt> {
        self.is_integer().then(|| ExactInt::new(self.numer))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: ExactRational) -> ExactRational {
        let numer = self
            .numer
            .checked_mul(rhs.denom)
            .and_then(|a| {
                rhs.numer
                    .checked_mul(self.denom)
                    .and_then(|b| a.checked_add(b))
            })
            .expect("exact integer overflow in rational add");
        let denom = self
            .denom
            .checked_mul(rhs.denom)
            .expect("exact integer overflow in rational add");
        ExactRational::new(numer, denom)
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: ExactRational) -> ExactRational {
        self + (-rhs)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: ExactRational) -> ExactRational {
        // Cross-reduce first to keep intermediates small.
        let g1 = gcd(self.numer, rhs.denom).max(1);
        let g2 = gcd(rhs.numer, self.denom).max(1);
        let numer = (self.numer / g1)
            .checked_mul(rhs.numer / g2)
            .expect("exact integer overflow in rational mul");
        let denom = (self.denom / g2)
            .checked_mul(rhs.denom / g1)
            .expect("exact integer overflow in rational mul");
        ExactRational::new(numer, denom)
    }
}

impl Div for ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: ExactRational) -> ExactRational {
        assert!(rhs.numer != 0, "rational division by zero");
        self * ExactRational::new(rhs.denom, rhs.numer)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = ExactRational::new(6, -4);
        assert_eq!(r.numer().value(), -3);
        assert_eq!(r.denom().value(), 2);
    }

    #[test]
    fn field_operations() {
        let a = ExactRational::new(1, 3);
        let b = ExactRational::new(1, 6);
        assert_eq!(a + b, ExactRational::new(1, 2));
        assert_eq!(a - b, b);
        assert_eq!(a * b, ExactRational::new(1, 18));
        assert_eq!(a / b, ExactRational::new(2, 1));
        assert_eq!((a / b).to_integer(), Some(ExactInt::from(2)));
        assert_eq!(a.to_integer(), None);
    }
}
