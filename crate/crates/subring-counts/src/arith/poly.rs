use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::ExactInt;

/// Dense integer polynomial in one variable (written `p` throughout),
/// coefficients stored in ascending degree order.
///
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: ExactInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Convenience constructor from machine integers, ascending degree.
    pub fn from_ints(coeffs: &[i128]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| ExactInt::new(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> ExactInt {
        self.coeffs.get(degree).copied().unwrap_or(ExactInt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, p: ExactInt) -> ExactInt {
        let mut acc = ExactInt::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * p + c;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let value = c.value();
            if first {
                if value < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if value < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = value.unsigned_abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        write!(f, "p")?;
                    } else {
                        write!(f, "p^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![ExactInt::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}
