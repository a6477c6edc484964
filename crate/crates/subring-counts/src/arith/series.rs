use std::fmt;

use super::ExactInt;

/// Power series in `t` with exact integer coefficients, truncated at a fixed
/// order: exactly the coefficients of `t^0 ..= t^order` are stored.
///
/// In the zeta-factor layer `t` stands for `p^{-s}`, so the coefficient of
/// `t^e` is a count of objects of index `p^e`. Binary operations truncate to
/// the smaller order of the two operands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactInt>,
}

/// Default truncation order; covers every tabulated exponent with margin.
pub const DEFAULT_TRUNCATION_ORDER: usize = 10;

impl TruncatedSeries {
    /// The constant series 1, truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![ExactInt::ZERO; order + 1];
        coeffs[0] = ExactInt::ONE;
        TruncatedSeries { coeffs }
    }

    /// Build from ascending coefficients, padding with zeros or truncating so
    /// the result has exactly `order + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<ExactInt>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactInt::ZERO);
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i128], order: usize) -> Self {
        TruncatedSeries::from_coeffs(coeffs.iter().map(|&c| ExactInt::new(c)).collect(), order)
    }

    /// Geometric series `(1 - c t^k)^{-1}`: coefficient `c^m` at `t^{km}`.
    pub fn geometric(c: ExactInt, k: usize, order: usize) -> Self {
        assert!(k >= 1, "geometric series needs a positive step");
        let mut coeffs = vec![ExactInt::ZERO; order + 1];
        let mut power = ExactInt::ONE;
        let mut idx = 0;
        loop {
            coeffs[idx] = power;
            idx += k;
            if idx > order {
                break;
            }
            power *= c;
        }
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> ExactInt {
        self.coeffs.get(degree).copied().unwrap_or(ExactInt::ZERO)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Cauchy product, truncated to the smaller operand order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![ExactInt::ZERO; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(deg == 0 && self.coeffs.iter().all(|c| c.is_zero())) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{deg}")?,
            }
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
