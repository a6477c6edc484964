//! Recovering polynomial structure from raw counts: exact Lagrange
//! interpolation of counts sampled at several primes, binomial-basis fits
//! over the dimension `n`, and expansion in powers of `p - 1`.
//!
//! Whether the counts this crate produces are polynomials in `p` at all is
//! an open structural question for large parameters; the fits here produce
//! evidence, not proofs, so a failed fit is reported as a finding rather
//! than treated as an arithmetic error. Floating point is forbidden
//! throughout: interpolation runs on [`ExactRational`] and only returns a
//! polynomial once every coefficient is integral.

use std::collections::BTreeMap;

use crate::arith::{ExactInt, ExactRational, IntPolynomial};
use crate::error::{Error, Result};
use crate::lattice::Composition;

/// Counts of a single family sampled at distinct primes.
#[derive(Clone, Debug)]
pub struct SampleSet {
    points: Vec<(u64, ExactInt)>,
    label: String,
}

impl SampleSet {
    /// Errors if any prime appears twice.
    pub fn new(label: impl Into<String>, points: Vec<(u64, ExactInt)>) -> Result<Self> {
        for (i, &(p, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|&(q, _)| q == p) {
                return Err(Error::DuplicatePrime { p });
            }
        }
        Ok(SampleSet {
            points,
            label: label.into(),
        })
    }

    pub fn points(&self) -> &[(u64, ExactInt)] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Outcome classification of a fit.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FitStatus {
    /// Integral coefficients and every held-out prime reproduced exactly.
    ExactInteger,
    /// The interpolant has a fractional coefficient.
    NonIntegerCoefficients,
    /// Integral coefficients, but some held-out sample disagrees: the family
    /// is not a polynomial of the bounded degree.
    HoldoutMismatch,
    /// Too few samples to fit the requested degree and hold one out.
    Underdetermined,
}

impl std::fmt::Display for FitStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FitStatus::ExactInteger => write!(f, "exact-integer"),
            FitStatus::NonIntegerCoefficients => write!(f, "non-integer-coefficients"),
            FitStatus::HoldoutMismatch => write!(f, "holdout-mismatch"),
            FitStatus::Underdetermined => write!(f, "underdetermined"),
        }
    }
}

/// Result of [`interpolate_in_p`]. The polynomial is meaningful only when
/// the status is [`FitStatus::ExactInteger`] or
/// [`FitStatus::HoldoutMismatch`]; otherwise it is zero.
#[derive(Clone, Debug)]
pub struct FitResult {
    pub polynomial: IntPolynomial,
    /// Held-out primes that reproduced their samples exactly.
    pub verified_on: Vec<u64>,
    pub status: FitStatus,
}

/// Lagrange-interpolate the first `degree_bound + 1` samples with exact
/// rational arithmetic and verify against the remaining held-out samples.
/// Fewer than `degree_bound + 1` samples yield status
/// [`FitStatus::Underdetermined`] rather than an error; with exactly
/// `degree_bound + 1` the fit has no holdout and held-out verification is
/// vacuous, so callers wanting certification should pass one extra prime.
pub fn interpolate_in_p(samples: &SampleSet, degree_bound: usize) -> Result<FitResult> {
    let points = samples.points();
    if points.len() < degree_bound + 1 {
        return Ok(FitResult {
            polynomial: IntPolynomial::zero(),
            verified_on: Vec::new(),
            status: FitStatus::Underdetermined,
        });
    }
    let (fit_points, holdout) = points.split_at(degree_bound + 1);
    let coeffs = lagrange_coefficients(fit_points);
    let mut int_coeffs = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        match c.to_integer() {
            Some(v) => int_coeffs.push(v),
            None => {
                return Ok(FitResult {
                    polynomial: IntPolynomial::zero(),
                    verified_on: Vec::new(),
                    status: FitStatus::NonIntegerCoefficients,
                })
            }
        }
    }
    let polynomial = IntPolynomial::from_coeffs(int_coeffs);
    let mut verified_on = Vec::new();
    let mut all_pass = true;
    for &(p, expected) in holdout {
        if polynomial.eval(ExactInt::from(p)) == expected {
            verified_on.push(p);
        } else {
            all_pass = false;
        }
    }
    let status = if all_pass {
        FitStatus::ExactInteger
    } else {
        FitStatus::HoldoutMismatch
    };
    Ok(FitResult {
        polynomial,
        verified_on,
        status,
    })
}

/// Coefficients (ascending) of the unique degree `< points.len()` rational
/// polynomial through the points.
fn lagrange_coefficients(points: &[(u64, ExactInt)]) -> Vec<ExactRational> {
    let d = points.len();
    let mut acc = vec![ExactRational::ZERO; d];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis(x) = prod over j != i of (x - xj), built up in place.
        let mut basis = vec![ExactRational::ZERO; d];
        basis[0] = ExactRational::ONE;
        let mut deg = 0usize;
        let mut denom = ExactRational::ONE;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let xj_rat = ExactRational::new(xj as i128, 1);
            deg += 1;
            for k in (0..=deg).rev() {
                let shifted = if k >= 1 {
                    basis[k - 1]
                } else {
                    ExactRational::ZERO
                };
                basis[k] = shifted - basis[k] * xj_rat;
            }
            denom = denom * ExactRational::new(xi as i128 - xj as i128, 1);
        }
        let scale = ExactRational::from_int(yi) / denom;
        for (a, b) in acc.iter_mut().zip(basis) {
            *a = *a + b * scale;
        }
    }
    acc
}

/// Recover the unique coefficients `c_k` with
/// `value(n) = sum over k of c_k * C(n, k)` from `values[n]`, `n = 0..=k_max`,
/// by forward differences at 0: `c_k` is the k-th difference of the sequence.
pub fn binomial_fit_over_n(values: &[ExactInt], k_max: u32) -> Result<BTreeMap<u32, ExactInt>> {
    let needed = k_max as usize + 1;
    if values.len() < needed {
        return Err(Error::InsufficientRange {
            k_max,
            needed,
            got: values.len(),
        });
    }
    let mut diffs = values[..needed].to_vec();
    let mut out = BTreeMap::new();
    for k in 0..=k_max {
        out.insert(k, diffs[0]);
        let remaining = needed - 1 - k as usize;
        for i in 0..remaining {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
    }
    Ok(out)
}

/// Coefficients `b_j` with `f(p) = sum of b_j (p-1)^j`, by repeated
/// synthetic division by `p - 1`. Positivity of these coefficients for the
/// counting polynomials is observed, not proven, so callers report the signs
/// rather than assert them.
pub fn expand_p_minus_1(f: &IntPolynomial) -> Vec<ExactInt> {
    if f.is_zero() {
        return vec![ExactInt::ZERO];
    }
    let mut c = f.coeffs().to_vec();
    let mut out = Vec::with_capacity(c.len());
    while !c.is_empty() {
        let d = c.len() - 1;
        let mut quotient = vec![ExactInt::ZERO; d];
        let mut carry = ExactInt::ZERO;
        for k in (1..=d).rev() {
            carry += c[k];
            quotient[k - 1] = carry;
        }
        let remainder = c[0] + quotient.first().copied().unwrap_or(ExactInt::ZERO);
        out.push(remainder);
        c = quotient;
    }
    // Cheap independent check of the shift: the constant term is f(1).
    assert_eq!(
        out[0],
        f.eval(ExactInt::ONE),
        "shift must agree with direct evaluation"
    );
    out
}

/// Default interpolation degree bound for counts indexed by a composition:
/// the base-p logarithm of the raw candidate space (the number of free
/// entries weighted by their ranges), which dominates the degree of every
/// family in scope.
pub fn interpolation_degree_bound(alpha: &Composition) -> usize {
    let parts = alpha.parts();
    let len = parts.len();
    parts
        .iter()
        .enumerate()
        .map(|(i, &a)| (a as usize - 1) * (len - 1 - i))
        .sum()
}
