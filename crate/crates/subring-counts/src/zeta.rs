//! Truncated local zeta factors at a fixed prime, in the variable
//! `t = p^{-s}`: the coefficient of `t^e` in a factor is the count of
//! objects of index `p^e`.
//!
//! Two kinds are provided: the sublattice factor, which exists in closed
//! form for every `n`, and the subring factor, whose closed forms are known
//! only for `n = 2, 3, 4`. Everything here is local; no global Dirichlet
//! series object exists, translations like `zeta(s - j)` appear only as the
//! geometric factors `(1 - p^j t)^{-1}`.

use std::sync::LazyLock;

use crate::arith::{ExactInt, IntPolynomial, TruncatedSeries};
use crate::error::{Error, Result};

/// Local sublattice factor `prod over j = 0..n-1 of (1 - p^j t)^{-1}`;
/// the coefficient of `t^k` is the sublattice count `s_n(p^k)`.
pub fn subgroup_local_factor(n: u32, p: u64, order: usize) -> TruncatedSeries {
    assert!(n >= 1, "dimension must be positive");
    let mut series = TruncatedSeries::one(order);
    let mut c = ExactInt::ONE;
    for _ in 0..n {
        series = series.mul(&TruncatedSeries::geometric(c, 1, order));
        c *= ExactInt::from(p);
    }
    series
}

/// Numerator of the closed-form subring factor for n = 4, as rows
/// `(power of t, polynomial in p)`. Kept as a literal table with a load-time
/// self-test, since it is the most transcription-prone formula in the crate:
/// the degree-1 coefficient of the assembled factor must come out to
/// `C(4,2) = 6` for every `p`.
static QUARTIC_NUMERATOR: LazyLock<Vec<(usize, IntPolynomial)>> = LazyLock::new(|| {
    let rows: Vec<(usize, IntPolynomial)> = [
        (0usize, vec![1i128]),
        (1, vec![4]),
        (2, vec![2]),
        (3, vec![-3, 4]),
        (4, vec![-1, 5]),
        (5, vec![0, -5, 1]),
        (6, vec![0, -4, 3]),
        (7, vec![0, 0, -2]),
        (8, vec![0, 0, -4]),
        (9, vec![0, 0, -1]),
    ]
    .into_iter()
    .map(|(k, coeffs)| (k, IntPolynomial::from_ints(&coeffs)))
    .collect();
    // Denominator (1-t)^{-2} contributes 2t at first order and the other
    // factors contribute nothing, so the t^1 coefficient of the assembled
    // factor is numer[1] + 2 * numer[0].
    for p in [2u64, 3, 97] {
        let pe = ExactInt::from(p);
        let t1 = rows[1].1.eval(pe) + ExactInt::from(2u32) * rows[0].1.eval(pe);
        assert_eq!(
            t1,
            ExactInt::from(6u32),
            "quartic numerator self-test failed at p = {p}"
        );
    }
    rows
});

/// Closed-form local subring factor for `n` in `{2, 3, 4}`:
///
/// - n = 2: `(1 - t)^{-1}` (every prime-power index carries one subring)
/// - n = 3: `(1 - p t^3)^{-1} (1 - t)^{-3} (1 - t^2)^2`
/// - n = 4: a 10-term numerator with coefficients in `p` over
///   `(1 - t)^2 (1 - p^2 t^4) (1 - p^3 t^6)`
pub fn subring_local_factor_closed(n: u32, p: u64, order: usize) -> Result<TruncatedSeries> {
    let pe = ExactInt::from(p);
    match n {
        2 => Ok(TruncatedSeries::geometric(ExactInt::ONE, 1, order)),
        3 => {
            let cubic = TruncatedSeries::geometric(pe, 3, order);
            let geo = TruncatedSeries::geometric(ExactInt::ONE, 1, order);
            let conjugate_sq = {
                let one_minus_t2 = TruncatedSeries::from_ints(&[1, 0, -1], order);
                one_minus_t2.mul(&one_minus_t2)
            };
            Ok(cubic.mul(&geo).mul(&geo).mul(&geo).mul(&conjugate_sq))
        }
        4 => {
            let mut numerator = TruncatedSeries::from_ints(&[], order);
            for (power, poly) in QUARTIC_NUMERATOR.iter() {
                if *power > order {
                    continue;
                }
                let mut coeffs = vec![ExactInt::ZERO; power + 1];
                coeffs[*power] = poly.eval(pe);
                numerator = numerator.add(&TruncatedSeries::from_coeffs(coeffs, order));
            }
            let geo = TruncatedSeries::geometric(ExactInt::ONE, 1, order);
            let quartic = TruncatedSeries::geometric(pe.pow(2), 4, order);
            let sextic = TruncatedSeries::geometric(pe.pow(3), 6, order);
            Ok(numerator.mul(&geo).mul(&geo).mul(&quartic).mul(&sextic))
        }
        _ => Err(Error::UnsupportedDimension { n }),
    }
}

/// One coefficient-versus-count cell of a [`SeriesComparison`].
#[derive(Clone, Debug)]
pub struct CoefficientCell {
    pub e: usize,
    pub series: ExactInt,
    pub counted: ExactInt,
    pub matched: bool,
}

/// Per-coefficient equality report between a closed-form series and
/// independently produced counts.
#[derive(Clone, Debug)]
pub struct SeriesComparison {
    pub n: u32,
    pub p: u64,
    pub cells: Vec<CoefficientCell>,
}

impl SeriesComparison {
    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.matched)
    }

    pub fn first_mismatch(&self) -> Option<&CoefficientCell> {
        self.cells.iter().find(|c| !c.matched)
    }
}

/// Compare the closed-form subring factor against counted values;
/// `counts[e]` must be the subring count at index `p^e` (so `counts[0] = 1`).
pub fn compare_counts(n: u32, p: u64, counts: &[ExactInt]) -> Result<SeriesComparison> {
    assert!(!counts.is_empty(), "need at least the index-1 count");
    let order = counts.len() - 1;
    let series = subring_local_factor_closed(n, p, order)?;
    let cells = counts
        .iter()
        .enumerate()
        .map(|(e, &counted)| {
            let coeff = series.coeff(e);
            CoefficientCell {
                e,
                series: coeff,
                counted,
                matched: coeff == counted,
            }
        })
        .collect();
    Ok(SeriesComparison { n, p, cells })
}
