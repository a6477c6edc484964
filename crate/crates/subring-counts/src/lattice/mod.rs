//! Hermite normal form matrices and sublattice counting.
//!
//! A finite-index sublattice of Z^n is the **column span** of a unique
//! n-by-n integer matrix in Hermite normal form; the index is the
//! determinant. Column semantics are fixed once and for all here: lattice
//! vectors are integer combinations of the columns `v_1, ..., v_n`, and all
//! membership tests solve `A x = w` by back-substitution from the last row
//! upward with an exact divisibility check at every pivot.
//!
//! This module provides:
//! - [`HnfMatrix`]: validated Hermite normal form matrix
//! - [`weak_compositions`] / [`compositions`]: diagonal exponent patterns
//! - [`hadamard`], [`in_column_span`]: the componentwise product and the
//!   membership test it is checked against
//! - [`count_hnf_with_diagonal`], [`sublattice_count`]: the closed count of
//!   HNF matrices with a given diagonal and its sum `s_n(p^e)`
//! - [`enumerate_hnf`]: deterministic brute-force stream of all HNF matrices
//!   of a given prime-power determinant

mod compositions;

pub use compositions::{compositions, weak_compositions, Composition, WeakComposition};

use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::subring::EnumBudget;

/// Upper-triangular integer matrix with positive diagonal and each
/// off-diagonal entry reduced modulo its row's diagonal entry
/// (`0 <= a[i][j] < a[i][i]` for `i < j`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HnfMatrix {
    n: usize,
    /// Row-major entries; `entries[i * n + j]` is `a[i][j]`.
    entries: Vec<i64>,
}

impl HnfMatrix {
    /// Build from row-major entries, validating the normal form.
    pub fn new(n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        for i in 0..n {
            assert!(entries[i * n + i] > 0, "diagonal must be positive");
            for j in 0..n {
                let a = entries[i * n + j];
                if j < i {
                    assert!(a == 0, "matrix must be upper triangular");
                } else if j > i {
                    assert!(
                        0 <= a && a < entries[i * n + i],
                        "entry ({i},{j}) = {a} not reduced modulo the diagonal"
                    );
                }
            }
        }
        HnfMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        HnfMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.n + col]
    }

    /// Column `j` as a vector, widened for overflow-safe products.
    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.n).map(|i| self.entry(i, j) as i128).collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.entry(i, i)).collect()
    }

    /// Determinant: the product of the diagonal (index of the lattice).
    pub fn det(&self) -> ExactInt {
        self.diagonal()
            .into_iter()
            .fold(ExactInt::ONE, |acc, d| acc * ExactInt::from(d))
    }
}

/// Componentwise (Hadamard) product of two integer vectors; errors on a
/// length mismatch.
pub fn hadamard(u: &[i128], w: &[i128]) -> Result<Vec<i128>> {
    if u.len() != w.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    Ok(u.iter()
        .zip(w)
        .map(|(&a, &b)| {
            a.checked_mul(b)
                .expect("exact integer overflow in hadamard")
        })
        .collect())
}

/// Does `A x = w` have an integer solution `x`?
///
/// Back-substitution from the last row upward; each pivot step divides by
/// the diagonal entry exactly or reports non-membership. No rational
/// intermediates.
pub fn in_column_span(w: &[i128], a: &HnfMatrix) -> bool {
    assert_eq!(w.len(), a.n(), "vector length must match the dimension");
    let n = a.n();
    let mut x = vec![0i128; n];
    for i in (0..n).rev() {
        let mut r = w[i];
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            r -= a.entry(i, j) as i128 * xj;
        }
        let d = a.entry(i, i) as i128;
        if r % d != 0 {
            return false;
        }
        x[i] = r / d;
    }
    true
}

fn prime_power(p: u64, exp: u32) -> i64 {
    let mut acc: i64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(p as i64)
            .expect("exact integer overflow in prime power");
    }
    acc
}

/// Number of n-by-n HNF matrices with diagonal `(p^{i_1}, ..., p^{i_n})`:
/// `p^{(n-1) i_1 + (n-2) i_2 + ... + i_{n-1}}`.
pub fn count_hnf_with_diagonal(diag_exponents: &WeakComposition, p: u64) -> ExactInt {
    let n = diag_exponents.len();
    let mut exponent: u64 = 0;
    for (j, &i_j) in diag_exponents.parts().iter().enumerate() {
        exponent += (n - 1 - j) as u64 * i_j as u64;
    }
    ExactInt::from(p).pow(u32::try_from(exponent).expect("exponent out of range"))
}

/// `s_n(p^e)`: the number of sublattices of Z^n of index `p^e`, as a sum of
/// [`count_hnf_with_diagonal`] over all weak compositions of `e` into `n`
/// parts.
pub fn sublattice_count(n: u32, e: u32, p: u64) -> ExactInt {
    weak_compositions(e, n as usize)
        .iter()
        .map(|diag| count_hnf_with_diagonal(diag, p))
        .sum()
}

/// Deterministic stream of every n-by-n HNF matrix with determinant `p^e`.
///
/// Order: lexicographic by diagonal weak composition (as produced by
/// [`weak_compositions`]), then row-major lexicographic in the off-diagonal
/// entries. The candidate count is known in advance (`s_n(p^e)`) and is
/// checked against the budget before any matrix is built.
pub fn enumerate_hnf(n: u32, e: u32, p: u64, budget: &EnumBudget) -> Result<HnfEnumeration> {
    let estimate = sublattice_count(n, e, p);
    let estimate_u128 =
        u128::try_from(estimate.value()).expect("sublattice count cannot be negative");
    if estimate_u128 > budget.max_candidates as u128 {
        return Err(Error::BudgetExceeded {
            estimate: estimate_u128,
            max_candidates: budget.max_candidates,
        });
    }
    Ok(HnfEnumeration::new(n as usize, e, p))
}

/// Iterator produced by [`enumerate_hnf`]. Single-consumer; independent
/// streams can run concurrently.
#[derive(Debug)]
pub struct HnfEnumeration {
    n: usize,
    p: u64,
    diagonals: Vec<WeakComposition>,
    diag_idx: usize,
    /// Free positions (row, col) with row < col, in row-major order.
    positions: Vec<(usize, usize)>,
    /// Bound for each free position (the row's diagonal entry).
    bounds: Vec<i64>,
    /// Current off-diagonal values; `None` once the diagonal is exhausted.
    odometer: Option<Vec<i64>>,
    diag_values: Vec<i64>,
}

impl HnfEnumeration {
    fn new(n: usize, e: u32, p: u64) -> Self {
        let mut it = HnfEnumeration {
            n,
            p,
            diagonals: weak_compositions(e, n),
            diag_idx: 0,
            positions: Vec::new(),
            bounds: Vec::new(),
            odometer: None,
            diag_values: Vec::new(),
        };
        it.start_diagonal();
        it
    }

    fn start_diagonal(&mut self) {
        if self.diag_idx >= self.diagonals.len() {
            self.odometer = None;
            return;
        }
        let exps = self.diagonals[self.diag_idx].parts();
        self.diag_values = exps.iter().map(|&x| prime_power(self.p, x)).collect();
        self.positions.clear();
        self.bounds.clear();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                self.positions.push((i, j));
                self.bounds.push(self.diag_values[i]);
            }
        }
        self.odometer = Some(vec![0; self.positions.len()]);
    }

    fn build_matrix(&self) -> HnfMatrix {
        let odo = self.odometer.as_ref().unwrap();
        let mut entries = vec![0i64; self.n * self.n];
        for i in 0..self.n {
            entries[i * self.n + i] = self.diag_values[i];
        }
        for (idx, &(i, j)) in self.positions.iter().enumerate() {
            entries[i * self.n + j] = odo[idx];
        }
        HnfMatrix { n: self.n, entries }
    }

    fn advance(&mut self) {
        let odo = self.odometer.as_mut().unwrap();
        // Last position cycles fastest: row-major lexicographic order.
        for idx in (0..odo.len()).rev() {
            odo[idx] += 1;
            if odo[idx] < self.bounds[idx] {
                return;
            }
            odo[idx] = 0;
        }
        self.diag_idx += 1;
        self.start_diagonal();
    }
}

impl Iterator for HnfEnumeration {
    type Item = HnfMatrix;

    fn next(&mut self) -> Option<HnfMatrix> {
        self.odometer.as_ref()?;
        let matrix = self.build_matrix();
        self.advance();
        Some(matrix)
    }
}
