//! The enumeration core: multiplicative-closure predicates, pruned
//! backtracking enumeration of irreducible subring matrices, aggregation to
//! whole-index counts, a brute-force subring counting oracle, and a
//! finite-field variety point count that one of the closed forms reduces to.
//!
//! Subrings of Z^n of index k (with the componentwise product and the
//! all-ones identity) are in bijection with HNF matrices of determinant k
//! whose column span contains `(1,...,1)` and is closed under the Hadamard
//! product of columns. An *irreducible* subring matrix additionally has all
//! entries of its first n-1 columns divisible by p and its last column equal
//! to `(1,...,1)`; its diagonal is `(p^{a_1},...,p^{a_{n-1}}, 1)` for a
//! composition `(a_1,...,a_{n-1})` of e. Counting irreducible matrices
//! composition by composition is what the backtracking search does.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::lattice::{
    compositions, enumerate_hnf, hadamard, in_column_span, Composition, HnfMatrix,
};

/// Cost limits for enumeration. Exceeding a budget is an error carrying the
/// estimated cost, never a silent truncation.
#[derive(Clone, Debug)]
pub struct EnumBudget {
    /// Upper bound on the raw candidate space (before pruning).
    pub max_candidates: u64,
    /// Wall-clock limit for a single enumeration call.
    pub max_seconds: u64,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_candidates: 1_000_000_000,
            max_seconds: 3600,
        }
    }
}

/// Is the column span of `a` closed under componentwise products?
pub fn is_multiplicatively_closed(a: &HnfMatrix) -> bool {
    let n = a.n();
    let cols: Vec<Vec<i128>> = (0..n).map(|j| a.column(j)).collect();
    for i in 0..n {
        for j in i..n {
            let prod = hadamard(&cols[i], &cols[j]).expect("columns have equal length");
            if !in_column_span(&prod, a) {
                return false;
            }
        }
    }
    true
}

/// Does `a` represent a subring: `(1,...,1)` in the column span and the span
/// multiplicatively closed?
pub fn is_subring_matrix(a: &HnfMatrix) -> bool {
    let ones = vec![1i128; a.n()];
    in_column_span(&ones, a) && is_multiplicatively_closed(a)
}

/// Does `a` represent an irreducible subring: a subring matrix whose first
/// n-1 columns have all entries divisible by `p` and whose last column is
/// `(1,...,1)`? (The 1x1 matrix `[1]` counts as irreducible.)
pub fn is_irreducible_subring_matrix(a: &HnfMatrix, p: u64) -> bool {
    let n = a.n();
    for i in 0..n {
        if a.entry(i, n - 1) != 1 {
            return false;
        }
    }
    let p = p as i64;
    for j in 0..n - 1 {
        for i in 0..n {
            if a.entry(i, j) % p != 0 {
                return false;
            }
        }
    }
    is_subring_matrix(a)
}

fn prime_power_i64(p: u64, exp: u32) -> i64 {
    let mut acc: i64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(p as i64)
            .expect("exact integer overflow in prime power");
    }
    acc
}

/// Raw candidate space of the search for one composition: each free entry
/// (row i, column j) with i < j <= n-1 ranges over the multiples of p in
/// `[0, p^{a_i})`, so contributes a factor `p^{a_i - 1}`. Saturates at
/// `u128::MAX`.
fn raw_candidate_space(alpha: &Composition, p: u64) -> u128 {
    let parts = alpha.parts();
    let n = parts.len() + 1;
    let mut space: u128 = 1;
    for (row, &a) in parts.iter().enumerate() {
        let per_entry = match (p as u128).checked_pow(a - 1) {
            Some(v) => v,
            None => return u128::MAX,
        };
        // free columns for this row: row+1 .. n-2 (0-indexed), i.e. j <= n-1 in
        // 1-indexed terms, excluding the all-ones column.
        for _col in (row + 1)..(n - 1) {
            space = match space.checked_mul(per_entry) {
                Some(v) => v,
                None => return u128::MAX,
            };
        }
    }
    space
}

/// Static description of one composition's search space.
struct SearchPlan {
    n: usize,
    p: i64,
    /// Diagonal values `p^{a_i}` followed by the final 1.
    diag: Vec<i64>,
    /// For each column, the rows with free entries (rows with `a_i > 1`).
    free_rows: Vec<Vec<usize>>,
}

impl SearchPlan {
    fn new(alpha: &Composition, p: u64) -> Self {
        let parts = alpha.parts();
        let n = parts.len() + 1;
        let mut diag: Vec<i64> = parts.iter().map(|&a| prime_power_i64(p, a)).collect();
        diag.push(1);
        let mut free_rows = vec![Vec::new(); n];
        for (col, rows) in free_rows.iter_mut().enumerate().take(n - 1).skip(1) {
            for (row, &a) in parts.iter().enumerate().take(col) {
                if a > 1 {
                    rows.push(row);
                }
            }
        }
        SearchPlan {
            n,
            p: p as i64,
            diag,
            free_rows,
        }
    }

    /// Matrix with the diagonal and all-ones last column filled in, zeros
    /// elsewhere.
    fn base_matrix(&self) -> Vec<i64> {
        let n = self.n;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = self.diag[i];
            m[i * n + (n - 1)] = 1;
        }
        m
    }
}

/// Solve for the product of columns `i` and `k` (`i <= k <= n-2`) inside the
/// span of the first columns. The product has support in rows `0..=i`, which
/// forces every solution coordinate past `i` to zero, so membership is
/// decided on the fixed upper-left block alone; this is what makes the
/// column-by-column pruning equivalent to the full check.
fn product_in_prefix_span(m: &[i64], n: usize, i: usize, k: usize, x: &mut [i128]) -> bool {
    for r in (0..=i).rev() {
        let mut acc = m[r * n + i] as i128 * m[r * n + k] as i128;
        for (j, xj) in x.iter().enumerate().take(i + 1).skip(r + 1) {
            acc -= m[r * n + j] as i128 * xj;
        }
        let d = m[r * n + r] as i128;
        if acc % d != 0 {
            return false;
        }
        x[r] = acc / d;
    }
    true
}

trait Sink {
    fn emit(&mut self, matrix: &[i64], n: usize);
}

#[derive(Default)]
struct CountSink {
    count: u128,
}

impl Sink for CountSink {
    fn emit(&mut self, _matrix: &[i64], _n: usize) {
        self.count += 1;
    }
}

struct CollectSink {
    out: Vec<HnfMatrix>,
}

impl Sink for CollectSink {
    fn emit(&mut self, matrix: &[i64], n: usize) {
        self.out.push(HnfMatrix::new(n, matrix.to_vec()));
    }
}

const DEADLINE_CHECK_MASK: u64 = 0xFFF;

struct Search<'a> {
    plan: &'a SearchPlan,
    matrix: Vec<i64>,
    scratch: Vec<i128>,
    deadline: Instant,
    max_seconds: u64,
    ops: u64,
}

impl<'a> Search<'a> {
    fn new(plan: &'a SearchPlan, matrix: Vec<i64>, deadline: Instant, max_seconds: u64) -> Self {
        let scratch = vec![0i128; plan.n];
        Search {
            plan,
            matrix,
            scratch,
            deadline,
            max_seconds,
            ops: 0,
        }
    }

    /// Fill columns `col..`, emitting every completed irreducible subring
    /// matrix into the sink.
    fn run<S: Sink>(&mut self, col: usize, sink: &mut S) -> Result<()> {
        if col == self.plan.n - 1 {
            sink.emit(&self.matrix, self.plan.n);
            return Ok(());
        }
        self.assign(col, 0, sink)
    }

    fn assign<S: Sink>(&mut self, col: usize, idx: usize, sink: &mut S) -> Result<()> {
        if idx == self.plan.free_rows[col].len() {
            self.ops += 1;
            if self.ops & DEADLINE_CHECK_MASK == 0 && Instant::now() >= self.deadline {
                return Err(Error::TimeBudgetExceeded {
                    max_seconds: self.max_seconds,
                });
            }
            if self.column_ok(col) {
                return self.run(col + 1, sink);
            }
            return Ok(());
        }
        let row = self.plan.free_rows[col][idx];
        let bound = self.plan.diag[row];
        let n = self.plan.n;
        let mut v = 0i64;
        while v < bound {
            self.matrix[row * n + col] = v;
            self.assign(col, idx + 1, sink)?;
            v += self.plan.p;
        }
        self.matrix[row * n + col] = 0;
        Ok(())
    }

    /// After fixing column `col`, test every product `v_i ∘ v_col`, i <= col.
    /// A failure abandons the whole subtree of later columns.
    fn column_ok(&mut self, col: usize) -> bool {
        for i in 0..=col {
            if !product_in_prefix_span(&self.matrix, self.plan.n, i, col, &mut self.scratch) {
                return false;
            }
        }
        true
    }
}

/// Expand one column of a fixed prefix, collecting every assignment that
/// passes its closure checks. Used to shard the search deterministically.
fn expand_column(
    plan: &SearchPlan,
    matrix: &[i64],
    col: usize,
    deadline: Instant,
    max_seconds: u64,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    fn fill(
        search: &mut Search<'_>,
        col: usize,
        idx: usize,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        if idx == search.plan.free_rows[col].len() {
            search.ops += 1;
            if search.ops & DEADLINE_CHECK_MASK == 0 && Instant::now() >= search.deadline {
                return Err(Error::TimeBudgetExceeded {
                    max_seconds: search.max_seconds,
                });
            }
            if search.column_ok(col) {
                out.push(search.matrix.clone());
            }
            return Ok(());
        }
        let row = search.plan.free_rows[col][idx];
        let bound = search.plan.diag[row];
        let n = search.plan.n;
        let mut v = 0i64;
        while v < bound {
            search.matrix[row * n + col] = v;
            fill(search, col, idx + 1, out)?;
            v += search.plan.p;
        }
        search.matrix[row * n + col] = 0;
        Ok(())
    }
    if Instant::now() >= deadline {
        return Err(Error::TimeBudgetExceeded { max_seconds });
    }
    let mut search = Search::new(plan, matrix.to_vec(), deadline, max_seconds);
    fill(&mut search, col, 0, out)
}

fn budget_check(alpha: &Composition, p: u64, budget: &EnumBudget) -> Result<()> {
    let space = raw_candidate_space(alpha, p);
    if space > budget.max_candidates as u128 {
        return Err(Error::BudgetExceeded {
            estimate: space,
            max_candidates: budget.max_candidates,
        });
    }
    Ok(())
}

/// `g_α(p)`: the number of irreducible subring matrices with diagonal
/// `(p^{a_1}, ..., p^{a_{n-1}}, 1)` for the composition `α = (a_1, ...)`.
///
/// Backtracks over columns left to right with incremental closure checks;
/// the candidate space is sharded by fixed column prefixes and the shards
/// are counted in parallel, so the result is independent of the worker
/// count. The empty composition yields 1 (the ring Z itself).
pub fn count_irreducible(alpha: &Composition, p: u64, budget: &EnumBudget) -> Result<ExactInt> {
    budget_check(alpha, p, budget)?;
    let plan = SearchPlan::new(alpha, p);
    let deadline = Instant::now() + Duration::from_secs(budget.max_seconds);

    // Deterministic sharding: expand column prefixes until there is enough
    // independent work, then finish every shard and sum.
    let min_shards = rayon::current_num_threads().saturating_mul(4).max(4);
    let mut frontier = vec![plan.base_matrix()];
    let mut next_col = 0;
    while next_col < plan.n - 1 && frontier.len() < min_shards {
        let mut expanded = Vec::new();
        for m in &frontier {
            expand_column(
                &plan,
                m,
                next_col,
                deadline,
                budget.max_seconds,
                &mut expanded,
            )?;
        }
        frontier = expanded;
        next_col += 1;
        if frontier.is_empty() {
            return Ok(ExactInt::ZERO);
        }
    }
    if next_col >= plan.n - 1 {
        return Ok(ExactInt::from(frontier.len() as u64));
    }
    let partial: Result<Vec<u128>> = frontier
        .par_iter()
        .map(|m| {
            if Instant::now() >= deadline {
                return Err(Error::TimeBudgetExceeded {
                    max_seconds: budget.max_seconds,
                });
            }
            let mut search = Search::new(&plan, m.clone(), deadline, budget.max_seconds);
            let mut sink = CountSink::default();
            search.run(next_col, &mut sink)?;
            Ok(sink.count)
        })
        .collect();
    let total: u128 = partial?.into_iter().sum();
    Ok(ExactInt::new(
        i128::try_from(total).expect("count fits exact integer"),
    ))
}

/// Every irreducible subring matrix for `alpha`, in deterministic
/// depth-first order. Sequential; intended for cross-checks and small cases.
pub fn irreducible_matrices(
    alpha: &Composition,
    p: u64,
    budget: &EnumBudget,
) -> Result<Vec<HnfMatrix>> {
    budget_check(alpha, p, budget)?;
    let plan = SearchPlan::new(alpha, p);
    let deadline = Instant::now() + Duration::from_secs(budget.max_seconds);
    if Instant::now() >= deadline {
        return Err(Error::TimeBudgetExceeded {
            max_seconds: budget.max_seconds,
        });
    }
    let mut search = Search::new(&plan, plan.base_matrix(), deadline, budget.max_seconds);
    let mut sink = CollectSink { out: Vec::new() };
    search.run(0, &mut sink)?;
    Ok(sink.out)
}

/// `g_n(p^e)`: irreducible subrings of Z^n of index `p^e`, summed over all
/// compositions of `e` into `n - 1` parts.
///
/// Conventions: for n = 1 the count is 1 at index 1 and 0 otherwise (the
/// empty composition); the sum is empty (zero) whenever `e < n - 1`.
pub fn count_irreducible_total(n: u32, e: u32, p: u64, budget: &EnumBudget) -> Result<ExactInt> {
    assert!(n >= 1, "dimension must be positive");
    if n == 1 {
        return Ok(if e == 0 {
            ExactInt::ONE
        } else {
            ExactInt::ZERO
        });
    }
    let mut total = ExactInt::ZERO;
    for alpha in compositions(e, (n - 1) as usize) {
        total += count_irreducible(&alpha, p, budget)?;
    }
    Ok(total)
}

/// Brute-force subring count `f_n(p^e)`: enumerate every HNF matrix of
/// determinant `p^e` and test the subring conditions directly. Tiny scales
/// only; this is the oracle the faster routes are validated against.
pub fn count_subrings_bruteforce(n: u32, e: u32, p: u64, budget: &EnumBudget) -> Result<ExactInt> {
    let count = enumerate_hnf(n, e, p, budget)?
        .filter(is_subring_matrix)
        .count();
    Ok(ExactInt::from(count as u64))
}

/// Brute-force count of points on the affine variety
/// `(x^2-x) - (u^2-u)c = (y^2-y) - (v^2-v)c = xy - uvc = 0` over F_p.
///
/// The count satisfies `7p^2 - 6p + 6`, and `p^2` times it equals the number
/// of irreducible subring matrices with diagonal `(p^3, p^2, p, p, 1)`.
pub fn count_variety_points(p: u64) -> ExactInt {
    assert!(p >= 2, "modulus must be at least 2");
    let m = p;
    // w^2 - w mod m, computed without signed arithmetic.
    let t = |w: u64| (w * w + (m - 1) * w) % m;
    let mut count: u64 = 0;
    for c in 0..m {
        for u in 0..m {
            let uc = t(u) * c % m;
            for x in 0..m {
                if t(x) != uc {
                    continue;
                }
                for v in 0..m {
                    let vc = t(v) * c % m;
                    let uvc = u * v % m * c % m;
                    for y in 0..m {
                        if t(y) == vc && x * y % m == uvc {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    ExactInt::from(count)
}
