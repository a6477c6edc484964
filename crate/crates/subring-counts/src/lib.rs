//! Exact enumeration and counting of finite-index subrings of Z^n.
//!
//! Z^n with the componentwise product is a ring whose finite-index subrings
//! (multiplicatively closed sublattices containing `(1,...,1)`) are in
//! bijection with a class of Hermite normal form matrices. This crate counts
//! them exactly: by direct pruned backtracking over matrix entries, by a
//! recurrence over irreducible pieces, from shipped closed-form coefficient
//! tables (valid for prime-power indices `p^e` with `e <= 8`), and from
//! truncated local zeta factors. Every route is cross-validated against the
//! others and against brute-force oracles; all arithmetic is exact.
//!
//! ## Layout
//!
//! - [`arith`]: checked integers, rationals, dense polynomials in `p`,
//!   truncated power series in `t = p^{-s}`
//! - [`lattice`]: Hermite normal form matrices, compositions, sublattice
//!   counts `s_n(p^e)`, brute-force HNF enumeration
//! - [`subring`]: multiplicative-closure predicates, the pruned backtracking
//!   search for irreducible subring matrices, the brute-force subring
//!   counting oracle, a finite-field variety point count
//! - [`formulas`]: shipped coefficient tables for `f_n(p^e)`, `e <= 8`, the
//!   recurrence assembling them from irreducible counts, closed forms for
//!   special diagonal patterns, multiplicative extension to arbitrary index,
//!   lower bounds
//! - [`zeta`]: truncated local zeta factors (sublattice and subring kinds)
//!   and coefficient comparison harnesses
//! - [`polyfit`]: exact Lagrange interpolation in `p`, binomial-basis fits
//!   over `n`, `(p-1)`-basis expansions
//! - [`report`], [`cache`], [`cli`]: machine-readable reports, the
//!   append-only count cache, and the command-line surface
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example count_subrings
//! cargo run --release --example subgroup_lattices
//! cargo run --release --example irreducible_subrings
//! cargo run --release --example zeta_factors
//! cargo run --release --example fit_polynomials
//! cargo run --release --example variety_points
//! cargo run --release --example lower_bounds
//! cargo run --release --example partial_sums
//! ```
//!
//! The same functionality is scriptable through the `subring-counts` binary;
//! see the repository README.

pub mod arith;
pub mod cache;
pub mod cli;
mod error;
pub mod formulas;
pub mod lattice;
pub mod polyfit;
pub mod report;
pub mod subring;
pub mod zeta;

pub use arith::{binomial, ExactInt, ExactRational, IntPolynomial, TruncatedSeries};
pub use error::{Error, Result};
pub use formulas::{
    closed_form_irreducible_count, coefficient_table, cumulative_subring_count,
    irreducible_count_from_table, irreducible_lower_bound, max_irreducible_lower_bound,
    subring_count, subring_count_formula, subring_count_recurrence, BinomialFormula, BoundSpec,
    GTable, Provenance, RecurrenceEvaluator,
};
pub use lattice::{
    compositions, count_hnf_with_diagonal, enumerate_hnf, hadamard, in_column_span,
    sublattice_count, weak_compositions, Composition, HnfMatrix, WeakComposition,
};
pub use polyfit::{
    binomial_fit_over_n, expand_p_minus_1, interpolate_in_p, FitResult, FitStatus, SampleSet,
};
pub use subring::{
    count_irreducible, count_irreducible_total, count_subrings_bruteforce, count_variety_points,
    is_irreducible_subring_matrix, is_multiplicatively_closed, is_subring_matrix, EnumBudget,
};
pub use zeta::{compare_counts, subgroup_local_factor, subring_local_factor_closed};
