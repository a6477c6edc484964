//! Count finite-index sublattices of Z^n: by the weak-composition formula,
//! by brute-force enumeration of Hermite normal form matrices, and as
//! coefficients of the local zeta factor.
//!
//! ```text
//! cargo run --release --example subgroup_lattices
//! ```

use subring_counts::zeta::subgroup_local_factor;
use subring_counts::{enumerate_hnf, sublattice_count, EnumBudget, ExactInt};

fn main() {
    let p = 3u64;
    println!("sublattices of index {p}^k in Z^n:");
    print!("{:>4}", "n\\k");
    for k in 0..=6u32 {
        print!("{k:>10}");
    }
    println!();
    for n in 1..=4u32 {
        print!("{n:>4}");
        for k in 0..=6u32 {
            print!("{:>10}", sublattice_count(n, k, p));
        }
        println!();
    }

    // Every sublattice is the column span of exactly one HNF matrix, so the
    // enumeration stream reproduces the closed count.
    let budget = EnumBudget::default();
    let counted = enumerate_hnf(3, 2, 2, &budget).unwrap().count();
    println!("\nHNF matrices with determinant 2^2 in dimension 3: {counted}");
    assert_eq!(ExactInt::from(counted as u64), sublattice_count(3, 2, 2));

    println!("the three matrices of determinant 2 in dimension 2:");
    for m in enumerate_hnf(2, 1, 2, &budget).unwrap() {
        println!(
            "  [{} {}; 0 {}]",
            m.entry(0, 0),
            m.entry(0, 1),
            m.entry(1, 1)
        );
    }

    // The local factor packages the whole column: its t^k coefficient is
    // the count of index p^k.
    let factor = subgroup_local_factor(4, p, 6);
    println!("\nlocal sublattice factor for n = 4 at p = {p}: {factor}");
    for k in 0..=6usize {
        assert_eq!(factor.coeff(k), sublattice_count(4, k as u32, p));
    }
    println!("coefficients agree with the table row for n = 4");
}
