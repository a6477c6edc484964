//! Enumerate irreducible subrings composition by composition: the pruned
//! backtracking search, its closed forms where they exist, and the totals
//! they sum to.
//!
//! An irreducible subring of index p^e in Z^n has a matrix with diagonal
//! (p^{a_1}, ..., p^{a_{n-1}}, 1) for a composition (a_1, ..., a_{n-1}) of
//! e, all other entries of the first n-1 columns divisible by p, and the
//! all-ones last column.
//!
//! ```text
//! cargo run --release --example irreducible_subrings
//! ```

use subring_counts::formulas::closed_form_irreducible_count;
use subring_counts::subring::{count_irreducible, count_irreducible_total, irreducible_matrices};
use subring_counts::{compositions, Composition, EnumBudget};

fn main() {
    let budget = EnumBudget::default();
    let (e, n, p) = (6u32, 5u32, 3u64);

    println!("irreducible subrings of index {p}^{e} in Z^{n}, by diagonal composition:");
    let mut total = subring_counts::ExactInt::ZERO;
    for alpha in compositions(e, (n - 1) as usize) {
        let counted = count_irreducible(&alpha, p, &budget).unwrap();
        total += counted;
        match closed_form_irreducible_count(&alpha, p) {
            Some(closed) => {
                assert_eq!(closed, counted);
                println!("  ({alpha}): {counted}  [closed form agrees]");
            }
            None => println!("  ({alpha}): {counted}  [search only]"),
        }
    }
    println!("total g({n}, {p}^{e}) = {total}");
    assert_eq!(total, count_irreducible_total(n, e, p, &budget).unwrap());

    // The matrices themselves are available for small families.
    let alpha = Composition::new(vec![2, 1]);
    println!("\nall irreducible subring matrices for diagonal (p^2, p, 1) at p = 2:");
    for m in irreducible_matrices(&alpha, 2, &budget).unwrap() {
        println!(
            "  [{} {} {}; 0 {} {}; 0 0 {}]",
            m.entry(0, 0),
            m.entry(0, 1),
            m.entry(0, 2),
            m.entry(1, 1),
            m.entry(1, 2),
            m.entry(2, 2)
        );
    }

    // Totals vanish below the staircase and are 1 on its edge.
    println!("\nstaircase of totals at p = 2 (rows n, columns e, '.' = 0):");
    print!("{:>4}", "n\\e");
    for e in 0..=7u32 {
        print!("{e:>8}");
    }
    println!();
    for n in 2..=8u32 {
        print!("{n:>4}");
        for e in 0..=7u32 {
            let g = count_irreducible_total(n, e, 2, &budget).unwrap();
            if g.is_zero() {
                print!("{:>8}", ".");
            } else {
                print!("{g:>8}");
            }
        }
        println!();
    }
}
