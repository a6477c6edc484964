//! Count subrings of finite index in Z^n three ways: from the shipped
//! coefficient tables, by the recurrence over enumerated irreducible
//! counts, and multiplicatively for a composite index.
//!
//! ```text
//! cargo run --release --example count_subrings
//! ```

use subring_counts::formulas::{subring_count, subring_count_formula, GTable, RecurrenceEvaluator};
use subring_counts::EnumBudget;

fn main() {
    let p = 2u64;
    println!("subrings of index {p}^e in Z^n (closed-form tables):");
    print!("{:>4}", "n\\e");
    for e in 1..=8u32 {
        print!("{e:>10}");
    }
    println!();
    for n in 2..=8u32 {
        print!("{n:>4}");
        for e in 1..=8u32 {
            print!("{:>10}", subring_count_formula(n, e, p).unwrap());
        }
        println!();
    }

    // The same values fall out of the recurrence once the irreducible
    // counts are enumerated; spot-check a row.
    let budget = EnumBudget::default();
    let mut table = GTable::new();
    table.fill_enumerated(6, 8, p, &budget).unwrap();
    let mut eval = RecurrenceEvaluator::new(p, &table);
    print!("\nrecurrence cross-check at n = 6: ");
    for e in 1..=8u32 {
        let recurrence = eval.count(6, e).unwrap();
        assert_eq!(recurrence, subring_count_formula(6, e, p).unwrap());
        print!("{recurrence} ");
    }
    println!("(all equal the table row)");

    // Counts are weakly multiplicative in the index.
    println!("\ncomposite indices in Z^4:");
    for k in [6u64, 12, 360, 1000] {
        println!("  f(4, {k}) = {}", subring_count(4, k, &budget).unwrap());
    }
}
