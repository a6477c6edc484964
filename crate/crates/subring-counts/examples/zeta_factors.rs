//! Expand the closed-form local subring zeta factors (known for n = 2, 3, 4)
//! and compare every coefficient against independently recurrence-built
//! counts.
//!
//! ```text
//! cargo run --release --example zeta_factors
//! ```

use subring_counts::formulas::{GTable, RecurrenceEvaluator};
use subring_counts::zeta::{compare_counts, subring_local_factor_closed};
use subring_counts::{EnumBudget, ExactInt};

fn main() {
    let budget = EnumBudget::default();
    let order = 8usize;
    for p in [2u64, 3] {
        println!("local subring factors at p = {p}, truncated at t^{order}:");
        for n in [2u32, 3, 4] {
            let series = subring_local_factor_closed(n, p, order).unwrap();
            println!("  n = {n}: {series}");

            let mut table = GTable::new();
            table.fill_enumerated(n, order as u32, p, &budget).unwrap();
            let mut eval = RecurrenceEvaluator::new(p, &table);
            let counts: Vec<ExactInt> = (0..=order)
                .map(|e| eval.count(n, e as u32).unwrap())
                .collect();
            let report = compare_counts(n, p, &counts).unwrap();
            match report.first_mismatch() {
                None => println!(
                    "         all {} coefficients match the recurrence",
                    order + 1
                ),
                Some(cell) => println!(
                    "         MISMATCH at t^{}: series {} vs counted {}",
                    cell.e, cell.series, cell.counted
                ),
            }
        }
        println!();
    }
}
