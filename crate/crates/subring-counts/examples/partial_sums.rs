//! Cumulative subring counts N(n, X) = number of subrings of Z^n of index
//! below X, assembled multiplicatively from the prime-power counts.
//!
//! ```text
//! cargo run --release --example partial_sums
//! ```

use subring_counts::formulas::{cumulative_subring_count, subring_count};
use subring_counts::EnumBudget;

fn main() {
    let budget = EnumBudget::default();

    println!("first few counts by index for Z^3:");
    for k in 1..=12u64 {
        println!("  f(3, {k:>2}) = {}", subring_count(3, k, &budget).unwrap());
    }

    println!("\ncumulative counts N(n, X) = sum of f(n, k) over k < X:");
    print!("{:>6}", "n\\X");
    for x in [10u64, 25, 50, 100] {
        print!("{x:>10}");
    }
    println!();
    for n in 2..=4u32 {
        print!("{n:>6}");
        for x in [10u64, 25, 50, 100] {
            print!("{:>10}", cumulative_subring_count(n, x, &budget).unwrap());
        }
        println!();
    }

    // Weak multiplicativity in action: coprime factors multiply.
    println!("\nmultiplicativity: f(4, 8) * f(4, 9) = f(4, 72):");
    let a = subring_count(4, 8, &budget).unwrap();
    let b = subring_count(4, 9, &budget).unwrap();
    let ab = subring_count(4, 72, &budget).unwrap();
    assert_eq!(a * b, ab);
    println!("  {a} * {b} = {ab}");
}
