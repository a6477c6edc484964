//! Brute-force point counts of the affine variety
//!
//! ```text
//! (x^2 - x) - (u^2 - u)c = (y^2 - y) - (v^2 - v)c = xy - uvc = 0
//! ```
//!
//! over F_p, which come out to the quadratic 7p^2 - 6p + 6, and the bridge
//! tying p^2 times that count to the irreducible subrings with diagonal
//! (p^3, p^2, p, p, 1).
//!
//! ```text
//! cargo run --release --example variety_points
//! ```

use subring_counts::formulas::is_prime;
use subring_counts::subring::{count_irreducible, count_variety_points};
use subring_counts::{Composition, EnumBudget, ExactInt, IntPolynomial};

fn main() {
    let quadratic = IntPolynomial::from_ints(&[6, -6, 7]);
    println!(
        "{:>5} {:>12} {:>12} {:>7}",
        "p", "#V(F_p)", "7p^2-6p+6", "match"
    );
    for p in 2u64..=31 {
        if !is_prime(p) {
            continue;
        }
        let counted = count_variety_points(p);
        let closed = quadratic.eval(ExactInt::from(p));
        println!(
            "{p:>5} {counted:>12} {closed:>12} {:>7}",
            if counted == closed { "yes" } else { "NO" }
        );
    }

    let alpha = Composition::new(vec![3, 2, 1, 1]);
    let budget = EnumBudget::default();
    println!("\neach solution lifts to p^2 irreducible subring matrices:");
    for p in [2u64, 3, 5, 7] {
        let lifted = ExactInt::from(p).pow(2) * count_variety_points(p);
        let enumerated = count_irreducible(&alpha, p, &budget).unwrap();
        assert_eq!(lifted, enumerated);
        println!("  p = {p}: p^2 * #V = {lifted} = g_(3,2,1,1)({p})");
    }
}
