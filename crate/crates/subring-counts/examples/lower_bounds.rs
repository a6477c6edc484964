//! Lower bounds on irreducible counts: for the composition (2,...,2,1,...,1)
//! with r twos and s ones, at least p^{rs} irreducible subrings exist, and
//! optimizing over the dimension gives a bound of degree about e^2/8.
//!
//! ```text
//! cargo run --release --example lower_bounds
//! ```

use subring_counts::formulas::{
    irreducible_count_from_table, irreducible_lower_bound, max_irreducible_lower_bound,
    max_irreducible_lower_bound_exponent, maximizing_dimensions, BoundSpec,
};
use subring_counts::polyfit::{interpolate_in_p, SampleSet};
use subring_counts::subring::count_irreducible_total;
use subring_counts::{EnumBudget, ExactInt};

fn main() {
    let budget = EnumBudget::default();
    let (e, p) = (8u32, 2u64);
    println!("lower bounds on g(n, {p}^{e}) from the (2..2,1..1) compositions:");
    println!(
        "{:>4} {:>6} {:>6} {:>12} {:>12}",
        "n", "twos", "ones", "bound", "actual"
    );
    for n in 2..=(e + 1) {
        let Ok(spec) = BoundSpec::for_index(n, e) else {
            continue;
        };
        let bound = irreducible_lower_bound(n, e, p).unwrap();
        let actual = count_irreducible_total(n, e, p, &budget).unwrap();
        assert!(actual >= bound);
        let marker = if maximizing_dimensions(e).contains(&n) {
            "  <- max"
        } else {
            ""
        };
        println!(
            "{n:>4} {:>6} {:>6} {bound:>12} {actual:>12}{marker}",
            spec.twos, spec.ones
        );
    }
    println!(
        "best bound: {} (exponent {} = floor-adjusted e^2/8)",
        max_irreducible_lower_bound(e, p),
        max_irreducible_lower_bound_exponent(e)
    );

    // The maximizing family g(7, p^8) really is a degree-8 polynomial: fit
    // it from table-derived samples with a held-out prime.
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    let points: Vec<(u64, ExactInt)> = primes
        .iter()
        .map(|&q| (q, irreducible_count_from_table(7, 8, q).unwrap()))
        .collect();
    let samples = SampleSet::new("g(7, p^8)", points).unwrap();
    let fit = interpolate_in_p(&samples, 8).unwrap();
    println!(
        "\ng(7, p^8) = {}  (degree {} matches the bound exponent; holdout {:?} reproduced)",
        fit.polynomial,
        fit.polynomial.degree().unwrap(),
        fit.verified_on
    );
}
