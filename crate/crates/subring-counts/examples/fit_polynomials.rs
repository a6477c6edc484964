//! Rediscover polynomial structure from raw counts: enumerate a diagonal
//! family at several primes, interpolate an exact polynomial in p with one
//! prime held out, and expand it in powers of p - 1.
//!
//! ```text
//! cargo run --release --example fit_polynomials
//! ```

use subring_counts::polyfit::{
    expand_p_minus_1, interpolate_in_p, interpolation_degree_bound, SampleSet,
};
use subring_counts::subring::count_irreducible;
use subring_counts::{Composition, EnumBudget, ExactInt};

fn main() {
    let budget = EnumBudget::default();
    let primes = [2u64, 3, 5, 7, 11, 13];
    for parts in [
        vec![2u32, 2, 1, 1],
        vec![3, 2, 1, 1],
        vec![4, 1, 1],
        vec![2, 1, 2, 1],
    ] {
        let alpha = Composition::new(parts);
        let points: Vec<(u64, ExactInt)> = primes
            .iter()
            .map(|&p| (p, count_irreducible(&alpha, p, &budget).unwrap()))
            .collect();
        println!("family ({alpha}):");
        let rendered: Vec<String> = points
            .iter()
            .map(|(p, v)| format!("g({p}) = {v}"))
            .collect();
        println!("  samples: {}", rendered.join(", "));

        let bound = interpolation_degree_bound(&alpha).min(primes.len() - 2);
        let samples = SampleSet::new(format!("galpha:{alpha}"), points).unwrap();
        let fit = interpolate_in_p(&samples, bound).unwrap();
        println!(
            "  fit (degree bound {bound}): {}  [{}]",
            fit.polynomial, fit.status
        );
        if !fit.verified_on.is_empty() {
            let held: Vec<String> = fit.verified_on.iter().map(u64::to_string).collect();
            println!("  held-out primes reproduced: {}", held.join(", "));
        }

        let shifted = expand_p_minus_1(&fit.polynomial);
        let rendered: Vec<String> = shifted.iter().map(ExactInt::to_string).collect();
        println!(
            "  coefficients in powers of (p-1): [{}]",
            rendered.join(", ")
        );
        let negatives = shifted.iter().filter(|c| c.value() < 0).count();
        println!(
            "  sign summary: {}",
            if negatives == 0 {
                "all nonnegative".to_string()
            } else {
                format!("{negatives} negative")
            }
        );
        println!();
    }
}
