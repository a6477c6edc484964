//! Property tests: algebraic laws on randomized inputs, membership
//! invariants for random lattices, and the structural evidence harness for
//! polynomiality of the diagonal families.

use proptest::prelude::*;

use subring_counts::polyfit::{interpolate_in_p, FitStatus, SampleSet};
use subring_counts::subring::count_irreducible;
use subring_counts::{
    compositions, hadamard, in_column_span, Composition, EnumBudget, Error, ExactInt, HnfMatrix,
    IntPolynomial, TruncatedSeries,
};

fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i128..=20, 0..=6).prop_map(|c| IntPolynomial::from_ints(&c))
}

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-9i128..=9, order + 1)
        .prop_map(move |c| TruncatedSeries::from_ints(&c, order))
}

proptest! {
    #[test]
    fn polynomial_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert_eq!(&left, &right);
        let distributed = &(&a * &b) + &(&a * &c);
        let factored = &a * &(&b + &c);
        prop_assert_eq!(&factored, &distributed);
        prop_assert_eq!(&(&a + &b), &(&b + &a));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), p in 2i64..=23) {
        let p = ExactInt::from(p);
        prop_assert_eq!((&a * &b).eval(p), a.eval(p) * b.eval(p));
        prop_assert_eq!((&a + &b).eval(p), a.eval(p) + b.eval(p));
    }

    #[test]
    fn series_ring_axioms(a in series_strategy(6), b in series_strategy(6), c in series_strategy(6)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn geometric_series_inverts_its_conjugate(c in -9i128..=9, k in 1usize..=4, order in 0usize..=10) {
        let c = ExactInt::new(c);
        let geo = TruncatedSeries::geometric(c, k, order);
        let mut conj = vec![ExactInt::ZERO; order + 1];
        conj[0] = ExactInt::ONE;
        if k <= order {
            conj[k] = -c;
        }
        let product = geo.mul(&TruncatedSeries::from_coeffs(conj, order));
        prop_assert_eq!(product, TruncatedSeries::one(order));
    }

    #[test]
    fn hadamard_laws(
        u in prop::collection::vec(-50i128..=50, 5),
        v in prop::collection::vec(-50i128..=50, 5),
        w in prop::collection::vec(-50i128..=50, 5),
    ) {
        let uv = hadamard(&u, &v).unwrap();
        let vu = hadamard(&v, &u).unwrap();
        prop_assert_eq!(&uv, &vu);
        let left = hadamard(&uv, &w).unwrap();
        let right = hadamard(&u, &hadamard(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let ones = vec![1i128; 5];
        prop_assert_eq!(hadamard(&u, &ones).unwrap(), u);
    }
}

/// Random Hermite normal form matrix with small positive diagonal.
fn hnf_strategy() -> impl Strategy<Value = HnfMatrix> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (Just(n), prop::collection::vec(1i64..=6, n)).prop_flat_map(move |(n, diag)| {
                let entry_ranges: Vec<BoxedStrategy<i64>> = (0..n * n)
                    .map(|idx| {
                        let (i, j) = (idx / n, idx % n);
                        if i == j {
                            Just(diag[i]).boxed()
                        } else if i < j && diag[i] > 1 {
                            (0..diag[i]).boxed()
                        } else {
                            Just(0).boxed()
                        }
                    })
                    .collect();
                (Just(n), entry_ranges)
            })
        })
        .prop_map(|(n, entries)| HnfMatrix::new(n, entries))
}

proptest! {
    #[test]
    fn column_combinations_stay_in_the_span(
        a in hnf_strategy(),
        x in prop::collection::vec(-4i128..=4, 4),
        scale in 1i128..=5,
    ) {
        let n = a.n();
        let x = &x[..n];
        let mut w = vec![0i128; n];
        for (j, &xj) in x.iter().enumerate() {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi += a.entry(i, j) as i128 * xj;
            }
        }
        prop_assert!(in_column_span(&w, &a));
        // Membership is preserved under scaling.
        let scaled: Vec<i128> = w.iter().map(|&wi| wi * scale).collect();
        prop_assert!(in_column_span(&scaled, &a));
    }

    #[test]
    fn interpolation_recovers_known_polynomials(
        coeffs in prop::collection::vec(-30i128..=30, 0..=7),
    ) {
        let poly = IntPolynomial::from_ints(&coeffs);
        let primes = [2u64, 3, 5, 7, 11, 13, 17];
        let points: Vec<(u64, ExactInt)> = primes
            .iter()
            .map(|&p| (p, poly.eval(ExactInt::from(p))))
            .collect();
        let samples = SampleSet::new("random", points).unwrap();
        let fit = interpolate_in_p(&samples, 6).unwrap();
        prop_assert_eq!(fit.status, FitStatus::ExactInteger);
        prop_assert_eq!(fit.polynomial, poly);
    }

    #[test]
    fn shifted_basis_round_trips(coeffs in prop::collection::vec(-30i128..=30, 0..=7)) {
        let poly = IntPolynomial::from_ints(&coeffs);
        let shifted = subring_counts::expand_p_minus_1(&poly);
        let q = IntPolynomial::from_ints(&[-1, 1]);
        let mut rebuilt = IntPolynomial::zero();
        let mut power = IntPolynomial::from_ints(&[1]);
        for b in shifted {
            rebuilt = &rebuilt + &(&IntPolynomial::constant(b) * &power);
            power = &power * &q;
        }
        prop_assert_eq!(rebuilt, poly);
    }

    #[test]
    fn binomial_fits_refit_identically(raw in prop::collection::vec(-100i128..=100, 6)) {
        use subring_counts::binomial;
        let coeffs: Vec<ExactInt> = raw.iter().map(|&c| ExactInt::new(c)).collect();
        let values: Vec<ExactInt> = (0..=5u32)
            .map(|n| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * binomial(n, k as i64))
                    .sum()
            })
            .collect();
        let fit = subring_counts::binomial_fit_over_n(&values, 5).unwrap();
        for (k, &c) in coeffs.iter().enumerate() {
            prop_assert_eq!(fit[&(k as u32)], c);
        }
    }
}

/// Evidence harness, not an assertion: for every composition of weight up
/// to 7 whose candidate space fits the budget, fit a polynomial from the
/// counts at {2,3,5,7,11} and verify against 13. A non-polynomial outcome
/// would be a structural finding about the counting functions themselves,
/// so it is printed rather than failed.
#[test]
fn polynomiality_evidence_for_small_diagonal_families() {
    let budget = EnumBudget::default();
    // Enough primes for the degree bound of each family, one held out.
    let pool = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    let mut fitted = 0usize;
    let mut over_budget = 0usize;
    let mut findings: Vec<String> = Vec::new();
    for total in 1..=7u32 {
        for len in 1..=total as usize {
            for alpha in compositions(total, len) {
                let bound = subring_counts::polyfit::interpolation_degree_bound(&alpha);
                let needed = (bound + 2).max(2);
                if needed > pool.len() {
                    over_budget += 1;
                    continue;
                }
                // The raw candidate space grows with p, so probing the
                // largest prime first avoids wasted enumeration on families
                // that cannot finish.
                let largest = pool[needed - 1];
                let last_point = match count_irreducible(&alpha, largest, &budget) {
                    Ok(value) => (largest, value),
                    Err(Error::BudgetExceeded { .. }) => {
                        over_budget += 1;
                        continue;
                    }
                    Err(other) => panic!("unexpected error for {alpha}: {other}"),
                };
                let mut points = Vec::new();
                for &p in &pool[..needed - 1] {
                    points.push((p, count_irreducible(&alpha, p, &budget).unwrap()));
                }
                points.push(last_point);
                let samples = SampleSet::new(format!("galpha:{alpha}"), points).unwrap();
                let fit = interpolate_in_p(&samples, bound).unwrap();
                fitted += 1;
                if fit.status != FitStatus::ExactInteger {
                    findings.push(format!("{alpha}: {:?}", fit.status));
                }
            }
        }
    }
    for finding in &findings {
        println!("finding: non-polynomial outcome for {finding}");
    }
    println!(
        "polynomiality evidence: {fitted} families fit exactly, {} findings, {over_budget} over budget",
        findings.len()
    );
}

/// The composition split behind a composition-indexed count: compositions
/// of e into n-1 parts partition the irreducible count of index p^e.
#[test]
fn composition_partition_of_totals() {
    let budget = EnumBudget::default();
    for e in 1..=5u32 {
        for n in 2..=(e + 1) {
            for p in [2u64, 3] {
                let total = subring_counts::count_irreducible_total(n, e, p, &budget).unwrap();
                let by_parts: ExactInt = compositions(e, (n - 1) as usize)
                    .iter()
                    .map(|alpha| count_irreducible(alpha, p, &budget).unwrap())
                    .sum();
                assert_eq!(total, by_parts, "partition at n={n}, e={e}, p={p}");
            }
        }
    }
}

/// Closed forms must agree with the search wherever both routes exist (the
/// dual-route check), across every composition of weight up to 8; cells
/// whose raw candidate space exceeds the budget are skipped, not weakened.
#[test]
fn closed_forms_and_search_agree_up_to_weight_eight() {
    let budget = EnumBudget::default();
    let mut agreed = 0usize;
    let mut skipped = 0usize;
    for e in 1..=8u32 {
        for len in 1..=e as usize {
            for alpha in compositions(e, len) {
                for p in [2u64, 3, 5, 7] {
                    let Some(closed) = subring_counts::closed_form_irreducible_count(&alpha, p)
                    else {
                        continue;
                    };
                    match count_irreducible(&alpha, p, &budget) {
                        Ok(counted) => {
                            assert_eq!(closed, counted, "{alpha} at p={p}");
                            agreed += 1;
                        }
                        Err(Error::BudgetExceeded { .. }) => skipped += 1,
                        Err(other) => panic!("unexpected error for {alpha}: {other}"),
                    }
                }
            }
        }
    }
    println!("closed-form agreement: {agreed} cells agree, {skipped} over budget");
}

/// Weight-eight check of the polynomiality harness at the two tabulated
/// quartic families, using a composition spelled with leading ones to
/// exercise the reduction.
#[test]
fn reduced_spellings_interpolate_to_the_same_polynomial() {
    let budget = EnumBudget::default();
    let primes = [2u64, 3, 5, 7, 11, 13];
    let spellings = [
        Composition::new(vec![2, 2, 1, 1]),
        Composition::new(vec![1, 2, 2, 1, 1]),
        Composition::new(vec![1, 1, 2, 2, 1, 1]),
    ];
    let mut fits = Vec::new();
    for alpha in &spellings {
        let points: Vec<(u64, ExactInt)> = primes
            .iter()
            .map(|&p| (p, count_irreducible(alpha, p, &budget).unwrap()))
            .collect();
        let samples = SampleSet::new(format!("galpha:{alpha}"), points).unwrap();
        fits.push(interpolate_in_p(&samples, 4).unwrap().polynomial);
    }
    assert_eq!(fits[0], fits[1]);
    assert_eq!(fits[1], fits[2]);
    assert_eq!(fits[0], IntPolynomial::from_ints(&[0, 0, -3, 3, 1]));
}
