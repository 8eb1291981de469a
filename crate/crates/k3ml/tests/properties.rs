//! Randomized algebraic properties of the exact kernels.

use k3ml::exact::{kronecker_symbol, rat, Poly, Rat};
use k3ml::lattice::{r_n, r_sieve};
use k3ml::mahler::parse_laurent;
use proptest::prelude::*;

fn poly_from(coeffs: &[(i64, i64)]) -> Poly<Rat> {
    Poly::new(
        coeffs
            .iter()
            .map(|&(n, d)| rat(n, d.max(1)))
            .collect(),
    )
}

proptest! {
    #[test]
    fn division_reconstructs(
        num in prop::collection::vec((-30i64..30, 1i64..6), 0..8),
        den in prop::collection::vec((-30i64..30, 1i64..6), 1..5),
    ) {
        let p = poly_from(&num);
        let d = poly_from(&den);
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), p);
        if !r.is_zero() {
            prop_assert!(r.degree().unwrap() < d.degree().unwrap());
        }
    }

    #[test]
    fn kronecker_multiplicative(a in -60i64..60, b in -60i64..60, n in 1i64..80) {
        let n = 2 * n + 1; // odd modulus
        prop_assert_eq!(
            kronecker_symbol(a * b, n).unwrap(),
            kronecker_symbol(a, n).unwrap() * kronecker_symbol(b, n).unwrap()
        );
    }

    #[test]
    fn laurent_display_round_trips(
        terms in prop::collection::vec((-9i64..10, -4i32..5, -4i32..5), 1..6),
    ) {
        let body: Vec<String> = terms
            .iter()
            .map(|&(c, e1, e2)| format!("({c})*x^({e1})*y^({e2})"))
            .collect();
        let p = parse_laurent(&body.join(" + ")).unwrap();
        prop_assume!(!p.is_zero());
        // align first: printing drops variables whose exponents are all 0
        let reparsed = parse_laurent(&p.to_string())
            .unwrap()
            .align_vars(&p.vars)
            .unwrap();
        prop_assert!(p.sub(&reparsed).is_zero());
    }

    #[test]
    fn representation_counts_agree_with_sieve(n_max in 50usize..400) {
        let sieve = r_sieve(n_max);
        for n in 1..=n_max {
            prop_assert_eq!(sieve[n], r_n(n as u64));
        }
    }
}
