use gallerysheaf::symalg::{
    from_poly_matrix, is_identity, mat_mul, poly_gcd, q, ratfn_matrix_inverse, LinearForm, Monomial, Polynomial,
};
use proptest::prelude::*;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u16..3, 0u16..3, 0u16..2), -4i64..=4), 0..5).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|((a, b, c), k)| (Monomial([a, b, c, 0]), q(k))))
    })
}

fn linear_form() -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-2i64..=2, NVARS)
        .prop_filter("primitive", |c| c.iter().fold(0i64, |g, &x| num_gcd(g, x)) == 1)
        .prop_map(|c| LinearForm::new(&c).unwrap())
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { num_gcd(b, a % b) }
}

fn small_entry() -> impl Strategy<Value = Polynomial> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c)| &Polynomial::linear(&[a, b]) + &Polynomial::int(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn divide_inverts_multiplication(p in poly(), a in linear_form()) {
        let prod = &p * a.poly();
        prop_assert_eq!(a.divide(&prod), Some(p.clone()));
        prop_assert!(a.divides_power(&(&prod * a.poly()), 2));
    }

    #[test]
    fn reduce_is_a_ring_map(f in poly(), g in poly(), a in linear_form()) {
        let rf = a.reduce(&f);
        let rg = a.reduce(&g);
        prop_assert_eq!(a.reduce(&(&f + &g)), &rf + &rg);
        prop_assert_eq!(a.reduce(&(&f * &g)), a.reduce(&(&rf * &rg)));
        // The remainder differs from f by a multiple and avoids the pivot.
        prop_assert!(a.divide(&(&f - &rf)).is_some());
        prop_assert_eq!(rf.degree_in(a.pivot()), 0);
    }

    #[test]
    fn divisibility_matches_reduction(f in poly(), a in linear_form()) {
        prop_assert_eq!(a.divide(&f).is_some(), a.reduce(&f).is_zero());
    }

    #[test]
    fn gcd_divides_both(f in poly(), g in poly(), h in poly()) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let d = poly_gcd(&(&f * &h), &(&g * &h));
        prop_assert!((&f * &h).div_exact(&d).is_some());
        prop_assert!((&g * &h).div_exact(&d).is_some());
        prop_assert!(d.div_exact(&h.monic()).is_some());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_inverse(entries in prop::collection::vec(small_entry(), 9), shift in 1i64..4) {
        // A large constant on the diagonal keeps the determinant nonzero.
        let m: Vec<Vec<Polynomial>> = (0..3)
            .map(|i| (0..3).map(|j| {
                let e = entries[3 * i + j].clone();
                if i == j { &e + &Polynomial::int(100 * shift) } else { e }
            }).collect())
            .collect();
        let m = from_poly_matrix(&m);
        if let Ok(inv) = ratfn_matrix_inverse(&m) {
            prop_assert!(is_identity(&mat_mul(&m, &inv).unwrap()));
            prop_assert!(is_identity(&mat_mul(&inv, &m).unwrap()));
        }
    }
}
