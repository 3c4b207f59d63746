//! Randomised agreement between independent membership tests.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use gallerysheaf::fibres::FibreSystem;
use gallerysheaf::galleries::{Galleries, Word};
use gallerysheaf::gkm::{bxalpha_basis, bxalpha_report, fibre_congruences, htbs1_member, root_poly};
use gallerysheaf::rootsys::{CartanType, RootSystem};
use gallerysheaf::sl2kit::Sl2;
use gallerysheaf::symalg::{from_poly_matrix, graded_monomials, q, ratfn_matrix_inverse, Polynomial, RatMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_homogeneous(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    for m in graded_monomials(nvars, d) {
        let c: i64 = rng.gen_range(-2..=2);
        if c != 0 {
            p.add_term(m, q(c));
        }
    }
    p
}

fn column_degree(col: &[Polynomial]) -> u32 {
    col.iter().find_map(|p| p.homogeneous_degree()).expect("nonzero column")
}

struct Sl2Case {
    sl2: Sl2,
    h_inv: RatMatrix,
}

fn sl2_case(r: usize) -> Arc<Sl2Case> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Sl2Case>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    cache
        .lock()
        .unwrap()
        .entry(r)
        .or_insert_with(|| {
            let sl2 = Sl2::new(r).unwrap();
            let gs = sl2.galleries();
            let alpha = root_poly(gs.root_system(), 0);
            // H[delta][gamma] = alpha^{#J(gamma)} when J(gamma) is inside J(delta), in bit order.
            let h: Vec<Vec<Polynomial>> = gs
                .all()
                .map(|d| {
                    gs.all()
                        .map(|g| {
                            let (jd, jg) = (gs.j(d), gs.j(g));
                            if jg & !jd == 0 { alpha.pow(jg.count_ones()) } else { Polynomial::zero() }
                        })
                        .collect()
                })
                .collect();
            let h_inv = ratfn_matrix_inverse(&from_poly_matrix(&h)).unwrap();
            Arc::new(Sl2Case { sl2, h_inv })
        })
        .clone()
}

/// Membership in the image of H over S, decided by inverting H over the
/// fraction field and asking whether the coefficients are polynomial.
fn in_image_of_h(h_inv: &RatMatrix, f: &[Polynomial]) -> bool {
    h_inv.iter().all(|row| {
        let mut acc = gallerysheaf::symalg::RationalFunction::zero();
        for (e, v) in row.iter().zip(f) {
            acc = &acc + &e.mul_poly(v);
        }
        acc.is_polynomial()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn rank_one_membership_three_ways(r in 1usize..=4, seed in any::<u64>(), perturb in any::<bool>()) {
        let case = sl2_case(r);
        let gs = case.sl2.galleries();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(0..=r as u32 + 1);
        let mut f = vec![Polynomial::zero(); gs.len()];
        for g in gs.all() {
            let col = case.sl2.h_column(g);
            let cd = column_degree(&col);
            prop_assert_eq!(cd, gs.j(g).count_ones());
            if cd <= d {
                let a = random_homogeneous(&mut rng, 1, d - cd);
                for (fv, hv) in f.iter_mut().zip(&col) {
                    *fv = &*fv + &(&a * hv);
                }
            }
        }
        if perturb {
            let slot = rng.gen_range(0..f.len());
            f[slot] = &f[slot] + &random_homogeneous(&mut rng, 1, d);
        }
        let oracle = in_image_of_h(&case.h_inv, &f);
        let triangular = case.sl2.member(&f).unwrap().member;
        let congruences = htbs1_member(gs, &f).unwrap();
        prop_assert_eq!(triangular, oracle);
        prop_assert_eq!(congruences, oracle);
        if !perturb {
            prop_assert!(oracle);
        }
    }
}

fn bx_galleries() -> &'static [Galleries] {
    static GS: OnceLock<Vec<Galleries>> = OnceLock::new();
    GS.get_or_init(|| {
        [(CartanType::A, "1,2,1,2"), (CartanType::B, "1,2,1,2"), (CartanType::G, "1,2,1"), (CartanType::A, "1,1,2")]
            .into_iter()
            .map(|(t, w)| {
                let rs = Arc::new(RootSystem::new(t, 2).unwrap());
                Galleries::new(rs, Word::parse(w, 2).unwrap()).unwrap()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn alpha_slice_criteria_agree(which in 0usize..4, seed in any::<u64>(), perturb in any::<bool>()) {
        let gs = &bx_galleries()[which];
        let rs = gs.root_system();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let support = gs.support();
        let x = support[rng.gen_range(0..support.len())];
        let k = rng.gen_range(0..rs.num_positive_roots());
        let basis = bxalpha_basis(gs, x, k).unwrap();
        let n = gs.fibre(x).len();
        let d = rng.gen_range(0..=3u32);
        let mut f = vec![Polynomial::zero(); n];
        for e in basis.elements().filter(|e| e.degree <= d) {
            let a = random_homogeneous(&mut rng, rs.rank(), d - e.degree);
            for (fv, ev) in f.iter_mut().zip(&e.values) {
                *fv = &*fv + &(&a * ev);
            }
        }
        if perturb {
            let slot = rng.gen_range(0..n);
            f[slot] = &f[slot] + &random_homogeneous(&mut rng, rs.rank(), d);
        }
        let rep = bxalpha_report(gs, x, k, &f).unwrap();
        prop_assert!(rep.agree(), "{:?}", rep);
        if !perturb {
            prop_assert!(rep.span);
            // Closed under the polynomial action.
            let p = random_homogeneous(&mut rng, rs.rank(), 1);
            let pf: Vec<Polynomial> = f.iter().map(|v| &p * v).collect();
            prop_assert!(bxalpha_report(gs, x, k, &pf).unwrap().direct);
        }
    }
}

fn fibre_systems() -> &'static [FibreSystem] {
    static SYS: OnceLock<Vec<FibreSystem>> = OnceLock::new();
    SYS.get_or_init(|| {
        [(CartanType::A, "1,2,1,2"), (CartanType::B, "1,2,1"), (CartanType::A, "2,1,1")]
            .into_iter()
            .map(|(t, w)| {
                let rs = Arc::new(RootSystem::new(t, 2).unwrap());
                FibreSystem::new(rs, &Word::parse(w, 2).unwrap()).unwrap()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fibre_coordinates_round_trip(which in 0usize..3, seed in any::<u64>()) {
        let sys = &fibre_systems()[which];
        let gs = sys.galleries();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let support = gs.support();
        let x = support[rng.gen_range(0..support.len())];
        let basis = sys.basis(x).unwrap();
        let d = rng.gen_range(0..=4u32);
        let coeffs: Vec<Polynomial> = basis
            .elements
            .iter()
            .map(|e| if e.degree <= d { random_homogeneous(&mut rng, 2, d - e.degree) } else { Polynomial::zero() })
            .collect();
        let f = basis.combine(&coeffs);
        prop_assert_eq!(basis.coordinates(&f).unwrap(), coeffs);
        // Every combination satisfies the congruences cutting out the fibre module.
        prop_assert!(fibre_congruences(gs, x).iter().all(|c| c.holds(&f)));
    }
}

#[test]
fn rank_one_point_mass_is_not_a_member() {
    // A constant supported on the all-bends gallery violates the congruence along the first wall.
    let case = sl2_case(2);
    let gs = case.sl2.galleries();
    let mut f = vec![Polynomial::zero(); gs.len()];
    f[0] = Polynomial::one();
    assert!(!in_image_of_h(&case.h_inv, &f));
    assert!(!case.sl2.member(&f).unwrap().member);
    assert!(!htbs1_member(gs, &f).unwrap());
    let ones = vec![Polynomial::one(); gs.len()];
    assert!(in_image_of_h(&case.h_inv, &ones) && htbs1_member(gs, &ones).unwrap());
}
