use kodlib_core::kod::kappa_number;
use kodlib_core::lattice::{int, ratio};
use kodlib_core::lefschetz::{
    base_divisor, double_k_squared, endo_signature, euler_char, implied_divisor_degree, k_squared_hyperelliptic,
    kappa_total, self_sum_k_squared, weights, weights_positive, LefschetzData,
};
use kodlib_core::{Error, KodDim};
use proptest::prelude::*;

fn hyperelliptic() -> impl Strategy<Value = (u32, u32, Vec<u32>)> {
    (2u32..=12).prop_flat_map(|g| (Just(g), 0u32..200, proptest::collection::vec(0u32..30, (g / 2) as usize)))
}

/// `(2g + 1)·K²` in integers: `3(2g+1)σ + 2(2g+1)χ` with `(2g+1)σ` expanded.
fn scaled_k_squared(g: u32, a: u32, s: &[u32]) -> i128 {
    let (g, a) = (i128::from(g), i128::from(a));
    let n = 2 * g + 1;
    let mut n_sigma = -(g + 1) * a;
    let mut chi = 4 - 4 * g + a;
    for (i, &sp) in s.iter().enumerate() {
        let p = i as i128 + 1;
        n_sigma += (4 * p * (g - p) - n) * i128::from(sp);
        chi += i128::from(sp);
    }
    3 * n_sigma + 2 * n * chi
}

proptest! {
    #[test]
    fn k_squared_matches_the_integer_oracle((g, a, s) in hyperelliptic()) {
        let k2 = k_squared_hyperelliptic(g, a, &s).unwrap();
        let n = 2 * i64::from(g) + 1;
        let oracle = scaled_k_squared(g, a, &s);
        prop_assert_eq!(k2, ratio(i64::try_from(oracle).unwrap(), n));
    }

    #[test]
    fn divisor_degree_is_recovered_from_k_squared((g, a, s) in hyperelliptic()) {
        let k2 = k_squared_hyperelliptic(g, a, &s).unwrap();
        let d = base_divisor(&LefschetzData::over_sphere(g, a, s)).unwrap();
        prop_assert_eq!(implied_divisor_degree(g, &k2), d.degree());
    }

    #[test]
    fn self_sum_adds_the_adjunction_term((g, a, s) in hyperelliptic()) {
        let k2 = k_squared_hyperelliptic(g, a, &s).unwrap();
        let l = LefschetzData::over_sphere(g, a, s);
        // (K + F)² = K² + 2K·F + F² with F² = 0 and K·F = 2g − 2.
        let adjoint = k2 + int(4 * i64::from(g) - 4);
        prop_assert_eq!(self_sum_k_squared(&l).unwrap(), double_k_squared(&adjoint));
    }

    #[test]
    fn minimal_routes_agree((g, a, s) in hyperelliptic()) {
        let l = LefschetzData::over_sphere(g, a, s.clone());
        prop_assume!(l.singular_fibers() > 0);
        match kappa_total(&l) {
            Ok(r) => {
                let k2 = r.k_squared.unwrap();
                prop_assert_eq!(r.kappa, kappa_number(&k2) + KodDim::One);
                prop_assert_eq!(r.signature, Some(endo_signature(g, a, &s).unwrap()));
            }
            Err(Error::NonIntegralSignature(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn euler_characteristic_counts_singular_fibers(g in 1u32..10, h in 0u32..5, a in 0u32..50) {
        let mut l = LefschetzData::over_sphere(g, a, vec![]);
        l.h = h;
        let bundle = (2 - 2 * i64::from(g)) * (2 - 2 * i64::from(h));
        prop_assert_eq!(euler_char(&l), bundle + i64::from(a));
    }
}

#[test]
fn weights_are_positive_in_every_genus() {
    for g in 1..=60 {
        let w = weights(g).unwrap();
        assert!(weights_positive(&w), "g = {g}");
        assert_eq!(w.b_sep.len(), (g / 2) as usize);
    }
    assert_eq!(weights(1).unwrap().b_ns, ratio(1, 12));
    assert!(weights(0).is_err());
}

#[test]
fn over_higher_genus_bases_the_divisor_decides() {
    let mut l = LefschetzData::over_sphere(3, 4, vec![1]);
    l.h = 1;
    l.hyperelliptic = false;
    // κ(T², D) = 1 for any effective nonzero D, plus κ(Σ₃) = 1.
    assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::Two);
    l.a = 0;
    l.s = vec![];
    assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::One);
}

#[test]
fn non_minimal_correction() {
    // g = 2, a = 40: c(D) = 2, so −2 + c(D) + c/(4g − 4) > 0 for c ≥ 1, and
    // the fiber side 2g − 2 − c′ decides.
    let mut l = LefschetzData::over_sphere(2, 40, vec![0]);
    l.minimal = false;
    l.c = 1;
    l.c_prime = 1;
    assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::Two);
    l.c_prime = 2;
    assert_eq!(kappa_total(&l).unwrap().kappa, KodDim::One);
}
