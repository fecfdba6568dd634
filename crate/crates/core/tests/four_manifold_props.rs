use std::collections::BTreeSet;

use kodlib_core::four_manifold::{
    basis_change_is_unimodular, blow_down, cover, enumerate_minus_one, kappa_s, pullback_omega,
    ExceptionalSearch,
};
use kodlib_core::lattice::{int, ratio, ClassVector, Rational};
use kodlib_core::{FourManifoldModel, MinimalModelKind, MinusOneSet, OmegaClass};
use proptest::prelude::*;

const DEL_PEZZO: [usize; 7] = [0, 1, 3, 6, 10, 16, 27];

/// `CP²#k` with a reduced symplectic form: large `H`-area, small distinct
/// exceptional areas.
fn cp2_triple() -> impl Strategy<Value = (FourManifoldModel, OmegaClass)> {
    (1u32..=6).prop_flat_map(|k| {
        (Just(k), 40i64..80, proptest::collection::vec(1i64..=9, k as usize)).prop_map(|(k, x, z)| {
            let m = FourManifoldModel::new(MinimalModelKind::RationalCp2, k).unwrap();
            let areas: Vec<Rational> = z.iter().map(|&z| ratio(z, 2)).collect();
            (m, OmegaClass::catalog(&[int(x)], &areas))
        })
    })
}

fn any_model() -> impl Strategy<Value = (FourManifoldModel, OmegaClass)> {
    let ruled = (1u32..5, any::<bool>(), 0u32..4, 3i64..9, 3i64..9).prop_map(|(h, trivial, k, x, y)| {
        let kind = if trivial {
            MinimalModelKind::RuledTrivial { h }
        } else {
            MinimalModelKind::RuledNontrivial { h }
        };
        let areas: Vec<Rational> = (0..k).map(|i| ratio(1, 3 + i64::from(i))).collect();
        (FourManifoldModel::new(kind, k).unwrap(), OmegaClass::catalog(&[int(x), int(y)], &areas))
    });
    let general = (0i64..10, any::<bool>(), 1u32..6, 0u32..4).prop_map(|(ksq, torsion, b_plus, k)| {
        let ksq = if torsion { 0 } else { ksq };
        let kind = MinimalModelKind::general(int(ksq), torsion, !torsion, b_plus).unwrap();
        let w = OmegaClass::Signs { k_dot_omega_positive: !torsion || k > 0 };
        (FourManifoldModel::new(kind, k).unwrap(), w)
    });
    prop_oneof![cp2_triple(), ruled, general]
}

fn classes(set: &MinusOneSet) -> BTreeSet<Vec<i64>> {
    set.members().into_iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerated_classes_are_exceptional((m, w) in cp2_triple()) {
        let set = enumerate_minus_one(&m, &w, 4).unwrap();
        let k = m.canonical().unwrap();
        let wv = w.as_vector().unwrap();
        for e in set.members() {
            let e = ClassVector::from_ints(e);
            prop_assert_eq!(m.pair(&e, &e).unwrap(), int(-1));
            prop_assert_eq!(m.pair(&k, &e).unwrap(), int(-1));
            prop_assert!(m.pair(wv, &e).unwrap() > int(0));
        }
        prop_assert_eq!(set.len(), DEL_PEZZO[m.blowups() as usize]);
        prop_assert!(!set.bound_qualified());
    }

    #[test]
    fn enumeration_grows_with_the_bound((m, w) in cp2_triple(), b in 1u32..4) {
        let small = classes(&enumerate_minus_one(&m, &w, b).unwrap());
        let large = classes(&enumerate_minus_one(&m, &w, b + 2).unwrap());
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn blow_up_lowers_k_squared_and_keeps_kappa((m, w) in any_model()) {
        let up = m.blow_up();
        prop_assert_eq!(up.k_squared(), m.k_squared() - int(1));
        prop_assert_eq!(up.b_plus(), m.b_plus());
        let wu = w.blown_up(&ratio(1, 7));
        prop_assert_eq!(kappa_s(&up, &wu).unwrap(), kappa_s(&m, &w).unwrap());
    }

    #[test]
    fn blow_down_inverts_blow_up((m, w) in any_model()) {
        let up = m.blow_up();
        let n = up.class_len();
        let mut e = vec![0; n];
        e[n - 1] = 1;
        let bd = blow_down(&up, &[ClassVector::from_ints(&e)]).unwrap();
        let wu = w.blown_up(&ratio(1, 7));
        let back = bd.pushforward_omega(&wu).unwrap();
        prop_assert_eq!(bd.model().k_squared(), m.k_squared());
        prop_assert_eq!(bd.model().minimal(), m.minimal());
        prop_assert_eq!(kappa_s(bd.model(), &back).unwrap(), kappa_s(&m, &w).unwrap());
    }

    #[test]
    fn pushforward_adds_the_correction_products(
        (m, _) in cp2_triple(),
        v in proptest::collection::vec(-5i64..=5, 7),
        u in proptest::collection::vec(-5i64..=5, 7),
    ) {
        let n = m.class_len();
        let (v, u) = (ClassVector::from_ints(&v[..n]), ClassVector::from_ints(&u[..n]));
        let mut e = vec![0; n];
        e[n - 1] = 1;
        let bd = blow_down(&m, &[ClassVector::from_ints(&e)]).unwrap();
        let (pv, pu) = (bd.pushforward(&v).unwrap(), bd.pushforward(&u).unwrap());
        let cv = bd.corrections(&v).unwrap();
        let cu = bd.corrections(&u).unwrap();
        let extra: Rational = cv.iter().zip(&cu).map(|(a, b)| a * b).sum();
        prop_assert_eq!(m.pair(&pv, &pu).unwrap(), m.pair(&v, &u).unwrap() + extra);
        prop_assert!(basis_change_is_unimodular(bd.model()));
    }

    #[test]
    fn cover_scales_k_squared((m, w) in any_model(), n in 1u32..=5) {
        let c = cover(&m, n).unwrap();
        if m.minimal().is_rational() {
            prop_assert_eq!(&c.model, &m);
        } else {
            prop_assert_eq!(c.model.k_squared(), m.k_squared() * int(i64::from(n)));
            prop_assert_eq!(c.model.blowups(), m.blowups() * n);
        }
        let wc = pullback_omega(&m, &w, n).unwrap();
        prop_assert_eq!(kappa_s(&c.model, &wc).unwrap(), kappa_s(&m, &w).unwrap());
    }
}

#[test]
fn search_is_complete_from_the_measured_threshold() {
    for (k, threshold) in [(5u32, 2u32), (7, 3), (8, 6)] {
        let m = FourManifoldModel::new(MinimalModelKind::RationalCp2, k).unwrap();
        assert!(!ExceptionalSearch::new(&m, threshold - 1).is_complete());
        assert!(ExceptionalSearch::new(&m, threshold).is_complete());
        assert!(ExceptionalSearch::new(&m, 3 * k).is_complete());
    }
}

#[test]
fn non_positive_area_on_a_rational_model_is_rejected() {
    let m = FourManifoldModel::new(MinimalModelKind::RationalCp2, 2).unwrap();
    // ω·(H − E1 − E2) = 3 − 2 − 2 < 0
    let w = OmegaClass::catalog(&[int(3)], &[int(2), int(2)]);
    assert!(enumerate_minus_one(&m, &w, 3).is_err());
}
