//! Randomized invariants.

use proptest::prelude::*;

use logverlinde::hopf::{check_rep_property, ordinary_hopf_s, qg_basis, Convention, Target};
use logverlinde::linalg::{kernel, ExactMatrix};
use logverlinde::modular::{char_value, character_basis, CharId, Tau};
use logverlinde::rings::{build_wp_fusion_table, ModuleLabel};
use logverlinde::CycloNum;

fn cyclo(order: u32, coeffs: &[i64]) -> CycloNum {
    coeffs.iter().enumerate().fold(CycloNum::zero(order), |acc, (k, &c)| {
        &acc + &CycloNum::root(order, k as i64).scale_int(c)
    })
}

fn order_and_coeffs() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    prop_oneof![Just(4u32), Just(6), Just(8), Just(10), Just(12)].prop_flat_map(|n| {
        let v = || prop::collection::vec(-5i64..=5, n as usize);
        (Just(n), v(), v(), v())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((n, a, b, c) in order_and_coeffs()) {
        let (a, b, c) = (cyclo(n, &a), cyclo(n, &b), cyclo(n, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv).is_one());
        }
    }

    #[test]
    fn embedding_is_a_ring_map((n, a, b, _c) in order_and_coeffs()) {
        let (x, y) = (cyclo(n, &a), cyclo(n, &b));
        let lhs = (&x * &y).to_complex();
        let rhs = x.to_complex() * y.to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn fusion_triples(p in 2u32..=5, seed in any::<[usize; 3]>()) {
        let t = build_wp_fusion_table(p).unwrap();
        let b = t.basis();
        let (x, y, z) = (b[seed[0] % b.len()], b[seed[1] % b.len()], b[seed[2] % b.len()]);
        let xy = t.product(&x, &y).unwrap();
        prop_assert_eq!(&xy, &t.product(&y, &x).unwrap());
        let left = t.tensor(&xy, &logverlinde::rings::RingElement::basis(z)).unwrap();
        let yz = t.product(&y, &z).unwrap();
        let right = t.tensor(&logverlinde::rings::RingElement::basis(x), &yz).unwrap();
        prop_assert_eq!(left, right);
        if x.is_wp_projective(p) {
            prop_assert!(xy.terms().all(|(l, _)| l.is_wp_projective(p)));
        }
    }

    #[test]
    fn representation_property_on_random_target(p in 2u32..=5, k in any::<usize>()) {
        let t = build_wp_fusion_table(p).unwrap();
        let targets = Target::all(p);
        let w = targets[k % targets.len()];
        prop_assert!(check_rep_property(&t, w, p, Convention::Consistent).unwrap().holds());
    }

    #[test]
    fn ordinary_s_is_symmetric(p in 2u32..=6, i in any::<usize>(), j in any::<usize>()) {
        let b = qg_basis(p);
        let (v, w) = (b[i % b.len()], b[j % b.len()]);
        let conv = Convention::Consistent;
        prop_assert_eq!(
            ordinary_hopf_s(v, w, p, conv).unwrap().value,
            ordinary_hopf_s(w, v, p, conv).unwrap().value
        );
    }

    #[test]
    fn tau_round_trip(re in -3.0f64..3.0, im in 0.05f64..5.0) {
        let t = Tau::new(re, im).unwrap();
        let back: Tau = t.to_string().parse().unwrap();
        prop_assert!((back.re() - re).abs() < 1e-12 && (back.im() - im).abs() < 1e-12);
    }

    #[test]
    fn labels_round_trip(p in 2u32..=6) {
        for l in build_wp_fusion_table(p).unwrap().basis() {
            prop_assert_eq!(l.to_string().parse::<ModuleLabel>().unwrap(), *l);
        }
        for c in character_basis(p) {
            prop_assert_eq!(c.to_string().parse::<CharId>().unwrap(), c);
        }
    }

    #[test]
    fn characters_are_t_eigenvectors_up_to_phase(p in 2u32..=4, re in -0.5f64..0.5, im in 0.8f64..2.0) {
        // ch[X^+_p] has conformal weight h with q-expansion in integer steps, so
        // |ch(τ+1)| = |ch(τ)|.
        let tau = Tau::new(re, im).unwrap();
        let c = CharId::ChX(logverlinde::rings::Sign::Plus, p);
        let a = char_value(c, p, tau, 400).unwrap();
        let b = char_value(c, p, tau.t(), 400).unwrap();
        prop_assert!((a.norm() - b.norm()).abs() < 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 3..6)) {
        let m = ExactMatrix::from_ints(&rows, 4);
        let ker = kernel(&m);
        prop_assert_eq!(ker.len() + m.rank(), 5);
        for v in ker {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_is_two_sided(entries in prop::collection::vec(-4i64..=4, 16)) {
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let m = ExactMatrix::from_ints(&rows, 6);
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(4, 6));
            prop_assert_eq!(inv.mul(&m).unwrap(), ExactMatrix::identity(4, 6));
        } else {
            prop_assert!(m.rank() < 4);
        }
    }
}
