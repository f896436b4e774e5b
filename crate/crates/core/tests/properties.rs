use proptest::prelude::*;

use grasscas_core::forms::decompose_forms;
use grasscas_core::report::binomial;
use grasscas_core::rng::Lcg;
use grasscas_core::tensor::{IndexKind, Tensor, PRIMED_UP, UNPRIMED_DOWN};
use grasscas_core::tractor::{
    bullet_on_t, bullet_oracle, one_form_slots, FormalMatrix, Generator, InjectorBasis, Step, TSection,
};
use grasscas_core::verma::{contraction_c, jet_slots, projection_p};
use grasscas_core::young::{apply_projector, YoungDiagram};
use grasscas_core::{qi, Q};

fn tensor_from(n: usize, slots: &[IndexKind], weight: i32, seed: u64) -> Tensor {
    let mut g = Lcg::new(seed);
    Tensor::from_fn(n, slots, weight, |_| qi(g.small_int(3)))
}

fn word(steps: &[(bool, usize, usize)]) -> Vec<Step> {
    steps
        .iter()
        .map(|&(n1, from, to)| Step { gen: if n1 { Generator::N1 } else { Generator::N2 }, from, to })
        .collect()
}

fn formal(size: usize, entries: &[(usize, usize, bool, i64)]) -> FormalMatrix {
    let mut m = FormalMatrix::zero(size);
    for &(t, s, n1, c) in entries {
        let (t, s) = (t % size, s % size);
        m.add_word(t, s, word(&[(n1, s, t)]), qi(c as i128));
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn contractions_sum_to_zero(n in 2usize..=3, seed in any::<u64>()) {
        let omega = tensor_from(n, &jet_slots(4, 2), 0, seed);
        let mut s = contraction_c(1, &omega).unwrap();
        s.axpy(qi(1), &contraction_c(2, &omega).unwrap()).unwrap();
        s.axpy(qi(1), &contraction_c(3, &omega).unwrap()).unwrap();
        prop_assert!(s.is_zero());
    }

    #[test]
    fn projections_sum_to_zero(n in 2usize..=4, seed in any::<u64>()) {
        let t = tensor_from(n, &[UNPRIMED_DOWN; 4], 0, seed);
        let mut s = projection_p(1, &t).unwrap();
        s.axpy(qi(1), &projection_p(2, &t).unwrap()).unwrap();
        s.axpy(qi(1), &projection_p(3, &t).unwrap()).unwrap();
        prop_assert!(s.is_zero());
    }

    #[test]
    fn primed_raise_lower_round_trip(n in 2usize..=3, seed in any::<u64>()) {
        let t = tensor_from(n, &[PRIMED_UP, UNPRIMED_DOWN, PRIMED_UP], 0, seed);
        let back = t.lower_primed(2).unwrap().raise_primed(2).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn young_projector_is_quasi_idempotent(cols in prop::sample::select(vec![vec![2usize], vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 1]]), seed in any::<u64>()) {
        let d = YoungDiagram::new(cols).unwrap();
        let b = d.boxes();
        let slots: Vec<usize> = (0..b).collect();
        let t = tensor_from(3, &vec![UNPRIMED_DOWN; b], 0, seed);
        let p = apply_projector(&d, &t, &slots).unwrap();
        let pp = apply_projector(&d, &p, &slots).unwrap();
        prop_assert_eq!(pp, p.scale(d.quasi_idempotence()));
    }

    #[test]
    fn form_dimensions_add_up(n in 2usize..=4, j in 0usize..=8) {
        prop_assume!(j <= 2 * n);
        let sum: u128 = decompose_forms(j, n).unwrap().iter().map(|b| b.dimension(n)).sum();
        prop_assert_eq!(sum, binomial(2 * n as u128, j as u128));
    }

    #[test]
    fn formal_composition_is_associative_with_unit(
        a in prop::collection::vec((0usize..4, 0usize..4, any::<bool>(), -3i64..=3), 0..5),
        b in prop::collection::vec((0usize..4, 0usize..4, any::<bool>(), -3i64..=3), 0..5),
        c in prop::collection::vec((0usize..4, 0usize..4, any::<bool>(), -3i64..=3), 0..5),
    ) {
        let (a, b, c) = (formal(4, &a), formal(4, &b), formal(4, &c));
        let id = FormalMatrix::identity(4);
        prop_assert_eq!(a.compose(&id), a.clone());
        prop_assert_eq!(id.compose(&a), a.clone());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let two: Q = qi(2);
        prop_assert_eq!(a.add(&a), a.scale(two));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bullet_matches_embedding(n in 2usize..=3, seed in any::<u64>()) {
        let k = 2;
        let ib = InjectorBasis::new(n, k).unwrap();
        let mut rng = Lcg::new(seed);
        let s = TSection::random(n, k, &mut rng).unwrap();
        let phi = Tensor::from_fn(n, &one_form_slots(), 0, |_| qi(rng.small_int(2)));
        prop_assert_eq!(bullet_on_t(&phi, &s).unwrap(), bullet_oracle(&ib, &phi, &s).unwrap());
    }

    #[test]
    fn section_projection_is_idempotent(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let s = TSection::random(n, 2, &mut rng).unwrap();
        prop_assert_eq!(s.project().unwrap(), s);
    }

    #[test]
    fn bullet_lowers_filtration(n in 2usize..=3, seed in any::<u64>()) {
        let k = 2;
        let mut rng = Lcg::new(seed);
        let mut s = TSection::random(n, k, &mut rng).unwrap();
        let phi = Tensor::from_fn(n, &one_form_slots(), 0, |_| qi(rng.small_int(2)));
        for _ in 0..5 {
            s = bullet_on_t(&phi, &s).unwrap();
        }
        prop_assert!(s.is_zero());
    }
}
