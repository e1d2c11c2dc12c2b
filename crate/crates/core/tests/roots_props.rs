mod common;

use proptest::prelude::*;

use sl2_core::roots::{cbrt_sl2, exhaustive_roots, fourth_root_sl2, nth_roots, sqrt_sl2, Method};
use sl2_core::sl2::elements;
use sl2_core::{PrimeField, Sl2Elem};

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn closed_forms_agree_with_general_solver() {
    for p in [3u32, 5, 7, 11, 13, 17] {
        for g in elements(f(p)) {
            let b = g.to_bruhat();
            assert_eq!(sqrt_sl2(&b), nth_roots(&b, 2).unwrap().forms());
            assert_eq!(cbrt_sl2(&b), nth_roots(&b, 3).unwrap().forms());
            assert_eq!(fourth_root_sl2(&b), nth_roots(&b, 4).unwrap().forms());
        }
    }
}

#[test]
fn every_root_checks_out_by_matrix_product() {
    for p in [5u32, 7] {
        let q = p as u64;
        let field = f(p);
        for m in common::group(q) {
            let g = common::to_elem(field, m).to_bruhat();
            for n in [5u64, 6, 8, 9, 12] {
                for root in nth_roots(&g, n).unwrap().roots {
                    assert_eq!(common::pow(q, common::from_elem(&root.form.to_matrix()), n), m);
                }
            }
        }
    }
}

#[test]
fn method_tags_follow_the_cases() {
    let field = f(11);
    for g in elements(field) {
        let b = g.to_bruhat();
        for n in 1..=8 {
            for root in nth_roots(&b, n).unwrap().roots {
                let expect = match (b.is_borel(), root.form.is_borel()) {
                    (true, true) => Method::BorelCase,
                    (true, false) if n <= 4 => Method::CellSmallN,
                    (true, false) => Method::CellGeneral,
                    (false, _) => Method::BivariateSystem,
                };
                assert_eq!(root.method, expect);
            }
        }
    }
}

#[test]
fn exhaustive_roots_agree_on_larger_field() {
    let field = f(17);
    for g in elements(field).into_iter().step_by(97) {
        let b = g.to_bruhat();
        for n in [2u64, 6, 9, 16, 17, 18] {
            assert_eq!(nth_roots(&b, n).unwrap().forms(), exhaustive_roots(&b, n));
        }
    }
}

fn elem_strategy(p: u32) -> impl Strategy<Value = Sl2Elem> {
    let group = elements(f(p));
    (0..group.len()).prop_map(move |i| group[i])
}

proptest! {
    #[test]
    fn conjugation_equivariance(g in elem_strategy(13), x in elem_strategy(13), n in 1u64..13) {
        let roots = nth_roots(&g.to_bruhat(), n).unwrap();
        let conj = nth_roots(&g.conjugate_by(&x).to_bruhat(), n).unwrap();
        let mut moved: Vec<_> = roots.forms().iter().map(|r| r.to_matrix().conjugate_by(&x).to_bruhat()).collect();
        moved.sort();
        prop_assert_eq!(moved, conj.forms());
    }

    #[test]
    fn powers_have_their_base_as_root(g in elem_strategy(19), n in 1u64..30) {
        let target = g.pow(n).to_bruhat();
        prop_assert!(nth_roots(&target, n).unwrap().forms().contains(&g.to_bruhat()));
    }
}
