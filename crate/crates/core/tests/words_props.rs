mod common;

use std::collections::HashSet;

use sl2_core::sl2::{elements, group_order};
use sl2_core::words::{borel_order, borel_word_image, power_set, set_product, WordContext, WordSpec};
use sl2_core::PrimeField;

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn word(exps: &[u64]) -> WordSpec {
    WordSpec::new(exps.to_vec()).unwrap()
}

#[test]
fn power_sets_are_conjugation_closed() {
    for p in [3u32, 5, 7] {
        let field = f(p);
        let group = elements(field);
        for r in 1..=6 {
            let set = power_set(field, r).unwrap();
            for g in &set {
                for x in &group {
                    assert!(set.contains(&g.conjugate_by(x)));
                }
            }
        }
    }
}

#[test]
fn images_are_exponent_order_invariant() {
    for p in [3u32, 5, 7] {
        let mut ctx = WordContext::new(f(p)).unwrap();
        for a in 1..=4 {
            for b in 1..=4 {
                let ab = ctx.word_image(&word(&[a, b]));
                let ba = ctx.word_image(&word(&[b, a]));
                assert_eq!(ab.image_size, ba.image_size);
                assert_eq!(ab.missing, ba.missing);
            }
        }
    }
}

#[test]
fn class_level_images_match_oracle_products() {
    for p in [3u32, 5] {
        let q = p as u64;
        let field = f(p);
        let mut ctx = WordContext::new(field).unwrap();
        for exps in [[2u64, 2, 2], [3, 3, 3], [2, 3, 4], [4, 4, 4]] {
            let sets: Vec<_> = exps.iter().map(|r| common::power_image(q, *r)).collect();
            let mut acc = sets[0].clone();
            for s in &sets[1..] {
                acc = acc.iter().flat_map(|x| s.iter().map(move |y| common::mul(q, *x, *y))).collect();
            }
            assert_eq!(ctx.word_image(&word(&exps)).image_size, acc.len() as u64, "q={q} {exps:?}");
        }
    }
}

#[test]
fn shortcut_never_contradicts_products() {
    for p in [3u32, 5, 7, 11, 13] {
        let mut ctx = WordContext::new(f(p)).unwrap();
        for a in 1..=8 {
            for b in a..=8 {
                let report = ctx.word_image(&word(&[a, b]));
                if report.shortcut {
                    assert!(report.surjective, "q={p} ({a},{b})");
                }
                assert_eq!(report.surjective, report.image_size == group_order(f(p)));
            }
        }
    }
}

#[test]
fn missing_elements_expand_missing_classes() {
    let mut ctx = WordContext::new(f(3)).unwrap();
    let report = ctx.word_image(&word(&[3, 3]));
    let expanded = ctx.expand(&report.missing);
    assert_eq!(expanded.len() as u64, report.group_size - report.image_size);
    let image: HashSet<_> = power_set(f(3), 3).unwrap().into_iter().collect();
    assert!(expanded.iter().all(|g| !image.contains(g)));
}

#[test]
fn squares_on_borel_are_half() {
    for p in [3u32, 5, 7, 11] {
        for l in 2..=4 {
            assert_eq!(borel_word_image(f(p), &word(&vec![2; l])).unwrap().len() as u64, borel_order(f(p)) / 2);
        }
    }
}

#[test]
fn cube_map_on_borel() {
    for p in [5u32, 7, 11, 13, 17, 19] {
        let onto = borel_word_image(f(p), &word(&[3])).unwrap().len() as u64 == borel_order(f(p));
        assert_eq!(onto, (p - 1) % 3 != 0, "q={p}");
    }
}

#[test]
fn plain_product_is_symmetric_on_closed_sets() {
    let field = f(5);
    let a: HashSet<_> = power_set(field, 2).unwrap().into_iter().collect();
    let b: HashSet<_> = power_set(field, 3).unwrap().into_iter().collect();
    assert_eq!(set_product(&a, &b), set_product(&b, &a));
}
