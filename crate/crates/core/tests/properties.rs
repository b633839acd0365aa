use freewidth::lab::{sample_rng, Construction};
use freewidth::{AmalInstance, HnnInstance};
use proptest::prelude::*;
use std::sync::OnceLock;

fn hnn() -> &'static HnnInstance {
    static I: OnceLock<HnnInstance> = OnceLock::new();
    I.get_or_init(|| HnnInstance::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/z4hnn.json")).unwrap())
}

fn amal() -> &'static AmalInstance {
    static I: OnceLock<AmalInstance> = OnceLock::new();
    I.get_or_init(|| AmalInstance::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/z5z2.json")).unwrap())
}

fn letters<C: Construction>(inst: &C, seed: u64, n: usize) -> C::Word {
    use rand::Rng;
    let gens = inst.generators();
    let mut rng = sample_rng(seed, 0);
    let picked: Vec<C::Letter> = (0..n).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
    inst.word(&picked)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hnn_group_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), n in 0usize..20) {
        let i = hnn();
        let (a, b, c) = (letters(i, s1, n), letters(i, s2, n), letters(i, s3, n));
        prop_assert!(i.equals(&i.mul(&i.mul(&a, &b), &c), &i.mul(&a, &i.mul(&b, &c))));
        prop_assert!(i.is_identity(&i.mul(&a, &i.inverse(&a))));
        let r = i.reduce(&a);
        prop_assert!(i.is_reduced(&r));
        prop_assert_eq!(i.reduce(&r), r.clone());
        prop_assert_eq!(i.normal_form(&a), i.normal_form(&r));
    }

    #[test]
    fn hnn_signature_and_f_are_element_invariants(seed in any::<u64>(), len in 0usize..25) {
        let i = hnn();
        let mut rng = sample_rng(seed, 1);
        let w = i.random_reduced_word(len, &mut rng).unwrap();
        let s = i.shuffle(&w, &mut rng);
        prop_assert!(i.equals(&w, &s));
        prop_assert_eq!(i.signature(&w), i.signature(&s));
        prop_assert_eq!(i.f(&w), i.f(&s));
        let inv = i.inverse(&w);
        prop_assert_eq!(i.f(&w), i.f(&inv));
        let (d, di) = (i.run_stats(&w).d, i.run_stats(&inv).d);
        for (k, v) in &d {
            prop_assert_eq!(v + di.get(k).copied().unwrap_or(0), 0);
        }
    }

    #[test]
    fn hnn_group_palindromes_stay_below_one(seed in any::<u64>(), n in 0usize..31) {
        let i = hnn();
        let mut rng = sample_rng(seed, 2);
        let p = i.random_mirror_word(n, &mut rng);
        let p = i.shuffle(&i.reduce(&p), &mut rng);
        prop_assert!(i.is_group_palindrome(&p));
        prop_assert!(i.f(&p) <= 1);
    }

    #[test]
    fn amalgam_group_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), n in 0usize..20) {
        let i = amal();
        let (a, b, c) = (letters(i, s1, n), letters(i, s2, n), letters(i, s3, n));
        prop_assert!(i.equals(&i.mul(&i.mul(&a, &b), &c), &i.mul(&a, &i.mul(&b, &c))));
        prop_assert!(i.is_identity(&i.mul(&a, &i.inverse(&a))));
        let r = i.reduce(&a);
        prop_assert!(i.is_reduced(&r));
        prop_assert_eq!(i.reduce(&r), r);
    }

    #[test]
    fn amalgam_special_form_evaluates_back(seed in any::<u64>(), len in 0usize..25) {
        let i = amal();
        let mut rng = sample_rng(seed, 3);
        let w = i.random_reduced_word(len, &mut rng).unwrap();
        let sf = i.special_form(&w).unwrap();
        prop_assert!(i.equals(&i.evaluate(&sf), &w));
        let s = i.shuffle(&w, &mut rng);
        prop_assert_eq!(i.syllable_length(&w), i.syllable_length(&s));
        prop_assert_eq!(i.f(&w).unwrap(), i.f(&s).unwrap());
        prop_assert_eq!(i.f(&w).unwrap(), i.f(&i.inverse(&w)).unwrap());
    }

    #[test]
    fn amalgam_group_palindromes_stay_below_three(seed in any::<u64>(), n in 0usize..31) {
        let i = amal();
        let mut rng = sample_rng(seed, 4);
        let p = i.random_mirror_word(n, &mut rng);
        prop_assert!(i.is_group_palindrome(&p));
        prop_assert!(i.f(&p).unwrap() <= 3);
    }

    #[test]
    fn lower_bounds_are_monotone(f in 0u64..10_000, m in 0u64..6) {
        use freewidth::{amalgam, hnn};
        prop_assert!(hnn::plength_lower_bound(f, m) <= hnn::plength_lower_bound(f + 1, m));
        prop_assert!(hnn::plength_lower_bound(f, m + 1) <= hnn::plength_lower_bound(f, m));
        prop_assert!(amalgam::plength_lower_bound(f, m) <= amalgam::plength_lower_bound(f + 1, m));
        prop_assert!(amalgam::plength_lower_bound(f, m + 1) <= amalgam::plength_lower_bound(f, m));
        // a product of k factors cannot push f past the product bound
        let k = amalgam::plength_lower_bound(f, m);
        prop_assert!(f <= amalgam::product_bound(k, m));
    }
}

#[test]
fn witness_formulas_hold_to_two_hundred() {
    for k in 1..=200usize {
        let w = hnn().witness_word(k).unwrap();
        assert_eq!(hnn().f(&w), (k - 1 + k % 2) as u64);
        let w = amal().witness_word(k).unwrap();
        assert_eq!(amal().f(&w).unwrap(), k as u64);
    }
}
