use chowlab::engine::{augmented_chow, chow, AugmentedMethod, ChowMethod};
use chowlab::poset::random_level_poset;
use chowlab::{GradedPoset, IntPolynomial};
use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-50i64..50, 0..8).prop_map(|c| IntPolynomial::from_i64s(&c))
}

fn nonzero_poly() -> impl Strategy<Value = IntPolynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn random_poset() -> impl Strategy<Value = GradedPoset> {
    (prop::collection::vec(1usize..=4, 1..=4), prop::sample::select(vec![(3u64, 10u64), (6, 10), (1, 1)]), any::<u64>())
        .prop_map(|(levels, (n, d), seed)| random_level_poset(&levels, Ratio::new(n, d), seed).unwrap())
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn text_and_json_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<IntPolynomial>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&json).unwrap(), a);
    }

    #[test]
    fn reverse_is_multiplicative(a in nonzero_poly(), b in nonzero_poly()) {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let lhs = (&a * &b).reverse(da + db).unwrap();
        prop_assert_eq!(lhs, &a.reverse(da).unwrap() * &b.reverse(db).unwrap());
    }

    #[test]
    fn gamma_vector_reexpands(gamma in prop::collection::vec(-20i64..20, 1..5), extra in 0usize..3) {
        let d = 2 * (gamma.len() - 1) + extra;
        let p: IntPolynomial = gamma
            .iter()
            .enumerate()
            .map(|(i, &g)| IntPolynomial::one_plus_t_pow(d - 2 * i).shift(i).scale(&BigInt::from(g)))
            .sum();
        let mut expected: Vec<BigInt> = gamma.iter().map(|&g| BigInt::from(g)).collect();
        expected.resize(d / 2 + 1, BigInt::from(0));
        prop_assert!(p.is_palindromic(d));
        prop_assert_eq!(p.gamma_vector(d).unwrap(), expected);
    }

    #[test]
    fn h_expansion_reexpands(p in poly(), extra in 0usize..3) {
        let k = p.degree().unwrap_or(0) + extra;
        let h = p.h_expansion(k).unwrap();
        let back: IntPolynomial = h
            .iter()
            .enumerate()
            .map(|(i, c)| IntPolynomial::one_plus_t_pow(k - i).shift(i).scale(c))
            .sum();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poset_json_and_dual_round_trip(p in random_poset()) {
        prop_assert_eq!(GradedPoset::from_json(&p.to_json()).unwrap(), p.clone());
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.augment().rank(), p.rank() + 1);
        prop_assert_eq!(p.augment().len(), p.len() + 1);
    }

    #[test]
    fn mobius_rows_sum_to_zero(p in random_poset()) {
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) {
                    let s: i64 = p.interval_elements(x, y).iter().map(|&z| p.mobius(x, z).unwrap()).sum();
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn methods_agree_on_random_posets(p in random_poset()) {
        let h = chow(&p, ChowMethod::Definition).unwrap();
        prop_assert_eq!(chow(&p, ChowMethod::Truncation).unwrap(), h.clone());
        prop_assert_eq!(chow(&p, ChowMethod::Ncd).unwrap(), h.clone());
        prop_assert!(h.is_palindromic(p.rank() - 1));
        let g = augmented_chow(&p, AugmentedMethod::SumDefinition).unwrap();
        prop_assert_eq!(augmented_chow(&p, AugmentedMethod::AugmentThenChow).unwrap(), g.clone());
        prop_assert_eq!(augmented_chow(&p.dual(), AugmentedMethod::SumDefinition).unwrap(), g);
    }
}
