use chowlab::certify::{check_obreshkoff_combination, interlaces, is_real_rooted, isolate_roots, SturmChain};
use chowlab::engine::{augmented_chow, chow, AugmentedMethod, ChowMethod};
use chowlab::poset::build_uniform;
use chowlab::sequences::{d_nk, maxrank_chow, uniform_aug_chow};
use chowlab::IntPolynomial;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_roots(roots: &[i64]) -> IntPolynomial {
    roots.iter().fold(IntPolynomial::one(), |acc, &r| &acc * &IntPolynomial::from_i64s(&[-r, 1]))
}

#[test]
fn uniform_chow_and_augmented_are_real_rooted() {
    for n in 2..=10 {
        for k in 2..=n {
            let h = chow(&build_uniform(k, n).unwrap(), ChowMethod::ClosedForm).unwrap();
            assert!(is_real_rooted(&h).unwrap().verdict, "H U_({k},{n})");
        }
        for k in 1..=n {
            assert!(is_real_rooted(&uniform_aug_chow(n, k).unwrap()).unwrap().verdict, "G U_({k},{n})");
        }
    }
}

#[test]
fn duals_of_uniform_lattices_are_real_rooted() {
    for n in 1..=8 {
        for k in 1..=n {
            let d = build_uniform(k, n).unwrap().dual();
            let h = chow(&d, ChowMethod::Definition).unwrap();
            let g = augmented_chow(&d, AugmentedMethod::SumDefinition).unwrap();
            assert!(is_real_rooted(&h).unwrap().verdict && is_real_rooted(&g).unwrap().verdict, "U_({k},{n})*");
        }
    }
}

#[test]
fn derangement_sums_interlace_their_reverse() {
    for n in 2..=10 {
        for k in 1..n {
            let d = d_nk(n, k).unwrap();
            assert!(interlaces(&d, &d.reverse(k).unwrap()).unwrap().verdict, "D_({n},{k})");
        }
    }
}

#[test]
fn maxrank_chains_interlace_and_form_a_cone() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rng.gen_range(2..=8);
        let c: Vec<usize> = (0..n + 1).map(|_| rng.gen_range(1..=5)).collect();
        for m in 1..=n {
            let (f, g) = (maxrank_chow(&c, m).unwrap(), maxrank_chow(&c, m + 1).unwrap());
            assert!(interlaces(&f, &g).unwrap().verdict, "{c:?} m={m}");
        }
        // h ≺ f and h ≺ g imply h ≺ f + g; two chains sharing f_{m-1}
        let m = rng.gen_range(1..n);
        let mut c2 = c.clone();
        c2[m] = rng.gen_range(1..=5);
        let h = maxrank_chow(&c, m).unwrap();
        let (f, g) = (maxrank_chow(&c, m + 1).unwrap(), maxrank_chow(&c2, m + 1).unwrap());
        assert!(interlaces(&h, &f).unwrap().verdict && interlaces(&h, &g).unwrap().verdict);
        assert!(interlaces(&h, &(&f + &g)).unwrap().verdict, "cone {c:?} {c2:?} m={m}");
    }
}

#[test]
fn obreshkoff_grid() {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let pairs = [
        (d_nk(6, 3).unwrap(), d_nk(6, 3).unwrap().reverse(3).unwrap()),
        (maxrank_chow(&[2, 3, 1, 4], 3).unwrap(), maxrank_chow(&[2, 3, 1, 4], 4).unwrap()),
        (IntPolynomial::from_i64s(&[1, 1]), IntPolynomial::from_i64s(&[1, 4, 1])),
    ];
    for (f, g) in &pairs {
        assert!(interlaces(f, g).unwrap().verdict);
        for l in -4..=4 {
            for m in -4..=4 {
                if l == 0 && m == 0 {
                    continue;
                }
                let c = check_obreshkoff_combination(f, g, &q(l, 3), &q(m, 2)).unwrap();
                assert!(c.verdict, "{l}/3 g + {m}/2 f with f = {f}");
            }
        }
    }
}

/// Durand–Kerner iteration; returns `None` if it fails to settle.
fn float_roots(c: &[f64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-13 {
            return Some(z);
        }
    }
    None
}

#[test]
fn sturm_agrees_with_float_root_finder() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut compared = 0;
    for _ in 0..500 {
        let deg = rng.gen_range(1..=10);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        // mix in products of linear factors so real-rooted cases occur
        let p = if rng.gen_bool(0.4) {
            let roots: Vec<i64> = (0..deg).map(|_| rng.gen_range(-20..=20)).collect();
            from_roots(&roots)
        } else {
            IntPolynomial::from_i64s(&coeffs)
        };
        let Some(roots) = float_roots(&p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect::<Vec<_>>()) else {
            continue;
        };
        // only compare when the float roots are well separated from each
        // other and clearly on or off the real axis
        let sep = roots
            .iter()
            .enumerate()
            .flat_map(|(i, a)| roots[i + 1..].iter().map(move |b| (a - b).norm()))
            .fold(f64::INFINITY, f64::min);
        let ambiguous = roots.iter().any(|z| z.im.abs() > 1e-9 && z.im.abs() < 1e-4);
        if sep < 1e-3 || ambiguous {
            continue;
        }
        let real = roots.iter().filter(|z| z.im.abs() <= 1e-9).count();
        let cert = is_real_rooted(&p).unwrap();
        assert_eq!(cert.real_root_count, real, "{p}");
        assert_eq!(cert.verdict, real == roots.len(), "{p}");
        compared += 1;
    }
    assert!(compared > 300, "only {compared} comparable cases");
}

proptest! {
    #[test]
    fn products_of_linear_factors_are_real_rooted(roots in prop::collection::vec(-30i64..30, 0..9)) {
        let p = from_roots(&roots);
        let cert = is_real_rooted(&p).unwrap();
        prop_assert!(cert.verdict);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(cert.real_root_count, distinct.len());
        let iso = isolate_roots(&p).unwrap();
        prop_assert_eq!(iso.len(), distinct.len());
        for (e, r) in iso.iter().zip(&distinct) {
            let r = BigRational::from_integer(BigInt::from(*r));
            prop_assert!(e.lo() <= &r && &r <= e.hi());
        }
    }

    #[test]
    fn an_irreducible_quadratic_breaks_real_rootedness(roots in prop::collection::vec(-30i64..30, 0..7), a in 1i64..20) {
        let p = &from_roots(&roots) * &IntPolynomial::from_i64s(&[a, 0, 1]);
        prop_assert!(!is_real_rooted(&p).unwrap().verdict);
    }

    #[test]
    fn interleaved_integer_roots_interlace(mut base in prop::collection::btree_set(-40i64..40, 2..8)) {
        // β's at even positions, α's at odd ones, from the top down
        let sorted: Vec<i64> = std::mem::take(&mut base).into_iter().rev().collect();
        let beta: Vec<i64> = sorted.iter().step_by(2).copied().collect();
        let alpha: Vec<i64> = sorted.iter().skip(1).step_by(2).copied().collect();
        let (f, g) = (from_roots(&alpha), from_roots(&beta));
        prop_assert!(interlaces(&f, &g).unwrap().verdict);
        if alpha.len() == beta.len() {
            prop_assert!(!interlaces(&g, &f).unwrap().verdict);
        }
    }

    #[test]
    fn sturm_counts_on_subintervals_add_up(roots in prop::collection::vec(-15i64..15, 1..8), cut in -16i64..16) {
        let p = from_roots(&roots);
        let chain = SturmChain::new(&p).unwrap();
        let lo = BigRational::from_integer(BigInt::from(-100));
        let hi = BigRational::from_integer(BigInt::from(100));
        let mid = BigRational::new(BigInt::from(2 * cut + 1), BigInt::from(2));
        prop_assert_eq!(chain.count_between(&lo, &mid) + chain.count_between(&mid, &hi), chain.count_real());
    }
}
