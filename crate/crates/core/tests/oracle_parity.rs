mod common;

use chowlab::engine::IntervalTable;
use chowlab::oracle::{chow_matrix_inverse, derangement_bruteforce, eulerian_bruteforce, mobius_hall, permutations};
use chowlab::poset::build_boolean;
use chowlab::sequences::{derangement, eulerian};

#[test]
fn permutation_sums_match_sequences() {
    for n in 0..=8 {
        assert_eq!(eulerian_bruteforce(n).unwrap(), eulerian(n), "A_{n}");
        assert_eq!(derangement_bruteforce(n).unwrap(), derangement(n), "d_{n}");
    }
}

#[test]
fn permutation_count_and_derangement_count() {
    let perms = permutations(6).unwrap();
    assert_eq!(perms.len(), 720);
    assert_eq!(perms.iter().filter(|p| p.is_derangement).count(), 265);
    // descents and ascents are equidistributed
    let des: usize = perms.iter().map(|p| p.descents).sum();
    assert_eq!(des * 2, 720 * 5);
}

#[test]
fn hall_mobius_matches_recursive_mobius() {
    let mut intervals = 0;
    for inst in common::builtin_corpus().iter().chain(common::random_corpus(40).iter()) {
        let p = &inst.poset;
        if p.len() > chowlab::oracle::MAX_MATRIX_ELEMENTS {
            continue;
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.leq(x, y) {
                    intervals += 1;
                    assert_eq!(mobius_hall(p, x, y).unwrap(), p.mobius(x, y).unwrap(), "{} [{x},{y}]", inst.name);
                }
            }
        }
    }
    assert!(intervals > 10_000);
}

#[test]
fn hall_mobius_on_largest_boolean_interval() {
    let b7 = build_boolean(7).unwrap();
    assert_eq!(mobius_hall(&b7, 0, b7.top()).unwrap(), -1);
}

#[test]
fn matrix_inverse_matches_engine_on_random_posets() {
    for inst in common::random_corpus(60) {
        let p = &inst.poset;
        let oracle = chow_matrix_inverse(p).unwrap();
        let mut table = IntervalTable::new(p);
        let comparable = (0..p.len()).flat_map(|x| (0..p.len()).map(move |y| (x, y))).filter(|&(x, y)| p.leq(x, y));
        assert_eq!(comparable.clone().count(), oracle.len());
        for (x, y) in comparable {
            assert_eq!(oracle.get(x, y), Some(&table.chow(x, y).unwrap()), "{} [{x},{y}]", inst.name);
        }
    }
}
