#![allow(dead_code)]

use chowlab::poset::{build_boolean, build_max_ranked, build_uniform, random_level_poset};
use chowlab::GradedPoset;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: String,
    pub poset: GradedPoset,
    pub builtin: bool,
}

fn builtin(name: String, poset: GradedPoset) -> Instance {
    Instance { name, poset, builtin: true }
}

/// Level-size vectors for maximal ranked posets of rank at most 6.
pub fn maxrank_levels() -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for len in 1..=3 {
        let mut c = vec![1; len];
        loop {
            out.push(c.clone());
            let Some(i) = c.iter().rposition(|&x| x < 3) else { break };
            c[i] += 1;
            c[i + 1..].iter_mut().for_each(|x| *x = 1);
        }
    }
    out.extend([vec![2; 4], vec![3; 4], vec![1, 4, 1, 4], vec![2, 3, 2, 3, 2], vec![1, 2, 3, 2, 1], vec![3; 5]]);
    out
}

pub fn builtin_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(builtin(format!("B_{n}"), build_boolean(n).unwrap()));
    }
    for n in 2..=7 {
        for k in 1..n {
            out.push(builtin(format!("U_{k},{n}"), build_uniform(k, n).unwrap()));
        }
    }
    for c in maxrank_levels() {
        out.push(builtin(format!("maxrank{c:?}"), build_max_ranked(&c).unwrap()));
    }
    out
}

pub const DENSITIES: [(u64, u64); 3] = [(3, 10), (6, 10), (1, 1)];

/// Seeded random level posets: rank 2..=6, level sizes 1..=5, cycling
/// through the three densities.
pub fn random_corpus(count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|i| {
            let rank = rng.gen_range(2..=6);
            let levels: Vec<usize> = (0..rank - 1).map(|_| rng.gen_range(1..=5)).collect();
            let (num, den) = DENSITIES[i % 3];
            let seed = rng.gen::<u64>();
            let poset = random_level_poset(&levels, Ratio::new(num, den), seed).unwrap();
            Instance { name: format!("random{levels:?}@{num}/{den}#{seed}"), poset, builtin: false }
        })
        .collect()
}

pub fn corpus() -> Vec<Instance> {
    let mut out = builtin_corpus();
    out.extend(random_corpus(200));
    out
}
