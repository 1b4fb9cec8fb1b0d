//! Slow brute-force references. Nothing here calls into the fast paths:
//! order relations, Möbius values and polynomial arithmetic are recomputed
//! from the cover relation with plain coefficient vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polynomial::IntPolynomial;
use crate::poset::GradedPoset;

pub const MAX_PERMUTATION_N: usize = 9;
pub const DEFAULT_CHAIN_CAP: u64 = 10_000_000;
pub const MAX_MATRIX_ELEMENTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("more than {cap} chains in the interval")]
    ChainCap { cap: u64 },
    #[error("poset has {len} elements, the matrix oracle allows {cap}")]
    SizeCap { len: usize, cap: usize },
    #[error("elements {0} and {1} do not form an interval")]
    NotInterval(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermStatistic {
    pub permutation: Vec<usize>,
    pub descents: usize,
    pub excedances: usize,
    pub is_derangement: bool,
}

impl PermStatistic {
    /// Statistics of a permutation of `1..=n` in one-line notation.
    pub fn of(permutation: &[usize]) -> Self {
        let descents = permutation.windows(2).filter(|w| w[0] > w[1]).count();
        let excedances = permutation.iter().enumerate().filter(|&(i, &v)| v > i + 1).count();
        let is_derangement = permutation.iter().enumerate().all(|(i, &v)| v != i + 1);
        PermStatistic { permutation: permutation.to_vec(), descents, excedances, is_derangement }
    }
}

/// Lexicographic successor in place; `false` once the last permutation is
/// reached.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// All permutations of `1..=n` with their statistics.
pub fn permutations(n: usize) -> Result<Vec<PermStatistic>, OracleError> {
    if n > MAX_PERMUTATION_N {
        return Err(OracleError::TooLarge { n, max: MAX_PERMUTATION_N });
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = vec![PermStatistic::of(&a)];
    while next_permutation(&mut a) {
        out.push(PermStatistic::of(&a));
    }
    Ok(out)
}

fn tally(stats: impl Iterator<Item = usize>) -> IntPolynomial {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for s in stats {
        if coeffs.len() <= s {
            coeffs.resize(s + 1, BigInt::zero());
        }
        coeffs[s] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// `Σ_{π ∈ S_n} t^{des(π)}` by enumeration.
pub fn eulerian_bruteforce(n: usize) -> Result<IntPolynomial, OracleError> {
    Ok(tally(permutations(n)?.iter().map(|p| p.descents)))
}

/// `Σ t^{exc(π)}` over fixed-point-free `π ∈ S_n` by enumeration.
pub fn derangement_bruteforce(n: usize) -> Result<IntPolynomial, OracleError> {
    Ok(tally(permutations(n)?.iter().filter(|p| p.is_derangement).map(|p| p.excedances)))
}

/// Reflexive order relation as a dense boolean matrix, by depth-first search
/// over upper covers.
fn order_matrix(p: &GradedPoset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut leq = vec![vec![false; n]; n];
    for (x, row) in leq.iter_mut().enumerate() {
        let mut stack = vec![x];
        while let Some(z) = stack.pop() {
            if !row[z] {
                row[z] = true;
                stack.extend_from_slice(p.upper_covers(z));
            }
        }
    }
    leq
}

/// `μ(x, y)` by Philip Hall's theorem: the alternating count of chains
/// `x = z_0 < ... < z_k = y`.
pub fn mobius_hall(p: &GradedPoset, x: usize, y: usize) -> Result<i64, OracleError> {
    mobius_hall_with_cap(p, x, y, DEFAULT_CHAIN_CAP)
}

pub fn mobius_hall_with_cap(p: &GradedPoset, x: usize, y: usize, cap: u64) -> Result<i64, OracleError> {
    let n = p.len();
    if x >= n || y >= n {
        return Err(OracleError::NotInterval(x, y));
    }
    let leq = order_matrix(p);
    if !leq[x][y] {
        return Err(OracleError::NotInterval(x, y));
    }
    if x == y {
        return Ok(1);
    }
    let inner: Vec<usize> = (0..n).filter(|&z| z != x && leq[x][z] && leq[z][y]).collect();
    // (element, chain length so far)
    let mut stack = vec![(x, 0usize)];
    let mut chains = 0u64;
    let mut total = 0i64;
    while let Some((z, len)) = stack.pop() {
        for &w in &inner {
            if w != z && leq[z][w] {
                if w == y {
                    chains += 1;
                    if chains > cap {
                        return Err(OracleError::ChainCap { cap });
                    }
                    total += if (len + 1) % 2 == 0 { 1 } else { -1 };
                } else {
                    stack.push((w, len + 1));
                }
            }
        }
    }
    Ok(total)
}

fn add_into(acc: &mut Vec<BigInt>, other: &[BigInt], sign: i64) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        *a += b * sign;
    }
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Divides by `t - 1` from the top coefficient down; `None` on a nonzero
/// remainder.
fn div_by_t_minus_one(c: &[BigInt]) -> Option<Vec<BigInt>> {
    if c.is_empty() {
        return Some(Vec::new());
    }
    let mut q = vec![BigInt::zero(); c.len() - 1];
    let mut carry = BigInt::zero();
    for i in (1..c.len()).rev() {
        carry += &c[i];
        q[i - 1] = carry.clone();
    }
    (carry + &c[0]).is_zero().then_some(q)
}

/// `H_{[x,y]}` for every interval, from the literal matrix inverse of `-χ̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTable {
    entries: HashMap<(usize, usize), IntPolynomial>,
}

impl OracleTable {
    pub fn get(&self, x: usize, y: usize) -> Option<&IntPolynomial> {
        self.entries.get(&(x, y))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &IntPolynomial)> {
        self.entries.iter()
    }
}

/// Builds the upper unitriangular matrix `M = -χ̄` over a linear extension
/// and inverts it by back-substitution: `N[x][y] = -Σ_{x<z<=y} M[x][z] N[z][y]`.
pub fn chow_matrix_inverse(p: &GradedPoset) -> Result<OracleTable, OracleError> {
    let n = p.len();
    if n > MAX_MATRIX_ELEMENTS {
        return Err(OracleError::SizeCap { len: n, cap: MAX_MATRIX_ELEMENTS });
    }
    let leq = order_matrix(p);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&z| (p.rank_of(z), z));

    // Möbius by the right-hand recursion μ(x,y) = -Σ_{x<z<=y} μ(z,y).
    let mut mu = vec![vec![0i64; n]; n];
    for &y in &order {
        for &x in order.iter().rev() {
            if !leq[x][y] {
                continue;
            }
            mu[x][y] = if x == y {
                1
            } else {
                -(0..n).filter(|&z| z != x && leq[x][z] && leq[z][y]).map(|z| mu[z][y]).sum::<i64>()
            };
        }
    }

    let mut m: HashMap<(usize, usize), Vec<BigInt>> = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            if !leq[x][y] {
                continue;
            }
            let entry = if x == y {
                vec![BigInt::one()]
            } else {
                let ry = p.rank_of(y);
                let mut chi = vec![BigInt::zero(); ry - p.rank_of(x) + 1];
                for z in (0..n).filter(|&z| leq[x][z] && leq[z][y]) {
                    chi[ry - p.rank_of(z)] += mu[x][z];
                }
                let reduced = div_by_t_minus_one(&chi).expect("χ(1) = 0 on nontrivial intervals");
                reduced.into_iter().map(|c| -c).collect()
            };
            m.insert((x, y), entry);
        }
    }

    let mut inv: HashMap<(usize, usize), Vec<BigInt>> = HashMap::new();
    for &y in &order {
        for &x in order.iter().rev() {
            if !leq[x][y] {
                continue;
            }
            let entry = if x == y {
                vec![BigInt::one()]
            } else {
                let mut acc = Vec::new();
                for z in (0..n).filter(|&z| z != x && leq[x][z] && leq[z][y]) {
                    add_into(&mut acc, &mul(&m[&(x, z)], &inv[&(z, y)]), -1);
                }
                acc
            };
            inv.insert((x, y), entry);
        }
    }
    Ok(OracleTable { entries: inv.into_iter().map(|(k, v)| (k, IntPolynomial::new(v))).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_boolean, build_chain, build_uniform};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn permutation_statistics() {
        let s = PermStatistic::of(&[2, 1, 3]);
        assert_eq!((s.descents, s.excedances, s.is_derangement), (1, 1, false));
        let s = PermStatistic::of(&[2, 3, 1]);
        assert_eq!((s.descents, s.excedances, s.is_derangement), (1, 2, true));
        assert_eq!(permutations(4).unwrap().len(), 24);
        assert_eq!(permutations(0).unwrap().len(), 1);
        assert!(permutations(10).is_err());
    }

    #[test]
    fn eulerian_and_derangement_examples() {
        assert_eq!(eulerian_bruteforce(1).unwrap(), p(&[1]));
        assert_eq!(eulerian_bruteforce(2).unwrap(), p(&[1, 1]));
        assert_eq!(eulerian_bruteforce(3).unwrap(), p(&[1, 4, 1]));
        assert_eq!(derangement_bruteforce(1).unwrap(), p(&[]));
        assert_eq!(derangement_bruteforce(2).unwrap(), p(&[0, 1]));
        assert_eq!(derangement_bruteforce(4).unwrap(), p(&[0, 1, 7, 1]));
        assert_eq!(eulerian_bruteforce(10), Err(OracleError::TooLarge { n: 10, max: 9 }));
    }

    #[test]
    fn hall_examples() {
        let b3 = build_boolean(3).unwrap();
        assert_eq!(mobius_hall(&b3, 2, 2).unwrap(), 1);
        assert_eq!(mobius_hall(&b3, 0, b3.top()).unwrap(), -1);
        let u23 = build_uniform(2, 3).unwrap();
        assert_eq!(mobius_hall(&u23, 0, u23.top()).unwrap(), 2);
        assert_eq!(mobius_hall(&b3, 1, 2), Err(OracleError::NotInterval(1, 2)));
        assert_eq!(mobius_hall_with_cap(&b3, 0, b3.top(), 5), Err(OracleError::ChainCap { cap: 5 }));
    }

    #[test]
    fn matrix_inverse_examples() {
        let one = build_chain(0);
        assert_eq!(chow_matrix_inverse(&one).unwrap().get(0, 0), Some(&p(&[1])));
        let b3 = build_boolean(3).unwrap();
        let table = chow_matrix_inverse(&b3).unwrap();
        assert_eq!(table.get(0, b3.top()), Some(&p(&[1, 4, 1])));
        assert!((0..b3.len()).all(|x| table.get(x, x) == Some(&p(&[1]))));
        assert_eq!(table.len(), 27);
        let big = build_boolean(8).unwrap();
        assert_eq!(chow_matrix_inverse(&big), Err(OracleError::SizeCap { len: 256, cap: 200 }));
    }

    #[test]
    fn division_helper() {
        let c: Vec<BigInt> = [1, -2, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(div_by_t_minus_one(&c), Some(vec![BigInt::from(-1), BigInt::from(1)]));
        assert_eq!(div_by_t_minus_one(&[BigInt::from(1), BigInt::from(1)]), None);
    }
}
