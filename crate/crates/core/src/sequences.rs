//! Eulerian and derangement polynomials, the linear maps they induce, and
//! closed-form recursions for the uniform and maximal ranked families.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polynomial::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("{op}: parameters (n={n}, k={k}) out of range")]
    OutOfRange { op: &'static str, n: usize, k: usize },
    #[error("maxrank_chow: n={n} exceeds the {len} level sizes given")]
    LevelsTooShort { n: usize, len: usize },
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Memo of `A_n` and `d_n`, grown on demand.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    eulerian: Vec<IntPolynomial>,
    derangement: Vec<IntPolynomial>,
}

impl Default for SequenceCache {
    fn default() -> Self {
        Self::new()
    }
}

impl SequenceCache {
    pub fn new() -> Self {
        SequenceCache { eulerian: vec![IntPolynomial::one()], derangement: vec![IntPolynomial::one()] }
    }

    /// `A_n(t)` from `A_n = (1 + (n-1)t) A_{n-1} + t(1-t) A'_{n-1}`.
    pub fn eulerian(&mut self, n: usize) -> &IntPolynomial {
        let t_one_minus_t = IntPolynomial::from_i64s(&[0, 1, -1]);
        while self.eulerian.len() <= n {
            let m = self.eulerian.len();
            let prev = &self.eulerian[m - 1];
            let factor = IntPolynomial::new(vec![BigInt::one(), BigInt::from(m - 1)]);
            let next = &(&factor * prev) + &(&t_one_minus_t * &prev.derivative());
            self.eulerian.push(next);
        }
        &self.eulerian[n]
    }

    /// `d_n(t) = Σ_k (-1)^(n-k) C(n,k) A_k(t)`.
    pub fn derangement(&mut self, n: usize) -> &IntPolynomial {
        self.eulerian(n);
        while self.derangement.len() <= n {
            let m = self.derangement.len();
            let next: IntPolynomial = (0..=m)
                .map(|k| {
                    let c = binomial(m, k);
                    let c = if (m - k) % 2 == 1 { -c } else { c };
                    self.eulerian[k].scale(&c)
                })
                .sum();
            self.derangement.push(next);
        }
        &self.derangement[n]
    }
}

pub fn eulerian(n: usize) -> IntPolynomial {
    SequenceCache::new().eulerian(n).clone()
}

pub fn derangement(n: usize) -> IntPolynomial {
    SequenceCache::new().derangement(n).clone()
}

/// Linear map `t^j ↦ d_j(t)`.
pub fn deranged_map(p: &IntPolynomial) -> IntPolynomial {
    let mut cache = SequenceCache::new();
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| cache.derangement(j).scale(c))
        .sum()
}

/// Linear map `t^j ↦ A_j(t)`.
pub fn eulerian_transform(p: &IntPolynomial) -> IntPolynomial {
    let mut cache = SequenceCache::new();
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| cache.eulerian(j).scale(c))
        .sum()
}

/// `Σ_{j=0}^{k} C(n,j) t^j`.
pub fn binomial_partial_sum(n: usize, k: usize) -> IntPolynomial {
    IntPolynomial::new((0..=k).map(|j| binomial(n, j)).collect())
}

/// `D_{n,k}(t) = Σ_{j=0}^{k} C(n,j) d_j(t)`, for `0 <= k <= n`.
pub fn d_nk(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    if k > n {
        return Err(SequenceError::OutOfRange { op: "D_nk", n, k });
    }
    Ok(deranged_map(&binomial_partial_sum(n, k)))
}

/// `A_{n,k}(t) = Σ_{j=0}^{k-1} C(n,j) A_j(t)`, for `1 <= k <= n`, with
/// `A_j` the descent polynomial (`A_0 = A_1 = 1`).
pub fn a_nk(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    if k < 1 || k > n {
        return Err(SequenceError::OutOfRange { op: "A_nk", n, k });
    }
    Ok(eulerian_transform(&binomial_partial_sum(n, k - 1)))
}

/// `1 + t Σ_{j=1}^{k-1} C(n,j) A_j(t)`: the aggregate that drives the
/// augmented Chow recursion of uniform lattices. It is `A_{n,k}` with every
/// `A_j` (`j >= 1`) replaced by `t A_j`, the descent polynomial counted
/// with one extra power of `t`.
pub fn augmented_kernel(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    if k < 1 || k > n {
        return Err(SequenceError::OutOfRange { op: "augmented_kernel", n, k });
    }
    let mut cache = SequenceCache::new();
    let tail: IntPolynomial = (1..k).map(|j| cache.eulerian(j).scale(&binomial(n, j))).sum();
    Ok(&IntPolynomial::one() + &tail.shift(1))
}

/// `f_{n,k} = H_{U_{k+1,n}}` by `f_{n,k} = t f_{n,k-1} + D_{n,k}`,
/// `f_{n,0} = 1`; needs `0 <= k <= n - 1`.
pub fn uniform_chow(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    if k + 1 > n {
        return Err(SequenceError::OutOfRange { op: "uniform_chow", n, k });
    }
    let mut f = IntPolynomial::one();
    for j in 1..=k {
        f = &f.shift(1) + &d_nk(n, j)?;
    }
    Ok(f)
}

fn aug_recursion(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    let mut g = IntPolynomial::one();
    for j in 1..=k {
        g = &g.shift(1) + &augmented_kernel(n, j)?;
    }
    Ok(g)
}

/// `g_{n,k} = G_{U_{k,n}}` by `g_{n,k} = t g_{n,k-1} + K_{n,k}` from
/// `g_{n,0} = 1`, where `K` is [`augmented_kernel`]; needs `1 <= k <= n`.
pub fn uniform_aug_chow(n: usize, k: usize) -> Result<IntPolynomial, SequenceError> {
    if k < 1 || k > n {
        return Err(SequenceError::OutOfRange { op: "uniform_aug_chow", n, k });
    }
    aug_recursion(n, k)
}

/// `H` of the maximal ranked poset with level sizes `c[..n]`:
/// `f_m = (1+t) f_{m-1} + t (c_m - 1) f_{m-2}`, `f_0 = 1`, `f_1 = 1 + t`.
pub fn maxrank_chow(c: &[usize], n: usize) -> Result<IntPolynomial, SequenceError> {
    if n > c.len() {
        return Err(SequenceError::LevelsTooShort { n, len: c.len() });
    }
    let one_plus_t = IntPolynomial::from_i64s(&[1, 1]);
    let (mut prev, mut cur) = (IntPolynomial::one(), one_plus_t.clone());
    if n == 0 {
        return Ok(prev);
    }
    for &cm in &c[1..n] {
        let next = &(&one_plus_t * &cur) + &prev.shift(1).scale(&BigInt::from(cm as i64 - 1));
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Both sides of `(t-1) f_{n,k-1}(t) = t^k D_{n,k}(1/t) - D_{n,k}(t)`,
/// computed separately; needs `1 <= k <= n - 1`.
pub fn uniform_identity_gap(n: usize, k: usize) -> Result<(IntPolynomial, IntPolynomial), SequenceError> {
    if k < 1 || k + 1 > n {
        return Err(SequenceError::OutOfRange { op: "uniform_identity_gap", n, k });
    }
    let t_minus_one = IntPolynomial::from_i64s(&[-1, 1]);
    let left = &t_minus_one * &uniform_chow(n, k - 1)?;
    let d = d_nk(n, k)?;
    let right = &d.reverse(k).expect("deg D_{n,k} < k") - &d;
    Ok((left, right))
}

/// Both sides of `(t-1) g_{n,k-1}(t) = t^k K_{n,k}(1/t) - K_{n,k}(t)` for the
/// augmented kernel `K`; needs `1 <= k <= n`.
pub fn augmented_identity_gap(n: usize, k: usize) -> Result<(IntPolynomial, IntPolynomial), SequenceError> {
    if k < 1 || k > n {
        return Err(SequenceError::OutOfRange { op: "augmented_identity_gap", n, k });
    }
    let t_minus_one = IntPolynomial::from_i64s(&[-1, 1]);
    let left = &t_minus_one * &aug_recursion(n, k - 1)?;
    let a = augmented_kernel(n, k)?;
    let right = &a.reverse(k).expect("deg K_{n,k} < k") - &a;
    Ok((left, right))
}
