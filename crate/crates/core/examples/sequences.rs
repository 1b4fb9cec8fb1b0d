//! Eulerian and derangement tables, binomial sums and their h-expansions.

use chowlab::sequences::{binomial, binomial_partial_sum, d_nk, derangement, eulerian, uniform_chow, uniform_identity_gap};

fn main() -> anyhow::Result<()> {
    for n in 0..=7 {
        println!("A_{n} = {:<40} d_{n} = {}", eulerian(n).to_string(), derangement(n));
    }
    let n = 6;
    for k in 1..n {
        let d = d_nk(n, k)?;
        let (lhs, rhs) = uniform_identity_gap(n, k)?;
        assert_eq!(lhs, rhs);
        let h = binomial_partial_sum(n, k).h_expansion(k)?;
        let expected: Vec<_> = (0..=k).map(|i| binomial(n - k + i - 1, i)).collect();
        assert_eq!(h, expected);
        println!("k={k}: D = {d}, H_U(k+1,{n}) = {}, h = {h:?}", uniform_chow(n, k)?);
    }
    Ok(())
}
