//! Brute-force references next to the fast paths.

use chowlab::engine::{chow, ChowMethod};
use chowlab::oracle::{chow_matrix_inverse, derangement_bruteforce, eulerian_bruteforce, mobius_hall, permutations};
use chowlab::poset::build_uniform;
use chowlab::sequences::{derangement, eulerian};

fn main() -> anyhow::Result<()> {
    for s in permutations(3)? {
        println!("{:?}: des {}, exc {}, derangement {}", s.permutation, s.descents, s.excedances, s.is_derangement);
    }
    for n in 1..=7 {
        assert_eq!(eulerian_bruteforce(n)?, eulerian(n));
        assert_eq!(derangement_bruteforce(n)?, derangement(n));
    }
    println!("permutation enumeration matches the recurrences for n <= 7");

    let u = build_uniform(3, 5)?;
    let (bottom, top) = (u.bottom(), u.top());
    println!("U_{{3,5}}: mu(0,1) by chains = {}, by recursion = {}", mobius_hall(&u, bottom, top)?, u.mobius(bottom, top)?);
    let table = chow_matrix_inverse(&u)?;
    println!(
        "U_{{3,5}}: H by matrix inverse = {}, by definition = {}",
        table.get(bottom, top).expect("interval"),
        chow(&u, ChowMethod::Definition)?
    );
    Ok(())
}
