//! Checks every structural identity on a seeded random poset.

use chowlab::engine::{verify_identity, Identity};
use chowlab::poset::random_level_poset;
use num_rational::Ratio;

fn main() -> anyhow::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(11);
    let p = random_level_poset(&[3, 4, 4, 2], Ratio::new(1, 2), seed)?;
    println!("random poset: {} elements, rank {}, levels {:?}", p.len(), p.rank(), p.level_sizes());
    for id in Identity::ALL {
        let r = verify_identity(&p, id)?;
        println!("{:<20} {}  {}", id.name(), if r.pass { "PASS" } else { "FAIL" }, r.lhs);
    }
    Ok(())
}
