//! Maximal ranked posets: the three-term recursion against the engine, and
//! the interlacing chain f_1 ≺ f_2 ≺ ...

use chowlab::certify::interlaces;
use chowlab::engine::{chow, ChowMethod};
use chowlab::poset::build_max_ranked;
use chowlab::sequences::maxrank_chow;

fn main() -> anyhow::Result<()> {
    let c = [3, 2, 4, 3, 1, 2];
    for m in 1..=c.len() {
        let f = maxrank_chow(&c, m)?;
        let engine = chow(&build_max_ranked(&c[..m])?, ChowMethod::Definition)?;
        assert_eq!(f, engine);
        let link = if m < c.len() { interlaces(&f, &maxrank_chow(&c, m + 1)?)?.verdict.to_string() } else { "-".into() };
        println!("f_{m} = {f}    (f_{m} ≺ f_{}: {link})", m + 1);
    }
    println!("c = (3,3): {}", maxrank_chow(&[3, 3], 2)?);
    Ok(())
}
