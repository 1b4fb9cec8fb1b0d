//! Building, transforming and serializing posets.

use chowlab::poset::{build_boolean, random_level_poset};
use chowlab::{GradedPoset, IntervalHandle};
use num_rational::Ratio;

fn describe(name: &str, p: &GradedPoset) {
    println!("{name:<14} elements {:>3}  rank {}  levels {:?}  family {:?}", p.len(), p.rank(), p.level_sizes(), p.family());
}

fn main() -> anyhow::Result<()> {
    let b = build_boolean(4)?;
    describe("B_4", &b);
    describe("tau(B_4)", &b.truncate()?);
    describe("sigma(B_4)", &b.dual_truncate()?);
    describe("aug(B_4)", &b.augment());
    describe("B_4*", &b.dual());
    let x = b.level(1)[0];
    describe("[x, 1]", &b.interval(IntervalHandle { lower: x, upper: b.top() })?);

    let r = random_level_poset(&[2, 3], Ratio::new(3, 10), 1)?;
    let json = r.to_json();
    println!("{json}");
    let back = GradedPoset::from_json(&json)?;
    assert_eq!(back, r);

    let bad = r#"{"elements": 3, "rank": [0, 0, 1], "covers": [[0, 2], [1, 2]]}"#;
    println!("rejected: {}", GradedPoset::from_json(bad).unwrap_err());
    Ok(())
}
