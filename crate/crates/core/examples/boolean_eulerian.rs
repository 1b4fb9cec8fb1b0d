//! Chow polynomials of Boolean lattices are Eulerian polynomials. Every
//! method is run and compared, and the gamma vector is printed.

use chowlab::engine::{chow, ChowMethod};
use chowlab::poset::build_boolean;
use chowlab::sequences::eulerian;

fn main() -> anyhow::Result<()> {
    for n in 1..=8 {
        let b = build_boolean(n)?;
        let h = chow(&b, ChowMethod::Definition)?;
        for method in ChowMethod::ALL {
            assert_eq!(chow(&b, method)?, h, "{method}");
        }
        assert_eq!(h, eulerian(n));
        let gamma = h.gamma_vector(n - 1)?;
        let gamma: Vec<String> = gamma.iter().map(ToString::to_string).collect();
        println!("B_{n}: {} elements, H = {h}, gamma = [{}]", b.len(), gamma.join(", "));
    }
    Ok(())
}
