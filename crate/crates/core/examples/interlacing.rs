//! Interlacing certificates: D_{n,k} against its reverse, and real-rooted
//! linear combinations of an interlacing pair.

use chowlab::certify::{check_obreshkoff_combination, interlaces};
use chowlab::sequences::d_nk;
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> anyhow::Result<()> {
    let (n, k) = (7, 4);
    let f = d_nk(n, k)?;
    let g = f.reverse(k)?;
    let cert = interlaces(&f, &g)?;
    println!("f = D_{{{n},{k}}} = {f}");
    println!("g = t^{k} f(1/t) = {g}");
    println!("f interlaces g: {}", cert.verdict);
    println!("pattern: {}", cert.pattern);
    for r in &cert.f_roots {
        println!("  alpha in {}", r.enclosure);
    }
    for r in &cert.g_roots {
        println!("  beta in {}", r.enclosure);
    }

    let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    for (lambda, mu) in [(q(1, 1), q(-1, 1)), (q(-2, 3), q(5, 1)), (q(0, 1), q(1, 1))] {
        let c = check_obreshkoff_combination(&f, &g, &lambda, &mu)?;
        println!("{mu} f + {lambda} g = {}: real-rooted {}", c.input, c.verdict);
    }
    Ok(())
}
