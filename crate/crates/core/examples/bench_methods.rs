//! Wall time and memo sizes of the four methods on Boolean lattices, with
//! and without the rank shortcut.

use std::time::Instant;

use chowlab::engine::{chow_with_stats, ChowMethod, EngineConfig};
use chowlab::poset::build_boolean;

fn main() -> anyhow::Result<()> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(9);
    println!("n,method,shortcuts,wall_ms,memo_entries,coeff_bits_peak");
    for n in 2..=max_n {
        let b = build_boolean(n)?;
        for method in ChowMethod::ALL {
            for shortcuts in [false, true] {
                if shortcuts && method != ChowMethod::Definition {
                    continue;
                }
                let start = Instant::now();
                let (_, stats) = chow_with_stats(&b, method, EngineConfig { family_shortcuts: shortcuts })?;
                let ms = start.elapsed().as_secs_f64() * 1e3;
                println!("{n},{method},{shortcuts},{ms:.3},{},{}", stats.memo_entries, stats.coeff_bits_peak);
            }
        }
    }
    Ok(())
}
