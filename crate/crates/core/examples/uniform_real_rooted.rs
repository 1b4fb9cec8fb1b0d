//! Real-rootedness of H and G for uniform lattices U_{k,n}, with isolated
//! roots of a few instances.

use chowlab::certify::{is_real_rooted, isolate_roots};
use chowlab::engine::{augmented_chow_with_config, chow_with_config, AugmentedMethod, ChowMethod, EngineConfig};
use chowlab::poset::build_uniform;

fn main() -> anyhow::Result<()> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(8);
    let fast = EngineConfig::with_shortcuts();
    for k in 1..=n {
        let u = build_uniform(k, n)?;
        let h = chow_with_config(&u, ChowMethod::Definition, fast)?;
        let g = augmented_chow_with_config(&u, AugmentedMethod::SumDefinition, fast)?;
        let (ch, cg) = (is_real_rooted(&h)?, is_real_rooted(&g)?);
        println!("U_{{{k},{n}}}: H real-rooted {}, G real-rooted {}", ch.verdict, cg.verdict);
        println!("  H = {h}");
        println!("  G = {g}");
        if k == n - 1 {
            let roots: Vec<String> = isolate_roots(&h)?.iter().map(|r| format!("{r} ~ {:.4}", r.approx())).collect();
            println!("  roots of H: {}", roots.join(", "));
        }
    }
    Ok(())
}
