//! Classify the catalog permutations and print the headline predicates.
//!
//!     cargo run --example classify_catalog

use omegadyn::permalg::{self, catalog, CatalogName};

fn main() {
    println!("{:<14} {:>3}  {:<28} {:<46} chain-recurrent*", "name", "δ", "universal", "chain-transitive*");
    for name in CatalogName::standard().into_iter().filter(|n| n.is_permutation()) {
        let p = catalog(&name).expect("catalog permutation");
        println!(
            "{:<14} {:>3}  {:<28} {:<46} {}",
            name.to_string(),
            p.index().to_string(),
            permalg::is_universal_ch(&p).to_string(),
            permalg::is_chain_transitive_star(&p).to_string(),
            permalg::is_chain_recurrent_star(&p),
        );
    }

    // A presentation outside the catalog: one ℕ-orbit plus a cycle of every length n!.
    let p: permalg::PermPresentation =
        serde_json::from_str(r#"{"n": 1, "bn": 0, "z": 0, "spectrum": [{"kind": "factorial", "offset": 1}]}"#)
            .unwrap();
    println!("\n{p}");
    println!("  pan-divisible: {}", p.is_pan_divisible());
    let (target, verdict) = permalg::jointly_universal_witness(&p);
    println!("  embeds in {target}: {verdict}");
}
