//! Query the recorded quotient relations between catalog maps under each
//! axiom context.
//!
//!     cargo run --example fact_table

use omegadyn::permalg::{known_relation, AxiomTag, CatalogName, Relation, FACTS};

fn main() {
    println!("recorded facts:");
    for fact in FACTS {
        println!(
            "  {} ↠ {} ({}): {} [{}; {}]",
            fact.source, fact.target, fact.relation, fact.status, fact.axiom, fact.citation
        );
    }

    let names = [CatalogName::S, CatalogName::SInv, CatalogName::R, CatalogName::T, CatalogName::Z, CatalogName::U];
    for axiom in [AxiomTag::Zfc, AxiomTag::Ch, AxiomTag::OcaMa] {
        println!("\nquotients under {axiom} (row ↠ column):");
        print!("{:>8}", "");
        for q in names {
            print!("{:>9}", q.to_string());
        }
        println!();
        for p in names {
            print!("{:>8}", p.to_string());
            for q in names {
                let v = known_relation(p, q, Relation::Quotient, axiom);
                print!("{:>9}", v.status.to_string());
            }
            println!();
        }
    }

    for (p, q) in [(CatalogName::R, CatalogName::S), (CatalogName::T, CatalogName::R)] {
        println!("\n{p} → {q} subquotient: {}", known_relation(p, q, Relation::Subquotient, AxiomTag::Zfc));
    }
}
