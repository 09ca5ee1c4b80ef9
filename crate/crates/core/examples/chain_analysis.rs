//! Chain transitivity and recurrence of a small metric system at several
//! resolutions, cross-checked against the clopen-set oracles.
//!
//!     cargo run --example chain_analysis

use num_rational::Rational64;
use omegadyn::chaindyn::{self, Resolution, DEFAULT_ORACLE_BOUND};
use omegadyn::system::FiniteSystem;

fn main() {
    // a and b sit 1/4 apart; a is fixed, b falls into the fixed point c.
    let sys = FiniteSystem::from_json(
        r#"{
            "states": ["a", "b", "c"],
            "map": {"a": "a", "b": "c", "c": "c"},
            "metric": [[0, "1/4", 1], ["1/4", 0, 1], [1, 1, 0]],
            "covers": {"coarse": [["a", "b", "c"]]}
        }"#,
    )
    .unwrap();

    for res in [
        Resolution::Singleton,
        Resolution::Epsilon(Rational64::new(1, 8)),
        Resolution::Epsilon(Rational64::new(1, 2)),
        Resolution::Cover("coarse".into()),
    ] {
        let set = chaindyn::chain_recurrent_set(&sys, &res).unwrap();
        let labels: Vec<&str> = set.iter().map(|&x| sys.label(x)).collect();
        println!(
            "{res:<12} transitive={:<5} recurrent={:<5} recurrent set={labels:?}",
            chaindyn::is_chain_transitive(&sys, &res).unwrap(),
            chaindyn::is_chain_recurrent(&sys, &res).unwrap(),
        );
    }

    let eps = Resolution::Epsilon(Rational64::new(1, 2));
    if let Some(chain) = chaindyn::find_chain(&sys, &eps, 2, 1).unwrap() {
        println!("\nshortest chain c ⇝ b at eps=1/2: {}", chain.render(&sys));
    }

    println!(
        "oracles at the singleton cover: transitive={} recurrent={}",
        chaindyn::clopen_transitive_oracle(&sys, DEFAULT_ORACLE_BOUND).unwrap(),
        chaindyn::clopen_recurrent_oracle(&sys, DEFAULT_ORACLE_BOUND).unwrap(),
    );
    let min: Vec<&str> = chaindyn::minimal_subsystem(&sys).iter().map(|&x| sys.label(x)).collect();
    println!("minimal subsystem: {min:?}");
    println!("\n{}", chaindyn::chain_graph(&sys, &eps).unwrap().to_dot());
}
