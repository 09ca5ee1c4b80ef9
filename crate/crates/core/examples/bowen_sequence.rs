//! Build an s-like sequence on a chain transitive system by gluing chains
//! between consecutive dense points, verify it, and read a chain back off.
//!
//!     cargo run --example bowen_sequence

use num_rational::Rational64;
use omegadyn::seqbuild::{self, ActionRule};
use omegadyn::system::FiniteSystem;

fn main() {
    // A 4-cycle a → c → b → d → a on points of a line at 0, 1/8, 1/2 and 1.
    // Coarse chains take shortcuts; fine ones follow the orbit.
    let sys = FiniteSystem::from_json(
        r#"{
            "states": ["a", "b", "c", "d"],
            "map": {"a": "c", "c": "b", "b": "d", "d": "a"},
            "metric": [
                [0, "1/8", "1/2", 1],
                ["1/8", 0, "3/8", "7/8"],
                ["1/2", "3/8", 0, "1/2"],
                [1, "7/8", "1/2", 0]
            ]
        }"#,
    )
    .unwrap();
    let dense = [0, 1, 2, 3, 0, 1, 2, 3];
    let schedule = [Rational64::new(3, 4), Rational64::new(1, 2), Rational64::new(1, 16)];

    let built = seqbuild::build_s_like(&sys, &dense, &schedule).unwrap();
    let labels: Vec<&str> = built.sequence.states().iter().map(|&x| sys.label(x)).collect();
    println!("sequence: {}", labels.join(" "));
    println!("segment lengths: {:?}", built.lengths);

    for eps in schedule {
        let rep = seqbuild::verify_p_like(&built.sequence, ActionRule::S, &sys, eps).unwrap();
        println!("eps={eps:<4} violations={} tail_ok_from={:?}", rep.violations.len(), rep.tail_ok_from);
    }

    let eps = Rational64::new(1, 2);
    let chain = seqbuild::extract_chain(&built.sequence, &sys, 1, 0, eps).unwrap();
    println!("chain b ⇝ a read off the tail: {} (valid: {})", chain.render(&sys), chain.validate(&sys));
}
