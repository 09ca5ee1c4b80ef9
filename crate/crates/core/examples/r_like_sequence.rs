//! Lay self-chains along the rows of the factorial window: row n has n!
//! entries and the rule steps (n, m) to (n, m + 1 mod n!).
//!
//!     cargo run --example r_like_sequence

use num_rational::Rational64;
use omegadyn::seqbuild::{self, ActionRule, Index};
use omegadyn::system::FiniteSystem;

fn main() {
    // A 3-cycle next to a fixed point.
    let sys = FiniteSystem::from_indices(vec![1, 2, 0, 3]).unwrap().with_unit_metric();
    let eps = Rational64::new(1, 2);
    let built = seqbuild::build_r_like(&sys, &[0, 3, 1], &[eps], 6).unwrap();
    println!("periods n_k: {:?}", built.lengths);
    println!("segment starts: {:?}", built.segment_starts);

    for n in 1..=6 {
        let row: Vec<&str> = (0..seqbuild::factorial(n).min(12))
            .map(|m| sys.label(built.sequence.get(&Index::Fact(n, m)).unwrap()))
            .collect();
        println!("row {n}: {}", row.join(" "));
    }

    let rep = seqbuild::verify_p_like(&built.sequence, ActionRule::R, &sys, eps).unwrap();
    println!("violations={} tail_ok_from={:?}", rep.violations.len(), rep.tail_ok_from);

    for a in [0, 3] {
        let chain = seqbuild::extract_self_chain(&built.sequence, &sys, a, eps).unwrap();
        println!("self-chain at {}: {} steps, valid: {}", sys.label(a), chain.steps(), chain.validate(&sys));
    }
    // A point falling into a fixed point is not chain recurrent, so it has no self-chain.
    let sink = FiniteSystem::from_indices(vec![1, 1]).unwrap().with_unit_metric();
    println!("sink: {}", seqbuild::build_r_like(&sink, &[0], &[eps], 3).unwrap_err());
}
