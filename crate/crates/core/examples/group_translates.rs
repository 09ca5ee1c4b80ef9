//! Translate a dense sequence by a ℤ² action and check every generator
//! rule, in both directions, at several tolerances.
//!
//!     cargo run --example group_translates

use num_rational::Rational64;
use omegadyn::seqbuild::{self, ActionRule, GroupKind, Index, IndexScheme};
use omegadyn::system::FiniteSystem;

fn inverse(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

fn main() {
    // The torus ℤ/2 × ℤ/3, acted on by its two coordinate rotations.
    let labels: Vec<String> = (0..6).map(|i| format!("({},{})", i / 3, i % 3)).collect();
    let sys = FiniteSystem::new(labels, (0..6).collect()).unwrap().with_unit_metric();
    let g1: Vec<usize> = (0..6).map(|i| (i + 3) % 6).collect();
    let g2: Vec<usize> = (0..6).map(|i| i / 3 * 3 + (i + 1) % 3).collect();
    let scheme = IndexScheme::GroupCross {
        generators: 2,
        word_len: 3,
        horizon: 6,
        group: GroupKind::Abelian { orders: vec![Some(2), Some(3)] },
    };

    let seq = seqbuild::build_group_like(&sys, &[g1.clone(), g2.clone()], &[0, 1, 2, 3, 4, 5], scheme).unwrap();
    println!("window: {} ({} entries)", seq.scheme(), seq.len());
    for word in seq.window().group_elements().iter().take(6) {
        let row: Vec<&str> = (0..6).map(|n| sys.label(seq.get(&Index::Group(word.clone(), n)).unwrap())).collect();
        println!("  {:>10}: {}", format!("{word:?}"), row.join(" "));
    }

    let maps = [
        (ActionRule::Generator(1), sys.with_map(g1.clone()).unwrap()),
        (ActionRule::Generator(-1), sys.with_map(inverse(&g1)).unwrap()),
        (ActionRule::Generator(2), sys.with_map(g2.clone()).unwrap()),
        (ActionRule::Generator(-2), sys.with_map(inverse(&g2)).unwrap()),
    ];
    let bindings: Vec<_> = maps.iter().map(|(r, s)| (*r, s)).collect();
    for eps in [Rational64::new(1, 1000), Rational64::new(1, 2), Rational64::from_integer(1)] {
        let rep = seqbuild::verify_phi_like(&seq, &bindings, eps).unwrap();
        println!("eps={eps:<6} checked={} violations={}", rep.checked, rep.violations.len());
    }

    // Non-commuting maps are refused for an abelian group.
    let swap = vec![1, 0, 2, 3, 4, 5];
    let err = seqbuild::build_group_like(
        &sys,
        &[swap, g2],
        &[0],
        IndexScheme::GroupCross {
            generators: 2,
            word_len: 1,
            horizon: 1,
            group: GroupKind::Abelian { orders: vec![None, None] },
        },
    )
    .unwrap_err();
    println!("{err}");
}
