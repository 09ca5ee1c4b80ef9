//! Search for equivariant maps between small systems, glue them, and check
//! that chain properties pass to quotients.
//!
//!     cargo run --example quotient_search

use omegadyn::quotients::{self, ChainProperty, SearchOutcome};
use omegadyn::system::FiniteSystem;

fn cycle(prefix: &str, n: usize) -> FiniteSystem {
    let labels = (0..n).map(|i| format!("{prefix}{i}")).collect();
    FiniteSystem::new(labels, (0..n).map(|i| (i + 1) % n).collect()).unwrap()
}

fn main() {
    let c6 = cycle("x", 6);
    let c3 = cycle("y", 3);
    let c2 = cycle("z", 2);

    let m = quotients::find_quotient(&c6, &c3).unwrap();
    println!("c6 ↠ c3: {:?}", m.assignment);
    println!("c3 ↠ c6: {:?}", quotients::find_quotient(&c3, &c6).map(|m| m.assignment));
    println!("c3 → c2: {:?}", quotients::find_subquotient(&c3, &c2).map(|m| m.assignment));

    let to_c2 = quotients::find_quotient(&c6, &c2).unwrap();
    let composed = quotients::compose(&quotients::EquivariantMap::identity(&c6), &to_c2).unwrap();
    println!("identity then c6 ↠ c2 is equivariant: {}", quotients::verify_equivariant(&composed));

    // Two cycles side by side, mapped onto one.
    let a = cycle("a", 4);
    let b = cycle("b", 2);
    let ab = quotients::disjoint_union(&[&a, &b]).unwrap();
    let pasted = quotients::paste(&[
        quotients::find_quotient(&a, &c2).unwrap(),
        quotients::find_quotient(&b, &c2).unwrap(),
    ])
    .unwrap();
    println!("pasted {} ↠ {}: surjective={}", ab.len(), pasted.target.len(), pasted.surjective);

    for property in [ChainProperty::Transitive, ChainProperty::Recurrent] {
        println!("{property:?} under c6 ↠ c3: {:?}", quotients::preservation_test(&c6, &c3, property));
    }

    // Eight fixed points onto three fixed points and a 2-cycle: no quotient,
    // and a tight budget gives up first.
    let fixed = FiniteSystem::from_indices((0..8).collect()).unwrap();
    let mixed = FiniteSystem::from_indices(vec![0, 1, 2, 4, 3]).unwrap();
    for budget in [Some(100), None] {
        let outcome = quotients::search(&fixed, &mixed, true, budget);
        let shown = match outcome {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::None => "none",
            SearchOutcome::BudgetExhausted => "budget exhausted",
        };
        println!("budget {budget:?}: {shown}");
    }
    println!("\n{}", m.to_dot());
}
