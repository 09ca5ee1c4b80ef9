use num_rational::Rational64;

use super::{GroupKind, Index, IndexScheme, IndexedSequence, SeqError, Window, MAX_FACTORIAL_ROW};
use crate::chaindyn::{find_chain, Resolution};
use crate::system::{format_rational, FiniteSystem};

/// A built sequence plus where its segments begin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub sequence: IndexedSequence,
    /// Canonical position at which segment `k` (built at `eps_schedule[k]`)
    /// begins, or `None` if it begins beyond the window.
    pub segment_starts: Vec<Option<usize>>,
    /// Length of the chain used for segment `k`: steps for s-like
    /// sequences, the padded period `n_k` for r-like ones.
    pub lengths: Vec<usize>,
}

fn check_dense(sys: &FiniteSystem, dense: &[usize]) -> Result<(), SeqError> {
    if dense.is_empty() {
        return Err(SeqError::EmptyDense);
    }
    if dense.iter().any(|&d| d >= sys.len()) {
        return Err(SeqError::BadIndex("dense sequence names a state beyond the system".into()));
    }
    Ok(())
}

fn check_schedule(schedule: &[Rational64]) -> Result<(), SeqError> {
    if schedule.is_empty() {
        return Err(SeqError::BadSchedule("empty".into()));
    }
    if schedule.windows(2).any(|w| w[1] > w[0]) {
        return Err(SeqError::BadSchedule("must be non-increasing".into()));
    }
    Ok(())
}

/// `eps_schedule[k]`, repeating the last entry when the schedule is short.
fn eps_at(schedule: &[Rational64], k: usize) -> Rational64 {
    schedule[k.min(schedule.len() - 1)]
}

fn invert(map: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; map.len()];
    for (x, &y) in map.iter().enumerate() {
        if inv[y] != usize::MAX {
            return None;
        }
        inv[y] = x;
    }
    Some(inv)
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// `x_{(g, n)} = ψ_g(d_n)`, where generator `i` acts by `flows[i - 1]` and
/// a word acts letter by letter from the right. `d` is repeated cyclically
/// along the rows, so the identity row is `d` when the horizon is `|d|`.
pub fn build_group_like(
    sys: &FiniteSystem,
    flows: &[Vec<usize>],
    dense: &[usize],
    scheme: IndexScheme,
) -> Result<IndexedSequence, SeqError> {
    check_dense(sys, dense)?;
    let (generators, group) = match &scheme {
        IndexScheme::GroupCross { generators, group, .. } => (*generators, group.clone()),
        other => {
            return Err(SeqError::RuleMismatch {
                rule: "group action".into(),
                scheme: other.kind().into(),
            })
        }
    };
    if flows.len() != generators {
        return Err(SeqError::NotAnAction(format!(
            "{} maps for {generators} generators",
            flows.len()
        )));
    }
    let mut inverses = Vec::with_capacity(flows.len());
    for (i, f) in flows.iter().enumerate() {
        if f.len() != sys.len() || f.iter().any(|&y| y >= sys.len()) {
            return Err(SeqError::NotAnAction(format!("map of g{} is not a map on the states", i + 1)));
        }
        inverses.push(invert(f).ok_or_else(|| SeqError::NotBijective(format!("g{}", i + 1)))?);
    }
    if let GroupKind::Abelian { orders } = &group {
        for i in 0..flows.len() {
            for j in 0..i {
                if compose(&flows[i], &flows[j]) != compose(&flows[j], &flows[i]) {
                    return Err(SeqError::NotAnAction(format!("g{} and g{} do not commute", j + 1, i + 1)));
                }
            }
            if let Some(k) = orders[i] {
                let mut power: Vec<usize> = (0..sys.len()).collect();
                for _ in 0..k {
                    power = compose(&flows[i], &power);
                }
                if power.iter().enumerate().any(|(x, &y)| x != y) {
                    return Err(SeqError::NotAnAction(format!("g{} does not have order dividing {k}", i + 1)));
                }
            }
        }
    }
    let letter_map = |a: i32| -> &Vec<usize> {
        let i = a.unsigned_abs() as usize - 1;
        if a > 0 {
            &flows[i]
        } else {
            &inverses[i]
        }
    };
    let act = |word: &[i32], x: usize| word.iter().rev().fold(x, |y, &a| letter_map(a)[y]);
    IndexedSequence::from_fn(scheme, |index| match index {
        Index::Group(w, n) => act(w, dense[n % dense.len()]),
        _ => unreachable!("group windows hold group indices"),
    })
}

/// `x_{n,z} = f^z(d_n)` for `z ≥ 0`; for `z < 0`, `x_{n,z}` is the preimage
/// of `x_{n,z+1}` with the least label.
pub fn build_t_like(sys: &FiniteSystem, dense: &[usize], scheme: IndexScheme) -> Result<IndexedSequence, SeqError> {
    check_dense(sys, dense)?;
    if !matches!(scheme, IndexScheme::RowsByZ { .. }) {
        return Err(SeqError::RuleMismatch {
            rule: "t".into(),
            scheme: scheme.kind().into(),
        });
    }
    let mut pre: Vec<Option<usize>> = vec![None; sys.len()];
    for x in 0..sys.len() {
        let y = sys.apply(x);
        if pre[y].is_none_or(|p| sys.label(x) < sys.label(p)) {
            pre[y] = Some(x);
        }
    }
    if let Some(y) = pre.iter().position(Option::is_none) {
        return Err(SeqError::NotSurjective(sys.label(y).to_string()));
    }
    let pre: Vec<usize> = pre.into_iter().map(Option::unwrap).collect();
    IndexedSequence::from_fn(scheme, |index| match index {
        Index::Row(n, z) => {
            let step = |x: usize| if *z >= 0 { sys.apply(x) } else { pre[x] };
            (0..z.unsigned_abs()).fold(dense[n % dense.len()], |x, _| step(x))
        }
        _ => unreachable!("row windows hold row indices"),
    })
}

/// Concatenates shortest `eps_schedule[k]`-chains from `d_k` to `d_{k+1}`,
/// sharing endpoints, into an ℕ-indexed sequence.
pub fn build_s_like(sys: &FiniteSystem, dense: &[usize], eps_schedule: &[Rational64]) -> Result<Construction, SeqError> {
    check_dense(sys, dense)?;
    check_schedule(eps_schedule)?;
    let mut points = vec![dense[0]];
    let mut segment_starts = Vec::new();
    let mut lengths = Vec::new();
    for (k, pair) in dense.windows(2).enumerate() {
        let eps = eps_at(eps_schedule, k);
        let chain = find_chain(sys, &Resolution::Epsilon(eps), pair[0], pair[1])?.ok_or_else(|| SeqError::NoChain {
            from: sys.label(pair[0]).to_string(),
            to: sys.label(pair[1]).to_string(),
            eps: format_rational(&eps),
        })?;
        segment_starts.push(Some(points.len() - 1));
        lengths.push(chain.steps());
        points.extend_from_slice(&chain.points[1..]);
    }
    let window = Window::new(IndexScheme::Nat { horizon: points.len() })?;
    Ok(Construction {
        sequence: IndexedSequence::new(window, points)?,
        segment_starts,
        lengths,
    })
}

/// Rows of the factorial window cycle through `eps_schedule[k]`-chains
/// from `d_k` back to itself. Chain `k`, repeated to a period `n_k` that
/// strictly exceeds `n_{k-1}`, fills every row `n` with
/// `n_k ≤ n < n_{k+1}` by `x_{n,m} = x^k_{m mod n_k}`; since `n_k ≤ n`,
/// `n_k` divides `n!`. Rows below `n_0` hold `d_0`.
pub fn build_r_like(
    sys: &FiniteSystem,
    dense: &[usize],
    eps_schedule: &[Rational64],
    max_n: usize,
) -> Result<Construction, SeqError> {
    check_dense(sys, dense)?;
    check_schedule(eps_schedule)?;
    if max_n == 0 || max_n > MAX_FACTORIAL_ROW {
        return Err(SeqError::BadScheme(format!("max_n must be in 1..={MAX_FACTORIAL_ROW}")));
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut periods: Vec<usize> = Vec::new();
    for (k, &d) in dense.iter().enumerate() {
        let eps = eps_at(eps_schedule, k);
        let chain = find_chain(sys, &Resolution::Epsilon(eps), d, d)?.ok_or_else(|| SeqError::NoChain {
            from: sys.label(d).to_string(),
            to: sys.label(d).to_string(),
            eps: format_rational(&eps),
        })?;
        let raw = chain.steps();
        let previous = periods.last().copied().unwrap_or(0);
        periods.push((previous / raw + 1) * raw);
        cycles.push(chain.points[..raw].to_vec());
    }
    let scheme = IndexScheme::FactorialCycles { max_n };
    let sequence = IndexedSequence::from_fn(scheme, |index| match index {
        Index::Fact(n, m) => match periods.iter().rposition(|&p| p <= *n) {
            Some(k) => cycles[k][m % cycles[k].len()],
            None => dense[0],
        },
        _ => unreachable!("factorial windows hold factorial indices"),
    })?;
    let segment_starts = periods
        .iter()
        .map(|&p| sequence.window().position(&Index::Fact(p, 0)))
        .collect();
    Ok(Construction {
        sequence,
        segment_starts,
        lengths: periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqbuild::{verify_p_like, verify_phi_like, ActionRule};

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn labeled(labels: &[&str], map: &[usize]) -> FiniteSystem {
        FiniteSystem::new(labels.iter().map(|s| s.to_string()).collect(), map.to_vec())
            .unwrap()
            .with_unit_metric()
    }

    #[test]
    fn group_like_over_z_and_z2() {
        let sys = labeled(&["a", "b", "c", "d"], &[0, 1, 2, 3]);
        let rotation = vec![1, 2, 3, 0];
        let scheme = IndexScheme::GroupCross {
            generators: 1,
            word_len: 3,
            horizon: 4,
            group: GroupKind::Abelian { orders: vec![None] },
        };
        let seq = build_group_like(&sys, std::slice::from_ref(&rotation), &[0, 1, 2, 3], scheme).unwrap();
        let rows: Vec<usize> = (0..4).map(|n| seq.get(&Index::Group(vec![], n)).unwrap()).collect();
        assert_eq!(rows, vec![0, 1, 2, 3]);
        let g = sys.with_map(rotation).unwrap();
        let rep = verify_phi_like(&seq, &[(ActionRule::Generator(1), &g), (ActionRule::Generator(-1), &g)], r(1, 2));
        // g⁻¹ is bound to the forward rotation on purpose: it must fail.
        assert!(!rep.unwrap().is_clean());
        let clean = verify_phi_like(&seq, &[(ActionRule::Generator(1), &g)], r(1, 2)).unwrap();
        assert!(clean.is_clean());

        let swap = vec![1, 0, 3, 2];
        let shift2 = vec![2, 3, 0, 1];
        let z2 = IndexScheme::GroupCross {
            generators: 2,
            word_len: 2,
            horizon: 4,
            group: GroupKind::Abelian { orders: vec![None, None] },
        };
        let seq = build_group_like(&sys, &[swap.clone(), shift2.clone()], &[0, 1, 2, 3], z2.clone()).unwrap();
        for n in 0..4 {
            let ab = ActionRule::Generator(1).apply(&Index::Group(vec![2], n), &z2);
            let ba = ActionRule::Generator(2).apply(&Index::Group(vec![1], n), &z2);
            assert_eq!(seq.get(&ab), seq.get(&ba));
        }
        let g1 = sys.with_map(swap).unwrap();
        let g2 = sys.with_map(shift2).unwrap();
        let rep = verify_phi_like(&seq, &[(ActionRule::Generator(1), &g1), (ActionRule::Generator(2), &g2)], r(1, 2));
        assert!(rep.unwrap().is_clean());
    }

    #[test]
    fn group_like_rejects_non_actions() {
        let sys = labeled(&["a", "b"], &[0, 1]);
        let z = IndexScheme::GroupCross {
            generators: 1,
            word_len: 1,
            horizon: 2,
            group: GroupKind::Free,
        };
        assert!(matches!(
            build_group_like(&sys, &[vec![0, 0]], &[0], z),
            Err(SeqError::NotBijective(_))
        ));
        let c3 = IndexScheme::GroupCross {
            generators: 1,
            word_len: 1,
            horizon: 2,
            group: GroupKind::Abelian { orders: vec![Some(3)] },
        };
        assert!(matches!(
            build_group_like(&sys, &[vec![1, 0]], &[0], c3),
            Err(SeqError::NotAnAction(_))
        ));
        let trivial = IndexScheme::GroupCross {
            generators: 0,
            word_len: 0,
            horizon: 3,
            group: GroupKind::Free,
        };
        let seq = build_group_like(&sys, &[], &[1, 0, 1], trivial).unwrap();
        assert_eq!(seq.states(), &[1, 0, 1]);
    }

    #[test]
    fn t_like_runs_backwards() {
        let sys = labeled(&["a", "b", "c"], &[1, 2, 0]);
        let seq = build_t_like(&sys, &[0], IndexScheme::RowsByZ { rows: 1, window: 2 }).unwrap();
        let row: Vec<usize> = (-2..=2).map(|z| seq.get(&Index::Row(0, z)).unwrap()).collect();
        assert_eq!(row, vec![1, 2, 0, 1, 2]);
        assert!(verify_p_like(&seq, ActionRule::T, &sys, r(1, 100)).unwrap().is_clean());
    }

    #[test]
    fn t_like_needs_surjectivity() {
        // b, c ↦ a and a ↦ b: c has no preimage. On a finite set a
        // surjection is a bijection, so preimages are never ambiguous.
        let sys = labeled(&["a", "b", "c"], &[1, 0, 0]);
        assert!(matches!(
            build_t_like(&sys, &[0], IndexScheme::RowsByZ { rows: 1, window: 2 }),
            Err(SeqError::NotSurjective(s)) if s == "c"
        ));
    }

    #[test]
    fn s_like_on_a_cycle_is_the_orbit() {
        let sys = labeled(&["a", "b", "c"], &[1, 2, 0]);
        let built = build_s_like(&sys, &[0, 1, 2, 0, 1, 2], &[r(1, 2)]).unwrap();
        assert_eq!(built.sequence.states(), &[0, 1, 2, 0, 1, 2]);
        let rep = verify_p_like(&built.sequence, ActionRule::S, &sys, r(1, 2)).unwrap();
        assert!(rep.is_clean());
        let split = labeled(&["a", "b"], &[0, 1]);
        match build_s_like(&split, &[0, 1], &[r(1, 2)]) {
            Err(SeqError::NoChain { from, to, eps }) => assert_eq!((from.as_str(), to.as_str(), eps.as_str()), ("a", "b", "1/2")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            build_s_like(&sys, &[0, 1], &[r(1, 4), r(1, 2)]),
            Err(SeqError::BadSchedule(_))
        ));
    }

    #[test]
    fn r_like_on_a_two_cycle() {
        let sys = labeled(&["a", "b"], &[1, 0]);
        let built = build_r_like(&sys, &[0], &[r(1, 2)], 4).unwrap();
        assert_eq!(built.lengths, vec![2]);
        let seq = &built.sequence;
        assert_eq!(seq.get(&Index::Fact(1, 0)), Some(0));
        for n in 2..=4 {
            for m in 0..crate::seqbuild::factorial(n) {
                assert_eq!(seq.get(&Index::Fact(n, m)), Some(m % 2));
            }
        }
        let rep = verify_p_like(seq, ActionRule::R, &sys, r(1, 2)).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.tail_ok_from, built.segment_starts[0]);
    }

    #[test]
    fn r_like_periods_strictly_increase() {
        let fixed = labeled(&["a"], &[0]);
        let built = build_r_like(&fixed, &[0, 0, 0], &[r(1, 2)], 5).unwrap();
        assert_eq!(built.lengths, vec![1, 2, 3]);
        assert!(built.sequence.states().iter().all(|&x| x == 0));
        let sink = labeled(&["a", "b"], &[1, 1]);
        assert!(matches!(build_r_like(&sink, &[0], &[r(1, 2)], 3), Err(SeqError::NoChain { .. })));
    }
}
