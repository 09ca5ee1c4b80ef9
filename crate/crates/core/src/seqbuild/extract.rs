use num_rational::Rational64;

use super::{factorial, verify_p_like, ActionRule, Index, IndexScheme, IndexedSequence, SeqError};
use crate::chaindyn::{Chain, Resolution};
use crate::system::{format_rational, FiniteSystem};

/// An `eps`-chain from `a` to `b` read off an s-like sequence:
/// `⟨a, x_m, …, x_{n-1}, b⟩` with `m` past the last violation at `eps`,
/// `m` least with `f(a) ≈ x_m`, and then `n > m` least with `f(x_{n-1}) ≈ b`.
pub fn extract_chain(
    seq: &IndexedSequence,
    sys: &FiniteSystem,
    a: usize,
    b: usize,
    eps: Rational64,
) -> Result<Chain, SeqError> {
    if !matches!(seq.scheme(), IndexScheme::Nat { .. }) {
        return Err(SeqError::RuleMismatch {
            rule: "s".into(),
            scheme: seq.scheme().kind().into(),
        });
    }
    let report = verify_p_like(seq, ActionRule::S, sys, eps)?;
    let not_found = |what: &str| SeqError::NotFound(format!("{what} at eps={}", format_rational(&eps)));
    let start = report
        .tail_ok_from
        .ok_or_else(|| not_found("no s-like tail"))?;
    let close = |x: usize, y: usize| sys.dist(x, y).is_some_and(|d| d < eps);
    let states = seq.states();
    let m = (start..states.len())
        .find(|&m| close(sys.apply(a), states[m]))
        .ok_or_else(|| not_found("no entry near f(a)"))?;
    let n = (m + 1..=states.len())
        .find(|&n| close(sys.apply(states[n - 1]), b))
        .ok_or_else(|| not_found("no entry leading to b"))?;
    let mut points = vec![a];
    points.extend_from_slice(&states[m..n]);
    points.push(b);
    Ok(Chain {
        points,
        resolution: Resolution::Epsilon(eps),
    })
}

/// An `eps`-chain from `a` to itself read off an r-like sequence.
///
/// With `δ = eps/2`, finds the least `(n, m)` in a row past the last
/// violation at `δ` such that `d(a, x_{n,m}) < δ`, and returns
/// `⟨a, x_{n,m+1}, …, x_{n,m+n!-1}, a⟩`. The first step needs
/// `d(f(a), f(x_{n,m})) < δ`; this is checked, and a failure is an error.
pub fn extract_self_chain(
    seq: &IndexedSequence,
    sys: &FiniteSystem,
    a: usize,
    eps: Rational64,
) -> Result<Chain, SeqError> {
    if !matches!(seq.scheme(), IndexScheme::FactorialCycles { .. }) {
        return Err(SeqError::RuleMismatch {
            rule: "r".into(),
            scheme: seq.scheme().kind().into(),
        });
    }
    let delta = eps / 2;
    let report = verify_p_like(seq, ActionRule::R, sys, delta)?;
    let not_found = |what: String| SeqError::NotFound(format!("{what} at eps={}", format_rational(&eps)));
    let start = report
        .tail_ok_from
        .ok_or_else(|| not_found("no r-like tail".into()))?;
    let window = seq.window();
    // Whole rows only: a row is usable once all its steps are good.
    let (n, m) = window.indices()[start..]
        .iter()
        .filter_map(|i| match i {
            Index::Fact(n, m) => Some((*n, *m)),
            _ => None,
        })
        .filter(|&(n, _)| window.position(&Index::Fact(n, 0)).is_some_and(|p| p >= start))
        .find(|&(n, m)| {
            let x = seq.get(&Index::Fact(n, m)).expect("in window");
            sys.dist(a, x).is_some_and(|d| d < delta)
        })
        .ok_or_else(|| not_found("no entry within eps/2 of the state".into()))?;
    let x = seq.get(&Index::Fact(n, m)).expect("in window");
    let image_gap = sys.dist(sys.apply(a), sys.apply(x)).expect("metric checked");
    if image_gap >= delta {
        return Err(not_found(format!(
            "d(f(a), f(x)) = {} is not below eps/2 for the nearest entry",
            format_rational(&image_gap)
        )));
    }
    let period = factorial(n);
    let mut points = vec![a];
    points.extend((1..period).map(|j| seq.get(&Index::Fact(n, (m + j) % period)).expect("in window")));
    points.push(a);
    Ok(Chain {
        points,
        resolution: Resolution::Epsilon(eps),
    })
}
