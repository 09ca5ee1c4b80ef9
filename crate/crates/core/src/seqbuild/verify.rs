use num_rational::Rational64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{ActionRule, IndexedSequence, SeqError};
use crate::chaindyn::ChainError;
use crate::system::{format_rational, FiniteSystem, SystemError};

/// One step where `d(f(x_i), x_{p(i)}) ≥ ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Canonical position of `i` in the window.
    pub position: usize,
    pub index: Value,
    pub rule: String,
    /// `d(f(x_i), x_{p(i)})` as an integer or `p/q` string.
    pub distance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub eps: String,
    /// Sorted by position, then by rule order.
    pub violations: Vec<Violation>,
    /// Steps whose image index lies in the window.
    pub checked: usize,
    /// Steps skipped because the image index leaves the window.
    pub out_of_window: usize,
    /// First canonical position from which no step violates, or `None` if
    /// the very last position of the window does.
    pub tail_ok_from: Option<usize>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn finish(eps: Rational64, mut violations: Vec<Violation>, checked: usize, out_of_window: usize, len: usize) -> Self {
        violations.sort_by_key(|v| v.position);
        let tail_ok_from = match violations.last() {
            None => Some(0),
            Some(v) if v.position + 1 < len => Some(v.position + 1),
            Some(_) => None,
        };
        ViolationReport {
            eps: format_rational(&eps),
            violations,
            checked,
            out_of_window,
            tail_ok_from,
        }
    }
}

fn check_inputs(seq: &IndexedSequence, sys: &FiniteSystem, eps: Rational64) -> Result<(), SeqError> {
    if !eps.is_positive() {
        return Err(ChainError::NonPositiveEps(format_rational(&eps)).into());
    }
    if sys.metric().is_none() {
        return Err(ChainError::MissingMetric.into());
    }
    if !seq.fits(sys) {
        return Err(SystemError::UnknownState("sequence entry beyond the system".into()).into());
    }
    Ok(())
}

fn violations_of(
    seq: &IndexedSequence,
    rule: ActionRule,
    sys: &FiniteSystem,
    eps: Rational64,
) -> (Vec<Violation>, usize, usize) {
    let window = seq.window();
    let mut out = Vec::new();
    let (mut checked, mut outside) = (0, 0);
    for (p, (index, x)) in seq.entries().enumerate() {
        let image = rule.apply(index, window.scheme());
        let Some(q) = window.position(&image) else {
            outside += 1;
            continue;
        };
        checked += 1;
        let d = sys.dist(sys.apply(x), seq.at(q)).expect("metric checked");
        if d >= eps {
            out.push(Violation {
                position: p,
                index: index.to_json(),
                rule: rule.to_string(),
                distance: format_rational(&d),
            });
        }
    }
    (out, checked, outside)
}

/// Every in-window step `i ↦ p(i)` with `d(f(x_i), x_{p(i)}) ≥ ε`.
pub fn verify_p_like(
    seq: &IndexedSequence,
    rule: ActionRule,
    sys: &FiniteSystem,
    eps: Rational64,
) -> Result<ViolationReport, SeqError> {
    rule.check(seq.scheme())?;
    check_inputs(seq, sys, eps)?;
    let (v, checked, outside) = violations_of(seq, rule, sys, eps);
    Ok(ViolationReport::finish(eps, v, checked, outside, seq.len()))
}

/// [`verify_p_like`] for each rule against its own map on a common state
/// set, merged into one report.
pub fn verify_phi_like(
    seq: &IndexedSequence,
    bindings: &[(ActionRule, &FiniteSystem)],
    eps: Rational64,
) -> Result<ViolationReport, SeqError> {
    let mut all = Vec::new();
    let (mut checked, mut outside) = (0, 0);
    for (i, (rule, sys)) in bindings.iter().enumerate() {
        rule.check(seq.scheme())?;
        check_inputs(seq, sys, eps)?;
        if sys.labels() != bindings[0].1.labels() {
            return Err(SeqError::NotAnAction(format!("rule {rule} acts on a different state set")));
        }
        let (v, c, o) = violations_of(seq, *rule, sys, eps);
        all.extend(v.into_iter().map(|v| (i, v)));
        checked += c;
        outside += o;
    }
    all.sort_by_key(|(i, v)| (v.position, *i));
    let all = all.into_iter().map(|(_, v)| v).collect();
    Ok(ViolationReport::finish(eps, all, checked, outside, seq.len()))
}

/// Whether every block of the cover still meets the sequence after the
/// first `prefix` canonical positions are dropped.
pub fn tail_dense_check(
    seq: &IndexedSequence,
    sys: &FiniteSystem,
    cover: &str,
    prefix: usize,
) -> Result<bool, SeqError> {
    if prefix >= seq.len() {
        return Err(SeqError::PrefixTooLong {
            prefix,
            len: seq.len(),
        });
    }
    let blocks = sys
        .cover(cover)
        .ok_or_else(|| ChainError::UnknownCover(cover.to_string()))?;
    let mut present = vec![false; sys.len()];
    for &x in &seq.states()[prefix..] {
        if x < sys.len() {
            present[x] = true;
        }
    }
    Ok(blocks.iter().all(|b| b.iter().any(|&x| present[x])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqbuild::{Index, IndexScheme};

    fn cycle(n: usize) -> FiniteSystem {
        FiniteSystem::from_indices((0..n).map(|i| (i + 1) % n).collect())
            .unwrap()
            .with_unit_metric()
    }

    fn orbit(n: usize, horizon: usize) -> IndexedSequence {
        IndexedSequence::from_fn(IndexScheme::Nat { horizon }, |i| match i {
            Index::Nat(k) => k % n,
            _ => unreachable!(),
        })
        .unwrap()
    }

    fn half() -> Rational64 {
        Rational64::new(1, 2)
    }

    #[test]
    fn exact_orbits_are_clean() {
        let rep = verify_p_like(&orbit(3, 10), ActionRule::S, &cycle(3), half()).unwrap();
        assert!(rep.is_clean());
        assert_eq!(rep.tail_ok_from, Some(0));
        assert_eq!((rep.checked, rep.out_of_window), (9, 1));
        let fixed = FiniteSystem::from_indices(vec![0]).unwrap().with_unit_metric();
        let constant = IndexedSequence::from_fn(IndexScheme::FactorialCycles { max_n: 4 }, |_| 0).unwrap();
        assert!(verify_p_like(&constant, ActionRule::R, &fixed, half()).unwrap().is_clean());
    }

    #[test]
    fn corrupted_entry_is_located() {
        let mut seq = orbit(3, 12);
        seq.set(5, 0);
        let rep = verify_p_like(&seq, ActionRule::S, &cycle(3), half()).unwrap();
        let positions: Vec<usize> = rep.violations.iter().map(|v| v.position).collect();
        // Steps 4→5 and 5→6 are the ones touching position 5.
        assert_eq!(positions, vec![4, 5]);
        assert_eq!(rep.tail_ok_from, Some(6));
        assert_eq!(rep.violations[0].distance, "1");
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(serde_json::from_str::<ViolationReport>(&json).unwrap(), rep);
    }

    #[test]
    fn phi_like_of_one_rule_matches_p_like() {
        let sys = cycle(4);
        let mut seq = orbit(4, 9);
        seq.set(8, 2);
        let single = verify_p_like(&seq, ActionRule::S, &sys, half()).unwrap();
        let phi = verify_phi_like(&seq, &[(ActionRule::S, &sys)], half()).unwrap();
        assert_eq!(single, phi);
        assert_eq!(single.tail_ok_from, Some(8));
    }

    #[test]
    fn input_errors() {
        let seq = orbit(3, 4);
        let bare = FiniteSystem::from_indices(vec![1, 2, 0]).unwrap();
        assert!(matches!(
            verify_p_like(&seq, ActionRule::S, &bare, half()),
            Err(SeqError::Chain(ChainError::MissingMetric))
        ));
        assert!(matches!(
            verify_p_like(&seq, ActionRule::T, &cycle(3), half()),
            Err(SeqError::RuleMismatch { .. })
        ));
    }

    #[test]
    fn tail_density() {
        let sys = cycle(3).with_cover("single", vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(tail_dense_check(&orbit(3, 9), &sys, "single", 6).unwrap());
        assert!(!tail_dense_check(&orbit(3, 9), &sys, "single", 7).unwrap());
        let constant = IndexedSequence::from_fn(IndexScheme::Nat { horizon: 5 }, |_| 0).unwrap();
        assert!(!tail_dense_check(&constant, &sys, "single", 0).unwrap());
        assert!(matches!(
            tail_dense_check(&constant, &sys, "single", 5),
            Err(SeqError::PrefixTooLong { .. })
        ));
    }
}
