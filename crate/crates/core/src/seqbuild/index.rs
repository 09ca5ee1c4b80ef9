//! Finite windows of the index sets that sequences live on, and the index
//! maps (action rules) acting on them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::SeqError;

/// Largest factorial row accepted: row `n` has `n!` entries.
pub const MAX_FACTORIAL_ROW: usize = 9;

/// A word in the generators: letter `i` is generator `i`, `-i` its inverse
/// (generators are numbered from 1).
pub type Word = Vec<i32>;

/// How words are brought to normal form. The library does not solve word
/// problems; it knows free groups and abelian groups with given orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupKind {
    Free,
    /// Commuting generators; `orders[i]` is the order of generator `i + 1`
    /// (`null` for infinite order).
    Abelian { orders: Vec<Option<u64>> },
}

impl GroupKind {
    pub fn normal_form(&self, word: &[i32]) -> Word {
        match self {
            GroupKind::Free => {
                let mut out: Word = Vec::with_capacity(word.len());
                for &a in word {
                    if out.last() == Some(&-a) {
                        out.pop();
                    } else {
                        out.push(a);
                    }
                }
                out
            }
            GroupKind::Abelian { orders } => {
                let mut exps = vec![0i64; orders.len()];
                for &a in word {
                    let i = a.unsigned_abs() as usize - 1;
                    exps[i] += a.signum() as i64;
                }
                let mut out = Vec::new();
                for (i, (&e, order)) in exps.iter().zip(orders).enumerate() {
                    let e = match order {
                        Some(k) => e.rem_euclid(*k as i64),
                        None => e,
                    };
                    let letter = (i + 1) as i32 * e.signum() as i32;
                    out.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IndexScheme {
    /// `n < horizon`.
    Nat { horizon: usize },
    /// `(m, n)` with `m < rows`, `n < horizon`: a window of ω × ω.
    NatCross { rows: usize, horizon: usize },
    /// `(n, z)` with `n < rows`, `|z| ≤ window`: a window of ω × ℤ.
    RowsByZ { rows: usize, window: i64 },
    /// `(n, m)` with `1 ≤ n ≤ max_n`, `m < n!`.
    FactorialCycles { max_n: usize },
    /// `(g, n)` with `g` a normal-form word of length at most `word_len`
    /// and `n < horizon`: a window of G × ω.
    GroupCross {
        generators: usize,
        word_len: usize,
        horizon: usize,
        group: GroupKind,
    },
}

impl IndexScheme {
    pub fn validate(&self) -> Result<(), SeqError> {
        let bad = |msg: &str| Err(SeqError::BadScheme(msg.to_string()));
        match self {
            IndexScheme::Nat { horizon } if *horizon == 0 => bad("horizon must be positive"),
            IndexScheme::NatCross { rows, horizon } if *rows == 0 || *horizon == 0 => {
                bad("rows and horizon must be positive")
            }
            IndexScheme::RowsByZ { rows, window } if *rows == 0 || *window < 0 => {
                bad("rows must be positive and window non-negative")
            }
            IndexScheme::FactorialCycles { max_n } if *max_n == 0 || *max_n > MAX_FACTORIAL_ROW => Err(
                SeqError::BadScheme(format!("max_n must be in 1..={MAX_FACTORIAL_ROW}")),
            ),
            IndexScheme::GroupCross {
                generators,
                horizon,
                group,
                ..
            } => {
                if *horizon == 0 {
                    return bad("horizon must be positive");
                }
                if *generators > i32::MAX as usize {
                    return bad("too many generators");
                }
                match group {
                    GroupKind::Abelian { orders } if orders.len() != *generators => {
                        bad("one order per generator")
                    }
                    GroupKind::Abelian { orders } if orders.contains(&Some(0)) => bad("orders must be positive"),
                    _ => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    /// Short name used for errors and reports.
    pub fn kind(&self) -> &'static str {
        match self {
            IndexScheme::Nat { .. } => "nat",
            IndexScheme::NatCross { .. } => "cross",
            IndexScheme::RowsByZ { .. } => "rows",
            IndexScheme::FactorialCycles { .. } => "fact",
            IndexScheme::GroupCross { .. } => "group",
        }
    }
}

/// `nat:50`, `cross:3x10`, `rows:3x5` (rows × z-window), `fact:6`.
/// Group windows carry an alphabet and come from JSON.
impl FromStr for IndexScheme {
    type Err = SeqError;

    fn from_str(spec: &str) -> Result<Self, SeqError> {
        let bad = || SeqError::BadScheme(format!("cannot parse window `{spec}`"));
        let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
        let pair = || -> Result<(usize, usize), SeqError> {
            let (a, b) = rest.split_once('x').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        let scheme = match kind {
            "nat" => IndexScheme::Nat {
                horizon: rest.parse().map_err(|_| bad())?,
            },
            "cross" => {
                let (rows, horizon) = pair()?;
                IndexScheme::NatCross { rows, horizon }
            }
            "rows" => {
                let (rows, window) = pair()?;
                IndexScheme::RowsByZ {
                    rows,
                    window: window as i64,
                }
            }
            "fact" => IndexScheme::FactorialCycles {
                max_n: rest.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

impl fmt::Display for IndexScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexScheme::Nat { horizon } => write!(f, "nat:{horizon}"),
            IndexScheme::NatCross { rows, horizon } => write!(f, "cross:{rows}x{horizon}"),
            IndexScheme::RowsByZ { rows, window } => write!(f, "rows:{rows}x{window}"),
            IndexScheme::FactorialCycles { max_n } => write!(f, "fact:{max_n}"),
            IndexScheme::GroupCross {
                generators,
                word_len,
                horizon,
                ..
            } => write!(f, "group:{generators}gens,len{word_len}x{horizon}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Nat(usize),
    /// `(m, n)` in ω × ω.
    Cross(usize, usize),
    /// `(n, z)` in ω × ℤ.
    Row(usize, i64),
    /// `(n, m)` with `m < n!`.
    Fact(usize, usize),
    Group(Word, usize),
}

impl Index {
    /// JSON array form: `[n]`, `[m, n]`, `[n, z]`, `[n, m]`, `[[letters], n]`.
    pub fn to_json(&self) -> Value {
        match self {
            Index::Nat(n) => json!([n]),
            Index::Cross(m, n) => json!([m, n]),
            Index::Row(n, z) => json!([n, z]),
            Index::Fact(n, m) => json!([n, m]),
            Index::Group(w, n) => json!([w, n]),
        }
    }

    pub fn from_json(value: &Value, scheme: &IndexScheme) -> Result<Index, SeqError> {
        let bad = || SeqError::BadIndex(value.to_string());
        let items = value.as_array().ok_or_else(bad)?;
        let nat = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(bad);
        let index = match (scheme, items.as_slice()) {
            (IndexScheme::Nat { .. }, [n]) => Index::Nat(nat(n)?),
            (IndexScheme::NatCross { .. }, [m, n]) => Index::Cross(nat(m)?, nat(n)?),
            (IndexScheme::RowsByZ { .. }, [n, z]) => Index::Row(nat(n)?, z.as_i64().ok_or_else(bad)?),
            (IndexScheme::FactorialCycles { .. }, [n, m]) => Index::Fact(nat(n)?, nat(m)?),
            (IndexScheme::GroupCross { .. }, [w, n]) => {
                let letters = w
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|a| a.as_i64().and_then(|a| i32::try_from(a).ok()).ok_or_else(bad))
                    .collect::<Result<Word, _>>()?;
                Index::Group(letters, nat(n)?)
            }
            _ => return Err(bad()),
        };
        Ok(index)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Nat(n) => write!(f, "{n}"),
            Index::Cross(a, b) | Index::Fact(a, b) => write!(f, "({a},{b})"),
            Index::Row(n, z) => write!(f, "({n},{z})"),
            Index::Group(w, n) => {
                let letters: Vec<String> = w.iter().map(i32::to_string).collect();
                write!(f, "([{}],{n})", letters.join(" "))
            }
        }
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The in-window indices of a scheme, in canonical order, with position lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    scheme: IndexScheme,
    indices: Vec<Index>,
    words: HashMap<Word, usize>,
    fact_offsets: Vec<usize>,
}

impl Window {
    pub fn new(scheme: IndexScheme) -> Result<Window, SeqError> {
        scheme.validate()?;
        let mut words = HashMap::new();
        let mut fact_offsets = Vec::new();
        let indices: Vec<Index> = match &scheme {
            IndexScheme::Nat { horizon } => (0..*horizon).map(Index::Nat).collect(),
            IndexScheme::NatCross { rows, horizon } => (0..*rows)
                .flat_map(|m| (0..*horizon).map(move |n| Index::Cross(m, n)))
                .collect(),
            IndexScheme::RowsByZ { rows, window } => (0..*rows)
                .flat_map(|n| (-*window..=*window).map(move |z| Index::Row(n, z)))
                .collect(),
            IndexScheme::FactorialCycles { max_n } => {
                let mut out = Vec::new();
                for n in 1..=*max_n {
                    fact_offsets.push(out.len());
                    out.extend((0..factorial(n)).map(|m| Index::Fact(n, m)));
                }
                out
            }
            IndexScheme::GroupCross {
                generators,
                word_len,
                horizon,
                group,
            } => {
                let elements = group_ball(*generators, *word_len, group);
                for (i, w) in elements.iter().enumerate() {
                    words.insert(w.clone(), i);
                }
                elements
                    .iter()
                    .flat_map(|w| (0..*horizon).map(move |n| Index::Group(w.clone(), n)))
                    .collect()
            }
        };
        Ok(Window {
            scheme,
            indices,
            words,
            fact_offsets,
        })
    }

    pub fn scheme(&self) -> &IndexScheme {
        &self.scheme
    }

    pub fn indices(&self) -> &[Index] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Group elements in the window, in canonical order.
    pub fn group_elements(&self) -> Vec<Word> {
        let mut out: Vec<(usize, Word)> = self.words.iter().map(|(w, &i)| (i, w.clone())).collect();
        out.sort();
        out.into_iter().map(|(_, w)| w).collect()
    }

    /// Canonical position of an index, if it lies in the window.
    pub fn position(&self, index: &Index) -> Option<usize> {
        match (&self.scheme, index) {
            (IndexScheme::Nat { horizon }, Index::Nat(n)) => (*n < *horizon).then_some(*n),
            (IndexScheme::NatCross { rows, horizon }, Index::Cross(m, n)) => {
                (*m < *rows && *n < *horizon).then(|| m * horizon + n)
            }
            (IndexScheme::RowsByZ { rows, window }, Index::Row(n, z)) => (*n < *rows && z.abs() <= *window)
                .then(|| n * (2 * *window as usize + 1) + (z + window) as usize),
            (IndexScheme::FactorialCycles { max_n }, Index::Fact(n, m)) => {
                (*n >= 1 && *n <= *max_n && *m < factorial(*n)).then(|| self.fact_offsets[n - 1] + m)
            }
            (IndexScheme::GroupCross { horizon, .. }, Index::Group(w, n)) => {
                let row = *self.words.get(w)?;
                (*n < *horizon).then(|| row * horizon + n)
            }
            _ => None,
        }
    }
}

/// Normal-form words of length at most `max_len`, ordered by length and
/// then lexicographically.
fn group_ball(generators: usize, max_len: usize, group: &GroupKind) -> Vec<Word> {
    let letters: Vec<i32> = (1..=generators as i32).flat_map(|g| [g, -g]).collect();
    let mut seen: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
    let mut frontier = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for &a in &letters {
                let mut word = vec![a];
                word.extend_from_slice(w);
                let nf = group.normal_form(&word);
                if nf.len() <= max_len && seen.insert(nf.clone()) {
                    next.push(nf);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Word> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// An index map: one of the catalog rules, or left multiplication by a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionRule {
    /// `n ↦ n + 1` on ω.
    S,
    /// `(n, z) ↦ (n, z + 1)` on ω × ℤ.
    T,
    /// `(n, m) ↦ (n, m + 1 mod n!)`.
    R,
    /// `(m, n) ↦ (m, n + 1)` on ω × ω.
    U,
    /// `(h, n) ↦ (gh, n)` for the letter `g`.
    Generator(i32),
}

impl ActionRule {
    /// Whether the rule acts on the scheme's index set.
    pub fn fits(&self, scheme: &IndexScheme) -> bool {
        match (self, scheme) {
            (ActionRule::S, IndexScheme::Nat { .. })
            | (ActionRule::T, IndexScheme::RowsByZ { .. })
            | (ActionRule::R, IndexScheme::FactorialCycles { .. })
            | (ActionRule::U, IndexScheme::NatCross { .. }) => true,
            (ActionRule::Generator(a), IndexScheme::GroupCross { generators, .. }) => {
                *a != 0 && a.unsigned_abs() as usize <= *generators
            }
            _ => false,
        }
    }

    pub fn check(&self, scheme: &IndexScheme) -> Result<(), SeqError> {
        if self.fits(scheme) {
            Ok(())
        } else {
            Err(SeqError::RuleMismatch {
                rule: self.to_string(),
                scheme: scheme.kind().to_string(),
            })
        }
    }

    /// The image index. It may fall outside the window.
    pub fn apply(&self, index: &Index, scheme: &IndexScheme) -> Index {
        match (self, index) {
            (ActionRule::S, Index::Nat(n)) => Index::Nat(n + 1),
            (ActionRule::T, Index::Row(n, z)) => Index::Row(*n, z + 1),
            (ActionRule::R, Index::Fact(n, m)) => Index::Fact(*n, (m + 1) % factorial(*n)),
            (ActionRule::U, Index::Cross(m, n)) => Index::Cross(*m, n + 1),
            (ActionRule::Generator(a), Index::Group(w, n)) => {
                let group = match scheme {
                    IndexScheme::GroupCross { group, .. } => group,
                    _ => return index.clone(),
                };
                let mut word = vec![*a];
                word.extend_from_slice(w);
                Index::Group(group.normal_form(&word), *n)
            }
            _ => index.clone(),
        }
    }
}

impl fmt::Display for ActionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionRule::S => f.write_str("s"),
            ActionRule::T => f.write_str("t"),
            ActionRule::R => f.write_str("r"),
            ActionRule::U => f.write_str("u"),
            ActionRule::Generator(a) => write!(f, "g{a}"),
        }
    }
}

impl FromStr for ActionRule {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, SeqError> {
        match s {
            "s" => Ok(ActionRule::S),
            "t" => Ok(ActionRule::T),
            "r" => Ok(ActionRule::R),
            "u" => Ok(ActionRule::U),
            _ => s
                .strip_prefix('g')
                .and_then(|a| a.parse::<i32>().ok())
                .filter(|&a| a != 0)
                .map(ActionRule::Generator)
                .ok_or_else(|| SeqError::BadRule(s.to_string())),
        }
    }
}

/// The rules every sequence on the scheme should track.
pub fn default_rules(scheme: &IndexScheme) -> Vec<ActionRule> {
    match scheme {
        IndexScheme::Nat { .. } => vec![ActionRule::S],
        IndexScheme::NatCross { .. } => vec![ActionRule::U],
        IndexScheme::RowsByZ { .. } => vec![ActionRule::T],
        IndexScheme::FactorialCycles { .. } => vec![ActionRule::R],
        IndexScheme::GroupCross { generators, .. } => {
            (1..=*generators as i32).map(ActionRule::Generator).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn window_specs() {
        assert_eq!("nat:5".parse::<IndexScheme>().unwrap(), IndexScheme::Nat { horizon: 5 });
        assert_eq!(
            "rows:3x2".parse::<IndexScheme>().unwrap(),
            IndexScheme::RowsByZ { rows: 3, window: 2 }
        );
        assert_eq!(
            "cross:2x4".parse::<IndexScheme>().unwrap(),
            IndexScheme::NatCross { rows: 2, horizon: 4 }
        );
        for bad in ["nat:0", "fact:10", "rows:3", "zzz:1", "nat"] {
            assert!(bad.parse::<IndexScheme>().is_err(), "{bad}");
        }
    }

    #[test]
    fn factorial_window() {
        let w = Window::new(IndexScheme::FactorialCycles { max_n: 4 }).unwrap();
        assert_eq!(w.len(), 1 + 2 + 6 + 24);
        assert_eq!(w.position(&Index::Fact(3, 0)), Some(3));
        assert_eq!(ActionRule::R.apply(&Index::Fact(3, 5), w.scheme()), Index::Fact(3, 0));
        assert_eq!(w.position(&Index::Fact(5, 0)), None);
    }

    #[test]
    fn out_of_window_images() {
        let w = Window::new(IndexScheme::RowsByZ { rows: 2, window: 1 }).unwrap();
        let img = ActionRule::T.apply(&Index::Row(1, 1), w.scheme());
        assert_eq!(img, Index::Row(1, 2));
        assert_eq!(w.position(&img), None);
    }

    #[test]
    fn free_and_abelian_balls() {
        let free = IndexScheme::GroupCross {
            generators: 2,
            word_len: 2,
            horizon: 1,
            group: GroupKind::Free,
        };
        // 1 + 4 + 4·3 reduced words.
        assert_eq!(Window::new(free).unwrap().len(), 17);
        let z2 = IndexScheme::GroupCross {
            generators: 2,
            word_len: 2,
            horizon: 1,
            group: GroupKind::Abelian { orders: vec![None, None] },
        };
        // Points of ℤ² with |a| + |b| ≤ 2.
        assert_eq!(Window::new(z2.clone()).unwrap().len(), 13);
        let ab = ActionRule::Generator(1).apply(&Index::Group(vec![2], 0), &z2);
        let ba = ActionRule::Generator(2).apply(&Index::Group(vec![1], 0), &z2);
        assert_eq!(ab, ba);
        let cyclic = GroupKind::Abelian { orders: vec![Some(3)] };
        assert_eq!(cyclic.normal_form(&[-1]), vec![1, 1]);
        assert_eq!(cyclic.normal_form(&[1, 1, 1]), Vec::<i32>::new());
    }

    #[test]
    fn trivial_group_is_one_row() {
        let w = Window::new(IndexScheme::GroupCross {
            generators: 0,
            word_len: 3,
            horizon: 4,
            group: GroupKind::Free,
        })
        .unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.group_elements(), vec![Vec::<i32>::new()]);
    }

    #[test]
    fn rule_scheme_mismatch() {
        let nat = IndexScheme::Nat { horizon: 3 };
        assert!(ActionRule::S.check(&nat).is_ok());
        assert!(matches!(ActionRule::T.check(&nat), Err(SeqError::RuleMismatch { .. })));
        assert_eq!("g-2".parse::<ActionRule>().unwrap(), ActionRule::Generator(-2));
        assert!("g0".parse::<ActionRule>().is_err());
    }

    fn any_scheme() -> impl Strategy<Value = IndexScheme> {
        prop_oneof![
            (1usize..20).prop_map(|horizon| IndexScheme::Nat { horizon }),
            (1usize..5, 1usize..6).prop_map(|(rows, horizon)| IndexScheme::NatCross { rows, horizon }),
            (1usize..5, 0i64..4).prop_map(|(rows, window)| IndexScheme::RowsByZ { rows, window }),
            (1usize..6).prop_map(|max_n| IndexScheme::FactorialCycles { max_n }),
            (0usize..3, 0usize..3, 1usize..4, any::<bool>()).prop_map(|(g, l, h, free)| {
                IndexScheme::GroupCross {
                    generators: g,
                    word_len: l,
                    horizon: h,
                    group: if free { GroupKind::Free } else { GroupKind::Abelian { orders: vec![Some(4); g] } },
                }
            }),
        ]
    }

    proptest! {
        #[test]
        fn positions_are_canonical(scheme in any_scheme()) {
            let w = Window::new(scheme.clone()).unwrap();
            for (i, idx) in w.indices().iter().enumerate() {
                prop_assert_eq!(w.position(idx), Some(i));
                prop_assert_eq!(&Index::from_json(&idx.to_json(), &scheme).unwrap(), idx);
            }
            let text = serde_json::to_string(&scheme).unwrap();
            prop_assert_eq!(serde_json::from_str::<IndexScheme>(&text).unwrap(), scheme);
        }

        #[test]
        fn normal_form_is_idempotent(word in proptest::collection::vec(prop_oneof![-3i32..=-1, 1i32..=3], 0..10)) {
            for g in [GroupKind::Free, GroupKind::Abelian { orders: vec![None, Some(2), Some(5)] }] {
                let nf = g.normal_form(&word);
                prop_assert_eq!(g.normal_form(&nf), nf);
            }
        }
    }
}
