//! Finite dynamical systems: a total self-map on labeled states, optionally
//! with a rational metric and named covers.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` has no image")]
    MissingImage(String),
    #[error("invalid metric: {0}")]
    BadMetric(String),
    #[error("invalid cover `{0}`: {1}")]
    BadCover(String, String),
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error("system has no states")]
    Empty,
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// A state set `0..len` with labels, a total map, an optional metric and covers.
///
/// States are ordered by declaration; indices are positions in `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSystem {
    labels: Vec<String>,
    map: Vec<usize>,
    metric: Option<Vec<Vec<Rational64>>>,
    covers: BTreeMap<String, Vec<Vec<usize>>>,
}

impl FiniteSystem {
    /// States labeled `0`, `1`, ... with `map[i]` the image of state `i`.
    pub fn from_indices(map: Vec<usize>) -> Result<Self, SystemError> {
        let labels = (0..map.len()).map(|i| i.to_string()).collect();
        FiniteSystem::new(labels, map)
    }

    pub fn new(labels: Vec<String>, map: Vec<usize>) -> Result<Self, SystemError> {
        if labels.is_empty() {
            return Err(SystemError::Empty);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SystemError::DuplicateState(l.clone()));
            }
        }
        if map.len() != labels.len() {
            let missing = labels.get(map.len()).cloned().unwrap_or_default();
            return Err(SystemError::MissingImage(missing));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= labels.len()) {
            return Err(SystemError::UnknownState(bad.to_string()));
        }
        Ok(FiniteSystem {
            labels,
            map,
            metric: None,
            covers: BTreeMap::new(),
        })
    }

    pub fn with_metric(mut self, metric: Vec<Vec<Rational64>>) -> Result<Self, SystemError> {
        validate_metric(&metric, self.len())?;
        self.metric = Some(metric);
        Ok(self)
    }

    /// The discrete metric: distance 1 between distinct states.
    pub fn with_unit_metric(self) -> Self {
        let n = self.len();
        let metric = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer((i != j) as i64)).collect())
            .collect();
        self.with_metric(metric).expect("unit metric is valid")
    }

    pub fn with_cover(mut self, name: &str, blocks: Vec<Vec<usize>>) -> Result<Self, SystemError> {
        validate_cover(name, &blocks, self.len())?;
        self.covers.insert(name.to_string(), blocks);
        Ok(self)
    }

    /// Same states, metric and covers; new map.
    pub fn with_map(&self, map: Vec<usize>) -> Result<Self, SystemError> {
        let mut out = FiniteSystem::new(self.labels.clone(), map)?;
        out.metric = self.metric.clone();
        out.covers = self.covers.clone();
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn state(&self, label: &str) -> Result<usize, SystemError> {
        self.index_of(label)
            .ok_or_else(|| SystemError::UnknownState(label.to_string()))
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn metric(&self) -> Option<&Vec<Vec<Rational64>>> {
        self.metric.as_ref()
    }

    pub fn dist(&self, x: usize, y: usize) -> Option<Rational64> {
        self.metric.as_ref().map(|m| m[x][y])
    }

    pub fn covers(&self) -> &BTreeMap<String, Vec<Vec<usize>>> {
        &self.covers
    }

    pub fn cover(&self, name: &str) -> Option<&Vec<Vec<usize>>> {
        self.covers.get(name)
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Largest distance, if there is a metric.
    pub fn diameter(&self) -> Option<Rational64> {
        self.metric
            .as_ref()
            .map(|m| m.iter().flatten().copied().max().unwrap_or_else(Rational64::zero))
    }

    /// Image of a state set under the map.
    pub fn image(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&x| self.map[x]).collect()
    }

    pub fn from_json(text: &str) -> Result<Self, SystemError> {
        let raw: SystemRepr = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SystemError> {
        FiniteSystem::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SystemRepr::from(self)).expect("system serializes")
    }
}

impl fmt::Display for FiniteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = (0..self.len())
            .map(|i| format!("{}→{}", self.labels[i], self.labels[self.map[i]]))
            .collect();
        write!(f, "{{{}}}", arrows.join(", "))
    }
}

fn validate_metric(m: &[Vec<Rational64>], n: usize) -> Result<(), SystemError> {
    let bad = |msg: String| Err(SystemError::BadMetric(msg));
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return bad(format!("expected a {n}×{n} matrix"));
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return bad(format!("d({i},{i}) ≠ 0"));
        }
        for j in 0..n {
            if m[i][j] != m[j][i] {
                return bad(format!("d({i},{j}) ≠ d({j},{i})"));
            }
            if i != j && !m[i][j].is_positive() {
                return bad(format!("d({i},{j}) must be positive"));
            }
            for k in 0..n {
                if m[i][k] > m[i][j] + m[j][k] {
                    return bad(format!("triangle inequality fails at ({i},{j},{k})"));
                }
            }
        }
    }
    Ok(())
}

fn validate_cover(name: &str, blocks: &[Vec<usize>], n: usize) -> Result<(), SystemError> {
    let mut covered = vec![false; n];
    for &x in blocks.iter().flatten() {
        if x >= n {
            return Err(SystemError::BadCover(name.into(), format!("state index {x} out of range")));
        }
        covered[x] = true;
    }
    match covered.iter().position(|c| !c) {
        Some(x) => Err(SystemError::BadCover(name.into(), format!("state {x} is not covered"))),
        None => Ok(()),
    }
}

/// Parses `3`, `-2`, `1/3`, `0.25`, `1e-2`.
pub fn parse_rational(text: &str) -> Result<Rational64, SystemError> {
    let bad = || SystemError::BadRational(text.to_string());
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let negative = mantissa.starts_with('-');
    let digits = mantissa.trim_start_matches(['-', '+']);
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let numer: i64 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let pow = 10i64.checked_pow(scale.unsigned_abs()).ok_or_else(bad)?;
    let value = if scale >= 0 {
        Rational64::from_integer(numer.checked_mul(pow).ok_or_else(bad)?)
    } else {
        Rational64::new(numer, pow)
    };
    Ok(if negative { -value } else { value })
}

/// Integer when whole, `p/q` otherwise.
pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Rat(Rational64);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            s.serialize_i64(*self.0.numer())
        } else {
            s.serialize_str(&format_rational(&self.0))
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            other => return Err(de::Error::custom(format!("expected a rational, got {other}"))),
        };
        parse_rational(&text).map(Rat).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemRepr {
    states: Vec<String>,
    map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    covers: BTreeMap<String, Vec<Vec<String>>>,
}

impl TryFrom<SystemRepr> for FiniteSystem {
    type Error = SystemError;

    fn try_from(raw: SystemRepr) -> Result<Self, SystemError> {
        let index: HashMap<&str, usize> = raw
            .states
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| SystemError::UnknownState(l.to_string()))
        };
        for source in raw.map.keys() {
            lookup(source)?;
        }
        let map = raw
            .states
            .iter()
            .map(|l| match raw.map.get(l) {
                Some(img) => lookup(img),
                None => Err(SystemError::MissingImage(l.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut sys = FiniteSystem::new(raw.states.clone(), map)?;
        if let Some(m) = raw.metric {
            sys = sys.with_metric(m.into_iter().map(|row| row.into_iter().map(|r| r.0).collect()).collect())?;
        }
        for (name, blocks) in &raw.covers {
            let blocks = blocks
                .iter()
                .map(|b| b.iter().map(|l| lookup(l)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            sys = sys.with_cover(name, blocks)?;
        }
        Ok(sys)
    }
}

impl From<&FiniteSystem> for SystemRepr {
    fn from(sys: &FiniteSystem) -> Self {
        let label = |i: &usize| sys.labels[*i].clone();
        SystemRepr {
            states: sys.labels.clone(),
            map: (0..sys.len()).map(|i| (label(&i), label(&sys.map[i]))).collect(),
            metric: sys
                .metric
                .as_ref()
                .map(|m| m.iter().map(|row| row.iter().map(|r| Rat(*r)).collect()).collect()),
            covers: sys
                .covers
                .iter()
                .map(|(k, blocks)| (k.clone(), blocks.iter().map(|b| b.iter().map(label).collect()).collect()))
                .collect(),
        }
    }
}
