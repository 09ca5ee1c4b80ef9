//! Equivariant maps between finite systems: `π` with `π ∘ g = f ∘ π`.
//!
//! A quotient is an equivariant surjection, a subquotient any equivariant
//! map. Finite discrete spaces make every map continuous, so both are
//! purely combinatorial.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::chaindyn::{is_chain_recurrent, is_chain_transitive, Resolution};
use crate::system::{FiniteSystem, SystemError};

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("state `{0}` appears in more than one source")]
    OverlappingSources(String),
    #[error("maps have different targets")]
    MismatchedTargets,
    #[error("nothing to paste")]
    NoMaps,
    #[error("cannot compose: the first map's target is not the second map's source")]
    NotComposable,
    #[error("assignment does not cover every source state")]
    Incomplete,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap {
    pub source: FiniteSystem,
    pub target: FiniteSystem,
    /// `assignment[x]` is the target state of source state `x`.
    pub assignment: Vec<usize>,
    pub surjective: bool,
}

impl EquivariantMap {
    /// Builds the map and sets the surjectivity flag from the image.
    pub fn new(source: FiniteSystem, target: FiniteSystem, assignment: Vec<usize>) -> Self {
        let surjective = covers_target(&assignment, target.len());
        EquivariantMap {
            source,
            target,
            assignment,
            surjective,
        }
    }

    pub fn identity(sys: &FiniteSystem) -> Self {
        EquivariantMap::new(sys.clone(), sys.clone(), (0..sys.len()).collect())
    }

    pub fn to_json(&self) -> String {
        let assignment: BTreeMap<&str, &str> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.source.label(x), self.target.label(y)))
            .collect();
        let source: Value = serde_json::from_str(&self.source.to_json()).expect("valid json");
        let target: Value = serde_json::from_str(&self.target.to_json()).expect("valid json");
        let repr = MapRepr {
            source,
            target,
            assignment: assignment.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            surjective: self.surjective,
        };
        serde_json::to_string_pretty(&repr).expect("map serializes")
    }

    /// Reads the JSON form. The surjectivity flag is taken as written so
    /// that [`verify_equivariant`] can catch a wrong flag.
    pub fn from_json(text: &str) -> Result<Self, QuotientError> {
        let repr: MapRepr = serde_json::from_str(text)?;
        let source = FiniteSystem::from_json(&repr.source.to_string())?;
        let target = FiniteSystem::from_json(&repr.target.to_string())?;
        let mut assignment = vec![None; source.len()];
        for (a, b) in &repr.assignment {
            assignment[source.state(a)?] = Some(target.state(b)?);
        }
        let assignment = assignment
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(QuotientError::Incomplete)?;
        Ok(EquivariantMap {
            source,
            target,
            assignment,
            surjective: repr.surjective,
        })
    }

    /// Bipartite Graphviz picture: both systems' dynamics, and dashed
    /// edges for the map.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph equivariant {\n  rankdir=LR;\n");
        for (side, sys) in [("src", &self.source), ("tgt", &self.target)] {
            out.push_str(&format!("  subgraph cluster_{side} {{\n    label=\"{side}\";\n"));
            for (i, l) in sys.labels().iter().enumerate() {
                out.push_str(&format!("    {side}{i} [label={l:?}];\n"));
            }
            for i in 0..sys.len() {
                out.push_str(&format!("    {side}{i} -> {side}{} [step=\"exact\"];\n", sys.apply(i)));
            }
            out.push_str("  }\n");
        }
        for (x, &y) in self.assignment.iter().enumerate() {
            out.push_str(&format!("  src{x} -> tgt{y} [style=dashed, role=\"map\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    source: Value,
    target: Value,
    assignment: BTreeMap<String, String>,
    surjective: bool,
}

fn covers_target(assignment: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    for &y in assignment {
        if y < n {
            hit[y] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// `π ∘ g = f ∘ π` at every source state, and the surjectivity flag is right.
pub fn verify_equivariant(m: &EquivariantMap) -> bool {
    m.assignment.len() == m.source.len()
        && m.assignment.iter().all(|&y| y < m.target.len())
        && (0..m.source.len()).all(|x| m.assignment[m.source.apply(x)] == m.target.apply(m.assignment[x]))
        && m.surjective == covers_target(&m.assignment, m.target.len())
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EquivariantMap),
    None,
    /// The step budget ran out before the search finished.
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<EquivariantMap> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// The least equivariant surjection from `g_sys` onto `f_sys`, comparing
/// assignments with source states in label order and target states in
/// label order.
pub fn find_quotient(g_sys: &FiniteSystem, f_sys: &FiniteSystem) -> Option<EquivariantMap> {
    search(g_sys, f_sys, true, None).found()
}

/// The least equivariant map, onto or not.
pub fn find_subquotient(g_sys: &FiniteSystem, f_sys: &FiniteSystem) -> Option<EquivariantMap> {
    search(g_sys, f_sys, false, None).found()
}

/// An equivariant bijection, if one exists.
pub fn find_isomorphism(g_sys: &FiniteSystem, f_sys: &FiniteSystem) -> Option<EquivariantMap> {
    if g_sys.len() != f_sys.len() {
        return None;
    }
    find_quotient(g_sys, f_sys)
}

/// Backtracking search with a budget on the number of value trials.
///
/// Assigning `π(x) = v` immediately forces `π(g(x)) = f(v)` along the
/// forward orbit and is checked against every assigned preimage of `x`.
/// For quotients, branches that can no longer hit every target state are cut.
pub fn search(g_sys: &FiniteSystem, f_sys: &FiniteSystem, surjective: bool, budget: Option<u64>) -> SearchOutcome {
    let mut order: Vec<usize> = (0..g_sys.len()).collect();
    order.sort_by(|&a, &b| g_sys.label(a).cmp(g_sys.label(b)));
    let mut values: Vec<usize> = (0..f_sys.len()).collect();
    values.sort_by(|&a, &b| f_sys.label(a).cmp(f_sys.label(b)));
    let mut preimages = vec![Vec::new(); g_sys.len()];
    for x in 0..g_sys.len() {
        preimages[g_sys.apply(x)].push(x);
    }
    let mut s = Search {
        g: g_sys,
        f: f_sys,
        preimages,
        order,
        values,
        surjective,
        assignment: vec![None; g_sys.len()],
        hits: vec![0; f_sys.len()],
        unhit: f_sys.len(),
        unassigned: g_sys.len(),
        budget,
        trail: Vec::new(),
    };
    match s.run(0) {
        Ok(true) => {
            let assignment = s.assignment.iter().map(|v| v.expect("complete")).collect();
            SearchOutcome::Found(EquivariantMap::new(g_sys.clone(), f_sys.clone(), assignment))
        }
        Ok(false) => SearchOutcome::None,
        Err(OutOfBudget) => SearchOutcome::BudgetExhausted,
    }
}

struct OutOfBudget;

struct Search<'a> {
    g: &'a FiniteSystem,
    f: &'a FiniteSystem,
    preimages: Vec<Vec<usize>>,
    order: Vec<usize>,
    values: Vec<usize>,
    surjective: bool,
    assignment: Vec<Option<usize>>,
    hits: Vec<usize>,
    unhit: usize,
    unassigned: usize,
    budget: Option<u64>,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, OutOfBudget> {
        let Some(&x) = self.order[depth..].iter().find(|&&x| self.assignment[x].is_none()) else {
            return Ok(!self.surjective || self.unhit == 0);
        };
        let next_depth = depth + self.order[depth..].iter().position(|&y| y == x).expect("found") + 1;
        for vi in 0..self.values.len() {
            if let Some(b) = self.budget.as_mut() {
                if *b == 0 {
                    return Err(OutOfBudget);
                }
                *b -= 1;
            }
            let v = self.values[vi];
            let mark = self.trail.len();
            if self.assign(x, v) && (!self.surjective || self.unhit <= self.unassigned) && self.run(next_depth)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    /// Sets `π(x) = v` and everything it forces; false on a conflict.
    fn assign(&mut self, x: usize, v: usize) -> bool {
        let (mut x, mut v) = (x, v);
        loop {
            match self.assignment[x] {
                Some(w) => return w == v,
                None => {
                    let consistent = self.preimages[x]
                        .iter()
                        .all(|&p| self.assignment[p].is_none_or(|w| self.f.apply(w) == v));
                    if !consistent {
                        return false;
                    }
                    self.assignment[x] = Some(v);
                    self.trail.push(x);
                    self.unassigned -= 1;
                    if self.hits[v] == 0 {
                        self.unhit -= 1;
                    }
                    self.hits[v] += 1;
                    x = self.g.apply(x);
                    v = self.f.apply(v);
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty trail");
            let v = self.assignment[x].take().expect("trail holds assigned states");
            self.unassigned += 1;
            self.hits[v] -= 1;
            if self.hits[v] == 0 {
                self.unhit += 1;
            }
        }
    }
}

/// Disjoint union of systems, keeping labels; metrics and covers are dropped.
pub fn disjoint_union(parts: &[&FiniteSystem]) -> Result<FiniteSystem, QuotientError> {
    let mut labels = Vec::new();
    let mut map = Vec::new();
    for part in parts {
        let offset = labels.len();
        for l in part.labels() {
            if labels.contains(l) {
                return Err(QuotientError::OverlappingSources(l.clone()));
            }
        }
        labels.extend(part.labels().iter().cloned());
        map.extend(part.map().iter().map(|y| y + offset));
    }
    Ok(FiniteSystem::new(labels, map)?)
}

/// Unites maps with disjoint sources and a common target into one map on
/// the disjoint union of the sources.
pub fn paste(maps: &[EquivariantMap]) -> Result<EquivariantMap, QuotientError> {
    let first = maps.first().ok_or(QuotientError::NoMaps)?;
    if maps.iter().any(|m| m.target != first.target) {
        return Err(QuotientError::MismatchedTargets);
    }
    let sources: Vec<&FiniteSystem> = maps.iter().map(|m| &m.source).collect();
    let source = disjoint_union(&sources)?;
    let assignment = maps.iter().flat_map(|m| m.assignment.iter().copied()).collect();
    Ok(EquivariantMap::new(source, first.target.clone(), assignment))
}

/// `second ∘ first`.
pub fn compose(first: &EquivariantMap, second: &EquivariantMap) -> Result<EquivariantMap, QuotientError> {
    if first.target.labels() != second.source.labels() || first.target.map() != second.source.map() {
        return Err(QuotientError::NotComposable);
    }
    let assignment = first.assignment.iter().map(|&y| second.assignment[y]).collect();
    Ok(EquivariantMap::new(first.source.clone(), second.target.clone(), assignment))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainProperty {
    Transitive,
    Recurrent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preservation {
    Pass,
    Fail,
    /// The source lacks the property, or there is no quotient.
    Vacuous,
}

fn has_property(sys: &FiniteSystem, property: ChainProperty) -> bool {
    let res = Resolution::Singleton;
    match property {
        ChainProperty::Transitive => is_chain_transitive(sys, &res),
        ChainProperty::Recurrent => is_chain_recurrent(sys, &res),
    }
    .expect("singleton resolution always applies")
}

/// Whether a quotient of `g_sys` onto `f_sys` carries the property over.
pub fn preservation_test(g_sys: &FiniteSystem, f_sys: &FiniteSystem, property: ChainProperty) -> Preservation {
    if !has_property(g_sys, property) || find_quotient(g_sys, f_sys).is_none() {
        return Preservation::Vacuous;
    }
    if has_property(f_sys, property) {
        Preservation::Pass
    } else {
        Preservation::Fail
    }
}
