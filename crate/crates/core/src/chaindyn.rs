//! Chains, chain transitivity and chain recurrence on finite systems.
//!
//! A chain step at a resolution goes from `x` to `y` when `map(x)` and `y`
//! are close: within distance `ε` (strictly), or inside one block of a cover.
//! On a discrete finite space the singleton cover is the finest resolution,
//! and answers at that resolution are the topological ones.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::Signed;
use thiserror::Error;

use crate::system::{format_rational, FiniteSystem};

/// Largest state count the subset-enumerating oracles accept by default.
pub const DEFAULT_ORACLE_BOUND: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("ε-chains need a metric")]
    MissingMetric,
    #[error("ε must be positive, got {0}")]
    NonPositiveEps(String),
    #[error("unknown cover `{0}`")]
    UnknownCover(String),
    #[error("{states} states exceed the brute-force bound {bound}")]
    TooLarge { states: usize, bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Epsilon(Rational64),
    Cover(String),
    /// The cover by singletons: steps follow the map exactly.
    Singleton,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Epsilon(e) => write!(f, "eps={}", format_rational(e)),
            Resolution::Cover(name) => write!(f, "cover={name}"),
            Resolution::Singleton => f.write_str("singleton"),
        }
    }
}

/// Directed graph of admissible chain steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGraph {
    labels: Vec<String>,
    map: Vec<usize>,
    succ: Vec<Vec<usize>>,
}

impl ChainGraph {
    fn build(sys: &FiniteSystem, step: impl Fn(usize, usize) -> bool) -> Self {
        let n = sys.len();
        let succ = (0..n)
            .map(|x| (0..n).filter(|&y| step(sys.apply(x), y)).collect())
            .collect();
        ChainGraph {
            labels: sys.labels().to_vec(),
            map: sys.map().to_vec(),
            succ,
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, x: usize) -> &[usize] {
        &self.succ[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.succ[x].binary_search(&y).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Strongly connected components, each sorted, listed by least member.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let mut tarjan = Tarjan::new(self.len());
        for v in 0..self.len() {
            if tarjan.index[v].is_none() {
                tarjan.visit(v, &self.succ);
            }
        }
        let mut comps = tarjan.comps;
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    /// Vertices on some directed cycle (a self-loop counts).
    pub fn cyclic_vertices(&self) -> BTreeSet<usize> {
        self.sccs()
            .into_iter()
            .filter(|c| c.len() > 1 || self.has_edge(c[0], c[0]))
            .flatten()
            .collect()
    }

    /// Graphviz rendering. Edges that follow the map exactly are marked
    /// `step="exact"`, the rest `step="approx"`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph chains {\n");
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  {i} [label={l:?}];\n"));
        }
        for (x, y) in self.edges() {
            let kind = if self.map[x] == y { "exact" } else { "approx" };
            out.push_str(&format!("  {x} -> {y} [step=\"{kind}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

struct Tarjan {
    next: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

impl Tarjan {
    fn new(n: usize) -> Self {
        Tarjan {
            next: 0,
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            comps: Vec::new(),
        }
    }

    fn visit(&mut self, v: usize, succ: &[Vec<usize>]) {
        self.index[v] = Some(self.next);
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for &w in &succ[v] {
            match self.index[w] {
                None => {
                    self.visit(w, succ);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(self.low[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("stack holds the component");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            self.comps.push(comp);
        }
    }
}

/// Edge `(x, y)` iff `d(map(x), y) < eps`.
pub fn eps_graph(sys: &FiniteSystem, eps: Rational64) -> Result<ChainGraph, ChainError> {
    if !eps.is_positive() {
        return Err(ChainError::NonPositiveEps(format_rational(&eps)));
    }
    let metric = sys.metric().ok_or(ChainError::MissingMetric)?;
    Ok(ChainGraph::build(sys, |fx, y| metric[fx][y] < eps))
}

/// Edge `(x, y)` iff some block of the cover contains `map(x)` and `y`.
pub fn cover_graph(sys: &FiniteSystem, cover: &str) -> Result<ChainGraph, ChainError> {
    let blocks = sys
        .cover(cover)
        .ok_or_else(|| ChainError::UnknownCover(cover.to_string()))?;
    let member: Vec<Vec<bool>> = blocks
        .iter()
        .map(|b| {
            let mut m = vec![false; sys.len()];
            b.iter().for_each(|&x| m[x] = true);
            m
        })
        .collect();
    Ok(ChainGraph::build(sys, |fx, y| member.iter().any(|m| m[fx] && m[y])))
}

pub fn singleton_graph(sys: &FiniteSystem) -> ChainGraph {
    ChainGraph::build(sys, |fx, y| fx == y)
}

pub fn chain_graph(sys: &FiniteSystem, resolution: &Resolution) -> Result<ChainGraph, ChainError> {
    match resolution {
        Resolution::Epsilon(eps) => eps_graph(sys, *eps),
        Resolution::Cover(name) => cover_graph(sys, name),
        Resolution::Singleton => Ok(singleton_graph(sys)),
    }
}

/// A chain of at least one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub points: Vec<usize>,
    pub resolution: Resolution,
}

impl Chain {
    pub fn steps(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// Rechecks every step against the step predicate directly, without
    /// going through a chain graph.
    pub fn validate(&self, sys: &FiniteSystem) -> bool {
        if self.points.len() < 2 || self.points.iter().any(|&p| p >= sys.len()) {
            return false;
        }
        self.points.windows(2).all(|w| {
            let fx = sys.apply(w[0]);
            let y = w[1];
            match &self.resolution {
                Resolution::Singleton => fx == y,
                Resolution::Epsilon(eps) => sys.dist(fx, y).is_some_and(|d| d < *eps),
                Resolution::Cover(name) => sys
                    .cover(name)
                    .is_some_and(|blocks| blocks.iter().any(|b| b.contains(&fx) && b.contains(&y))),
            }
        })
    }

    pub fn render(&self, sys: &FiniteSystem) -> String {
        let names: Vec<&str> = self.points.iter().map(|&p| sys.label(p)).collect();
        format!("⟨{}⟩", names.join(", "))
    }
}

/// A shortest chain from `a` to `b` with at least one step. Among shortest
/// chains the one found by breadth-first search in index order is returned.
pub fn find_chain(
    sys: &FiniteSystem,
    resolution: &Resolution,
    a: usize,
    b: usize,
) -> Result<Option<Chain>, ChainError> {
    let graph = chain_graph(sys, resolution)?;
    Ok(shortest_path(&graph, a, b).map(|points| Chain {
        points,
        resolution: resolution.clone(),
    }))
}

fn shortest_path(graph: &ChainGraph, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = graph.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &y in graph.successors(a) {
        if !seen[y] {
            seen[y] = true;
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![b];
            let mut cur = b;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.push(a);
            path.reverse();
            return Some(path);
        }
        for &y in graph.successors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    None
}

/// Strong connectivity of the chain graph; a lone state needs a self-loop.
pub fn is_chain_transitive(sys: &FiniteSystem, resolution: &Resolution) -> Result<bool, ChainError> {
    let graph = chain_graph(sys, resolution)?;
    let sccs = graph.sccs();
    Ok(sccs.len() == 1 && (graph.len() > 1 || graph.has_edge(0, 0)))
}

/// Every state lies on a directed cycle of the chain graph.
pub fn is_chain_recurrent(sys: &FiniteSystem, resolution: &Resolution) -> Result<bool, ChainError> {
    Ok(chain_recurrent_set(sys, resolution)?.len() == sys.len())
}

pub fn chain_recurrent_set(sys: &FiniteSystem, resolution: &Resolution) -> Result<BTreeSet<usize>, ChainError> {
    Ok(chain_graph(sys, resolution)?.cyclic_vertices())
}

fn check_bound(sys: &FiniteSystem, bound: usize) -> Result<(), ChainError> {
    if sys.len() > bound || sys.len() >= usize::BITS as usize {
        return Err(ChainError::TooLarge {
            states: sys.len(),
            bound,
        });
    }
    Ok(())
}

fn image_mask(sys: &FiniteSystem, mask: u64) -> u64 {
    (0..sys.len())
        .filter(|x| mask >> x & 1 == 1)
        .fold(0, |acc, x| acc | 1 << sys.apply(x))
}

/// False iff some subset `U` with `∅ ≠ U ≠ X` has `map(U) ⊆ U`.
/// Every subset of a finite discrete space is clopen.
pub fn clopen_transitive_oracle(sys: &FiniteSystem, bound: usize) -> Result<bool, ChainError> {
    check_bound(sys, bound)?;
    let full = (1u64 << sys.len()) - 1;
    Ok((1..full).all(|u| image_mask(sys, u) & !u != 0))
}

/// False iff some subset `U` (including `X`) has `map(U) ⊊ U`.
pub fn clopen_recurrent_oracle(sys: &FiniteSystem, bound: usize) -> Result<bool, ChainError> {
    check_bound(sys, bound)?;
    let full = (1u64 << sys.len()) - 1;
    Ok((1..=full).all(|u| {
        let img = image_mask(sys, u);
        !(img & !u == 0 && img != u)
    }))
}

/// A minimal nonempty invariant set: a periodic cycle of the map, chosen by
/// smallest size and then by least label.
pub fn minimal_subsystem(sys: &FiniteSystem) -> BTreeSet<usize> {
    let mut best: Option<(usize, &str, BTreeSet<usize>)> = None;
    for cycle in periodic_cycles(sys) {
        let least = cycle.iter().map(|&x| sys.label(x)).min().expect("cycles are nonempty");
        let better = match &best {
            None => true,
            Some((size, label, _)) => (cycle.len(), least) < (*size, *label),
        };
        if better {
            best = Some((cycle.len(), least, cycle));
        }
    }
    best.expect("a finite nonempty system has a periodic cycle").2
}

/// The distinct periodic cycles of the map.
pub fn periodic_cycles(sys: &FiniteSystem) -> Vec<BTreeSet<usize>> {
    let n = sys.len();
    let mut on_cycle = vec![false; n];
    for start in 0..n {
        // After n steps every orbit is inside its cycle.
        let mut x = start;
        for _ in 0..n {
            x = sys.apply(x);
        }
        on_cycle[x] = true;
    }
    let mut done = vec![false; n];
    let mut cycles = Vec::new();
    for x in 0..n {
        if on_cycle[x] && !done[x] {
            let mut cycle = BTreeSet::new();
            let mut y = x;
            while cycle.insert(y) {
                done[y] = true;
                y = sys.apply(y);
            }
            cycles.push(cycle);
        }
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::tests::any_system;
    use proptest::prelude::*;

    fn sys(map: &[usize]) -> FiniteSystem {
        FiniteSystem::from_indices(map.to_vec()).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    /// Points 0..n on a line, d(i, j) = |i - j|.
    fn line(map: &[usize]) -> FiniteSystem {
        let n = map.len() as i64;
        let metric = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer((i - j).abs())).collect())
            .collect();
        sys(map).with_metric(metric).unwrap()
    }

    #[test]
    fn eps_graph_examples() {
        let cycle = sys(&[1, 2, 0]).with_unit_metric();
        let g = eps_graph(&cycle, r(1, 2)).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(eps_graph(&cycle, r(2, 1)).unwrap().edge_count(), 9);

        let g = eps_graph(&line(&[0, 1, 2, 3]), r(3, 2)).unwrap();
        let mut expected = vec![];
        for x in 0..4usize {
            for y in 0..4usize {
                if x.abs_diff(y) <= 1 {
                    expected.push((x, y));
                }
            }
        }
        assert_eq!(g.edges(), expected);
        // Strict inequality: distance exactly ε is not a step.
        assert_eq!(eps_graph(&line(&[0, 1]), r(1, 1)).unwrap().edges(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn eps_graph_errors() {
        assert_eq!(eps_graph(&sys(&[0]), r(1, 1)), Err(ChainError::MissingMetric));
        assert!(matches!(
            eps_graph(&sys(&[0]).with_unit_metric(), r(0, 1)),
            Err(ChainError::NonPositiveEps(_))
        ));
    }

    #[test]
    fn cover_graph_examples() {
        let s = sys(&[1, 2, 0])
            .with_cover("single", vec![vec![0], vec![1], vec![2]])
            .unwrap()
            .with_cover("whole", vec![vec![0, 1, 2]])
            .unwrap()
            .with_cover("two", vec![vec![0, 1], vec![1, 2]])
            .unwrap();
        assert_eq!(cover_graph(&s, "single").unwrap(), singleton_graph(&s));
        assert_eq!(cover_graph(&s, "whole").unwrap().edge_count(), 9);
        // map(0)=1 meets both blocks, map(1)=2 only {1,2}, map(2)=0 only {0,1}.
        assert_eq!(
            cover_graph(&s, "two").unwrap().edges(),
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 0), (2, 1)]
        );
        assert_eq!(cover_graph(&s, "nope"), Err(ChainError::UnknownCover("nope".into())));
    }

    #[test]
    fn chains() {
        let cycle = sys(&[1, 2, 0]);
        let c = find_chain(&cycle, &Resolution::Singleton, 0, 0).unwrap().unwrap();
        assert_eq!(c.points, vec![0, 1, 2, 0]);
        assert!(c.validate(&cycle));
        assert_eq!(find_chain(&sys(&[0, 1]), &Resolution::Singleton, 0, 1).unwrap(), None);
        let four = sys(&[1, 2, 3, 0]).with_unit_metric();
        let c = find_chain(&four, &Resolution::Epsilon(r(1, 1) + r(1, 100)), 0, 2).unwrap().unwrap();
        assert_eq!(c.steps(), 1);
        let fixed = sys(&[0]);
        assert_eq!(
            find_chain(&fixed, &Resolution::Singleton, 0, 0).unwrap().unwrap().points,
            vec![0, 0]
        );
    }

    #[test]
    fn transitivity_and_recurrence() {
        let two_twos = sys(&[1, 0, 3, 2]);
        assert!(is_chain_transitive(&sys(&[1, 2, 3, 0]), &Resolution::Singleton).unwrap());
        assert!(!is_chain_transitive(&two_twos, &Resolution::Singleton).unwrap());
        assert!(is_chain_recurrent(&two_twos, &Resolution::Singleton).unwrap());
        let bridged = two_twos.clone().with_cover("bridge", vec![vec![0], vec![1, 2], vec![3]]).unwrap();
        assert!(is_chain_transitive(&bridged, &Resolution::Cover("bridge".into())).unwrap());

        let sink = sys(&[1, 1]).with_cover("all", vec![vec![0, 1]]).unwrap();
        assert!(!is_chain_recurrent(&sink, &Resolution::Singleton).unwrap());
        assert!(is_chain_recurrent(&sink, &Resolution::Cover("all".into())).unwrap());
        assert_eq!(
            chain_recurrent_set(&sink, &Resolution::Singleton).unwrap(),
            BTreeSet::from([1])
        );
        // A single fixed point carries a self-loop.
        assert!(is_chain_transitive(&sys(&[0]), &Resolution::Singleton).unwrap());
    }

    #[test]
    fn oracles() {
        assert!(clopen_transitive_oracle(&sys(&[1, 2, 0]), 16).unwrap());
        assert!(!clopen_transitive_oracle(&sys(&[0, 1]), 16).unwrap());
        assert!(!clopen_transitive_oracle(&sys(&[1, 0, 3, 2]), 16).unwrap());
        assert!(clopen_recurrent_oracle(&sys(&[0, 1]), 16).unwrap());
        assert!(!clopen_recurrent_oracle(&sys(&[1, 1]), 16).unwrap());
        assert_eq!(
            clopen_recurrent_oracle(&sys(&[0; 17]), DEFAULT_ORACLE_BOUND),
            Err(ChainError::TooLarge { states: 17, bound: 16 })
        );
    }

    #[test]
    fn minimal_subsystems() {
        assert_eq!(minimal_subsystem(&sys(&[1, 1])), BTreeSet::from([1]));
        assert_eq!(minimal_subsystem(&sys(&[1, 2, 0])), BTreeSet::from([0, 1, 2]));
        assert_eq!(minimal_subsystem(&sys(&[1, 2, 0, 4, 3])), BTreeSet::from([3, 4]));
        // Ties broken by least label, not by position.
        let labeled = FiniteSystem::new(vec!["b".into(), "a".into()], vec![0, 1]).unwrap();
        assert_eq!(minimal_subsystem(&labeled), BTreeSet::from([1]));
    }

    #[test]
    fn dot_output() {
        let s = sys(&[1, 0]).with_unit_metric();
        let dot = eps_graph(&s, r(2, 1)).unwrap().to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("0 -> 1 [step=\"exact\"]"));
        assert!(dot.contains("0 -> 0 [step=\"approx\"]"));
        assert!(dot.contains("[label=\"1\"]"));
    }

    fn all_resolutions(s: &FiniteSystem) -> Vec<Resolution> {
        let mut out = vec![Resolution::Singleton];
        out.extend([1, 2].map(|k| Resolution::Epsilon(r(k, 1))));
        out.extend(s.covers().keys().cloned().map(Resolution::Cover));
        out
    }

    fn with_covers(s: FiniteSystem) -> FiniteSystem {
        let n = s.len();
        let halves = vec![(0..n.div_ceil(2)).collect(), (n / 2..n).collect()];
        s.with_unit_metric().with_cover("halves", halves).unwrap()
    }

    proptest! {
        #[test]
        fn transitive_implies_recurrent(s in any_system(6)) {
            let s = with_covers(s);
            for res in all_resolutions(&s) {
                if is_chain_transitive(&s, &res).unwrap() {
                    prop_assert!(is_chain_recurrent(&s, &res).unwrap());
                }
            }
        }

        #[test]
        fn chains_everywhere_iff_transitive(s in any_system(5)) {
            let s = with_covers(s);
            for res in all_resolutions(&s) {
                let all = (0..s.len()).all(|a| (0..s.len()).all(|b| {
                    find_chain(&s, &res, a, b).unwrap().is_some_and(|c| c.validate(&s))
                }));
                prop_assert_eq!(all, is_chain_transitive(&s, &res).unwrap());
            }
        }

        #[test]
        fn eps_monotone(s in any_system(6), a in 1i64..8, b in 1i64..8) {
            let metric: Vec<Vec<Rational64>> = (0..s.len() as i64)
                .map(|i| (0..s.len() as i64).map(|j| r((i - j).abs(), 2)).collect())
                .collect();
            let s = s.with_metric(metric).unwrap();
            let (lo, hi) = (r(a.min(b), 2), r(a.max(b), 2));
            let small = eps_graph(&s, lo).unwrap();
            let large = eps_graph(&s, hi).unwrap();
            for (x, y) in small.edges() {
                prop_assert!(large.has_edge(x, y));
            }
            let lo_set = chain_recurrent_set(&s, &Resolution::Epsilon(lo)).unwrap();
            let hi_set = chain_recurrent_set(&s, &Resolution::Epsilon(hi)).unwrap();
            prop_assert!(lo_set.is_subset(&hi_set));
        }

        #[test]
        fn coarser_cover_has_more_edges(s in any_system(6)) {
            let n = s.len();
            let fine: Vec<Vec<usize>> = (0..n).collect::<Vec<_>>().chunks(2).map(<[usize]>::to_vec).collect();
            let coarse: Vec<Vec<usize>> = (0..n).collect::<Vec<_>>().chunks(4).map(<[usize]>::to_vec).collect();
            let s = s.with_cover("fine", fine).unwrap().with_cover("coarse", coarse).unwrap();
            let f = cover_graph(&s, "fine").unwrap();
            let c = cover_graph(&s, "coarse").unwrap();
            prop_assert!(f.edges().iter().all(|&(x, y)| c.has_edge(x, y)));
        }

        #[test]
        fn minimal_subsystem_is_minimal(s in any_system(7)) {
            let u = minimal_subsystem(&s);
            prop_assert!(s.image(&u).is_subset(&u));
            let members: Vec<usize> = u.iter().copied().collect();
            for mask in 1u32..(1 << members.len()) - 1 {
                let sub: BTreeSet<usize> = members.iter().enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                prop_assert!(!s.image(&sub).is_subset(&sub));
            }
        }

        #[test]
        fn bijections_are_recurrent(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
            let s = FiniteSystem::from_indices(perm).unwrap();
            prop_assert!(is_chain_recurrent(&s, &Resolution::Singleton).unwrap());
        }
    }
}
