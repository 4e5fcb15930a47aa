//! Perfect matchings, `{P2, P3}`-factors and certificates of their absence.
//!
//! A graph has a path factor iff it has a `{P2, P3}`-factor, and iff
//! `i(G - S) <= 2|S|` for every vertex set `S` (`i` counting isolated
//! vertices). Positive answers come with the factor, negative answers with a
//! violating `S`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::graph::{Bipartition, Graph};

/// Largest order [`wang_certificate`] will scan by default.
pub const DEFAULT_CERTIFICATE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("order {order} exceeds the subset-scan budget of {cap}")]
    BudgetExceeded { order: usize, cap: usize },
    #[error("graph has a path factor")]
    HasPathFactor,
}

/// Vertex-disjoint paths of order 2 or 3 covering the graph.
///
/// Components are stored in normal form: a `P2` as `(min, max)`, a `P3` as
/// `(a, middle, b)` with `a < b`; the list is sorted by smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathFactor {
    components: Vec<Vec<usize>>,
}

impl PathFactor {
    pub fn new(components: Vec<Vec<usize>>) -> Self {
        let mut components: Vec<Vec<usize>> = components.into_iter().map(normalize).collect();
        components.sort_by_key(|c| *c.iter().min().unwrap_or(&0));
        PathFactor { components }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.components.iter().all(|c| c.len() == 2)
    }

    /// Factor edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .components
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        out.sort_unstable();
        out
    }

    /// The component containing `v`.
    pub fn component_of(&self, v: usize) -> Option<&[usize]> {
        self.components
            .iter()
            .find(|c| c.contains(&v))
            .map(Vec::as_slice)
    }

    /// Checks disjointness, coverage, component orders and adjacency.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut seen = vec![false; g.order() + 1];
        for c in &self.components {
            if !(2..=3).contains(&c.len()) {
                return Err(format!("component {c:?} has order {}", c.len()));
            }
            for &v in c {
                if v == 0 || v > g.order() {
                    return Err(format!("vertex {v} out of range"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {v} covered twice"));
                }
            }
            for w in c.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("{}-{} is not an edge", w[0], w[1]));
                }
            }
        }
        match g.vertices().find(|&v| !seen[v]) {
            Some(v) => Err(format!("vertex {v} is not covered")),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PathFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let vs: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", vs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn normalize(mut c: Vec<usize>) -> Vec<usize> {
    if c.first() > c.last() {
        c.reverse();
    }
    c
}

/// A vertex set `S` whose removal leaves more than `2|S|` isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCertificate {
    pub cut: Vec<usize>,
    /// The isolated vertices of `G - S`.
    pub isolated: Vec<usize>,
}

impl FactorCertificate {
    pub fn isolated_count(&self) -> usize {
        self.isolated.len()
    }

    /// Recounts the isolated vertices of `G - S` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let removed: HashSet<usize> = self.cut.iter().copied().collect();
        let isolated: Vec<usize> = g
            .vertices()
            .filter(|v| !removed.contains(v))
            .filter(|&v| g.neighbors(v).iter().all(|w| removed.contains(w)))
            .collect();
        isolated == self.isolated && isolated.len() > 2 * self.cut.len()
    }

    fn from_cut(adj: &[Mask], order: usize, cut: Vec<usize>) -> Self {
        let alive = bits::full(order) & !bits::from_vertices(&cut);
        let isolated = bits::iter(alive).filter(|&v| adj[v - 1] & alive == 0).collect();
        FactorCertificate { cut, isolated }
    }
}

impl fmt::Display for FactorCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.cut.iter().map(usize::to_string).collect();
        write!(
            f,
            "S = {{{}}}; i(G-S) = {}; 2|S| = {}",
            s.join(","),
            self.isolated_count(),
            2 * self.cut.len()
        )
    }
}

/// A perfect matching, if one exists.
///
/// Backtracks over the edges at the smallest uncovered vertex, neighbours in
/// ascending order, so the first matching in that order is returned.
pub fn find_perfect_matching(g: &Graph) -> Option<PathFactor> {
    if g.order() % 2 == 1 {
        return None;
    }
    if g.order() > bits::MAX_ORDER {
        return g.is_tree().then(|| tree_perfect_matching(g)).flatten();
    }
    let adj = bits::adjacency(g);
    let mut search = CoverSearch {
        adj: &adj,
        full: bits::full(g.order()),
        failed: HashSet::new(),
        chosen: Vec::new(),
        allow_p3: false,
    };
    search.run(0).then(|| PathFactor::new(search.chosen))
}

/// Leaves force their partners; in a tree the matching is unique when it exists.
fn tree_perfect_matching(t: &Graph) -> Option<PathFactor> {
    let mut deg: Vec<usize> = t.vertices().map(|v| t.degree(v)).collect();
    let mut matched = vec![false; t.order() + 1];
    let mut leaves: Vec<usize> = t.vertices().filter(|&v| t.degree(v) == 1).rev().collect();
    let mut pairs = Vec::new();
    while let Some(leaf) = leaves.pop() {
        if matched[leaf] {
            continue;
        }
        let partner = *t.neighbors(leaf).iter().find(|&&w| !matched[w])?;
        matched[leaf] = true;
        matched[partner] = true;
        pairs.push(vec![leaf, partner]);
        for &w in t.neighbors(partner) {
            if !matched[w] {
                deg[w - 1] -= 1;
                if deg[w - 1] == 1 {
                    leaves.push(w);
                } else if deg[w - 1] == 0 {
                    return None;
                }
            }
        }
    }
    (t.vertices().all(|v| matched[v])).then(|| PathFactor::new(pairs))
}

/// A `{P2, P3}`-factor, if one exists.
///
/// Trees go through a linear-time rooted dynamic program; other graphs
/// through exhaustive cover search.
pub fn find_p23_factor(g: &Graph) -> Option<PathFactor> {
    if g.is_tree() {
        tree_p23_factor(g)
    } else {
        exhaustive_p23_factor(g)
    }
}

/// Exhaustive cover search: at the smallest uncovered vertex try every `P2`
/// before any `P3`.
pub fn exhaustive_p23_factor(g: &Graph) -> Option<PathFactor> {
    assert!(
        g.order() <= bits::MAX_ORDER,
        "exhaustive factor search is limited to {} vertices",
        bits::MAX_ORDER
    );
    let adj = bits::adjacency(g);
    let mut search = CoverSearch {
        adj: &adj,
        full: bits::full(g.order()),
        failed: HashSet::new(),
        chosen: Vec::new(),
        allow_p3: true,
    };
    search.run(0).then(|| PathFactor::new(search.chosen))
}

struct CoverSearch<'a> {
    adj: &'a [Mask],
    full: Mask,
    /// Covered sets already known not to extend.
    failed: HashSet<Mask>,
    chosen: Vec<Vec<usize>>,
    allow_p3: bool,
}

impl CoverSearch<'_> {
    fn run(&mut self, covered: Mask) -> bool {
        let free = self.full & !covered;
        let Some(v) = bits::lowest(free) else {
            return true;
        };
        if self.failed.contains(&covered) {
            return false;
        }
        if bits::iter(free).any(|u| self.adj[u - 1] & free == 0) {
            self.failed.insert(covered);
            return false;
        }
        let nv = self.adj[v - 1] & free;
        for w in bits::iter(nv) {
            if self.try_component(covered, vec![v, w]) {
                return true;
            }
        }
        if self.allow_p3 {
            for w in bits::iter(nv) {
                for x in bits::iter(self.adj[w - 1] & free & !bits::bit(v)) {
                    if self.try_component(covered, vec![v, w, x]) {
                        return true;
                    }
                }
            }
            for a in bits::iter(nv) {
                for b in bits::iter(nv & !bits::full(a)) {
                    if self.try_component(covered, vec![a, v, b]) {
                        return true;
                    }
                }
            }
        }
        self.failed.insert(covered);
        false
    }

    fn try_component(&mut self, covered: Mask, comp: Vec<usize>) -> bool {
        let next = covered | bits::from_vertices(&comp);
        self.chosen.push(comp);
        if self.run(next) {
            return true;
        }
        self.chosen.pop();
        false
    }
}

/// Per-vertex feasibility in the rooted tree program.
#[derive(Clone, Copy, Default)]
struct TreeState {
    /// Subtree covered without the parent.
    closed: bool,
    /// Subtree covered except the vertex itself, which must join its parent.
    single: bool,
    /// The vertex is paired with one child and the pair extends to the parent.
    open_pair: bool,
}

/// `{P2, P3}`-factor of a tree by a rooted dynamic program.
pub fn tree_p23_factor(t: &Graph) -> Option<PathFactor> {
    assert!(t.is_tree(), "tree_p23_factor needs a tree");
    let n = t.order();
    let mut parent = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    order.push(1);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let par = &parent;
    let children = |v: usize| t.neighbors(v).iter().copied().filter(move |&w| par[w] == v);

    let mut st = vec![TreeState::default(); n + 1];
    for &v in order.iter().rev() {
        let kids: Vec<usize> = children(v).collect();
        let not_closed: Vec<usize> = kids.iter().copied().filter(|&c| !st[c].closed).collect();
        let singles = |k: &[usize]| k.iter().filter(|&&c| st[c].single).count();
        let (one_single, two_singles, one_pair) = match not_closed.as_slice() {
            [] => (
                singles(&kids) >= 1,
                singles(&kids) >= 2,
                kids.iter().any(|&c| st[c].open_pair),
            ),
            [c] => (
                st[*c].single,
                st[*c].single && singles(&kids) >= 2,
                st[*c].open_pair,
            ),
            [a, b] => (false, st[*a].single && st[*b].single, false),
            _ => (false, false, false),
        };
        st[v] = TreeState {
            closed: one_single || two_singles || one_pair,
            single: not_closed.is_empty(),
            open_pair: one_single,
        };
    }
    if !st[1].closed {
        return None;
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Need {
        Closed,
        Single,
        OpenPair,
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![(1usize, Need::Closed)];
    while let Some((v, need)) = stack.pop() {
        let kids: Vec<usize> = children(v).collect();
        let must: Vec<usize> = kids.iter().copied().filter(|&c| !st[c].closed).collect();
        // Children that leave the subtree open, in preference order.
        let mut open: Vec<(usize, Need)> = Vec::new();
        let pick_single = |excluding: Option<usize>| -> Option<usize> {
            let candidates: Vec<usize> = if must.iter().any(|&c| Some(c) != excluding) {
                must.iter().copied().filter(|&c| Some(c) != excluding).collect()
            } else {
                kids.iter().copied().filter(|&c| Some(c) != excluding).collect()
            };
            candidates.into_iter().find(|&c| st[c].single)
        };
        match need {
            Need::Single => {}
            Need::OpenPair => {
                let c = pick_single(None).expect("open pair was feasible");
                open.push((c, Need::Single));
                comps.push(vec![c, v, parent[v]]);
            }
            Need::Closed => {
                let pair = (must.len() <= 1).then(|| pick_single(None)).flatten();
                if let Some(c) = pair {
                    open.push((c, Need::Single));
                    comps.push(vec![v, c]);
                } else if let Some((a, b)) = two_singles(&kids, &must, &st) {
                    open.push((a, Need::Single));
                    open.push((b, Need::Single));
                    comps.push(vec![a, v, b]);
                } else {
                    let c = match must.as_slice() {
                        [c] => *c,
                        _ => kids.iter().copied().find(|&c| st[c].open_pair).expect("feasible"),
                    };
                    open.push((c, Need::OpenPair));
                }
            }
        }
        for &c in kids.iter().rev() {
            let need = open
                .iter()
                .find(|(x, _)| *x == c)
                .map_or(Need::Closed, |&(_, n)| n);
            stack.push((c, need));
        }
    }
    let factor = PathFactor::new(comps);
    debug_assert_eq!(factor.validate(t), Ok(()));
    Some(factor)
}

fn two_singles(kids: &[usize], must: &[usize], st: &[TreeState]) -> Option<(usize, usize)> {
    match must {
        [a, b] => (st[*a].single && st[*b].single).then_some((*a, *b)),
        &[a] if st[a].single => {
            let b = kids.iter().copied().find(|&c| c != a && st[c].single)?;
            Some((a.min(b), a.max(b)))
        }
        [] => {
            let mut it = kids.iter().copied().filter(|&c| st[c].single);
            Some((it.next()?, it.next()?))
        }
        _ => None,
    }
}

/// Minimum-size `S` with `i(G - S) > 2|S|` (ties broken lexicographically),
/// or `None` when the graph has a path factor.
pub fn wang_certificate(g: &Graph) -> Result<Option<FactorCertificate>, FactorError> {
    wang_certificate_with_cap(g, DEFAULT_CERTIFICATE_CAP)
}

pub fn wang_certificate_with_cap(
    g: &Graph,
    cap: usize,
) -> Result<Option<FactorCertificate>, FactorError> {
    if g.order() > cap.min(bits::MAX_ORDER) {
        return Err(FactorError::BudgetExceeded {
            order: g.order(),
            cap,
        });
    }
    if find_p23_factor(g).is_some() {
        return Ok(None);
    }
    let adj = bits::adjacency(g);
    let n = g.order();
    let violates = |cut: &[usize]| {
        let alive = bits::full(n) & !bits::from_vertices(cut);
        bits::count_isolated(&adj, alive) > 2 * cut.len()
    };
    if violates(&[]) {
        return Ok(Some(FactorCertificate::from_cut(&adj, n, Vec::new())));
    }
    for k in 1..=n {
        // Split by the smallest element; the first hit in that order is the
        // lexicographically least violating set of size k.
        let hit = (1..=n - k + 1)
            .into_par_iter()
            .map(|first| {
                let mut found = None;
                for_each_combination(first + 1, n, k - 1, &mut |rest| {
                    let mut cut = Vec::with_capacity(k);
                    cut.push(first);
                    cut.extend_from_slice(rest);
                    if violates(&cut) {
                        found = Some(cut);
                        false
                    } else {
                        true
                    }
                });
                found
            })
            .find_first(Option::is_some)
            .flatten();
        if let Some(cut) = hit {
            return Ok(Some(FactorCertificate::from_cut(&adj, n, cut)));
        }
    }
    unreachable!("a graph without a path factor has a violating set")
}

/// Visits the `k`-subsets of `lo..=hi` in lexicographic order until `f`
/// returns false.
pub fn for_each_combination(lo: usize, hi: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k == 0 {
        f(&[]);
        return;
    }
    if hi < lo || hi - lo + 1 < k {
        return;
    }
    let mut combo: Vec<usize> = (lo..lo + k).collect();
    loop {
        if !f(&combo) {
            return;
        }
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| combo[i] < hi - (k - 1 - i)) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// A violating set inside a single side of a bipartite graph.
///
/// The general certificate `S'` splits as `S_A ∪ S_B`; every isolated vertex
/// of `H - S'` is isolated in `H - S_A` or in `H - S_B`, so one of the two
/// halves violates the bound on its own.
pub fn bipartite_certificate(
    h: &Graph,
    bip: &Bipartition,
) -> Result<FactorCertificate, FactorError> {
    let general = wang_certificate(h)?.ok_or(FactorError::HasPathFactor)?;
    let adj = bits::adjacency(h);
    for side in [&bip.side_a, &bip.side_b] {
        let part: Vec<usize> = general
            .cut
            .iter()
            .copied()
            .filter(|v| side.binary_search(v).is_ok())
            .collect();
        let cert = FactorCertificate::from_cut(&adj, h.order(), part);
        if cert.isolated_count() > 2 * cert.cut.len() {
            return Ok(cert);
        }
    }
    unreachable!("one side of a violating set violates the bound")
}

/// Degree conditions that guarantee a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    /// `δ >= |V|/3`: a path factor exists.
    pub delta_third: bool,
    /// `δ >= 1` and `2δ >= Δ`: a path factor exists.
    pub dirac_type: bool,
    /// Connected, 3-regular and bridgeless: a perfect matching exists.
    pub cubic_bridgeless: bool,
}

pub fn sufficient_conditions(g: &Graph) -> SufficientConditions {
    let stats = g.degree_stats();
    let report = SufficientConditions {
        delta_third: 3 * stats.min >= g.order(),
        dirac_type: stats.min >= 1 && 2 * stats.min >= stats.max,
        cubic_bridgeless: stats.min == 3
            && stats.max == 3
            && g.is_connected()
            && g.bridges().is_empty(),
    };
    if report.delta_third || report.dirac_type {
        debug_assert!(find_p23_factor(g).is_some(), "degree condition without path factor: {g:?}");
    }
    if report.cubic_bridgeless {
        debug_assert!(find_perfect_matching(g).is_some(), "bridgeless cubic graph without matching");
    }
    report
}
