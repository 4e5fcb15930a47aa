//! Brute-force oracles, named fixture graphs, and the exploratory scanners.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::budget::{Budget, Meter};
use crate::factor;
use crate::graph::{is_isomorphic, Graph, Product};
use crate::ham::HamCycle;
use crate::trees;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Answer of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Found(T),
    Absent,
    Unknown,
}

impl<T> Verdict<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Found(x) => Verdict::Found(f(x)),
            Verdict::Absent => Verdict::Absent,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// Failure memo entries kept per search.
const MEMO_CAP: usize = 1 << 22;

/// Hamiltonian cycle as a vertex sequence starting at vertex 1.
///
/// Depth-first extension of a path from vertex 1. At every node the search
/// rejects states where an unvisited vertex has fewer than two usable
/// neighbours, follows forced moves (an unvisited neighbour of the path end
/// with only two usable neighbours must come next), requires the unvisited
/// vertices to induce a connected graph, and in bipartite graphs checks that
/// the colour counts still admit an alternating return to vertex 1. States
/// already refuted are remembered.
pub fn brute_hamiltonian(g: &Graph, budget: Budget) -> Verdict<Vec<usize>> {
    let n = g.order();
    if n < 3 || !g.is_connected() || g.min_degree() < 2 {
        return Verdict::Absent;
    }
    if let Ok(bip) = g.bipartition() {
        if bip.side_a.len() != bip.side_b.len() {
            return Verdict::Absent;
        }
    }
    if n > bits::MAX_ORDER {
        return Verdict::Unknown;
    }
    let adj = bits::adjacency(g);
    let color = g.bipartition().ok().map(|b| {
        let mut c = vec![0u8; n + 1];
        for &v in &b.side_b {
            c[v] = 1;
        }
        c
    });
    let mut search = HamSearch {
        adj: &adj,
        all: bits::full(n),
        color,
        meter: budget.start(),
        memo: HashSet::new(),
        path: vec![1],
    };
    // The cycle is found in the direction whose second vertex is smaller
    // than its last.
    let firsts: Vec<usize> = bits::iter(adj[0]).collect();
    for &first in &firsts {
        search.memo.clear();
        search.path.truncate(1);
        search.path.push(first);
        match search.extend(first, bits::bit(1) | bits::bit(first)) {
            Step::Found => return Verdict::Found(search.path),
            Step::OutOfBudget => return Verdict::Unknown,
            Step::Failed => {}
        }
    }
    Verdict::Absent
}

enum Step {
    Found,
    Failed,
    OutOfBudget,
}

struct HamSearch<'a> {
    adj: &'a [Mask],
    all: Mask,
    color: Option<Vec<u8>>,
    meter: Meter,
    memo: HashSet<(Mask, u8)>,
    path: Vec<usize>,
}

impl HamSearch<'_> {
    fn extend(&mut self, end: usize, visited: Mask) -> Step {
        let first = self.path[1];
        let unvisited = self.all & !visited;
        if unvisited == 0 {
            return if self.adj[end - 1] & 1 != 0 && end > first {
                Step::Found
            } else {
                Step::Failed
            };
        }
        if self.memo.contains(&(visited, end as u8)) {
            return Step::Failed;
        }
        if !self.meter.tick() {
            return Step::OutOfBudget;
        }
        let next = match self.candidates(end, unvisited) {
            Some(c) => c,
            None => return Step::Failed,
        };
        for w in next {
            self.path.push(w);
            match self.extend(w, visited | bits::bit(w)) {
                Step::Failed => {}
                other => return other,
            }
            self.path.pop();
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert((visited, end as u8));
        }
        Step::Failed
    }

    /// Moves worth trying from `end`, or `None` if the state is dead.
    fn candidates(&self, end: usize, unvisited: Mask) -> Option<Vec<usize>> {
        let adj = self.adj;
        let end_bit = bits::bit(end);
        let start_bit = bits::bit(1);
        let first = self.path[1];
        let start_open = adj[0] & unvisited;
        if start_open == 0 || adj[end - 1] & unvisited == 0 {
            return None;
        }
        // The last vertex must beat the second one.
        if start_open & !bits::full(first) == 0 {
            return None;
        }
        let remaining = unvisited.count_ones();
        let usable = unvisited | end_bit | start_bit;
        let mut forced_next = None;
        let mut forced_last = None;
        for w in bits::iter(unvisited) {
            let avail = adj[w - 1] & usable;
            let d = avail.count_ones();
            if d < 2 {
                return None;
            }
            if d == 2 && remaining > 1 {
                if avail & end_bit != 0 {
                    if forced_next.replace(w).is_some() {
                        return None;
                    }
                    if avail & start_bit != 0 {
                        return None;
                    }
                }
                if avail & start_bit != 0 && forced_last.replace(w).is_some() {
                    return None;
                }
            }
        }
        if bits::component(adj, unvisited, bits::lowest(unvisited).unwrap()) != unvisited {
            return None;
        }
        if let Some(color) = &self.color {
            // end, u_1, ..., u_m, start alternates colours.
            let m = remaining as usize;
            let ce = color[end];
            if (m % 2 == 1) != (color[1] == ce) {
                return None;
            }
            let same = bits::iter(unvisited).filter(|&v| color[v] == ce).count();
            if same != m / 2 {
                return None;
            }
        }
        if let Some(w) = forced_next {
            return Some(vec![w]);
        }
        let mut next: Vec<(u32, usize)> = bits::iter(adj[end - 1] & unvisited)
            .filter(|&w| remaining == 1 || Some(w) != forced_last)
            .map(|w| ((adj[w - 1] & usable).count_ones(), w))
            .collect();
        next.sort_unstable();
        Some(next.into_iter().map(|(_, w)| w).collect())
    }
}

/// Spanning path, found as a Hamiltonian cycle through an added universal
/// vertex.
pub fn brute_traceable(g: &Graph, budget: Budget) -> Verdict<Vec<usize>> {
    let n = g.order();
    if n == 1 {
        return Verdict::Found(vec![1]);
    }
    if n + 1 > bits::MAX_ORDER {
        return Verdict::Unknown;
    }
    let mut edges = g.edges();
    edges.extend((1..=n).map(|v| (v, n + 1)));
    let cone = Graph::from_edges(n + 1, &edges).expect("cone is simple");
    brute_hamiltonian(&cone, budget).map(|cycle| {
        let at = cycle.iter().position(|&v| v == n + 1).unwrap();
        cycle[at + 1..].iter().chain(&cycle[..at]).copied().collect()
    })
}

/// Hamiltonian cycle of a product, in product labels.
pub fn hamiltonian_product(product: &Product, budget: Budget) -> Verdict<HamCycle> {
    brute_hamiltonian(product.graph(), budget).map(|ids| {
        HamCycle::new(
            product.layers(),
            ids.into_iter().map(|id| product.label(id)).collect(),
        )
    })
}

/// Whether `seq` lists every vertex once and consecutive entries (cyclically
/// if `closed`) are adjacent.
pub fn is_spanning_walk(g: &Graph, seq: &[usize], closed: bool) -> bool {
    if seq.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; g.order() + 1];
    for &v in seq {
        if v == 0 || v > g.order() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let steps = seq.windows(2).all(|w| g.has_edge(w[0], w[1]));
    let wrap = !closed || (seq.len() >= 3 && g.has_edge(seq[seq.len() - 1], seq[0]));
    steps && wrap
}

/// A named graph with a note on what it exhibits.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub note: &'static str,
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    /// 8-vertex caterpillar `{12,23,34,45,26,37,48}`.
    pub caterpillar: Fixture,
    /// 6-vertex tree `{12,23,34,25,36}`.
    pub h_tree: Fixture,
    /// 7-vertex 1-tough non-Hamiltonian graph.
    pub tough7: Fixture,
}

impl Fixtures {
    pub fn all(&self) -> [&Fixture; 3] {
        [&self.caterpillar, &self.h_tree, &self.tough7]
    }

    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.all().into_iter().find(|f| f.name == name)
    }
}

pub fn fixtures() -> Fixtures {
    let g = |n, e: &[(usize, usize)]| Graph::from_edges(n, e).expect("fixture edges are valid");
    Fixtures {
        caterpillar: Fixture {
            name: "caterpillar",
            graph: g(8, &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 7), (4, 8)]),
            note: "maximum degree 3 with a path factor; its product with P4 is 1-tough but not Hamiltonian",
        },
        h_tree: Fixture {
            name: "h-tree",
            graph: g(6, &[(1, 2), (2, 3), (3, 4), (2, 5), (3, 6)]),
            note: "balanced bipartite tree; its product with P5 is Hamiltonian below the layer bound",
        },
        tough7: Fixture {
            name: "tough7",
            graph: g(
                7,
                &[(1, 2), (2, 4), (4, 6), (6, 5), (5, 3), (3, 1), (2, 3), (1, 7), (7, 6)],
            ),
            note: "hexagon 1-2-4-6-5-3 with chord 2-3 and path 1-7-6; toughness 1, not Hamiltonian",
        },
    }
}

/// Outcome for one scanned `(G, n)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceVerdict {
    Hamiltonian,
    NonHamiltonian,
    Unknown,
    /// Not reached before the budget ran out.
    Skipped,
}

impl fmt::Display for InstanceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceVerdict::Hamiltonian => "hamiltonian",
            InstanceVerdict::NonHamiltonian => "non-hamiltonian",
            InstanceVerdict::Unknown => "unknown",
            InstanceVerdict::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanInstance {
    pub index: usize,
    /// Canonical key of the base graph.
    pub key: String,
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
    /// Whether `n` meets the layer bound the scan targets.
    pub in_scope: bool,
    pub verdict: InstanceVerdict,
}

impl ScanInstance {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.order, &self.edges).expect("scan graphs are valid")
    }
}

/// A non-Hamiltonian product whose base graph meets the scan's hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub key: String,
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
    pub max_degree: usize,
    /// Path factor of the base graph.
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanParameters {
    pub scan: &'static str,
    pub k: Option<usize>,
    pub max_order: usize,
    pub max_n: Option<usize>,
    pub budget_seconds: Option<f64>,
    pub budget_nodes: Option<u64>,
    pub resume_from: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanStatus {
    Complete,
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub parameters: ScanParameters,
    pub instances: Vec<ScanInstance>,
    pub counterexamples: Vec<Counterexample>,
    pub status: ScanStatus,
    /// First instance index still to examine when truncated.
    pub resume_index: Option<usize>,
}

/// Machine-readable digest of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub parameters: ScanParameters,
    pub examined: usize,
    pub hamiltonian: usize,
    pub non_hamiltonian: usize,
    pub unknown: usize,
    pub counterexamples: usize,
    pub status: ScanStatus,
    pub resume_index: Option<usize>,
}

impl ScanReport {
    pub fn examined(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| i.verdict != InstanceVerdict::Skipped)
            .count()
    }

    pub fn summary(&self) -> ScanSummary {
        let count = |v| self.instances.iter().filter(|i| i.verdict == v).count();
        ScanSummary {
            parameters: self.parameters.clone(),
            examined: self.examined(),
            hamiltonian: count(InstanceVerdict::Hamiltonian),
            non_hamiltonian: count(InstanceVerdict::NonHamiltonian),
            unknown: count(InstanceVerdict::Unknown),
            counterexamples: self.counterexamples.len(),
            status: self.status,
            resume_index: self.resume_index,
        }
    }

    /// One line per instance, then one line per counterexample, then a
    /// status line.
    pub fn log_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .instances
            .iter()
            .map(|i| {
                format!(
                    "instance {} key={} n={} in_scope={} verdict={}",
                    i.index, i.key, i.n, i.in_scope, i.verdict
                )
            })
            .collect();
        for c in &self.counterexamples {
            out.push(format!(
                "COUNTEREXAMPLE instance {} key={} n={} max_degree={} factor={}",
                c.index, c.key, c.n, c.max_degree, c.factor
            ));
        }
        out.push(format!(
            "status={} examined={} counterexamples={} resume_index={}",
            match self.status {
                ScanStatus::Complete => "complete",
                ScanStatus::Truncated => "truncated",
            },
            self.examined(),
            self.counterexamples.len(),
            self.resume_index.map_or("none".to_string(), |i| i.to_string())
        ));
        out
    }

    /// Writes each counterexample's base graph as an edge-list file.
    pub fn write_counterexamples(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for c in &self.counterexamples {
            let g = Graph::from_edges(c.order, &c.edges).expect("scan graphs are valid");
            let path = dir.join(format!("counterexample-{}-n{}.edges", c.index, c.n));
            std::fs::write(&path, g.to_edge_list())?;
            paths.push(path);
        }
        Ok(paths)
    }

    /// Re-checks every counterexample: the factor is valid, the degree is as
    /// recorded, and the oracle again finds no cycle.
    pub fn reverify(&self, budget: Budget) -> bool {
        self.counterexamples.iter().all(|c| {
            let g = Graph::from_edges(c.order, &c.edges).expect("scan graphs are valid");
            let factor_ok = factor::find_p23_factor(&g).is_some_and(|f| f.validate(&g).is_ok());
            factor_ok
                && g.max_degree() == c.max_degree
                && brute_hamiltonian(Product::path(c.n, &g).graph(), budget) == Verdict::Absent
        })
    }
}

/// Trees of order at most `max_order`, then trees plus one edge, filtered by
/// `keep` and deduplicated up to isomorphism.
fn candidate_graphs(max_order: usize, keep: impl Fn(&Graph) -> bool) -> Result<Vec<(String, Graph)>, OracleError> {
    let all_trees = trees::enumerate_trees(max_order)
        .map_err(|e| OracleError::PreconditionFailed(e.to_string()))?;
    let mut out: Vec<(String, Graph)> = all_trees
        .iter()
        .filter(|t| keep(t))
        .map(|t| (format!("tree:{}", trees::canonical_string(t)), t.clone()))
        .collect();
    let mut extra: Vec<(Vec<usize>, Graph)> = Vec::new();
    for t in &all_trees {
        let edges = t.edges();
        for u in t.vertices() {
            for v in u + 1..=t.order() {
                if t.has_edge(u, v) {
                    continue;
                }
                let mut e = edges.clone();
                e.push((u, v));
                let g = Graph::from_edges(t.order(), &e).expect("adding a non-edge stays simple");
                if !keep(&g) {
                    continue;
                }
                let mut inv = g.degree_stats().degrees;
                inv.sort_unstable();
                inv.insert(0, g.order());
                if !extra.iter().any(|(k, h)| *k == inv && is_isomorphic(h, &g)) {
                    extra.push((inv, g));
                }
            }
        }
    }
    out.extend(extra.into_iter().map(|(_, g)| {
        let key = g
            .edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(",");
        (format!("plus:{}:{key}", g.order()), g)
    }));
    Ok(out)
}

struct Pending {
    key: String,
    graph: Graph,
    n: usize,
    in_scope: bool,
    counts: bool,
}

fn run_scan(parameters: ScanParameters, pending: Vec<Pending>, budget: Budget) -> ScanReport {
    let deadline = budget.time.map(|t| Instant::now() + t);
    let resume_from = parameters.resume_from;
    let results: Vec<(ScanInstance, Option<Counterexample>)> = pending
        .into_par_iter()
        .enumerate()
        .filter(|(index, _)| *index >= resume_from)
        .map(|(index, p)| {
            let remaining = deadline.map(|d| d.saturating_duration_since(Instant::now()));
            let verdict = if remaining == Some(Duration::ZERO) {
                InstanceVerdict::Skipped
            } else {
                let b = Budget {
                    time: remaining,
                    nodes: budget.nodes,
                };
                match brute_hamiltonian(Product::path(p.n, &p.graph).graph(), b) {
                    Verdict::Found(_) => InstanceVerdict::Hamiltonian,
                    Verdict::Absent => InstanceVerdict::NonHamiltonian,
                    Verdict::Unknown => InstanceVerdict::Unknown,
                }
            };
            let counter = (verdict == InstanceVerdict::NonHamiltonian && p.counts).then(|| Counterexample {
                index,
                key: p.key.clone(),
                order: p.graph.order(),
                edges: p.graph.edges(),
                n: p.n,
                max_degree: p.graph.max_degree(),
                factor: factor::find_p23_factor(&p.graph)
                    .map(|f| f.to_string())
                    .unwrap_or_default(),
            });
            let instance = ScanInstance {
                index,
                key: p.key,
                order: p.graph.order(),
                edges: p.graph.edges(),
                n: p.n,
                in_scope: p.in_scope,
                verdict,
            };
            (instance, counter)
        })
        .collect();
    let mut instances = Vec::with_capacity(results.len());
    let mut counterexamples = Vec::new();
    for (i, c) in results {
        instances.push(i);
        counterexamples.extend(c);
    }
    let resume_index = instances
        .iter()
        .find(|i| matches!(i.verdict, InstanceVerdict::Unknown | InstanceVerdict::Skipped))
        .map(|i| i.index);
    ScanReport {
        parameters,
        instances,
        counterexamples,
        status: if resume_index.is_some() {
            ScanStatus::Truncated
        } else {
            ScanStatus::Complete
        },
        resume_index,
    }
}

fn budget_fields(budget: Budget) -> (Option<f64>, Option<u64>) {
    (budget.time.map(|t| t.as_secs_f64()), budget.nodes)
}

/// Connected graphs with maximum degree `k` and a path factor, tested for a
/// Hamiltonian cycle in `P_{4k-4} □ G`.
///
/// Every non-Hamiltonian product found is reported as a counterexample.
/// `budget` bounds the whole scan; instances not reached are skipped and
/// `resume_from` restarts a scan at a given instance index.
pub fn scan_degree_bound(
    k: usize,
    max_order: usize,
    budget: Budget,
    resume_from: usize,
) -> Result<ScanReport, OracleError> {
    if k < 3 {
        return Err(OracleError::PreconditionFailed(format!("k = {k} must be at least 3")));
    }
    let graphs = candidate_graphs(max_order, |g| {
        g.max_degree() == k && factor::find_p23_factor(g).is_some()
    })?;
    let n = 4 * k - 4;
    let pending = graphs
        .into_iter()
        .map(|(key, graph)| Pending {
            key,
            graph,
            n,
            in_scope: true,
            counts: true,
        })
        .collect();
    let (budget_seconds, budget_nodes) = budget_fields(budget);
    let parameters = ScanParameters {
        scan: "degree-bound",
        k: Some(k),
        max_order,
        max_n: None,
        budget_seconds,
        budget_nodes,
        resume_from,
    };
    Ok(run_scan(parameters, pending, budget))
}

/// Balanced bipartite graphs with a path factor, tested for a Hamiltonian
/// cycle in `P_n □ G` for every odd `n` in `3..=max_n`.
///
/// Instances with `n >= 4Δ - 2` are in scope; a non-Hamiltonian in-scope
/// instance is reported as a counterexample.
pub fn scan_balanced_products(
    max_h_order: usize,
    max_n: usize,
    budget: Budget,
    resume_from: usize,
) -> Result<ScanReport, OracleError> {
    let graphs = candidate_graphs(max_h_order, |g| {
        g.bipartition()
            .is_ok_and(|b| b.side_a.len() == b.side_b.len())
            && factor::find_p23_factor(g).is_some()
    })?;
    let mut pending = Vec::new();
    for (key, graph) in graphs {
        let bound = 4 * graph.max_degree() - 2;
        for n in (3..=max_n).step_by(2) {
            pending.push(Pending {
                key: key.clone(),
                graph: graph.clone(),
                n,
                in_scope: n >= bound,
                counts: n >= bound,
            });
        }
    }
    let (budget_seconds, budget_nodes) = budget_fields(budget);
    let parameters = ScanParameters {
        scan: "balanced-products",
        k: None,
        max_order: max_h_order,
        max_n: Some(max_n),
        budget_seconds,
        budget_nodes,
        resume_from,
    };
    Ok(run_scan(parameters, pending, budget))
}
