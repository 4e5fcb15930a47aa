//! Toughness: exact values at desk scale, a 1-toughness decision procedure
//! for larger graphs, and explicit cut sets that certify non-1-toughness.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::budget::Budget;
use crate::factor::{self, FactorError};
use crate::graph::{Graph, Product, ProductLabel, UnionFind};

/// Largest order [`toughness_exact`] scans.
pub const EXACT_TOUGHNESS_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToughnessError {
    #[error("order {order} exceeds the subset-scan budget of {cap}")]
    BudgetExceeded { order: usize, cap: usize },
    #[error("graph has a path factor")]
    HasPathFactor,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

impl From<FactorError> for ToughnessError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::BudgetExceeded { order, cap } => ToughnessError::BudgetExceeded { order, cap },
            FactorError::HasPathFactor => ToughnessError::HasPathFactor,
        }
    }
}

/// A cut set `S` together with the number of components of `G - S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    pub cut: Vec<usize>,
    pub components: usize,
}

impl CutWitness {
    /// Recomputes `c(G - S)` and checks it certifies non-1-toughness.
    pub fn verify(&self, g: &Graph) -> bool {
        let (c, _) = removal_stats(g, &self.cut);
        c == self.components && c >= 2 && c > self.cut.len()
    }

    /// The cut as product labels.
    pub fn labels(&self, product: &Product) -> Vec<ProductLabel> {
        self.cut.iter().map(|&v| product.label(v)).collect()
    }
}

impl fmt::Display for CutWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.cut.iter().map(usize::to_string).collect();
        write!(
            f,
            "S = {{{}}}; c(G-S) = {}; |S| = {}",
            s.join(","),
            self.components,
            self.cut.len()
        )
    }
}

/// `t(G)`: a rational, or infinite for complete graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToughnessValue {
    Finite(Ratio<u64>),
    Infinite,
}

impl ToughnessValue {
    pub fn at_least_one(self) -> bool {
        match self {
            ToughnessValue::Finite(r) => r >= Ratio::from_integer(1),
            ToughnessValue::Infinite => true,
        }
    }
}

impl PartialOrd for ToughnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ToughnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ToughnessValue::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ToughnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToughnessValue::Finite(r) => write!(f, "{r}"),
            ToughnessValue::Infinite => f.write_str("Infinite"),
        }
    }
}

/// `(c(G - S), i(G - S))`, counted with a fresh union-find.
pub fn removal_stats(g: &Graph, s: &[usize]) -> (usize, usize) {
    let mut removed = vec![false; g.order() + 1];
    for &v in s {
        removed[v] = true;
    }
    let mut uf = UnionFind::new(g.order() + 1);
    for (u, v) in g.edges() {
        if !removed[u] && !removed[v] {
            uf.union(u, v);
        }
    }
    let mut roots = std::collections::HashSet::new();
    let mut isolated = 0;
    for v in g.vertices().filter(|&v| !removed[v]) {
        roots.insert(uf.find(v));
        if g.neighbors(v).iter().all(|&w| removed[w]) {
            isolated += 1;
        }
    }
    (roots.len(), isolated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Toughness {
    pub value: ToughnessValue,
    /// A minimising cut set; `None` for complete graphs.
    pub witness: Option<CutWitness>,
}

/// Exact toughness by scanning every vertex subset.
///
/// The witness is the smallest minimiser, ties broken lexicographically.
pub fn toughness_exact(g: &Graph) -> Result<Toughness, ToughnessError> {
    if g.order() > EXACT_TOUGHNESS_CAP {
        return Err(ToughnessError::BudgetExceeded {
            order: g.order(),
            cap: EXACT_TOUGHNESS_CAP,
        });
    }
    if g.is_complete() {
        return Ok(Toughness {
            value: ToughnessValue::Infinite,
            witness: None,
        });
    }
    let n = g.order();
    let adj = bits::adjacency(g);
    let all = bits::full(n);
    // (|S|, c, S) candidates, ordered by ratio, then size, then lexicographically.
    let better = |a: &(u64, u64, Mask), b: &(u64, u64, Mask)| -> bool {
        match (a.0 * b.1).cmp(&(b.0 * a.1)) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match a.0.cmp(&b.0) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    let d = a.2 ^ b.2;
                    d != 0 && (a.2 & d & d.wrapping_neg()) != 0
                }
            },
        }
    };
    let pick = |a: Option<(u64, u64, Mask)>, b: Option<(u64, u64, Mask)>| match (a, b) {
        (Some(x), Some(y)) => Some(if better(&y, &x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    };
    let best = (0..(1u64 << n) - 1)
        .into_par_iter()
        .fold(
            || None,
            |acc, s| {
                let s = s as Mask;
                let c = bits::count_components(&adj, all & !s) as u64;
                if c < 2 {
                    return acc;
                }
                pick(acc, Some((s.count_ones() as u64, c, s)))
            },
        )
        .reduce(|| None, pick)
        .expect("a non-complete graph has a cut set");
    let (size, comps, mask) = best;
    Ok(Toughness {
        value: ToughnessValue::Finite(Ratio::new(size, comps)),
        witness: Some(CutWitness {
            cut: bits::iter(mask).collect(),
            components: comps as usize,
        }),
    })
}

/// Outcome of [`is_one_tough`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneTough {
    Yes,
    No(CutWitness),
    Unknown,
}

/// Decides whether `c(G - S) <= |S|` for every cut set `S`.
///
/// Branch and bound over include/exclude decisions in breadth-first vertex
/// order, looking for a set with `c(G - S) - |S| >= 1`. Two prunings:
///
/// * For a partial assignment, kept vertices that can no longer grow form
///   closed components; every other kept or undecided vertex lies in the
///   remainder `R`. If `R` is covered by `p` disjoint paths then removing `a`
///   more vertices leaves at most `p + a` components in `R`, so
///   `closed + p - |S|` bounds the objective of every completion.
/// * A maximising set never contains a vertex adjacent to fewer than two
///   components of `G - S` (dropping it from `S` would do better). A removed
///   vertex whose neighbours are all decided and touch at most one kept
///   component therefore ends the branch.
pub fn is_one_tough(g: &Graph, budget: Budget) -> OneTough {
    if g.is_complete() || g.order() <= 1 {
        return OneTough::Yes;
    }
    let comps = g.components();
    if comps.len() > 1 {
        return OneTough::No(CutWitness {
            cut: Vec::new(),
            components: comps.len(),
        });
    }
    if g.order() > bits::MAX_ORDER {
        return OneTough::Unknown;
    }
    let adj = bits::adjacency(g);
    let mut order = Vec::with_capacity(g.order());
    let mut seen = bits::bit(1);
    order.push(1);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in bits::iter(adj[u - 1] & !seen) {
            seen |= bits::bit(w);
            order.push(w);
        }
    }
    let mut search = ToughSearch {
        adj: &adj,
        order: &order,
        meter: budget.start(),
        witness: None,
    };
    match search.branch(0, 0, 0) {
        Step::Found => {
            let w = search.witness.expect("found implies witness");
            debug_assert!(w.verify(g));
            OneTough::No(w)
        }
        Step::Exhausted => OneTough::Yes,
        Step::OutOfBudget => OneTough::Unknown,
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct ToughSearch<'a> {
    adj: &'a [Mask],
    order: &'a [usize],
    meter: crate::budget::Meter,
    witness: Option<CutWitness>,
}

impl ToughSearch<'_> {
    fn branch(&mut self, depth: usize, cut: Mask, kept: Mask) -> Step {
        if !self.meter.tick() {
            return Step::OutOfBudget;
        }
        let undecided = self.order[depth..]
            .iter()
            .fold(0, |m, &v| m | bits::bit(v));

        // Dominated removals.
        for s in bits::iter(cut) {
            let nb = self.adj[s - 1];
            if nb & undecided == 0 {
                let mut touching = 0;
                let mut rest = nb & kept;
                while let Some(v) = bits::lowest(rest) {
                    rest &= !bits::component(self.adj, kept, v);
                    touching += 1;
                }
                if touching <= 1 {
                    return Step::Exhausted;
                }
            }
        }

        let mut closed = 0usize;
        let mut open: Mask = 0;
        let mut rest = kept;
        while let Some(v) = bits::lowest(rest) {
            let comp = bits::component(self.adj, kept, v);
            rest &= !comp;
            if comp_neighbors(self.adj, comp) & undecided == 0 {
                closed += 1;
            } else {
                open |= comp;
            }
        }
        let removed = cut.count_ones() as usize;
        let paths = path_cover(self.adj, open | undecided);
        if closed + paths <= removed {
            return Step::Exhausted;
        }
        if undecided == 0 {
            // Leaf: the objective is exactly closed - |S| >= 1.
            if removed == 0 {
                return Step::Exhausted;
            }
            self.witness = Some(CutWitness {
                cut: bits::iter(cut).collect(),
                components: closed,
            });
            return Step::Found;
        }
        let v = bits::bit(self.order[depth]);
        for (c, k) in [(cut, kept | v), (cut | v, kept)] {
            match self.branch(depth + 1, c, k) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }
}

fn comp_neighbors(adj: &[Mask], comp: Mask) -> Mask {
    bits::iter(comp).fold(0, |m, v| m | adj[v - 1])
}

/// Size of a greedy cover of `alive` by vertex-disjoint paths.
fn path_cover(adj: &[Mask], alive: Mask) -> usize {
    let mut free = alive;
    let mut paths = 0;
    let degree = |v: usize, free: Mask| (adj[v - 1] & free).count_ones();
    while free != 0 {
        let start = bits::iter(free).min_by_key(|&v| degree(v, free)).unwrap();
        free &= !bits::bit(start);
        paths += 1;
        for _end in 0..2 {
            let mut tip = start;
            loop {
                let next = bits::iter(adj[tip - 1] & free).min_by_key(|&w| degree(w, free));
                match next {
                    Some(w) => {
                        free &= !bits::bit(w);
                        tip = w;
                    }
                    None => break,
                }
            }
        }
    }
    paths
}

/// Non-1-tough cut of `P_n □ h` for a bipartite `h` without a path factor.
///
/// Starts from a single-side set `S` of `h` with `i(h - S) > 2|S|` and
/// isolated set `I`, two-colours the product, and returns the smaller colour
/// class when the classes differ in size. For balanced products the class
/// `X` opposite to `1_S` is adjusted to `(X ∪ 1_S) - 1_I`.
pub fn witness_bipartite_product(n: usize, h: &Graph) -> Result<CutWitness, ToughnessError> {
    if n == 0 {
        return Err(ToughnessError::PreconditionFailed("need at least one layer".into()));
    }
    let bip = h
        .bipartition()
        .map_err(|e| ToughnessError::PreconditionFailed(e.to_string()))?;
    let cert = factor::bipartite_certificate(h, &bip)?;
    let product = Product::path(n, h);
    if product.graph().is_complete() {
        return Err(ToughnessError::PreconditionFailed(
            "the product is complete and has no cut set".into(),
        ));
    }

    // Side of each vertex of h, with isolated-in-h members of I moved
    // opposite to S.
    let mut side_b: Vec<bool> = h.vertices().map(|v| !bip.contains_a(v)).collect();
    side_b.insert(0, false);
    let s_side = cert.cut.first().map(|&s| side_b[s]).unwrap_or(false);
    for &v in &cert.isolated {
        if h.degree(v) == 0 {
            side_b[v] = !s_side;
        }
    }
    let color = |id: usize| {
        let l = product.label(id);
        (l.layer + side_b[l.base] as usize) % 2
    };
    let classes: [Vec<usize>; 2] = [0, 1].map(|c| {
        product
            .graph()
            .vertices()
            .filter(|&id| color(id) == c)
            .collect()
    });
    let cut = if classes[0].len() != classes[1].len() {
        let small = if classes[0].len() < classes[1].len() { 0 } else { 1 };
        classes[small].clone()
    } else {
        let one_s: Vec<usize> = cert.cut.iter().map(|&s| product.id(ProductLabel::new(1, s))).collect();
        let one_i: Vec<usize> = cert.isolated.iter().map(|&u| product.id(ProductLabel::new(1, u))).collect();
        // X is the class holding 1_I (1_S sits in the other one).
        let x = color(one_i[0]);
        let mut cut: Vec<usize> = classes[x]
            .iter()
            .copied()
            .filter(|id| !one_i.contains(id))
            .chain(one_s)
            .collect();
        cut.sort_unstable();
        cut
    };
    let (components, _) = removal_stats(product.graph(), &cut);
    let witness = CutWitness { cut, components };
    if !witness.verify(product.graph()) {
        return Err(ToughnessError::PreconditionFailed(format!(
            "constructed cut does not certify: {witness}"
        )));
    }
    Ok(witness)
}

/// Non-1-tough cut of `g1 □ t` when `Δ(t) > |V(g1)|`: the whole column of a
/// maximum-degree vertex of `t` (smallest such vertex).
pub fn witness_max_degree(g1: &Graph, t: &Graph) -> Result<CutWitness, ToughnessError> {
    if !t.is_tree() {
        return Err(ToughnessError::PreconditionFailed("second factor is not a tree".into()));
    }
    if !g1.is_connected() {
        return Err(ToughnessError::PreconditionFailed("first factor is not connected".into()));
    }
    let delta = t.max_degree();
    if delta <= g1.order() {
        return Err(ToughnessError::PreconditionFailed(format!(
            "Δ(t) = {delta} does not exceed |V(g1)| = {}",
            g1.order()
        )));
    }
    let v = t.vertices().find(|&v| t.degree(v) == delta).unwrap();
    let product = Product::new(g1, t);
    let cut: Vec<usize> = g1
        .vertices()
        .map(|u| product.id(ProductLabel::new(u, v)))
        .collect();
    let (components, _) = removal_stats(product.graph(), &cut);
    let witness = CutWitness { cut, components };
    debug_assert_eq!(components, delta);
    debug_assert!(witness.verify(product.graph()));
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Graph {
        Graph::from_edges(
            7,
            &[(1, 2), (2, 4), (4, 6), (6, 5), (5, 3), (3, 1), (2, 3), (1, 7), (7, 6)],
        )
        .unwrap()
    }

    #[test]
    fn removal_counts() {
        assert_eq!(removal_stats(&Graph::path(3), &[2]), (2, 2));
        assert_eq!(removal_stats(&Graph::star(3), &[1]), (3, 3));
        assert_eq!(removal_stats(&Graph::cycle(4), &[]), (1, 0));
    }

    #[test]
    fn exact_values() {
        let k4 = toughness_exact(&Graph::complete(4)).unwrap();
        assert_eq!(k4.value, ToughnessValue::Infinite);
        let p3 = toughness_exact(&Graph::path(3)).unwrap();
        assert_eq!(p3.value, ToughnessValue::Finite(Ratio::new(1, 2)));
        assert_eq!(p3.witness.unwrap().cut, vec![2]);
        let f1 = toughness_exact(&fig1()).unwrap();
        assert_eq!(f1.value, ToughnessValue::Finite(Ratio::from_integer(1)));
        let c4 = toughness_exact(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.value.to_string(), "1");
        assert_eq!(c4.witness.unwrap().cut, vec![1, 3]);
        let split = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        let t = toughness_exact(&split).unwrap();
        assert_eq!(t.value, ToughnessValue::Finite(Ratio::from_integer(0)));
        assert_eq!(
            toughness_exact(&Graph::path(21)),
            Err(ToughnessError::BudgetExceeded { order: 21, cap: 20 })
        );
    }

    #[test]
    fn one_tough_decisions() {
        assert_eq!(is_one_tough(&Graph::cycle(4), Budget::unlimited()), OneTough::Yes);
        match is_one_tough(&Graph::star(3), Budget::unlimited()) {
            OneTough::No(w) => {
                assert_eq!(w.cut, vec![1]);
                assert_eq!(w.components, 3);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(is_one_tough(&fig1(), Budget::unlimited()), OneTough::Yes);
        assert_eq!(is_one_tough(&Graph::complete(5), Budget::unlimited()), OneTough::Yes);
        assert!(matches!(
            is_one_tough(&Graph::from_edges(3, &[(1, 2)]).unwrap(), Budget::unlimited()),
            OneTough::No(CutWitness { components: 2, .. })
        ));
        assert_eq!(is_one_tough(&Graph::path(30), Budget::nodes(3)), OneTough::Unknown);
    }

    #[test]
    fn path_cover_bounds() {
        let g = Graph::star(3);
        let adj = bits::adjacency(&g);
        assert_eq!(path_cover(&adj, bits::full(4)), 2);
        let adj = bits::adjacency(&Graph::path(6));
        assert_eq!(path_cover(&adj, bits::full(6)), 1);
        assert_eq!(path_cover(&adj, 0), 0);
    }

    #[test]
    fn bipartite_product_witnesses() {
        let star = Graph::star(3);
        let w = witness_bipartite_product(1, &star).unwrap();
        assert_eq!((w.cut.clone(), w.components), (vec![1], 3));
        for n in 2..=4 {
            let w = witness_bipartite_product(n, &star).unwrap();
            let p = Product::path(n, &star);
            assert!(w.verify(p.graph()), "n = {n}: {w}");
        }
        let w = witness_bipartite_product(3, &Graph::star(5)).unwrap();
        assert!(w.verify(Product::path(3, &Graph::star(5)).graph()));
        assert_eq!(
            witness_bipartite_product(2, &Graph::path(4)),
            Err(ToughnessError::HasPathFactor)
        );
        assert!(matches!(
            witness_bipartite_product(2, &Graph::cycle(5)),
            Err(ToughnessError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn max_degree_witnesses() {
        let w = witness_max_degree(&Graph::path(2), &Graph::star(3)).unwrap();
        assert_eq!((w.cut.len(), w.components), (2, 3));
        let w = witness_max_degree(&Graph::path(3), &Graph::star(5)).unwrap();
        assert_eq!((w.cut.len(), w.components), (3, 5));
        assert!(matches!(
            witness_max_degree(&Graph::path(3), &Graph::star(3)),
            Err(ToughnessError::PreconditionFailed(_))
        ));
    }
}
