//! Constructive Hamiltonian cycles in `P_n □ G`.
//!
//! The construction works on a spanning tree `T` of `G` that contains a
//! perfect matching or a `{P2, P3}`-factor `F`. Every factor component gets
//! its own standard cycle in `P_n □ c`; the cycles are then merged one tree
//! edge at a time. Merging across the tree edge `u1 u2` at index `j` removes
//! the two vertical edges `j_u1 (j+1)_u1` and `j_u2 (j+1)_u2` and adds the
//! two horizontal edges `j_u1 j_u2` and `(j+1)_u1 (j+1)_u2`.
//!
//! Vertical edge `i` of column `v` is the edge `i_v (i+1)_v`, `1 <= i < n`.
//! For a vertex of type `X` the merges only ever use indices from the residue
//! set `X_v`, which is what keeps a usable index available at every step.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::factor::{self, FactorCertificate, PathFactor};
use crate::graph::{Graph, GraphError, Product, ProductLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("the number of layers must be even, got {0}")]
    OddLayers(usize),
    #[error("{n} layers is too few; at least {required} are needed")]
    TooFewLayers { n: usize, required: usize },
    #[error("base graph is not a tree")]
    NotTree,
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    #[error("factor is not a perfect matching of the tree")]
    NoPerfectMatching,
    #[error("factor is not a {{P2,P3}}-factor of the tree")]
    NoP23Factor,
    #[error("base graph is not connected")]
    Disconnected,
    #[error("base graph has no suitable factor")]
    NoFactor { certificate: Option<FactorCertificate> },
    #[error("{n} layers does not meet the layer bound of {required} (even count required: {even})")]
    LayerBound { n: usize, required: usize, even: bool },
    #[error("malformed cycle: {0}")]
    Malformed(String),
}

/// Role of a vertex inside its factor component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexType {
    /// Member of a `P2` component.
    B,
    /// First endpoint of a `P3` component.
    L,
    /// Middle vertex of a `P3` component.
    C,
    /// Second endpoint of a `P3` component.
    R,
}

impl VertexType {
    /// Degree of the vertex inside its component.
    pub fn delta(self) -> usize {
        match self {
            VertexType::C => 2,
            _ => 1,
        }
    }

    /// Whether vertical index `i` belongs to this type's residue set.
    pub fn allows(self, i: usize) -> bool {
        match self {
            VertexType::B => true,
            VertexType::L => matches!(i % 4, 0 | 1 | 3),
            VertexType::C => matches!(i % 4, 0 | 2),
            VertexType::R => matches!(i % 4, 1..=3),
        }
    }

    /// The residue set `X_v` within `1..n`.
    pub fn column_set(self, n: usize) -> BTreeSet<usize> {
        (1..n).filter(|&i| self.allows(i)).collect()
    }
}

/// Sizes `(|L ∩ R|, |R ∩ C|, |L ∩ C|)` of the residue-set intersections on
/// `1..n`.
pub fn residue_overlap_counts(n: usize) -> Result<(usize, usize, usize), BuildError> {
    if n % 2 == 1 {
        return Err(BuildError::OddLayers(n));
    }
    if n < 4 {
        return Err(BuildError::TooFewLayers { n, required: 4 });
    }
    use VertexType::*;
    let both = |x: VertexType, y: VertexType| (1..n).filter(|&i| x.allows(i) && y.allows(i)).count();
    Ok((both(L, R), both(R, C), both(L, C)))
}

/// A path factor with every vertex typed `B`, `L`, `C` or `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedFactor {
    factor: PathFactor,
    types: HashMap<usize, VertexType>,
}

impl TypedFactor {
    pub fn factor(&self) -> &PathFactor {
        &self.factor
    }

    pub fn type_of(&self, v: usize) -> Option<VertexType> {
        self.types.get(&v).copied()
    }
}

/// Types a factor; of the two `P3` endpoints the smaller vertex gets `L`.
pub fn assign_types(f: &PathFactor) -> TypedFactor {
    let mut types = HashMap::new();
    for c in f.components() {
        match *c.as_slice() {
            [a, b] => {
                types.insert(a, VertexType::B);
                types.insert(b, VertexType::B);
            }
            [a, m, b] => {
                types.insert(a.min(b), VertexType::L);
                types.insert(m, VertexType::C);
                types.insert(a.max(b), VertexType::R);
            }
            _ => unreachable!("path factor components have order 2 or 3"),
        }
    }
    TypedFactor {
        factor: f.clone(),
        types,
    }
}

/// A Hamiltonian cycle of `P_n □ G`, as a cyclic vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HamCycle {
    layers: usize,
    vertices: Vec<ProductLabel>,
}

impl HamCycle {
    pub fn new(layers: usize, vertices: Vec<ProductLabel>) -> Self {
        HamCycle { layers, vertices }
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn vertices(&self) -> &[ProductLabel] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (ProductLabel, ProductLabel)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    /// Edges normalised to `(smaller, larger)` label order.
    pub fn edge_set(&self) -> BTreeSet<(ProductLabel, ProductLabel)> {
        self.edges().map(|(a, b)| (a.min(b), a.max(b))).collect()
    }

    /// Indices `i` with `i_v (i+1)_v` on the cycle.
    pub fn column_indices(&self, v: usize) -> BTreeSet<usize> {
        self.edges()
            .filter(|(a, b)| a.base == v && b.base == v && a.layer.abs_diff(b.layer) == 1)
            .map(|(a, b)| a.layer.min(b.layer))
            .collect()
    }

    /// The cycle's edges as product vertex ids.
    pub fn edge_ids(&self, product: &Product) -> Vec<(usize, usize)> {
        self.edges()
            .map(|(a, b)| {
                let (x, y) = (product.id(a), product.id(b));
                (x.min(y), x.max(y))
            })
            .collect()
    }

    /// Text form: `n m` (layers and base order), then the `i_v` sequence.
    pub fn to_text(&self, base_order: usize) -> String {
        let mut s = format!("{} {}\n", self.layers, base_order);
        let tokens: Vec<String> = self.vertices.iter().map(ProductLabel::to_string).collect();
        let _ = writeln!(s, "{}", tokens.join(" "));
        s
    }

    /// Parses [`HamCycle::to_text`]; returns the cycle and the base order.
    pub fn parse(text: &str) -> Result<(HamCycle, usize), BuildError> {
        let mut tokens = text.split_whitespace();
        let mut header = || -> Result<usize, BuildError> {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| BuildError::Malformed("bad header".into()))
        };
        let layers = header()?;
        let base_order = header()?;
        let vertices = tokens
            .map(|t| {
                t.parse::<ProductLabel>()
                    .map_err(|e: GraphError| BuildError::Malformed(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((HamCycle { layers, vertices }, base_order))
    }
}

impl fmt::Display for HamCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.vertices.iter().map(ProductLabel::to_string).collect();
        f.write_str(&tokens.join(","))
    }
}

/// Walks a 2-regular edge set from `start`, stepping first to its larger
/// neighbour. Returns `None` unless the edges form one cycle through every
/// vertex they touch.
fn trace(edges: &[(ProductLabel, ProductLabel)], start: ProductLabel) -> Option<Vec<ProductLabel>> {
    let mut adj: HashMap<ProductLabel, Vec<ProductLabel>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let first = *adj.get(&start)?.iter().max()?;
    let mut seq = vec![start];
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        seq.push(cur);
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
    }
    (seq.len() == adj.len()).then_some(seq)
}

fn dedup(edges: Vec<(ProductLabel, ProductLabel)>) -> Vec<(ProductLabel, ProductLabel)> {
    let set: BTreeSet<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    set.into_iter().collect()
}

/// The standard cycle of `P_n □ P2` on columns `u`, `w`: down column `u`,
/// back up column `w`. Uses every vertical edge of both columns.
pub fn standard_cycle_p2(n: usize, u: usize, w: usize) -> Result<HamCycle, BuildError> {
    if n < 2 {
        return Err(BuildError::TooFewLayers { n, required: 2 });
    }
    let mut seq: Vec<ProductLabel> = (1..=n).map(|i| ProductLabel::new(i, u)).collect();
    seq.extend((1..=n).rev().map(|i| ProductLabel::new(i, w)));
    Ok(HamCycle::new(n, seq))
}

/// Edge set of the standard cycle of `P_n □ P3` on the path `u - v - w`.
///
/// Verticals are `L` at `u`, `C` at `v` and `R` at `w`; horizontals are
/// `1_u 1_v`, `n_u n_v`, `n_v n_w`, `i_u i_v` for `i ≡ 2, 3 (mod 4)` and
/// `i_v i_w` for `i ≡ 0, 1 (mod 4)`.
pub fn standard_p3_edges(
    n: usize,
    u: usize,
    v: usize,
    w: usize,
) -> Vec<(ProductLabel, ProductLabel)> {
    let at = ProductLabel::new;
    let mut edges = vec![(at(1, u), at(1, v)), (at(n, u), at(n, v)), (at(n, v), at(n, w))];
    for (col, ty) in [(u, VertexType::L), (v, VertexType::C), (w, VertexType::R)] {
        edges.extend(ty.column_set(n).into_iter().map(|i| (at(i, col), at(i + 1, col))));
    }
    for i in 1..=n {
        if matches!(i % 4, 2 | 3) {
            edges.push((at(i, u), at(i, v)));
        }
        if matches!(i % 4, 0 | 1) {
            edges.push((at(i, v), at(i, w)));
        }
    }
    dedup(edges)
}

/// The standard cycle of `P_n □ P3`, `n` even and at least 4.
pub fn standard_cycle_p3(n: usize, u: usize, v: usize, w: usize) -> Result<HamCycle, BuildError> {
    if n % 2 == 1 {
        return Err(BuildError::OddLayers(n));
    }
    if n < 4 {
        return Err(BuildError::TooFewLayers { n, required: 4 });
    }
    let seq = trace(&standard_p3_edges(n, u, v, w), ProductLabel::new(1, u))
        .expect("standard P3 edge set is a Hamiltonian cycle for even n >= 4");
    debug_assert_eq!(seq.len(), 3 * n);
    Ok(HamCycle::new(n, seq))
}

/// Factor components in leaf-removal order of the contracted tree `T_F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOrder {
    /// Components in the order they are peeled.
    pub components: Vec<Vec<usize>>,
    /// `T_F`: node `k` is the factor's `k`-th component (1-indexed).
    pub contracted: Graph,
}

/// Peels leaves of `T_F`, always taking the leaf whose smallest vertex is
/// smallest.
pub fn peel_order(t: &Graph, f: &PathFactor) -> Result<PeelOrder, BuildError> {
    if !t.is_tree() {
        return Err(BuildError::NotTree);
    }
    f.validate(t).map_err(BuildError::InvalidFactor)?;
    let comps = f.components();
    let mut owner = vec![0usize; t.order() + 1];
    for (k, c) in comps.iter().enumerate() {
        for &v in c {
            owner[v] = k + 1;
        }
    }
    let mut cross: Vec<(usize, usize)> = t
        .edges()
        .into_iter()
        .filter(|&(a, b)| owner[a] != owner[b])
        .map(|(a, b)| (owner[a].min(owner[b]), owner[a].max(owner[b])))
        .collect();
    cross.sort_unstable();
    let contracted = Graph::from_edges(comps.len(), &cross)
        .map_err(|e| BuildError::InvalidFactor(e.to_string()))?;
    debug_assert!(contracted.is_tree());

    let mut alive = vec![true; comps.len() + 1];
    let mut degree: Vec<usize> = (0..=comps.len())
        .map(|k| if k == 0 { 0 } else { contracted.degree(k) })
        .collect();
    let mut order = Vec::with_capacity(comps.len());
    for _ in 0..comps.len() {
        // Components are sorted by smallest vertex, so the lowest index wins.
        let leaf = (1..=comps.len())
            .find(|&k| alive[k] && degree[k] <= 1)
            .expect("a tree always has a leaf");
        alive[leaf] = false;
        for &m in contracted.neighbors(leaf) {
            if alive[m] {
                degree[m] -= 1;
            }
        }
        order.push(comps[leaf - 1].clone());
    }
    Ok(PeelOrder {
        components: order,
        contracted,
    })
}

/// Output of the tree builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub cycle: HamCycle,
    /// `|H ∩ B_v|` at index `v - 1`.
    pub column_counts: Vec<usize>,
}

/// Which per-column contract a cycle is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContractMode {
    /// `|H ∩ B_v| = n - deg_T(v)`.
    Matching,
    /// `H ∩ B_v ⊆ X_v` and `|H ∩ B_v| = |X_v| - deg_T(v) + δ_X`.
    PathFactor,
}

/// Hamiltonian cycle of `P_n □ t` from a perfect matching of the tree `t`,
/// using exactly `n - deg_t(v)` vertical edges in every column `v`.
pub fn build_ham_pm(n: usize, t: &Graph, m: &PathFactor) -> Result<Built, BuildError> {
    if !t.is_tree() {
        return Err(BuildError::NotTree);
    }
    if !m.is_perfect_matching() || m.validate(t).is_err() {
        return Err(BuildError::NoPerfectMatching);
    }
    let required = t.max_degree().max(2);
    if n < required {
        return Err(BuildError::TooFewLayers { n, required });
    }
    weave(n, t, &assign_types(m))
}

/// Hamiltonian cycle of `P_n □ t` from a `{P2, P3}`-factor of the tree `t`,
/// `n` even and at least `4Δ(t) - 2`.
pub fn build_ham_pf(n: usize, t: &Graph, f: &PathFactor) -> Result<Built, BuildError> {
    if !t.is_tree() {
        return Err(BuildError::NotTree);
    }
    if f.validate(t).is_err() {
        return Err(BuildError::NoP23Factor);
    }
    if n % 2 == 1 {
        return Err(BuildError::OddLayers(n));
    }
    let required = (4 * t.max_degree()).saturating_sub(2).max(2);
    if n < required {
        return Err(BuildError::TooFewLayers { n, required });
    }
    weave(n, t, &assign_types(f))
}

/// Cycle under construction, as neighbour pairs over product ids.
struct Weave {
    base_order: usize,
    next: Vec<[usize; 2]>,
}

impl Weave {
    fn id(&self, layer: usize, v: usize) -> usize {
        (layer - 1) * self.base_order + v
    }

    fn link(&mut self, a: usize, b: usize) {
        for (x, y) in [(a, b), (b, a)] {
            let slot = self.next[x].iter().position(|&s| s == 0).expect("vertex has a free slot");
            self.next[x][slot] = y;
        }
    }

    fn unlink(&mut self, a: usize, b: usize) {
        for (x, y) in [(a, b), (b, a)] {
            let slot = self.next[x].iter().position(|&s| s == y).expect("edge is on the cycle");
            self.next[x][slot] = 0;
        }
    }

    fn add_labels(&mut self, edges: &[(ProductLabel, ProductLabel)]) {
        for &(a, b) in edges {
            self.link(self.id(a.layer, a.base), self.id(b.layer, b.base));
        }
    }
}

fn weave(n: usize, t: &Graph, typed: &TypedFactor) -> Result<Built, BuildError> {
    let peel = peel_order(t, typed.factor())?;
    let ty = |v: usize| typed.type_of(v).expect("every vertex is typed");
    let mut w = Weave {
        base_order: t.order(),
        next: vec![[0, 0]; n * t.order() + 1],
    };
    // Vertical indices of each column still on the cycle.
    let mut stock: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); t.order() + 1];
    let mut placed = vec![false; t.order() + 1];

    for (step, comp) in peel.components.iter().rev().enumerate() {
        let edges: Vec<(ProductLabel, ProductLabel)> = match *comp.as_slice() {
            [a, b] => standard_cycle_p2(n, a, b)?.edge_set().into_iter().collect(),
            [a, m, b] => {
                standard_cycle_p3(n, a, m, b)?;
                standard_p3_edges(n, a, m, b)
            }
            _ => unreachable!(),
        };
        w.add_labels(&edges);
        for &v in comp {
            stock[v] = ty(v).column_set(n);
        }
        if step > 0 {
            let (u1, u2) = comp
                .iter()
                .flat_map(|&a| t.neighbors(a).iter().map(move |&b| (a, b)))
                .find(|&(_, b)| placed[b])
                .expect("peeled component touches the placed part");
            let x = ty(u1);
            let j = stock[u2]
                .iter()
                .copied()
                .find(|&i| x.allows(i))
                .expect("a common vertical index always exists under the layer bound");
            debug_assert!(stock[u1].contains(&j));
            w.unlink(w.id(j, u1), w.id(j + 1, u1));
            w.unlink(w.id(j, u2), w.id(j + 1, u2));
            w.link(w.id(j, u1), w.id(j, u2));
            w.link(w.id(j + 1, u1), w.id(j + 1, u2));
            stock[u1].remove(&j);
            stock[u2].remove(&j);
        }
        for &v in comp {
            placed[v] = true;
        }
    }

    let base = t.order();
    let label = |id: usize| ProductLabel::new((id - 1) / base + 1, (id - 1) % base + 1);
    let mut seq = Vec::with_capacity(n * base);
    let (mut prev, mut cur) = (1usize, w.next[1][0].max(w.next[1][1]));
    seq.push(label(1));
    while cur != 1 {
        seq.push(label(cur));
        let [a, b] = w.next[cur];
        let nxt = if a == prev { b } else { a };
        prev = cur;
        cur = nxt;
    }
    assert_eq!(seq.len(), n * base, "spliced edges must close a single cycle");
    let column_counts = t.vertices().map(|v| stock[v].len()).collect();
    Ok(Built {
        cycle: HamCycle::new(n, seq),
        column_counts,
    })
}

/// True iff the cycle visits every vertex of the product exactly once along
/// product edges.
pub fn verify_cycle(product: &Product, cycle: &HamCycle) -> bool {
    let g = product.graph();
    if cycle.layers() != product.layers() || cycle.len() != g.order() || cycle.len() < 3 {
        return false;
    }
    let mut seen = vec![false; g.order() + 1];
    for &v in cycle.vertices() {
        if !(1..=product.layers()).contains(&v.layer) || !product.base().vertices().contains(&v.base)
        {
            return false;
        }
        if std::mem::replace(&mut seen[product.id(v)], true) {
            return false;
        }
    }
    cycle
        .edges()
        .all(|(a, b)| g.has_edge(product.id(a), product.id(b)))
}

/// Checks the per-column vertical-edge contract of the builders.
pub fn verify_edge_contract(
    cycle: &HamCycle,
    t: &Graph,
    typed: &TypedFactor,
    n: usize,
    mode: ContractMode,
) -> bool {
    t.vertices().all(|v| {
        let used = cycle.column_indices(v);
        match mode {
            ContractMode::Matching => used.len() + t.degree(v) == n,
            ContractMode::PathFactor => {
                let Some(x) = typed.type_of(v) else {
                    return false;
                };
                let allowed = x.column_set(n);
                used.is_subset(&allowed) && used.len() + t.degree(v) == allowed.len() + x.delta()
            }
        }
    })
}

/// How [`build_ham_main`] picks its factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Auto,
    Matching,
    PathFactor,
}

#[derive(Clone, Debug)]
pub struct MainBuild {
    pub cycle: HamCycle,
    /// The mode that produced the cycle (never `Auto`).
    pub mode: Mode,
    pub factor: PathFactor,
    pub tree: Graph,
}

/// Hamiltonian cycle of `P_n □ g2` for connected `g2` with a perfect matching
/// and `n >= Δ(g2)`, or with a path factor and even `n >= 4Δ(g2) - 2`.
///
/// The factor is extended to a spanning tree of `g2` and the tree builder
/// runs on it; `Δ` of the tree never exceeds `Δ(g2)`.
pub fn build_ham_main(n: usize, g2: &Graph, mode: Mode) -> Result<MainBuild, BuildError> {
    if !g2.is_connected() {
        return Err(BuildError::Disconnected);
    }
    let delta = g2.max_degree();
    let pm_bound = delta.max(2);
    let pf_bound = (4 * delta).saturating_sub(2).max(2);
    let pf_ok = n.is_multiple_of(2) && n >= pf_bound;

    let certificate = || factor::wang_certificate(g2).ok().flatten();
    let try_matching = |strict: bool| -> Option<Result<MainBuild, BuildError>> {
        let m = match factor::find_perfect_matching(g2) {
            Some(m) => m,
            None if strict => {
                return Some(Err(BuildError::NoFactor {
                    certificate: certificate(),
                }))
            }
            None => return None,
        };
        if n < pm_bound {
            return strict.then_some({
                Err(BuildError::LayerBound {
                    n,
                    required: pm_bound,
                    even: false,
                })
            });
        }
        Some(finish(n, g2, m, Mode::Matching))
    };
    let path_factor = || -> Result<MainBuild, BuildError> {
        let f = factor::find_p23_factor(g2).ok_or_else(|| BuildError::NoFactor {
            certificate: certificate(),
        })?;
        if !pf_ok {
            return Err(BuildError::LayerBound {
                n,
                required: pf_bound,
                even: true,
            });
        }
        finish(n, g2, f, Mode::PathFactor)
    };
    match mode {
        Mode::Matching => try_matching(true).expect("strict matching always answers"),
        Mode::PathFactor => path_factor(),
        Mode::Auto => match try_matching(false) {
            Some(result) => result,
            None => path_factor().map_err(|e| match e {
                // A matching exists but both layer bounds fail: report the
                // weaker matching bound.
                BuildError::LayerBound { .. } if factor::find_perfect_matching(g2).is_some() => {
                    BuildError::LayerBound {
                        n,
                        required: pm_bound,
                        even: false,
                    }
                }
                e => e,
            }),
        },
    }
}

fn finish(n: usize, g2: &Graph, f: PathFactor, mode: Mode) -> Result<MainBuild, BuildError> {
    let tree = g2
        .spanning_tree_containing(&f.edges())
        .map_err(|e| BuildError::InvalidFactor(e.to_string()))?;
    let built = match mode {
        Mode::Matching => build_ham_pm(n, &tree, &f)?,
        _ => build_ham_pf(n, &tree, &f)?,
    };
    let product = Product::path(n, g2);
    assert!(
        verify_cycle(&product, &built.cycle),
        "constructed cycle failed validation"
    );
    Ok(MainBuild {
        cycle: built.cycle,
        mode,
        factor: f,
        tree,
    })
}
