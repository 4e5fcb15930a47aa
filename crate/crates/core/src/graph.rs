//! Simple undirected graphs on `1..=order`, Cartesian products and the
//! edge-list text format.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("graph is not bipartite (odd cycle through vertex {0})")]
    NotBipartite(usize),
    #[error("seed edges contain a cycle")]
    CyclicSeed,
    #[error("seed edge {0}-{1} is not an edge of the graph")]
    NotSubgraph(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
}

/// An undirected simple graph on the vertices `1..=order`.
///
/// Neighbour lists are kept sorted ascending, so every traversal in the crate
/// visits vertices in a deterministic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    size: usize,
}

impl Graph {
    /// The edgeless graph of the given order.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); order],
            size: 0,
        }
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::Malformed("order must be positive".into()));
        }
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > order || v > order {
                return Err(GraphError::Malformed(format!(
                    "edge {u}-{v} has an endpoint outside 1..={order}"
                )));
            }
            if u == v {
                return Err(GraphError::Malformed(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::Malformed(format!("duplicate edge {u}-{v}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        let a = &mut self.adj[u - 1];
        let pos = a.binary_search(&v).unwrap_err();
        a.insert(pos, v);
        let b = &mut self.adj[v - 1];
        let pos = b.binary_search(&u).unwrap_err();
        b.insert(pos, u);
        self.size += 1;
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with sides `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 1..=a {
            for v in a + 1..=a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
    }

    /// The star `K_{1,leaves}` with centre 1.
    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.order()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v
            && (1..=self.order()).contains(&u)
            && (1..=self.order()).contains(&v)
            && self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size);
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        DegreeStats {
            max: degrees.iter().copied().max().unwrap_or(0),
            min: degrees.iter().copied().min().unwrap_or(0),
            degrees,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.size == n * (n - 1) / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order() + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.size + 1 == self.order() && self.is_connected()
    }

    /// Two-colours every component, putting its smallest vertex on side A.
    pub fn bipartition(&self) -> Result<Bipartition, GraphError> {
        let mut color: Vec<Option<bool>> = vec![None; self.order() + 1];
        for s in self.vertices() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return Err(GraphError::NotBipartite(s)),
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
        for v in self.vertices() {
            if color[v] == Some(false) {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        Ok(Bipartition { side_a, side_b })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// The subgraph spanned by the given edges (same vertex set).
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotSubgraph(u, v));
            }
        }
        Graph::from_edges(self.order(), edges)
    }

    /// A spanning tree containing every edge of `seed`.
    ///
    /// The seed's components are grown by scanning the remaining edges in
    /// lexicographic order and keeping each edge that joins two components.
    pub fn spanning_tree_containing(&self, seed: &[(usize, usize)]) -> Result<Graph, GraphError> {
        for &(u, v) in seed {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotSubgraph(u, v));
            }
        }
        let mut forest = UnionFind::new(self.order() + 1);
        let mut kept: Vec<(usize, usize)> = Vec::with_capacity(self.order().saturating_sub(1));
        for &(u, v) in seed {
            if !forest.union(u, v) {
                return Err(GraphError::CyclicSeed);
            }
            kept.push((u.min(v), u.max(v)));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        for (u, v) in self.edges() {
            if forest.union(u, v) {
                kept.push((u, v));
            }
        }
        kept.sort_unstable();
        Graph::from_edges(self.order(), &kept)
    }

    /// Bridges (cut-edges), as `(u, v)` with `u < v`, sorted.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut disc = vec![0usize; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut timer = 1;
        let mut out = Vec::new();
        for root in self.vertices() {
            if disc[root] != 0 {
                continue;
            }
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, 0usize, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if let Some(&w) = self.neighbors(u).get(top.2) {
                    top.2 += 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == 0 {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, u, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != 0 {
                        low[parent] = low[parent].min(low[u]);
                        if low[u] > disc[parent] {
                            out.push((parent.min(u), parent.max(u)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edge-list text: `order size` then one `u v` line per edge, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| GraphError::Malformed("missing header line".into()))?;
        let (order, count) = parse_pair(header)
            .ok_or_else(|| GraphError::Malformed(format!("bad header {header:?}")))?;
        let mut edges = Vec::with_capacity(count);
        for (lineno, line) in lines {
            let e = parse_pair(line).ok_or_else(|| {
                GraphError::Malformed(format!("line {}: expected `u v`, got {line:?}", lineno + 1))
            })?;
            edges.push(e);
        }
        if edges.len() != count {
            return Err(GraphError::Malformed(format!(
                "header announces {count} edges but {} were given",
                edges.len()
            )));
        }
        Graph::from_edges(order, &edges)
    }

    /// Graphviz rendering; edges in `bold` are drawn thick.
    pub fn to_dot(&self, bold: &[(usize, usize)]) -> String {
        dot(self, bold, |v| v.to_string())
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

fn dot(g: &Graph, bold: &[(usize, usize)], label: impl Fn(usize) -> String) -> String {
    let bold: std::collections::HashSet<(usize, usize)> =
        bold.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {v} [label=\"{}\"];", label(v));
    }
    for (u, v) in g.edges() {
        if bold.contains(&(u, v)) {
            let _ = writeln!(s, "  {u} -- {v} [penwidth=3];");
        } else {
            let _ = writeln!(s, "  {u} -- {v} [color=gray];");
        }
    }
    s.push_str("}\n");
    s
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order())?;
        let edges: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{})", edges.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub max: usize,
    pub min: usize,
    /// Degree of vertex `v` at index `v - 1`.
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Bipartition {
    pub fn contains_a(&self, v: usize) -> bool {
        self.side_a.binary_search(&v).is_ok()
    }
}

/// Vertex `i_v` of a product: layer `i` of the first factor, vertex `v` of
/// the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductLabel {
    pub layer: usize,
    pub base: usize,
}

impl ProductLabel {
    pub fn new(layer: usize, base: usize) -> Self {
        ProductLabel { layer, base }
    }
}

impl fmt::Display for ProductLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.layer, self.base)
    }
}

impl std::str::FromStr for ProductLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Malformed(format!("bad product vertex {s:?}"));
        let (i, v) = s.split_once('_').ok_or_else(bad)?;
        Ok(ProductLabel {
            layer: i.parse().map_err(|_| bad())?,
            base: v.parse().map_err(|_| bad())?,
        })
    }
}

/// The Cartesian product `G1 □ H` together with its labelling.
#[derive(Clone, Debug)]
pub struct Product {
    first: Graph,
    base: Graph,
    graph: Graph,
}

impl Product {
    pub fn new(first: &Graph, base: &Graph) -> Product {
        let nb = base.order();
        let id = |i: usize, v: usize| (i - 1) * nb + v;
        let mut edges = Vec::with_capacity(first.order() * base.size() + nb * first.size());
        for i in first.vertices() {
            for (u, w) in base.edges() {
                edges.push((id(i, u), id(i, w)));
            }
        }
        for v in base.vertices() {
            for (i, j) in first.edges() {
                edges.push((id(i, v), id(j, v)));
            }
        }
        let graph = Graph::from_edges(first.order() * nb, &edges).expect("product is simple");
        Product {
            first: first.clone(),
            base: base.clone(),
            graph,
        }
    }

    /// `P_n □ base`.
    pub fn path(layers: usize, base: &Graph) -> Product {
        Product::new(&Graph::path(layers), base)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn first(&self) -> &Graph {
        &self.first
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn layers(&self) -> usize {
        self.first.order()
    }

    pub fn id(&self, label: ProductLabel) -> usize {
        debug_assert!((1..=self.layers()).contains(&label.layer));
        debug_assert!(self.base.vertices().contains(&label.base));
        (label.layer - 1) * self.base.order() + label.base
    }

    pub fn label(&self, id: usize) -> ProductLabel {
        let nb = self.base.order();
        ProductLabel {
            layer: (id - 1) / nb + 1,
            base: (id - 1) % nb + 1,
        }
    }

    pub fn to_dot(&self, bold: &[(usize, usize)]) -> String {
        dot(&self.graph, bold, |id| self.label(id).to_string())
    }
}

/// `G1 □ H` with the encoding `id(i, v) = (i - 1)|V(H)| + v`.
pub fn cartesian_product(first: &Graph, base: &Graph) -> Product {
    Product::new(first, base)
}

/// Disjoint-set forest with path halving and union by size.
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Exhaustive isomorphism test for small graphs.
///
/// Backtracks over degree-compatible vertex assignments; intended for orders
/// up to about 12.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let mut dg: Vec<usize> = g.degree_stats().degrees;
    let mut dh: Vec<usize> = h.degree_stats().degrees;
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    // Assign g's vertices in order of decreasing degree.
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut map = vec![0usize; g.order() + 1];
    let mut used = vec![false; h.order() + 1];
    iso_extend(g, h, &order, 0, &mut map, &mut used)
}

fn iso_extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(k) else {
        return true;
    };
    for w in h.vertices() {
        if used[w] || h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = order[..k]
            .iter()
            .all(|&x| g.has_edge(v, x) == h.has_edge(w, map[x]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_extend(g, h, order, k + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> Graph {
        Graph::from_edges(8, &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 7), (4, 8)]).unwrap()
    }

    #[test]
    fn product_of_two_edges_is_a_four_cycle() {
        let p = cartesian_product(&Graph::path(2), &Graph::path(2));
        assert_eq!(p.graph().order(), 4);
        assert_eq!(p.graph().size(), 4);
        assert!(p.graph().vertices().all(|v| p.graph().degree(v) == 2));
        assert!(is_isomorphic(p.graph(), &Graph::cycle(4)));
    }

    #[test]
    fn product_edge_counts() {
        let p = Product::path(10, &Graph::path(3));
        assert_eq!((p.graph().order(), p.graph().size()), (30, 47));
        let p = Product::path(4, &t1());
        assert_eq!((p.graph().order(), p.graph().size()), (32, 52));
    }

    #[test]
    fn product_labels_round_trip() {
        let p = Product::path(4, &t1());
        for id in p.graph().vertices() {
            assert_eq!(p.id(p.label(id)), id);
        }
        assert_eq!(p.id(ProductLabel::new(3, 5)), 21);
        assert_eq!(p.label(21).to_string(), "3_5");
        assert_eq!("3_5".parse::<ProductLabel>().unwrap(), ProductLabel::new(3, 5));
        assert!("35".parse::<ProductLabel>().is_err());
        // Layer edges and column edges land where the encoding says.
        let g = p.graph();
        assert!(g.has_edge(p.id(ProductLabel::new(2, 1)), p.id(ProductLabel::new(2, 2))));
        assert!(g.has_edge(p.id(ProductLabel::new(2, 5)), p.id(ProductLabel::new(3, 5))));
        assert!(!g.has_edge(p.id(ProductLabel::new(2, 1)), p.id(ProductLabel::new(3, 2))));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(3).is_connected());
        let two_edges = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(!two_edges.is_connected());
        assert!(t1().is_connected());
        assert!(t1().is_tree());
    }

    #[test]
    fn bipartitions() {
        let b = Graph::cycle(4).bipartition().unwrap();
        assert_eq!(b.side_a, vec![1, 3]);
        assert_eq!(b.side_b, vec![2, 4]);
        assert_eq!(Graph::cycle(5).bipartition(), Err(GraphError::NotBipartite(1)));
        let p = Product::path(4, &t1());
        let b = p.graph().bipartition().unwrap();
        assert_eq!((b.side_a.len(), b.side_b.len()), (16, 16));
        assert!(b.contains_a(1));
    }

    #[test]
    fn degree_stats() {
        let s = t1().degree_stats();
        assert_eq!((s.max, s.min), (3, 1));
        assert_eq!(s.degrees, vec![1, 3, 3, 3, 1, 1, 1, 1]);
        let s = Graph::complete(4).degree_stats();
        assert_eq!((s.max, s.min), (3, 3));
        let s = Graph::path(2).degree_stats();
        assert_eq!((s.max, s.min), (1, 1));
    }

    #[test]
    fn spanning_tree_scans_edges_lexicographically() {
        let k4 = Graph::complete(4);
        let t = k4.spanning_tree_containing(&[(1, 2), (3, 4)]).unwrap();
        assert_eq!(t.edges(), vec![(1, 2), (1, 3), (3, 4)]);

        // C4 = 1-2-3-4-1: edge 14 precedes 23 in lexicographic order.
        let c4 = Graph::cycle(4);
        let t = c4.spanning_tree_containing(&[(1, 2), (3, 4)]).unwrap();
        assert_eq!(t.edges(), vec![(1, 2), (1, 4), (3, 4)]);
        assert!(t.is_tree());

        let tree = t1();
        assert_eq!(tree.spanning_tree_containing(&[(2, 6), (4, 5)]).unwrap(), tree);
    }

    #[test]
    fn spanning_tree_errors() {
        let c4 = Graph::cycle(4);
        assert_eq!(
            c4.spanning_tree_containing(&[(1, 3)]),
            Err(GraphError::NotSubgraph(1, 3))
        );
        assert_eq!(
            c4.spanning_tree_containing(&[(1, 2), (2, 3), (3, 4), (1, 4)]),
            Err(GraphError::CyclicSeed)
        );
        let two_edges = Graph::from_edges(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            two_edges.spanning_tree_containing(&[(1, 2)]),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn parses_edge_lists() {
        assert_eq!(Graph::parse_edge_list("2 1\n1 2\n").unwrap(), Graph::path(2));
        let g = Graph::parse_edge_list("8 7\n1 2\n2 3\n3 4\n4 5\n2 6\n3 7\n4 8\n").unwrap();
        assert_eq!(g, t1());
        let fig4 = Graph::parse_edge_list("6 5\n1 2\n2 3\n3 4\n2 5\n3 6\n").unwrap();
        assert_eq!(fig4.degree(2), 3);
        assert_eq!(fig4.to_edge_list(), "6 5\n1 2\n2 3\n2 5\n3 4\n3 6\n");
    }

    #[test]
    fn rejects_malformed_edge_lists() {
        for bad in [
            "",
            "x 1\n1 2\n",
            "2 1\n1 3\n",
            "2 1\n1 1\n",
            "3 2\n1 2\n2 1\n",
            "3 2\n1 2\n",
            "3 1\n1 2 3\n",
            "0 0\n",
        ] {
            assert!(
                matches!(Graph::parse_edge_list(bad), Err(GraphError::Malformed(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn bridges_of_small_graphs() {
        assert_eq!(Graph::path(4).bridges(), vec![(1, 2), (2, 3), (3, 4)]);
        assert!(Graph::complete(4).bridges().is_empty());
        // Two triangles joined by the edge 3-4.
        let g = Graph::from_edges(6, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)])
            .unwrap();
        assert_eq!(g.bridges(), vec![(3, 4)]);
    }

    #[test]
    fn dot_marks_bold_edges_and_product_labels() {
        let p = Product::path(2, &Graph::path(2));
        let dot = p.to_dot(&[(1, 3)]);
        assert!(dot.contains("3 [label=\"2_1\"]"));
        assert!(dot.contains("1 -- 3 [penwidth=3]"));
        assert!(dot.contains("1 -- 2 [color=gray]"));
    }

    #[test]
    fn isomorphism_small() {
        let a = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Graph::from_edges(4, &[(2, 4), (4, 1), (1, 3)]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &Graph::star(3)));
    }
}
