//! Non-isomorphic tree enumeration.

use std::collections::BTreeMap;

use crate::factor::FactorError;
use crate::graph::Graph;

/// Largest order [`enumerate_trees`] accepts.
pub const MAX_TREE_ORDER: usize = 12;

/// One tree per isomorphism class for every order in `2..=max_order`.
///
/// Trees come out grouped by order, and within an order sorted by canonical
/// string; each is relabelled in breadth-first order from its canonical root.
pub fn enumerate_trees(max_order: usize) -> Result<Vec<Graph>, FactorError> {
    if max_order > MAX_TREE_ORDER {
        return Err(FactorError::BudgetExceeded {
            order: max_order,
            cap: MAX_TREE_ORDER,
        });
    }
    let mut out = Vec::new();
    if max_order < 2 {
        return Ok(out);
    }
    let mut level = vec![Graph::path(2)];
    out.extend(level.iter().cloned());
    for order in 3..=max_order {
        let mut next = BTreeMap::new();
        for t in &level {
            let edges = t.edges();
            for v in t.vertices() {
                let mut e = edges.clone();
                e.push((v, order));
                let grown = Graph::from_edges(order, &e).expect("leaf extension is a tree");
                let (key, relabelled) = canonical(&grown);
                next.entry(key).or_insert(relabelled);
            }
        }
        level = next.into_values().collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Trees of exactly `order` vertices.
pub fn trees_of_order(order: usize) -> Result<Vec<Graph>, FactorError> {
    Ok(enumerate_trees(order)?
        .into_iter()
        .filter(|t| t.order() == order)
        .collect())
}

/// Centroid-rooted canonical string of a tree.
pub fn canonical_string(t: &Graph) -> String {
    canonical(t).0
}

fn canonical(t: &Graph) -> (String, Graph) {
    let (key, root) = centroids(t)
        .into_iter()
        .map(|c| (rooted_string(t, c, 0), c))
        .min()
        .expect("a tree has a centroid");
    (key, relabel(t, root))
}

fn centroids(t: &Graph) -> Vec<usize> {
    let n = t.order();
    let (parent, post) = rooted(t, 1);
    let mut size = vec![1usize; n + 1];
    for &v in &post {
        if parent[v] != 0 {
            size[parent[v]] += size[v];
        }
    }
    let weight = |v: usize| {
        t.neighbors(v)
            .iter()
            .map(|&w| if w == parent[v] { n - size[v] } else { size[w] })
            .max()
            .unwrap_or(0)
    };
    let best = t.vertices().map(weight).min().unwrap_or(0);
    t.vertices().filter(|&v| weight(v) == best).collect()
}

/// Parent array and a post-order (children before parents) from `root`.
fn rooted(t: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![0usize; t.order() + 1];
    let mut order = vec![root];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in t.neighbors(u) {
            if w != parent[u] {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    order.reverse();
    (parent, order)
}

fn rooted_string(t: &Graph, v: usize, from: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| w != from)
        .map(|&w| rooted_string(t, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn relabel(t: &Graph, root: usize) -> Graph {
    let mut label = vec![0usize; t.order() + 1];
    let mut queue = vec![(root, 0usize)];
    label[root] = 1;
    let mut next = 2;
    let mut edges = Vec::new();
    let mut i = 0;
    while i < queue.len() {
        let (u, from) = queue[i];
        i += 1;
        let mut kids: Vec<(String, usize)> = t
            .neighbors(u)
            .iter()
            .filter(|&&w| w != from)
            .map(|&w| (rooted_string(t, w, u), w))
            .collect();
        kids.sort();
        for (_, w) in kids {
            label[w] = next;
            next += 1;
            edges.push((label[u], label[w]));
            queue.push((w, u));
        }
    }
    Graph::from_edges(t.order(), &edges).expect("relabelling preserves the tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn counts_per_order() {
        let all = enumerate_trees(10).unwrap();
        let counts: Vec<usize> = (2..=10).map(|k| all.iter().filter(|t| t.order() == k).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(enumerate_trees(3).unwrap().len(), 2);
        assert!(all.iter().all(Graph::is_tree));
    }

    #[test]
    fn order_seven_pairwise_distinct() {
        let t7 = trees_of_order(7).unwrap();
        for (i, a) in t7.iter().enumerate() {
            for b in &t7[i + 1..] {
                assert!(!is_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn canonical_string_ignores_labels() {
        let a = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        let b = Graph::from_edges(5, &[(5, 4), (4, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(canonical_string(&a), canonical_string(&b));
        assert_ne!(canonical_string(&a), canonical_string(&Graph::path(5)));
    }

    #[test]
    fn enumeration_is_deterministic_and_capped() {
        assert_eq!(enumerate_trees(8).unwrap(), enumerate_trees(8).unwrap());
        assert!(matches!(enumerate_trees(13), Err(FactorError::BudgetExceeded { .. })));
    }
}
