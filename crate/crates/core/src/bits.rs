//! Fixed-width vertex sets for the exhaustive searches.
//!
//! Bit `k` stands for vertex `k + 1`. Searches that use these masks accept
//! graphs of at most [`MAX_ORDER`] vertices.

use crate::graph::Graph;

pub type Mask = u128;

pub const MAX_ORDER: usize = 128;

#[inline]
pub fn bit(v: usize) -> Mask {
    1 << (v - 1)
}

#[inline]
pub fn full(order: usize) -> Mask {
    if order == MAX_ORDER {
        Mask::MAX
    } else {
        (1 << order) - 1
    }
}

/// Iterates the vertices (1-indexed) of a mask in ascending order.
#[inline]
pub fn iter(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(k + 1)
        }
    })
}

#[inline]
pub fn lowest(mask: Mask) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize + 1)
}

pub fn from_vertices(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

/// Adjacency masks indexed by `v - 1`.
pub fn adjacency(g: &Graph) -> Vec<Mask> {
    assert!(g.order() <= MAX_ORDER, "graph of order {} exceeds mask width", g.order());
    g.vertices()
        .map(|v| from_vertices(g.neighbors(v)))
        .collect()
}

/// The connected component of `alive` containing `start`.
pub fn component(adj: &[Mask], alive: Mask, start: usize) -> Mask {
    let mut seen = bit(start) & alive;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in iter(frontier) {
            next |= adj[v - 1];
        }
        next &= alive & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

/// Number of connected components of the subgraph induced by `alive`.
pub fn count_components(adj: &[Mask], alive: Mask) -> usize {
    let mut rest = alive;
    let mut count = 0;
    while let Some(v) = lowest(rest) {
        rest &= !component(adj, rest, v);
        count += 1;
    }
    count
}

/// Number of vertices of `alive` with no neighbour inside `alive`.
pub fn count_isolated(adj: &[Mask], alive: Mask) -> usize {
    iter(alive).filter(|&v| adj[v - 1] & alive == 0).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_ascending_order() {
        let m = from_vertices(&[5, 1, 128, 64]);
        assert_eq!(iter(m).collect::<Vec<_>>(), vec![1, 5, 64, 128]);
        assert_eq!(lowest(m), Some(1));
        assert_eq!(lowest(0), None);
        assert_eq!(full(128), Mask::MAX);
        assert_eq!(full(3), 0b111);
    }

    #[test]
    fn counts_components_of_induced_subgraphs() {
        let g = Graph::path(5);
        let adj = adjacency(&g);
        assert_eq!(count_components(&adj, full(5)), 1);
        assert_eq!(count_components(&adj, full(5) & !bit(3)), 2);
        assert_eq!(count_isolated(&adj, full(5) & !bit(2) & !bit(4)), 3);
        assert_eq!(count_components(&adj, 0), 0);
    }
}
