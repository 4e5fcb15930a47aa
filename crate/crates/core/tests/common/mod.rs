//! Reference implementations used as oracles by the integration tests.
//!
//! Everything here is deliberately naive and shares no code with the
//! library beyond the `Graph` container.

#![allow(dead_code)]

use cartham::Graph;
use rand::Rng;

pub fn caterpillar() -> Graph {
    Graph::from_edges(8, &[(1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 7), (4, 8)]).unwrap()
}

pub fn h_tree() -> Graph {
    Graph::from_edges(6, &[(1, 2), (2, 3), (3, 4), (2, 5), (3, 6)]).unwrap()
}

/// Adjacency as plain boolean rows, 1-indexed.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n + 1]; n + 1];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Components of `g` minus `removed`, by depth-first search.
pub fn components_without(g: &Graph, removed: &[usize]) -> usize {
    let n = g.order();
    let m = matrix(g);
    let mut gone = vec![false; n + 1];
    for &v in removed {
        gone[v] = true;
    }
    let mut seen = gone.clone();
    let mut count = 0;
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for w in 1..=n {
                if m[u][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

pub fn isolated_without(g: &Graph, removed: &[usize]) -> Vec<usize> {
    let m = matrix(g);
    (1..=g.order())
        .filter(|v| !removed.contains(v))
        .filter(|&v| (1..=g.order()).all(|w| !m[v][w] || removed.contains(&w)))
        .collect()
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect())
}

/// Whether some `S` leaves more than `2|S|` isolated vertices.
pub fn has_isolation_violation(g: &Graph) -> bool {
    subsets(g.order()).any(|s| isolated_without(g, &s).len() > 2 * s.len())
}

/// Every `{P2, P3}`-factor, each as a sorted list of sorted vertex lists.
pub fn all_p23_factors(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    fn go(m: &[Vec<bool>], used: &mut Vec<bool>, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = used.len() - 1;
        let Some(v) = (1..=n).find(|&v| !used[v]) else {
            let mut f: Vec<Vec<usize>> = acc.clone();
            f.sort();
            out.push(f);
            return;
        };
        used[v] = true;
        let free: Vec<usize> = (1..=n).filter(|&w| !used[w]).collect();
        for &w in &free {
            if !m[v][w] {
                continue;
            }
            used[w] = true;
            // P2 {v, w}
            acc.push(vec![v, w]);
            go(m, used, acc, out);
            acc.pop();
            for &x in &free {
                if used[x] {
                    continue;
                }
                // v - w - x
                if m[w][x] {
                    used[x] = true;
                    acc.push(sorted(vec![v, w, x]));
                    go(m, used, acc, out);
                    acc.pop();
                    used[x] = false;
                }
                // w - v - x, counted once with w < x
                if m[v][x] && w < x {
                    used[x] = true;
                    acc.push(sorted(vec![v, w, x]));
                    go(m, used, acc, out);
                    acc.pop();
                    used[x] = false;
                }
            }
            used[w] = false;
        }
        used[v] = false;
    }
    let m = matrix(g);
    let mut out = Vec::new();
    go(&m, &mut vec![false; g.order() + 1], &mut Vec::new(), &mut out);
    out
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Checks a factor given as vertex sequences: spanning, disjoint, each a
/// path of order 2 or 3 in `g` (consecutive entries adjacent).
pub fn is_p23_factor(g: &Graph, comps: &[Vec<usize>]) -> bool {
    let m = matrix(g);
    let mut count = vec![0; g.order() + 1];
    for c in comps {
        if !(2..=3).contains(&c.len()) || !c.windows(2).all(|w| m[w[0]][w[1]]) {
            return false;
        }
        for &v in c {
            if v == 0 || v > g.order() {
                return false;
            }
            count[v] += 1;
        }
    }
    count[1..].iter().all(|&c| c == 1)
}

/// Plain backtracking for a Hamiltonian cycle.
pub fn naive_ham_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 {
        return None;
    }
    let m = matrix(g);
    let mut path = vec![1];
    let mut used = vec![false; n + 1];
    used[1] = true;
    fn go(m: &[Vec<bool>], path: &mut Vec<usize>, used: &mut [bool], n: usize) -> bool {
        let end = *path.last().unwrap();
        if path.len() == n {
            return m[end][1];
        }
        for w in 1..=n {
            if m[end][w] && !used[w] {
                used[w] = true;
                path.push(w);
                if go(m, path, used, n) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
    go(&m, &mut path, &mut used, n).then_some(path)
}

pub fn naive_ham_path_exists(g: &Graph) -> bool {
    let n = g.order();
    let m = matrix(g);
    fn go(m: &[Vec<bool>], end: usize, used: &mut [bool], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for w in 1..used.len() {
            if m[end][w] && !used[w] {
                used[w] = true;
                if go(m, w, used, left - 1) {
                    return true;
                }
                used[w] = false;
            }
        }
        false
    }
    (1..=n).any(|s| {
        let mut used = vec![false; n + 1];
        used[s] = true;
        go(&m, s, &mut used, n - 1)
    })
}

pub fn is_ham_cycle(g: &Graph, seq: &[usize]) -> bool {
    let m = matrix(g);
    let mut seen = vec![false; g.order() + 1];
    seq.len() == g.order()
        && seq.len() >= 3
        && seq.iter().all(|&v| v >= 1 && v <= g.order() && !std::mem::replace(&mut seen[v], true))
        && (0..seq.len()).all(|i| m[seq[i]][seq[(i + 1) % seq.len()]])
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    g.size() == n * (n - 1) / 2
}

/// Minimum of `|S| / c(G - S)` over cut sets as a reduced fraction, or `None`
/// for complete graphs.
pub fn naive_toughness(g: &Graph) -> Option<(u64, u64)> {
    if is_complete(g) {
        return None;
    }
    let mut best: Option<(u64, u64)> = None;
    for s in subsets(g.order()) {
        if s.len() == g.order() {
            continue;
        }
        let c = components_without(g, &s) as u64;
        if c < 2 {
            continue;
        }
        let cand = (s.len() as u64, c);
        best = match best {
            Some(b) if b.0 * cand.1 <= cand.0 * b.1 => Some(b),
            _ => Some(cand),
        };
    }
    let (a, b) = best.expect("non-complete graphs have cut sets");
    let g = gcd(a, b);
    Some((a / g, b / g))
}

/// Whether some cut set has more components than vertices.
pub fn naive_not_one_tough(g: &Graph) -> bool {
    subsets(g.order()).any(|s| {
        let c = components_without(g, &s);
        s.len() < g.order() && c >= 2 && c > s.len()
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Isomorphism by trying every bijection.
pub fn permutation_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() {
        return false;
    }
    let n = g.order();
    let mh = matrix(h);
    let mut perm: Vec<usize> = (1..=n).collect();
    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    loop {
        let ok = g
            .edges()
            .iter()
            .all(|&(u, v)| mh[perm[u - 1]][perm[v - 1]]);
        if ok {
            return true;
        }
        if !next_perm(&mut perm) {
            return false;
        }
    }
}

/// Uniform labelled tree from a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n == 1 {
        return Graph::empty(1);
    }
    if n == 2 {
        return Graph::path(2);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in &seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).unwrap()
}

/// Random tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let t = random_tree(n, rng);
    let mut edges = t.edges();
    for u in 1..=n {
        for v in u + 1..=n {
            if !t.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected bipartite graph with sides `1..=a` and `a+1..=a+b`.
pub fn random_connected_bipartite<R: Rng>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 1..=a {
            for v in a + 1..=a + b {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(a + b, &edges).unwrap();
        if components_without(&g, &[]) == 1 {
            return g;
        }
    }
}
