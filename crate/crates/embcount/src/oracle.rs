//! Brute-force reference counter for list embeddings.
//!
//! This is the ground truth the faster counters are tested against, so it
//! stays as plain as possible: pattern vertices are processed in BFS order
//! and every candidate comes straight from the vertex's allowed list, with
//! constraints checked against the partial assignment. No candidate
//! propagation, no degree filters.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::{Graph, Pattern};

/// BFS order over the pattern: component roots in increasing id order, and
/// every later vertex of a component adjacent to an earlier one.
pub(crate) fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut seen = vec![false; g.vertex_count()];
    for root in 0..g.vertex_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let x = order[head];
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            head += 1;
        }
    }
    order
}

/// Exact number of injective, edge-preserving, list-respecting maps of the
/// pattern into the host.
pub fn count_embeddings_oracle(host: &Graph, pat: &Pattern) -> BigUint {
    let mut count = BigUint::zero();
    run(host, pat, &mut |_| {
        count += 1u32;
        true
    });
    count
}

/// Decision version with early exit; equal to `count > 0`.
pub fn exists_embedding_oracle(host: &Graph, pat: &Pattern) -> bool {
    let mut found = false;
    run(host, pat, &mut |_| {
        found = true;
        false
    });
    found
}

/// Enumerate all embeddings (desk-scale instrumentation for tests).
pub fn enumerate_embeddings_oracle(host: &Graph, pat: &Pattern) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    run(host, pat, &mut |image| {
        out.push(image.to_vec());
        true
    });
    out
}

/// Backtracking core. `visit` receives each complete image and returns
/// whether the search should continue.
fn run(host: &Graph, pat: &Pattern, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let k = pat.k();
    let order = bfs_order(&pat.graph);
    let candidates: Vec<Vec<usize>> = (0..k)
        .map(|i| pat.candidates(i, host.vertex_count()))
        .collect();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; host.vertex_count()];
    extend(host, pat, &order, &candidates, 0, &mut image, &mut used, visit);
}

#[allow(clippy::too_many_arguments)]
fn extend(
    host: &Graph,
    pat: &Pattern,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == order.len() {
        return visit(image);
    }
    let v = order[depth];
    'cands: for &x in &candidates[v] {
        if used[x] {
            continue;
        }
        for &w in pat.graph.neighbors(v) {
            if image[w] != usize::MAX && !host.has_edge(x, image[w]) {
                continue 'cands;
            }
        }
        image[v] = x;
        used[x] = true;
        let go_on = extend(host, pat, order, candidates, depth + 1, image, used, visit);
        image[v] = usize::MAX;
        used[x] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// n·(n−1)·…·(n−k+1), the count of an edgeless k-vertex pattern with full
/// lists; shared by tests as an independent closed form.
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        if i >= n {
            return BigUint::zero();
        }
        out *= BigUint::from(n - i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, Graph, Pattern};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn unrestricted(g: Graph) -> Pattern {
        Pattern::unrestricted(g).unwrap()
    }

    #[test]
    fn count_examples() {
        let k3 = complete_graph(3);
        assert_eq!(count_embeddings_oracle(&k3, &unrestricted(path_graph(2))), 6u32.into());
        assert_eq!(count_embeddings_oracle(&k3, &unrestricted(complete_graph(3))), 6u32.into());
        let listed = Pattern::new(path_graph(2), vec![Some(vec![0]), Some(vec![1, 2])]).unwrap();
        assert_eq!(count_embeddings_oracle(&k3, &listed), 2u32.into());
    }

    #[test]
    fn p3_into_c5_is_ten() {
        let c5 = cycle_graph(5);
        assert_eq!(count_embeddings_oracle(&c5, &unrestricted(path_graph(3))), 10u32.into());
    }

    #[test]
    fn exists_examples() {
        assert!(exists_embedding_oracle(&complete_graph(3), &unrestricted(path_graph(2))));
        assert!(!exists_embedding_oracle(&cycle_graph(4), &unrestricted(complete_graph(3))));
        assert!(!exists_embedding_oracle(&Graph::empty(4), &unrestricted(path_graph(2))));
    }

    #[test]
    fn isolated_pattern_counts_falling_factorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=10usize {
            for k in 1..=4usize {
                let edges = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|_| rng.gen_bool(0.3))
                    .collect::<Vec<_>>();
                let host = Graph::new(n, edges).unwrap();
                let pat = unrestricted(Graph::empty(k));
                assert_eq!(count_embeddings_oracle(&host, &pat), falling_factorial(n, k));
            }
        }
    }

    #[test]
    fn adding_a_host_edge_never_decreases_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(3..8);
            let mut edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            edges.shuffle(&mut rng);
            let cut = rng.gen_range(0..edges.len());
            let (kept, rest) = edges.split_at(cut);
            let host = Graph::new(n, kept.iter().copied()).unwrap();
            let k = rng.gen_range(2..=4);
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let pat = unrestricted(Graph::new(k, pedges).unwrap());
            let before = count_embeddings_oracle(&host, &pat);
            if let Some(&extra) = rest.first() {
                let mut grown: Vec<(usize, usize)> = kept.to_vec();
                grown.push(extra);
                let host2 = Graph::new(n, grown).unwrap();
                let after = count_embeddings_oracle(&host2, &pat);
                assert!(after >= before);
            }
        }
    }

    #[test]
    fn exists_iff_count_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.gen_range(1..7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let host = Graph::new(n, edges).unwrap();
            let k = rng.gen_range(1..=3);
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let pat = unrestricted(Graph::new(k, pedges).unwrap());
            let count = count_embeddings_oracle(&host, &pat);
            assert_eq!(exists_embedding_oracle(&host, &pat), count > BigUint::zero());
        }
    }
}
