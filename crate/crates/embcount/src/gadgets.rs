//! Executable hardness constructions: a grid-of-paths pattern and a host
//! built from a multicolour-clique instance such that the pattern embeds
//! into the host exactly when the instance has a multicolour clique. Both
//! graphs carry odd decoration cycles that pin anchor vertices in place, and
//! the host's edges split into a star-forest layer and a matching layer.
//!
//! All registries (anchors, path blocks, cycle ranges) use deterministic id
//! allocation: pattern paths first, host anchors before path vertices, and
//! every decoration cycle after the whole base graph.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::CountError;
use crate::graph::{Embedding, Graph, LayeredGraph, Pattern};
use crate::io::CliqueInstance;

/// Layer id of the star-forest part of a gadget host.
pub const STAR_FOREST_LAYER: usize = 0;
/// Layer id of the matching part of a gadget host.
pub const MATCHING_LAYER: usize = 1;

/// Unordered pairs of `{0..k}` in lexicographic order.
pub fn pair_list(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect()
}

/// Decoration cycle length for class `i` (0-based) in column `j` (0-based):
/// the odd numbers 3, 5, 7, ... walked in (class, column) order.
pub fn cycle_length(k: usize, class: usize, column: usize) -> usize {
    let columns = pair_list(k).len();
    2 * (class * columns + column + 1) + 1
}

/// The pattern side of the reduction.
#[derive(Debug, Clone)]
pub struct GadgetPattern {
    pub k: usize,
    pub columns: usize,
    pub pairs: Vec<(usize, usize)>,
    /// `paths[i][t]`: vertex `t` (0-based) of path `i`, `t < 6 * columns`.
    pub paths: Vec<Vec<usize>>,
    /// `anchors[i][j]`: the (6(j+1))-th vertex of path `i`.
    pub anchors: Vec<Vec<usize>>,
    /// `cycles[i][j]`: the new vertices of the decoration cycle through
    /// `anchors[i][j]`, in cycle order.
    pub cycles: Vec<Vec<Vec<usize>>>,
    /// Vertex count before decoration (the grid-of-paths part).
    pub base_vertex_count: usize,
    pub graph: Graph,
}

/// Build the pattern for parameter `k`: `k` paths on `6*C(k,2)` vertices,
/// one cross edge per unordered pair at the (6(l-1)+3)-th vertices, and an
/// odd decoration cycle through every anchor.
pub fn build_pattern(k: usize) -> Result<GadgetPattern, CountError> {
    if k < 2 {
        return Err(CountError::InvalidArgument(format!(
            "gadget pattern needs k >= 2, got {k}"
        )));
    }
    let pairs = pair_list(k);
    let columns = pairs.len();
    let path_len = 6 * columns;
    let paths: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..path_len).map(|t| i * path_len + t).collect())
        .collect();
    let base = k * path_len;
    let anchors: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..columns).map(|j| paths[i][6 * j + 5]).collect())
        .collect();

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for path in &paths {
        for t in 1..path_len {
            edges.push((path[t - 1], path[t]));
        }
    }
    for (l, &(i, j)) in pairs.iter().enumerate() {
        edges.push((paths[i][6 * l + 2], paths[j][6 * l + 2]));
    }

    let mut next = base;
    let mut cycles: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    for (i, row) in cycles.iter_mut().enumerate() {
        for j in 0..columns {
            let len = cycle_length(k, i, j);
            let fresh: Vec<usize> = (next..next + len - 1).collect();
            next += len - 1;
            edges.extend(cycle_edges(anchors[i][j], &fresh));
            row.push(fresh);
        }
    }

    let graph = Graph::new(next, edges).map_err(|e| CountError::Inconsistency(e.to_string()))?;
    Ok(GadgetPattern {
        k,
        columns,
        pairs,
        paths,
        anchors,
        cycles,
        base_vertex_count: base,
        graph,
    })
}

/// Edges of a cycle through `anchor` and the fresh vertices, in edge order:
/// edge 1 leaves the anchor toward the lowest fresh id.
fn cycle_edges(anchor: usize, fresh: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(fresh.len() + 1);
    let mut prev = anchor;
    for &c in fresh {
        edges.push((prev, c));
        prev = c;
    }
    edges.push((prev, anchor));
    edges
}

/// The host side of the reduction, with its layer partition.
#[derive(Debug, Clone)]
pub struct GadgetHost {
    pub instance: CliqueInstance,
    pub k: usize,
    pub columns: usize,
    pub pairs: Vec<(usize, usize)>,
    /// `anchors[v][j]`: host id of the anchor for instance vertex `v` in
    /// column `j`.
    pub anchors: Vec<Vec<usize>>,
    /// `(v, edge index, column)` -> the five path vertices, in path order.
    pub paths: BTreeMap<(usize, usize, usize), [usize; 5]>,
    /// `cycles[v][j]`: new vertices of the decoration cycle at `anchors[v][j]`.
    pub cycles: Vec<Vec<Vec<usize>>>,
    pub base_vertex_count: usize,
    pub host: LayeredGraph,
}

impl GadgetHost {
    /// 0-based class of instance vertex `v`.
    fn class0(&self, v: usize) -> usize {
        self.instance.color_of[v] - 1
    }
}

/// Build the host from a multicolour-clique instance. One anchor per
/// (vertex, column); one five-vertex path per (vertex, incident edge,
/// column); cross edges join the middle path vertices of an instance edge in
/// the column of its endpoint classes; decoration cycles pin every anchor.
/// Layer 0 is a star forest and layer 1 a matching.
pub fn build_host(instance: &CliqueInstance) -> Result<GadgetHost, CountError> {
    let k = instance.k;
    let pairs = pair_list(k);
    let columns = pairs.len();
    let n = instance.graph.vertex_count();
    let class0: Vec<usize> = instance.color_of.iter().map(|c| c - 1).collect();

    // anchors first: id(v^j) = j*n + v
    let mut next = columns * n;
    let anchors: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..columns).map(|j| j * n + v).collect())
        .collect();

    // incident edge indices per vertex, ascending
    let incident: Vec<Vec<usize>> = {
        let mut inc = vec![Vec::new(); n];
        for (idx, &(u, w)) in instance.graph.edges().iter().enumerate() {
            inc[u].push(idx);
            inc[w].push(idx);
        }
        inc
    };

    let mut paths: BTreeMap<(usize, usize, usize), [usize; 5]> = BTreeMap::new();
    for j in 0..columns {
        for v in 0..n {
            for &e in &incident[v] {
                let ids = [next, next + 1, next + 2, next + 3, next + 4];
                next += 5;
                paths.insert((v, e, j), ids);
            }
        }
    }
    let base = next;

    let mut star_forest: Vec<(usize, usize)> = Vec::new();
    let mut matching: Vec<(usize, usize)> = Vec::new();

    for (&(v, _e, j), ids) in &paths {
        matching.push((ids[0], ids[1]));
        star_forest.push((ids[1], ids[2]));
        star_forest.push((ids[2], ids[3]));
        matching.push((ids[3], ids[4]));
        star_forest.push((ids[4], anchors[v][j]));
        if j >= 1 {
            star_forest.push((ids[0], anchors[v][j - 1]));
        }
    }

    // cross edges: middle vertices of the two paths of one instance edge, in
    // the column of that edge's class pair
    for (j, &(r, s)) in pairs.iter().enumerate() {
        for (idx, &(u, w)) in instance.graph.edges().iter().enumerate() {
            let (cu, cw) = (class0[u], class0[w]);
            if (cu, cw) == (r, s) || (cu, cw) == (s, r) {
                matching.push((paths[&(u, idx, j)][2], paths[&(w, idx, j)][2]));
            }
        }
    }

    // decoration cycles, alternating layers around each cycle; the two edges
    // at the anchor get odd indices, keeping the matching layer anchor-free
    let mut cycles: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for j in 0..columns {
        for (v, row) in cycles.iter_mut().enumerate() {
            let len = cycle_length(k, class0[v], j);
            let fresh: Vec<usize> = (next..next + len - 1).collect();
            next += len - 1;
            for (t, edge) in cycle_edges(anchors[v][j], &fresh).into_iter().enumerate() {
                if (t + 1) % 2 == 0 {
                    matching.push(edge);
                } else {
                    star_forest.push(edge);
                }
            }
            row.push(fresh);
        }
    }

    let host = LayeredGraph::from_layers(next, &[star_forest, matching])
        .map_err(|e| CountError::Inconsistency(e.to_string()))?;
    Ok(GadgetHost {
        instance: instance.clone(),
        k,
        columns,
        pairs,
        anchors,
        paths,
        cycles,
        base_vertex_count: base,
        host,
    })
}

/// The explicit embedding carried by a multicolour clique: pattern path `i`
/// walks the host paths of clique vertex `i`, through the clique edge in the
/// column of each pair involving `i` and through a fixed incident edge
/// elsewhere; anchors map to anchors, cycles to cycles.
pub fn clique_to_embedding(
    host: &GadgetHost,
    pattern: &GadgetPattern,
    clique: &[usize],
) -> Result<Embedding, CountError> {
    if pattern.k != host.k {
        return Err(CountError::InvalidArgument(format!(
            "pattern built for k = {} but host for k = {}",
            pattern.k, host.k
        )));
    }
    if !host.instance.is_multicolour_clique(clique) {
        return Err(CountError::InvalidArgument(
            "supplied vertices are not a multicolour clique".into(),
        ));
    }
    let edges = host.instance.graph.edges();
    let edge_index = |u: usize, w: usize| -> usize {
        edges
            .binary_search(&(u.min(w), u.max(w)))
            .expect("clique pairs are instance edges")
    };
    // fallback edge per clique vertex: the minimum-id incident edge
    let fallback: Vec<usize> = clique
        .iter()
        .map(|&w| {
            edges
                .iter()
                .position(|&(a, b)| a == w || b == w)
                .expect("clique vertices have incident edges")
        })
        .collect();

    let mut image = vec![usize::MAX; pattern.graph.vertex_count()];
    for i in 0..pattern.k {
        let w = clique[i];
        for j in 0..pattern.columns {
            let (r, s) = pattern.pairs[j];
            let e = if r == i {
                edge_index(w, clique[s])
            } else if s == i {
                edge_index(w, clique[r])
            } else {
                fallback[i]
            };
            let ids = host.paths[&(w, e, j)];
            for t in 0..5 {
                image[pattern.paths[i][6 * j + t]] = ids[t];
            }
            image[pattern.paths[i][6 * j + 5]] = host.anchors[w][j];
            for (pv, hv) in pattern.cycles[i][j].iter().zip(&host.cycles[w][j]) {
                image[*pv] = *hv;
            }
        }
    }

    let embedding = Embedding { image };
    let pat = Pattern::unrestricted(pattern.graph.clone()).expect("pattern is nonempty");
    embedding
        .validate(host.host.flatten(), &pat)
        .map_err(|e| CountError::Inconsistency(format!("constructed embedding invalid: {e}")))?;
    Ok(embedding)
}

/// One structural check of a gadget pair.
#[derive(Debug, Clone)]
pub struct GadgetCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct GadgetReport {
    pub checks: Vec<GadgetCheck>,
}

impl GadgetReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(GadgetCheck { name, passed, detail });
    }
}

/// Run every structural validator: vertex-count formulas, the layer
/// partition (star forest + matching), bipartiteness of the undecorated
/// host, decoration cycle lengths, and anchor distances (exhaustive for
/// k <= 3, sampled beyond).
pub fn validate_gadget(host: &GadgetHost, pattern: &GadgetPattern) -> GadgetReport {
    let mut report = GadgetReport::default();
    let k = host.k;
    let columns = host.columns;

    let expected_pattern_base = 6 * k * columns;
    report.push(
        "pattern_base_vertices",
        pattern.base_vertex_count == expected_pattern_base && pattern.k == k,
        format!("{} vs 6k*C(k,2) = {expected_pattern_base}", pattern.base_vertex_count),
    );

    let cycle_total: usize = (0..k)
        .flat_map(|i| (0..columns).map(move |j| cycle_length(k, i, j) - 1))
        .sum();
    report.push(
        "pattern_total_vertices",
        pattern.graph.vertex_count() == expected_pattern_base + cycle_total,
        format!(
            "{} vs {}",
            pattern.graph.vertex_count(),
            expected_pattern_base + cycle_total
        ),
    );

    let inst = &host.instance;
    let expected_host_base: usize = columns
        * (0..inst.graph.vertex_count())
            .map(|v| 1 + 5 * inst.graph.degree(v))
            .sum::<usize>();
    report.push(
        "host_base_vertices",
        host.base_vertex_count == expected_host_base,
        format!("{} vs C(k,2)*sum(1+5d(v)) = {expected_host_base}", host.base_vertex_count),
    );

    let host_cycle_total: usize = (0..inst.graph.vertex_count())
        .flat_map(|v| (0..columns).map(move |j| cycle_length(k, host.class0(v), j) - 1))
        .sum();
    report.push(
        "host_total_vertices",
        host.host.vertex_count() == expected_host_base + host_cycle_total,
        format!(
            "{} vs {}",
            host.host.vertex_count(),
            expected_host_base + host_cycle_total
        ),
    );

    let star_layer = host.host.layer(STAR_FOREST_LAYER);
    report.push(
        "layer_0_star_forest",
        star_layer.is_star_forest(),
        format!("{} edges", star_layer.edge_count()),
    );
    let matching_layer = host.host.layer(MATCHING_LAYER);
    report.push(
        "layer_1_matching",
        matching_layer.is_matching(),
        format!("{} edges", matching_layer.edge_count()),
    );
    report.push(
        "layers_partition_edges",
        star_layer.edge_count() + matching_layer.edge_count() == host.host.flatten().edge_count(),
        format!(
            "{} + {} vs {}",
            star_layer.edge_count(),
            matching_layer.edge_count(),
            host.host.flatten().edge_count()
        ),
    );

    let undecorated_vertices: Vec<usize> = (0..host.base_vertex_count).collect();
    let (undecorated, _) = host.host.flatten().induced_subgraph(&undecorated_vertices);
    report.push(
        "undecorated_host_bipartite",
        undecorated.is_bipartite(),
        format!("{} vertices", undecorated.vertex_count()),
    );

    report.push("pattern_cycles", check_cycles_pattern(pattern), String::new());
    report.push("host_cycles", check_cycles_host(host), String::new());

    let lengths: Vec<usize> = (0..k)
        .flat_map(|i| (0..columns).map(move |j| cycle_length(k, i, j)))
        .collect();
    let distinct_odd = lengths.iter().all(|&l| l % 2 == 1)
        && lengths.windows(2).all(|w| w[0] < w[1]);
    report.push(
        "cycle_lengths_distinct_odd",
        distinct_odd,
        format!("{lengths:?}"),
    );

    // anchor separation in the undecorated host
    let anchor_ids: Vec<usize> = host.anchors.iter().flatten().copied().collect();
    let sample: Vec<usize> = if k <= 3 {
        anchor_ids.clone()
    } else {
        anchor_ids.iter().copied().take(20).collect()
    };
    let mut min_dist = usize::MAX;
    for &a in &sample {
        let dist = undecorated.distances_from(a);
        for &b in &anchor_ids {
            if a != b && dist[b] < min_dist {
                min_dist = dist[b];
            }
        }
    }
    report.push(
        "anchor_distance_at_least_six",
        min_dist >= 6,
        if min_dist == usize::MAX {
            "no two anchors connected".into()
        } else {
            format!("min distance {min_dist}")
        },
    );

    report
}

fn is_cycle_in(g: &Graph, anchor: usize, fresh: &[usize]) -> bool {
    cycle_edges(anchor, fresh).iter().all(|&(a, b)| g.has_edge(a, b))
}

fn check_cycles_pattern(pattern: &GadgetPattern) -> bool {
    (0..pattern.k).all(|i| {
        (0..pattern.columns).all(|j| {
            let fresh = &pattern.cycles[i][j];
            fresh.len() + 1 == cycle_length(pattern.k, i, j)
                && is_cycle_in(&pattern.graph, pattern.anchors[i][j], fresh)
        })
    })
}

fn check_cycles_host(host: &GadgetHost) -> bool {
    let flat = host.host.flatten();
    (0..host.instance.graph.vertex_count()).all(|v| {
        (0..host.columns).all(|j| {
            let fresh = &host.cycles[v][j];
            fresh.len() + 1 == cycle_length(host.k, host.class0(v), j)
                && is_cycle_in(flat, host.anchors[v][j], fresh)
        })
    })
}

/// The sidecar registry written next to generated gadget files, mapping
/// anchors, path blocks and cycles to concrete vertex ids.
pub fn registry_json(host: &GadgetHost, pattern: &GadgetPattern) -> serde_json::Value {
    json!({
        "k": host.k,
        "columns": host.columns,
        "pairs": host.pairs,
        "pattern": {
            "base_vertices": pattern.base_vertex_count,
            "paths": pattern.paths,
            "anchors": pattern.anchors,
            "cycles": pattern.cycles,
        },
        "host": {
            "base_vertices": host.base_vertex_count,
            "anchors": host.anchors,
            "paths": host
                .paths
                .iter()
                .map(|(&(v, e, j), ids)| {
                    json!({
                        "vertex": v,
                        "edge": host.instance.graph.edges()[e],
                        "column": j,
                        "ids": ids,
                    })
                })
                .collect::<Vec<_>>(),
            "cycles": host.cycles,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::exists_embedding;
    use crate::graph::Graph;
    use crate::io::CliqueInstance;

    fn two_class_instance(cross: &[(usize, usize)]) -> CliqueInstance {
        // vertices 0..2: class 1 = {0}, class 2 = {1}; edges as given
        let n = cross.iter().flat_map(|&(u, v)| [u, v]).max().unwrap_or(1) + 1;
        let colors = (0..n).map(|v| if v % 2 == 0 { 1 } else { 2 }).collect();
        CliqueInstance::new(Graph::new(n, cross.iter().copied()).unwrap(), colors).unwrap()
    }

    fn triangle_instance() -> CliqueInstance {
        CliqueInstance::new(
            Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap(),
            vec![1, 2, 3],
        )
        .unwrap()
    }

    #[test]
    fn pattern_vertex_counts() {
        let p2 = build_pattern(2).unwrap();
        assert_eq!(p2.base_vertex_count, 12);
        assert_eq!(p2.graph.vertex_count(), 18); // cycles of length 3 and 5
        assert_eq!(cycle_length(2, 0, 0), 3);
        assert_eq!(cycle_length(2, 1, 0), 5);

        let p3 = build_pattern(3).unwrap();
        assert_eq!(p3.base_vertex_count, 54);
        assert_eq!(p3.graph.vertex_count(), 144);
    }

    #[test]
    fn pattern_cross_edges_unique_per_pair() {
        let p = build_pattern(3).unwrap();
        for (l, &(i, j)) in p.pairs.iter().enumerate() {
            let a = p.paths[i][6 * l + 2];
            let b = p.paths[j][6 * l + 2];
            assert!(p.graph.has_edge(a, b));
            // exactly one edge between any two paths
            let count = p.graph.edges().iter().filter(|&&(u, v)| {
                let pu = u / (6 * p.columns);
                let pv = v / (6 * p.columns);
                u < p.base_vertex_count && v < p.base_vertex_count && pu.min(pv) == i && pu.max(pv) == j
            });
            assert_eq!(count.count(), 1);
        }
    }

    #[test]
    fn rejects_k_below_two() {
        assert!(build_pattern(1).is_err());
    }

    #[test]
    fn host_vertex_count_for_triangle() {
        let host = build_host(&triangle_instance()).unwrap();
        assert_eq!(host.base_vertex_count, 99); // 3 * (3 * (1 + 5*2))
        let report = validate_gadget(&host, &build_pattern(3).unwrap());
        for check in &report.checks {
            if check.name == "undecorated_host_bipartite" {
                // a rainbow triangle in the instance closes a 27-cycle in the
                // undecorated host (three cross edges + three even spine
                // segments), so this check must report false here
                assert!(!check.passed);
            } else {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }

    #[test]
    fn undecorated_host_bipartite_iff_inter_class_graph_is() {
        // the host is bipartite exactly when the instance's inter-class
        // subgraph is: cross edges join vertices at odd distance from
        // anchors, so odd instance walks become odd host cycles
        let cases = [
            (vec![(0, 1), (1, 2)], true),          // path: bipartite
            (vec![(0, 1), (1, 2), (0, 2)], false), // rainbow triangle
        ];
        for (edges, expect) in cases {
            let inst = CliqueInstance::new(
                Graph::new(3, edges.iter().copied()).unwrap(),
                vec![1, 2, 3],
            )
            .unwrap();
            let host = build_host(&inst).unwrap();
            let undecorated: Vec<usize> = (0..host.base_vertex_count).collect();
            let (g, _) = host.host.flatten().induced_subgraph(&undecorated);
            let inter_class = Graph::new(
                3,
                edges
                    .iter()
                    .copied()
                    .filter(|&(u, v)| inst.color_of[u] != inst.color_of[v]),
            )
            .unwrap();
            assert_eq!(g.is_bipartite(), expect);
            assert_eq!(g.is_bipartite(), inter_class.is_bipartite());
        }
    }

    #[test]
    fn structural_odd_cycles_stay_longer_than_decorations() {
        // for k = 3 the largest decoration cycle has length 19 while any odd
        // cycle of the undecorated host needs three cross edges and three
        // even spine segments of length >= 6, i.e. length >= 21
        let host = build_host(&triangle_instance()).unwrap();
        let undecorated: Vec<usize> = (0..host.base_vertex_count).collect();
        let (g, _) = host.host.flatten().induced_subgraph(&undecorated);
        let mut shortest_odd = usize::MAX;
        for src in 0..g.vertex_count() {
            let dist = g.distances_from(src);
            for &(u, v) in g.edges() {
                if dist[u] != usize::MAX && dist[v] != usize::MAX && (dist[u] + dist[v]) % 2 == 0 {
                    shortest_odd = shortest_odd.min(dist[u] + dist[v] + 1);
                }
            }
        }
        assert_eq!(shortest_odd, 27);
        let max_decoration = cycle_length(3, 2, 2);
        assert_eq!(max_decoration, 19);
        assert!(shortest_odd > max_decoration);
    }

    #[test]
    fn validators_pass_for_k2() {
        let inst = two_class_instance(&[(0, 1)]);
        let host = build_host(&inst).unwrap();
        assert_eq!(host.host.vertex_count(), 18);
        let pattern = build_pattern(2).unwrap();
        let report = validate_gadget(&host, &pattern);
        assert!(report.all_passed());
    }

    #[test]
    fn clique_embedding_k2() {
        let inst = two_class_instance(&[(0, 1)]);
        let host = build_host(&inst).unwrap();
        let pattern = build_pattern(2).unwrap();
        let emb = clique_to_embedding(&host, &pattern, &[0, 1]).unwrap();
        assert_eq!(emb.image.len(), 18);
    }

    #[test]
    fn clique_embedding_k3() {
        let host = build_host(&triangle_instance()).unwrap();
        let pattern = build_pattern(3).unwrap();
        let emb = clique_to_embedding(&host, &pattern, &[0, 1, 2]).unwrap();
        assert_eq!(emb.image.len(), 144);
    }

    #[test]
    fn non_clique_is_rejected() {
        let inst = CliqueInstance::new(
            Graph::new(3, [(0, 1), (1, 2)]).unwrap(), // 0-2 missing
            vec![1, 2, 3],
        )
        .unwrap();
        let host = build_host(&inst).unwrap();
        let pattern = build_pattern(3).unwrap();
        assert!(matches!(
            clique_to_embedding(&host, &pattern, &[0, 1, 2]),
            Err(CountError::InvalidArgument(_))
        ));
    }

    #[test]
    fn decision_search_positive_and_negative_k2() {
        let pattern = build_pattern(2).unwrap();
        let pat = Pattern::unrestricted(pattern.graph.clone()).unwrap();

        let with_edge = build_host(&two_class_instance(&[(0, 1)])).unwrap();
        assert!(exists_embedding(with_edge.host.flatten(), &pat));

        // two vertices per class, no cross edge at all
        let inst = CliqueInstance::new(Graph::empty(4), vec![1, 2, 1, 2]).unwrap();
        let host = build_host(&inst).unwrap();
        assert!(!exists_embedding(host.host.flatten(), &pat));
    }

    #[test]
    fn lengthened_cycle_fails_validation() {
        let inst = two_class_instance(&[(0, 1)]);
        let mut host = build_host(&inst).unwrap();
        let pattern = build_pattern(2).unwrap();
        assert!(validate_gadget(&host, &pattern).all_passed());

        // splice two extra vertices into the first decoration cycle
        let n = host.host.vertex_count();
        let anchor = host.anchors[0][0];
        let fresh = host.cycles[0][0].clone();
        let mut star = Vec::new();
        let mut matching = Vec::new();
        for (u, v, layer) in host.host.records() {
            if (u, v) == (anchor.min(fresh[0]), anchor.max(fresh[0])) {
                continue; // drop the first cycle edge
            }
            if layer == STAR_FOREST_LAYER {
                star.push((u, v));
            } else {
                matching.push((u, v));
            }
        }
        star.push((anchor, n));
        matching.push((n, n + 1));
        star.push((n + 1, fresh[0]));
        host.host = LayeredGraph::from_layers(n + 2, &[star, matching]).unwrap();
        let report = validate_gadget(&host, &pattern);
        assert!(!report.all_passed());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "host_cycles" && !c.passed));
    }

    #[test]
    fn moving_a_matching_edge_breaks_the_star_forest() {
        let inst = two_class_instance(&[(0, 1)]);
        let mut host = build_host(&inst).unwrap();
        let pattern = build_pattern(2).unwrap();

        // move the cross edge (both endpoints are middle path vertices) into
        // the star-forest layer
        let cross = host
            .host
            .records()
            .find(|&(u, v, layer)| {
                layer == MATCHING_LAYER
                    && host.paths.values().any(|ids| ids[2] == u)
                    && host.paths.values().any(|ids| ids[2] == v)
            })
            .expect("instance has a cross edge");
        let mut star = Vec::new();
        let mut matching = Vec::new();
        for (u, v, layer) in host.host.records() {
            if (u, v) == (cross.0, cross.1) {
                star.push((u, v));
            } else if layer == STAR_FOREST_LAYER {
                star.push((u, v));
            } else {
                matching.push((u, v));
            }
        }
        host.host = LayeredGraph::from_layers(host.host.vertex_count(), &[star, matching]).unwrap();
        let report = validate_gadget(&host, &pattern);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "layer_0_star_forest" && !c.passed));
    }

    #[test]
    fn registry_lists_every_anchor() {
        let host = build_host(&two_class_instance(&[(0, 1)])).unwrap();
        let pattern = build_pattern(2).unwrap();
        let registry = registry_json(&host, &pattern);
        assert_eq!(registry["k"], 2);
        assert_eq!(registry["host"]["anchors"].as_array().unwrap().len(), 2);
        assert_eq!(registry["pattern"]["anchors"].as_array().unwrap().len(), 2);
    }
}
