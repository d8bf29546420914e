//! Exact counting engines and the strategy dispatcher.
//!
//! Two engines live here: an adjacency-driven backtracking counter whose
//! branching factor is bounded by the host's maximum degree, and a
//! cover-layer recursion that enumerates how the pattern meets a small
//! vertex cover of one layer and delegates the remainder to an inner
//! strategy on the cover-free residual graph.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::decompose::{minimum_vertex_cover, VC_BOUND_GUARD};
use crate::error::CountError;
use crate::geometry::{count_geometric, window_stats, GeometricLayout, WindowStats};
use crate::graph::{Graph, IdMap, LayeredGraph, Pattern};
use crate::oracle::count_embeddings_oracle;

/// Auto mode only considers cover layers up to this size; beyond it the
/// (cover+1)^k enumeration stops paying for itself.
pub const AUTO_COVER_CAP: usize = 12;
/// Auto mode only scans windows when no window holds more vertices than this.
pub const AUTO_OCCUPANCY_CAP: usize = 24;

/// How a count should be computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountStrategy {
    /// Plain list-driven backtracking (the reference oracle).
    Oracle,
    /// Adjacency-driven backtracking; branching bounded by host max degree.
    BoundedDegree,
    /// Cover-layer recursion over the given layer, delegating to `inner`.
    VcLayer {
        cover_layer: usize,
        inner: Box<CountStrategy>,
    },
    /// Window scan over a plane arrangement.
    Geometric,
    /// Pick a strategy from the instance's shape.
    Auto,
}

impl CountStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            CountStrategy::Oracle => "oracle",
            CountStrategy::BoundedDegree => "bounded-degree",
            CountStrategy::VcLayer { .. } => "vc-layer",
            CountStrategy::Geometric => "geometric",
            CountStrategy::Auto => "auto",
        }
    }

    /// Reject strategy shapes that can never be valid: an inner strategy may
    /// not re-run the cover recursion on the same layer, and only counting
    /// strategies may appear inside `VcLayer`.
    pub fn validate(&self) -> Result<(), CountError> {
        if let CountStrategy::VcLayer { cover_layer, inner } = self {
            let mut node = inner.as_ref();
            loop {
                match node {
                    CountStrategy::VcLayer {
                        cover_layer: inner_layer,
                        inner: next,
                    } => {
                        if inner_layer == cover_layer {
                            return Err(CountError::InvalidArgument(format!(
                                "inner strategy repeats cover layer {cover_layer}"
                            )));
                        }
                        node = next.as_ref();
                    }
                    CountStrategy::Geometric | CountStrategy::Auto => {
                        return Err(CountError::InvalidArgument(format!(
                            "{} cannot be an inner strategy of vc-layer",
                            node.name()
                        )));
                    }
                    _ => break,
                }
            }
            inner.validate()?;
        }
        Ok(())
    }
}

/// Search plan over pattern vertices: BFS order per component, each
/// non-root vertex paired with an earlier neighbor whose image anchors the
/// candidate set.
struct SearchPlan {
    order: Vec<usize>,
    /// For `order[d]`, an earlier pattern neighbor, or `None` for roots.
    anchor: Vec<Option<usize>>,
}

fn plan_search(pat: &Graph, root_weight: impl Fn(usize) -> usize) -> SearchPlan {
    let k = pat.vertex_count();
    let mut order = Vec::with_capacity(k);
    let mut anchor = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for comp in pat.components() {
        let root = *comp
            .iter()
            .min_by_key(|&&v| (root_weight(v), v))
            .expect("components are nonempty");
        order.push(root);
        anchor.push(None);
        placed[root] = true;
        let mut head = order.len() - 1;
        while head < order.len() {
            let x = order[head];
            for &y in pat.neighbors(x) {
                if !placed[y] {
                    placed[y] = true;
                    order.push(y);
                    anchor.push(Some(x));
                }
            }
            head += 1;
        }
    }
    SearchPlan { order, anchor }
}

/// Adjacency-driven backtracking. Roots of pattern components run over
/// their allowed lists; every other pattern vertex extends through the host
/// adjacency of an already-placed neighbor, so branching is bounded by the
/// host's maximum degree. Candidates failing the degree filter
/// (host degree < pattern degree) are discarded.
pub fn count_bounded_degree(host: &Graph, pat: &Pattern) -> BigUint {
    let mut count = BigUint::zero();
    adjacency_search(host, pat, None, &mut |_| {
        count += 1u32;
        true
    });
    count
}

/// Decision search with early exit, same pruning as [`count_bounded_degree`].
pub fn exists_embedding(host: &Graph, pat: &Pattern) -> bool {
    let mut found = false;
    adjacency_search(host, pat, None, &mut |_| {
        found = true;
        false
    });
    found
}

/// Enumeration used by window-scan instrumentation: images of all
/// embeddings that map pattern vertex `forced.0` to host vertex `forced.1`.
pub(crate) fn adjacency_search(
    host: &Graph,
    pat: &Pattern,
    forced: Option<(usize, usize)>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let k = pat.k();
    let n = host.vertex_count();
    let mut lists: Vec<Option<Vec<usize>>> = pat.lists.clone();
    if let Some((pv, hv)) = forced {
        if !pat.allows(pv, hv) {
            return;
        }
        lists[pv] = Some(vec![hv]);
    }
    let pat = Pattern::new(pat.graph.clone(), lists).expect("pattern stays valid");
    let feasible = |i: usize, x: usize| -> bool {
        host.degree(x) >= pat.graph.degree(i) && pat.allows(i, x)
    };
    // weight roots by how many host vertices could host them at all
    let plan = plan_search(&pat.graph, |i| match &pat.lists[i] {
        Some(l) => l.iter().filter(|&&x| feasible(i, x)).count(),
        None => (0..n).filter(|&x| feasible(i, x)).count(),
    });
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; n];

    fn descend(
        host: &Graph,
        pat: &Pattern,
        plan: &SearchPlan,
        depth: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == plan.order.len() {
            return visit(image);
        }
        let v = plan.order[depth];
        let pat_deg = pat.graph.degree(v);
        let try_candidate = |x: usize,
                             image: &mut Vec<usize>,
                             used: &mut Vec<bool>,
                             visit: &mut dyn FnMut(&[usize]) -> bool|
         -> bool {
            if used[x] || host.degree(x) < pat_deg || !pat.allows(v, x) {
                return true;
            }
            for &w in pat.graph.neighbors(v) {
                if image[w] != usize::MAX && !host.has_edge(x, image[w]) {
                    return true;
                }
            }
            image[v] = x;
            used[x] = true;
            let go_on = descend(host, pat, plan, depth + 1, image, used, visit);
            image[v] = usize::MAX;
            used[x] = false;
            go_on
        };
        match plan.anchor[depth] {
            Some(u) => {
                for &x in host.neighbors(image[u]) {
                    if !try_candidate(x, image, used, visit) {
                        return false;
                    }
                }
            }
            None => {
                let candidates = pat.candidates(v, host.vertex_count());
                for &x in &candidates {
                    if !try_candidate(x, image, used, visit) {
                        return false;
                    }
                }
            }
        }
        true
    }

    descend(host, &pat, &plan, 0, &mut image, &mut used, visit);
}

/// Instrumentation record for one cover-layer run.
#[derive(Debug, Clone, Default)]
pub struct VcLayerStats {
    /// The vertex cover of the cover layer that was used.
    pub cover: Vec<usize>,
    /// Number of counting calls issued on the residual instance.
    pub inner_calls: usize,
}

impl VcLayerStats {
    /// The enumeration bound (|cover| + 1)^k the run must respect.
    pub fn budget(&self, k: usize) -> BigUint {
        BigUint::from(self.cover.len() + 1).pow(k as u32)
    }
}

/// Observer invoked with every residual instance the recursion hands to the
/// inner strategy: `(residual host, residual pattern, id map into the
/// original host)`.
pub type InnerInspector<'a> = &'a mut dyn FnMut(&LayeredGraph, &Pattern, &IdMap);

/// Exact count via the cover-layer recursion: find a vertex cover `U` of the
/// chosen layer, enumerate every way the pattern can meet `U`, and for each
/// such partial embedding count the extensions inside the remaining layers
/// with the partial map compiled into per-vertex lists.
pub fn count_vc_layer(
    host: &LayeredGraph,
    pat: &Pattern,
    cover_layer: usize,
    inner: &CountStrategy,
    mut inspector: Option<InnerInspector<'_>>,
) -> Result<(BigUint, VcLayerStats), CountError> {
    CountStrategy::VcLayer {
        cover_layer,
        inner: Box::new(inner.clone()),
    }
    .validate()?;
    if cover_layer >= host.layer_count().max(1) {
        return Err(CountError::InvalidArgument(format!(
            "cover layer {cover_layer} out of range (host has {} layers)",
            host.layer_count()
        )));
    }
    let cover_graph = host.layer(cover_layer);
    let cover = minimum_vertex_cover(&cover_graph, VC_BOUND_GUARD)?.ok_or_else(|| {
        CountError::StrategyInfeasible(format!(
            "layer {cover_layer} has no vertex cover within the guard of {VC_BOUND_GUARD}"
        ))
    })?;

    let flat = host.flatten();
    let k = pat.k();
    // The residual host is shared by every branch of the enumeration.
    let rest = host.without_layer(cover_layer);
    let (residual, map) = rest.remove_vertices(&cover);

    let mut in_cover = vec![false; flat.vertex_count()];
    for &u in &cover {
        in_cover[u] = true;
    }

    let mut stats = VcLayerStats {
        cover: cover.clone(),
        inner_calls: 0,
    };
    let mut total = BigUint::zero();

    // assignment[i]: Some(host vertex of U) or None (pattern vertex stays free)
    let mut assignment: Vec<Option<usize>> = vec![None; k];
    let mut used: Vec<bool> = vec![false; cover.len()];

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        host: &LayeredGraph,
        pat: &Pattern,
        cover: &[usize],
        in_cover: &[bool],
        residual: &LayeredGraph,
        map: &IdMap,
        inner: &CountStrategy,
        depth: usize,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        total: &mut BigUint,
        stats: &mut VcLayerStats,
        inspector: &mut Option<InnerInspector<'_>>,
    ) -> Result<(), CountError> {
        let flat = host.flatten();
        if depth == pat.k() {
            let free: Vec<usize> = (0..pat.k()).filter(|&i| assignment[i].is_none()).collect();
            if free.is_empty() {
                // fully mapped into the cover; exactly one extension
                *total += 1u32;
                return Ok(());
            }
            // Compile the partial map into lists for the free vertices.
            let mut inner_lists: Vec<Option<Vec<usize>>> = Vec::with_capacity(free.len());
            for &i in &free {
                let mapped_neighbors: Vec<usize> = pat
                    .graph
                    .neighbors(i)
                    .iter()
                    .filter_map(|&w| assignment[w])
                    .collect();
                if mapped_neighbors.is_empty() {
                    if let Some(list) = &pat.lists[i] {
                        inner_lists.push(Some(map.translate_list(list)));
                    } else {
                        // unrestricted vertices stay unrestricted off the cover
                        inner_lists.push(None);
                    }
                } else {
                    let candidates = pat.candidates(i, flat.vertex_count());
                    let allowed: Vec<usize> = candidates
                        .into_iter()
                        .filter(|&x| !in_cover[x])
                        .filter(|&x| mapped_neighbors.iter().all(|&m| flat.has_edge(x, m)))
                        .collect();
                    inner_lists.push(Some(map.translate_list(&allowed)));
                }
            }
            if inner_lists.iter().any(|l| l.as_ref().is_some_and(Vec::is_empty)) {
                return Ok(()); // some free vertex has nowhere to go
            }
            let (inner_graph, pmap) = pat.graph.induced_subgraph(&free);
            debug_assert!(free.iter().enumerate().all(|(a, &b)| pmap.new_to_old[a] == b));
            let inner_pat = Pattern::new(inner_graph, inner_lists).expect("free set is nonempty");
            if let Some(cb) = inspector.as_mut() {
                cb(residual, &inner_pat, map);
            }
            stats.inner_calls += 1;
            let sub = count_layered(residual, None, &inner_pat, inner)?;
            *total += sub;
            return Ok(());
        }
        // vertex stays free
        assignment[depth] = None;
        enumerate(
            host, pat, cover, in_cover, residual, map, inner, depth + 1, assignment, used, total,
            stats, inspector,
        )?;
        // or maps onto an unused cover vertex, list- and edge-consistently
        for (ui, &u) in cover.iter().enumerate() {
            if used[ui] || !pat.allows(depth, u) {
                continue;
            }
            let consistent = pat.graph.neighbors(depth).iter().all(|&w| {
                if w >= depth {
                    return true;
                }
                match assignment[w] {
                    Some(x) => flat.has_edge(u, x),
                    None => true, // handled by the free vertex's list later
                }
            });
            if !consistent {
                continue;
            }
            assignment[depth] = Some(u);
            used[ui] = true;
            enumerate(
                host, pat, cover, in_cover, residual, map, inner, depth + 1, assignment, used,
                total, stats, inspector,
            )?;
            assignment[depth] = None;
            used[ui] = false;
        }
        Ok(())
    }

    enumerate(
        host,
        pat,
        &cover,
        &in_cover,
        &residual,
        &map,
        inner,
        0,
        &mut assignment,
        &mut used,
        &mut total,
        &mut stats,
        &mut inspector,
    )?;
    Ok((total, stats))
}

/// Result of a dispatched count.
#[derive(Debug, Clone)]
pub struct DispatchOutcome {
    pub count: BigUint,
    /// The strategy that actually ran.
    pub method: &'static str,
    /// Auto-mode reasoning, for audit logs.
    pub auto_note: Option<String>,
    pub vc_stats: Option<VcLayerStats>,
    pub window_stats: Option<WindowStats>,
}

fn count_layered(
    host: &LayeredGraph,
    layout: Option<&GeometricLayout>,
    pat: &Pattern,
    strat: &CountStrategy,
) -> Result<BigUint, CountError> {
    Ok(count_dispatch(host, layout, pat, strat)?.count)
}

/// Route a counting request to the matching engine. `Auto` prefers the
/// window scan on fully laid-out hosts with small windows, then the cover
/// recursion when some layer has a small cover whose removal actually drops
/// the maximum degree, and plain backtracking otherwise.
pub fn count_dispatch(
    host: &LayeredGraph,
    layout: Option<&GeometricLayout>,
    pat: &Pattern,
    strat: &CountStrategy,
) -> Result<DispatchOutcome, CountError> {
    strat.validate()?;
    let flat = host.flatten();
    pat.validate_against_host(flat.vertex_count())
        .map_err(|e| CountError::InvalidArgument(e.to_string()))?;
    let outcome = |count: BigUint, method: &'static str| DispatchOutcome {
        count,
        method,
        auto_note: None,
        vc_stats: None,
        window_stats: None,
    };
    match strat {
        CountStrategy::Oracle => Ok(outcome(count_embeddings_oracle(flat, pat), "oracle")),
        CountStrategy::BoundedDegree => {
            Ok(outcome(count_bounded_degree(flat, pat), "bounded-degree"))
        }
        CountStrategy::Geometric => {
            let layout = layout.ok_or_else(|| {
                CountError::StrategyInfeasible(
                    "geometric counting requires vertex positions".into(),
                )
            })?;
            let stats = window_stats(flat, layout, pat)?;
            let count = count_geometric(flat, layout, pat)?;
            Ok(DispatchOutcome {
                count,
                method: "geometric",
                auto_note: None,
                vc_stats: None,
                window_stats: Some(stats),
            })
        }
        CountStrategy::VcLayer { cover_layer, inner } => {
            let (count, stats) = count_vc_layer(host, pat, *cover_layer, inner, None)?;
            Ok(DispatchOutcome {
                count,
                method: "vc-layer",
                auto_note: None,
                vc_stats: Some(stats),
                window_stats: None,
            })
        }
        CountStrategy::Auto => {
            let mut note = String::new();
            if let Some(layout) = layout {
                if pat.graph.is_connected() {
                    let stats = window_stats(flat, layout, pat)?;
                    if stats.max_occupancy <= AUTO_OCCUPANCY_CAP {
                        let mut out = count_dispatch(host, Some(layout), pat, &CountStrategy::Geometric)?;
                        out.auto_note = Some(format!(
                            "auto: geometric (max window {} <= {})",
                            stats.max_occupancy, AUTO_OCCUPANCY_CAP
                        ));
                        return Ok(out);
                    }
                    note.push_str(&format!(
                        "auto: skipped geometric (max window {} > {}); ",
                        stats.max_occupancy, AUTO_OCCUPANCY_CAP
                    ));
                } else {
                    note.push_str("auto: skipped geometric (pattern disconnected); ");
                }
            }
            let mut best: Option<(usize, usize)> = None; // (cover size, layer)
            for layer in 0..host.layer_count() {
                if let Some(cover) = minimum_vertex_cover(&host.layer(layer), AUTO_COVER_CAP)? {
                    if best.map_or(true, |(size, _)| cover.len() < size) {
                        best = Some((cover.len(), layer));
                    }
                }
            }
            if let Some((size, layer)) = best {
                // worth it only when the cover hides the high-degree vertices
                if flat.max_degree() > 2 * size {
                    let strat = CountStrategy::VcLayer {
                        cover_layer: layer,
                        inner: Box::new(CountStrategy::BoundedDegree),
                    };
                    let mut out = count_dispatch(host, layout, pat, &strat)?;
                    out.auto_note = Some(format!(
                        "{note}auto: vc-layer on layer {layer} (cover {size}, max degree {})",
                        flat.max_degree()
                    ));
                    return Ok(out);
                }
                note.push_str(&format!(
                    "auto: skipped vc-layer (best cover {size} vs max degree {}); ",
                    flat.max_degree()
                ));
            } else if host.layer_count() > 0 {
                note.push_str(&format!(
                    "auto: skipped vc-layer (no cover within {AUTO_COVER_CAP}); "
                ));
            }
            let mut out = count_dispatch(host, layout, pat, &CountStrategy::BoundedDegree)?;
            out.auto_note = Some(format!("{note}auto: bounded-degree"));
            Ok(out)
        }
    }
}

/// Dispatch with a worker cap. Workers split the allowed hosts of pattern
/// vertex 0 into chunks counted independently; the per-chunk counts sum to
/// the total for any split, so the result is schedule-independent. The
/// cover recursion and auto mode run on a single worker.
pub fn count_dispatch_threaded(
    host: &LayeredGraph,
    layout: Option<&GeometricLayout>,
    pat: &Pattern,
    strat: &CountStrategy,
    threads: usize,
) -> Result<DispatchOutcome, CountError> {
    let chunkable = matches!(
        strat,
        CountStrategy::Oracle | CountStrategy::BoundedDegree | CountStrategy::Geometric
    );
    let candidates = pat.candidates(0, host.flatten().vertex_count());
    if threads <= 1 || !chunkable || candidates.len() <= 1 {
        return count_dispatch(host, layout, pat, strat);
    }
    let chunk_size = candidates.len().div_ceil(threads);
    let chunks: Vec<&[usize]> = candidates.chunks(chunk_size).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CountError::InvalidArgument(format!("thread pool: {e}")))?;
    let partials: Vec<DispatchOutcome> = pool.install(|| {
        use rayon::prelude::*;
        chunks
            .par_iter()
            .map(|chunk| {
                let mut lists = pat.lists.clone();
                lists[0] = Some(chunk.to_vec());
                let restricted = Pattern::new(pat.graph.clone(), lists).expect("same pattern");
                count_dispatch(host, layout, &restricted, strat)
            })
            .collect::<Result<_, _>>()
    })?;
    let mut total = BigUint::zero();
    for p in &partials {
        total += &p.count;
    }
    let first = partials.into_iter().next().expect("at least one chunk");
    Ok(DispatchOutcome {
        count: total,
        method: first.method,
        auto_note: None,
        vc_stats: None,
        // window geometry is list-independent, so the first chunk's stats
        // describe the whole run
        window_stats: first.window_stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, star_graph, Graph, LayeredGraph, Pattern};
    use crate::oracle::{count_embeddings_oracle, falling_factorial};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn unrestricted(g: Graph) -> Pattern {
        Pattern::unrestricted(g).unwrap()
    }

    #[test]
    fn bounded_degree_examples() {
        assert_eq!(
            count_bounded_degree(&complete_graph(3), &unrestricted(path_graph(2))),
            6u32.into()
        );
        assert_eq!(
            count_bounded_degree(&cycle_graph(5), &unrestricted(path_graph(3))),
            10u32.into()
        );
        let pat = unrestricted(path_graph(2));
        assert_eq!(count_bounded_degree(&Graph::empty(6), &pat), BigUint::zero());
    }

    #[test]
    fn bounded_degree_handles_disconnected_patterns() {
        let host = complete_graph(5);
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            count_bounded_degree(&host, &unrestricted(two_edges.clone())),
            count_embeddings_oracle(&host, &unrestricted(two_edges))
        );
        let isolated = unrestricted(Graph::empty(3));
        assert_eq!(
            count_bounded_degree(&host, &isolated),
            falling_factorial(5, 3)
        );
    }

    #[test]
    fn vc_layer_star_host() {
        // K_{1,4} entirely in layer 1; layer 0 empty
        let star_edges: Vec<(usize, usize)> = (1..=4).map(|v| (0, v)).collect();
        let host = LayeredGraph::from_layers(5, &[vec![], star_edges]).unwrap();
        let pat = unrestricted(path_graph(2));
        let (count, stats) =
            count_vc_layer(&host, &pat, 1, &CountStrategy::BoundedDegree, None).unwrap();
        assert_eq!(count, 8u32.into());
        assert_eq!(stats.cover, vec![0]);
        assert!(BigUint::from(stats.inner_calls) <= stats.budget(2));
    }

    #[test]
    fn vc_layer_triangle_split_across_layers() {
        // triangle with one edge in layer 1; cover of layer 1 is one endpoint
        let host = LayeredGraph::from_layers(3, &[vec![(0, 1), (1, 2)], vec![(0, 2)]]).unwrap();
        let pat = unrestricted(complete_graph(3));
        let (count, _) =
            count_vc_layer(&host, &pat, 1, &CountStrategy::Oracle, None).unwrap();
        assert_eq!(count, 6u32.into());
    }

    #[test]
    fn vc_layer_matches_oracle_on_random_layered_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for round in 0..40 {
            let n = rng.gen_range(3..12);
            let mut layers = vec![Vec::new(), Vec::new()];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.25) {
                        layers[rng.gen_range(0..2)].push((u, v));
                    }
                }
            }
            let host = LayeredGraph::from_layers(n, &layers).unwrap();
            let k = rng.gen_range(1..=4);
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let lists: Vec<Option<Vec<usize>>> = (0..k)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        None
                    } else {
                        Some((0..n).filter(|_| rng.gen_bool(0.6)).collect())
                    }
                })
                .collect();
            let pat = Pattern::new(Graph::new(k, pedges).unwrap(), lists).unwrap();
            let expected = count_embeddings_oracle(host.flatten(), &pat);
            for layer in 0..2 {
                let (got, stats) =
                    count_vc_layer(&host, &pat, layer, &CountStrategy::BoundedDegree, None)
                        .unwrap();
                assert_eq!(got, expected, "round {round} layer {layer}");
                assert!(BigUint::from(stats.inner_calls) <= stats.budget(k));
            }
        }
    }

    #[test]
    fn vc_layer_inner_instances_avoid_cover_and_layer() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let n = 10;
        let mut layers = vec![Vec::new(), Vec::new()];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.3) {
                    layers[rng.gen_range(0..2)].push((u, v));
                }
            }
        }
        let host = LayeredGraph::from_layers(n, &layers).unwrap();
        let pat = unrestricted(path_graph(3));
        let mut inspected = 0usize;
        let mut cb = |residual: &LayeredGraph, inner_pat: &Pattern, map: &IdMap| {
            inspected += 1;
            assert_eq!(residual.layer(1).edge_count(), 0);
            assert!(inner_pat.k() >= 1);
            // no surviving vertex maps back to a cover vertex
            for &old in &map.new_to_old {
                assert!(!residual_cover_contains(&host, 1, old));
            }
        };
        let (count, stats) =
            count_vc_layer(&host, &pat, 1, &CountStrategy::BoundedDegree, Some(&mut cb)).unwrap();
        assert_eq!(count, count_embeddings_oracle(host.flatten(), &pat));
        assert_eq!(inspected, stats.inner_calls);
        assert!(inspected > 0);
    }

    fn residual_cover_contains(host: &LayeredGraph, layer: usize, v: usize) -> bool {
        let cover = minimum_vertex_cover(&host.layer(layer), VC_BOUND_GUARD)
            .unwrap()
            .unwrap();
        cover.contains(&v)
    }

    #[test]
    fn vc_layer_infeasible_when_cover_exceeds_guard() {
        // a 33-edge matching needs 33 cover vertices, over the guard of 32
        let edges: Vec<(usize, usize)> = (0..33).map(|i| (2 * i, 2 * i + 1)).collect();
        let host = LayeredGraph::from_layers(66, &[edges]).unwrap();
        let pat = unrestricted(path_graph(2));
        let err = count_vc_layer(&host, &pat, 0, &CountStrategy::BoundedDegree, None).unwrap_err();
        assert!(matches!(err, CountError::StrategyInfeasible(_)));
    }

    #[test]
    fn vc_layer_rejects_inner_on_same_layer() {
        let host = LayeredGraph::single_layer(path_graph(3));
        let pat = unrestricted(path_graph(2));
        let inner = CountStrategy::VcLayer {
            cover_layer: 0,
            inner: Box::new(CountStrategy::Oracle),
        };
        let err = count_vc_layer(&host, &pat, 0, &inner, None).unwrap_err();
        assert!(matches!(err, CountError::InvalidArgument(_)));
    }

    #[test]
    fn empty_pattern_convention_all_strategies() {
        let host = LayeredGraph::from_layers(6, &[vec![(0, 1), (2, 3)], vec![(1, 2)]]).unwrap();
        let pat = unrestricted(Graph::empty(3));
        let expected = falling_factorial(6, 3);
        for strat in [
            CountStrategy::Oracle,
            CountStrategy::BoundedDegree,
            CountStrategy::VcLayer {
                cover_layer: 0,
                inner: Box::new(CountStrategy::BoundedDegree),
            },
            CountStrategy::VcLayer {
                cover_layer: 1,
                inner: Box::new(CountStrategy::Oracle),
            },
        ] {
            let got = count_dispatch(&host, None, &pat, &strat).unwrap().count;
            assert_eq!(got, expected, "{}", strat.name());
        }
    }

    #[test]
    fn dispatch_auto_on_single_layer_bounded_degree_host() {
        let host = LayeredGraph::single_layer(cycle_graph(12));
        let pat = unrestricted(path_graph(3));
        let out = count_dispatch(&host, None, &pat, &CountStrategy::Auto).unwrap();
        assert_eq!(out.method, "bounded-degree");
        assert_eq!(out.count, count_embeddings_oracle(host.flatten(), &pat));
    }

    #[test]
    fn dispatch_auto_prefers_cover_on_star_layer() {
        let star_edges: Vec<(usize, usize)> = (1..=9).map(|v| (0, v)).collect();
        let host = LayeredGraph::from_layers(10, &[star_edges]).unwrap();
        let pat = unrestricted(path_graph(2));
        let out = count_dispatch(&host, None, &pat, &CountStrategy::Auto).unwrap();
        assert_eq!(out.method, "vc-layer");
        assert_eq!(out.count, 18u32.into());
    }

    #[test]
    fn dispatch_explicit_oracle_delegates() {
        let host = LayeredGraph::single_layer(complete_graph(3));
        let pat = unrestricted(path_graph(2));
        let out = count_dispatch(&host, None, &pat, &CountStrategy::Oracle).unwrap();
        assert_eq!(out.method, "oracle");
        assert_eq!(out.count, 6u32.into());
    }

    #[test]
    fn dispatch_geometric_without_layout_is_infeasible() {
        let host = LayeredGraph::single_layer(path_graph(3));
        let pat = unrestricted(path_graph(2));
        let err = count_dispatch(&host, None, &pat, &CountStrategy::Geometric).unwrap_err();
        assert!(matches!(err, CountError::StrategyInfeasible(_)));
    }

    #[test]
    fn decision_search_agrees_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..60 {
            let n = rng.gen_range(1..9);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let host = Graph::new(n, edges).unwrap();
            let k = rng.gen_range(1..=4);
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let pat = unrestricted(Graph::new(k, pedges).unwrap());
            assert_eq!(
                exists_embedding(&host, &pat),
                crate::oracle::exists_embedding_oracle(&host, &pat)
            );
        }
    }

    #[test]
    fn star_host_has_no_p4() {
        let host = star_graph(6);
        assert!(!exists_embedding(&host, &unrestricted(path_graph(4))));
        assert!(exists_embedding(&host, &unrestricted(path_graph(3))));
    }

    #[test]
    fn threaded_dispatch_matches_serial() {
        let host = LayeredGraph::single_layer(complete_graph(7));
        let pat = unrestricted(path_graph(3));
        for strat in [CountStrategy::Oracle, CountStrategy::BoundedDegree] {
            let serial = count_dispatch(&host, None, &pat, &strat).unwrap().count;
            let parallel = count_dispatch_threaded(&host, None, &pat, &strat, 4)
                .unwrap()
                .count;
            assert_eq!(serial, parallel);
        }
    }
}
