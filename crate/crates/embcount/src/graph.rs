//! Simple undirected graphs, edge-layered graphs, patterns and embeddings.
//!
//! Vertex ids are dense integers `0..n`. Graphs are immutable after
//! construction; all operations that shrink a graph return a fresh graph
//! together with an [`IdMap`] translating between old and new ids.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("pattern must have at least one vertex")]
    EmptyPattern,
}

/// A simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Translation table produced by vertex removal / induced subgraphs.
#[derive(Debug, Clone)]
pub struct IdMap {
    /// `old_to_new[v]` is the surviving id of old vertex `v`, if it survived.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[v]` is the original id of new vertex `v`.
    pub new_to_old: Vec<usize>,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            old_to_new: (0..n).map(Some).collect(),
            new_to_old: (0..n).collect(),
        }
    }

    /// Translate a vertex list, dropping entries that did not survive.
    pub fn translate_list(&self, list: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = list
            .iter()
            .filter_map(|&v| self.old_to_new.get(v).copied().flatten())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Graph {
    /// Build a graph from an edge list. Rejects self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for &w in &[u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        assert!(v < self.n, "vertex {v} out of range (n = {})", self.n);
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Delete the vertices in `remove`; surviving vertices are renumbered
    /// densely in increasing order of their old ids.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Graph, IdMap) {
        let mut gone = vec![false; self.n];
        for &v in remove {
            assert!(v < self.n, "vertex {v} out of range (n = {})", self.n);
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Subgraph induced by `keep` (strictly increasing vertex ids).
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, IdMap) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in keep.iter().enumerate() {
            assert!(old < self.n, "vertex {old} out of range (n = {})", self.n);
            old_to_new[old] = Some(new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((old_to_new[u]?, old_to_new[v]?)));
        let g = Graph::new(keep.len(), edges).expect("induced subgraph of a valid graph is valid");
        (
            g,
            IdMap {
                old_to_new,
                new_to_old: keep.to_vec(),
            },
        )
    }

    /// BFS distance in edges; `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// BFS distances from `src` to every vertex (`usize::MAX` = unreachable).
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        assert!(src < self.n, "vertex out of range");
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Greatest pairwise distance; `None` for a disconnected (or empty) graph.
    pub fn diameter(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let mut best = 0;
        for v in 0..self.n {
            let dist = self.distances_from(v);
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            let mut comp = vec![root];
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Proper 2-coloring if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// True iff the graph is acyclic and every component has at most one
    /// vertex of degree greater than one (i.e. every component is a star).
    pub fn is_star_forest(&self) -> bool {
        for comp in self.components() {
            let internal = comp.iter().filter(|&&v| self.degree(v) > 1).count();
            if internal > 1 {
                return false;
            }
            let edges: usize = comp.iter().map(|&v| self.degree(v)).sum::<usize>() / 2;
            if edges != comp.len() - 1 {
                return false; // component carries a cycle
            }
        }
        true
    }

    /// True iff maximum degree is at most one.
    pub fn is_matching(&self) -> bool {
        self.max_degree() <= 1
    }
}

/// A graph together with an explicit partition of its edges into layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    base: Graph,
    /// Layer id of `base.edges()[i]`.
    layer_of: Vec<usize>,
    layer_count: usize,
}

impl LayeredGraph {
    /// Build from explicit per-layer edge lists. Layer ids are positional and
    /// preserved even for empty layers. An edge may appear in only one layer.
    pub fn from_layers(
        n: usize,
        layers: &[Vec<(usize, usize)>],
    ) -> Result<Self, GraphError> {
        let mut records = Vec::new();
        for (id, layer) in layers.iter().enumerate() {
            for &(u, v) in layer {
                records.push((u, v, id));
            }
        }
        let mut pairs: Vec<(usize, usize)> = records
            .iter()
            .map(|&(u, v, _)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let (lg, _) = Self::from_records(n, &records, false)?;
        Ok(LayeredGraph {
            layer_count: lg.layer_count.max(layers.len()),
            ..lg
        })
    }

    /// Build from `(u, v, layer)` records. When `normalize` is set, layer ids
    /// are renumbered to `0..s` preserving their relative order. An edge pair
    /// appearing more than once is stored once, tagged with the lowest layer
    /// id among its occurrences, and reported as a warning.
    pub fn from_records(
        n: usize,
        records: &[(usize, usize, usize)],
        normalize: bool,
    ) -> Result<(Self, Vec<String>), GraphError> {
        let mut warnings = Vec::new();
        let mut by_pair: Vec<((usize, usize), usize)> = Vec::new();
        for &(u, v, layer) in records {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for &w in &[u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            by_pair.push(((u.min(v), u.max(v)), layer));
        }
        by_pair.sort_unstable();
        let mut dedup: Vec<((usize, usize), usize)> = Vec::new();
        for (pair, layer) in by_pair {
            match dedup.last_mut() {
                Some((p, l)) if *p == pair => {
                    warnings.push(format!(
                        "edge {{{}, {}}} listed more than once; kept layer {}",
                        pair.0, pair.1, *l
                    ));
                }
                _ => dedup.push((pair, layer)),
            }
        }
        let mut layer_ids: Vec<usize> = dedup.iter().map(|&(_, l)| l).collect();
        layer_ids.sort_unstable();
        layer_ids.dedup();
        let relabel = |l: usize| -> usize {
            if normalize {
                layer_ids.binary_search(&l).unwrap()
            } else {
                l
            }
        };
        let base = Graph::new(n, dedup.iter().map(|&(p, _)| p))?;
        // Graph::new sorts edges the same way `dedup` is sorted.
        let layer_of: Vec<usize> = dedup.iter().map(|&(_, l)| relabel(l)).collect();
        let layer_count = if normalize {
            layer_ids.len()
        } else {
            layer_ids.last().map_or(0, |&l| l + 1)
        };
        Ok((
            LayeredGraph {
                base,
                layer_of,
                layer_count,
            },
            warnings,
        ))
    }

    /// Single-layer view of an unlayered graph.
    pub fn single_layer(g: Graph) -> Self {
        let layer_of = vec![0; g.edge_count()];
        let layer_count = if g.edge_count() > 0 { 1 } else { 0 };
        LayeredGraph {
            base: g,
            layer_of,
            layer_count,
        }
    }

    /// The flattened graph `(V, E_0 ∪ … ∪ E_{s-1})`.
    pub fn flatten(&self) -> &Graph {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n
    }

    pub fn layer_count(&self) -> usize {
        self.layer_count
    }

    /// Extract layer `i` as a graph on the full vertex set.
    pub fn layer(&self, i: usize) -> Graph {
        assert!(i < self.layer_count.max(1), "layer {i} out of range");
        let edges = self
            .base
            .edges
            .iter()
            .zip(&self.layer_of)
            .filter(|&(_, &l)| l == i)
            .map(|(&e, _)| e);
        Graph::new(self.base.n, edges).expect("layer of a valid graph is valid")
    }

    /// Layer id of edge `{u, v}`, if present.
    pub fn layer_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        let pair = (u.min(v), u.max(v));
        self.base
            .edges
            .binary_search(&pair)
            .ok()
            .map(|i| self.layer_of[i])
    }

    /// Edge records `(u, v, layer)` in normalized order.
    pub fn records(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.base
            .edges
            .iter()
            .zip(&self.layer_of)
            .map(|(&(u, v), &l)| (u, v, l))
    }

    /// Delete vertices, keeping the layer labelling of surviving edges.
    pub fn remove_vertices(&self, remove: &[usize]) -> (LayeredGraph, IdMap) {
        let (g, map) = self.base.remove_vertices(remove);
        let mut layer_of = Vec::with_capacity(g.edge_count());
        for &(u, v) in g.edges() {
            let (ou, ov) = (map.new_to_old[u], map.new_to_old[v]);
            layer_of.push(self.layer_of_edge(ou, ov).expect("edge preserved by removal"));
        }
        (
            LayeredGraph {
                base: g,
                layer_of,
                layer_count: self.layer_count,
            },
            map,
        )
    }

    /// Drop every edge of layer `i`, keeping the layer-id space intact.
    pub fn without_layer(&self, i: usize) -> LayeredGraph {
        let kept: Vec<(usize, usize, usize)> = self
            .records()
            .filter(|&(_, _, l)| l != i)
            .collect();
        let (lg, _) = LayeredGraph::from_records(self.base.n, &kept, false)
            .expect("subset of a valid layered graph is valid");
        LayeredGraph {
            layer_count: self.layer_count,
            ..lg
        }
    }
}

/// A small pattern graph plus, per pattern vertex, an optional set of allowed
/// host vertices. `None` means "anywhere in the host".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub graph: Graph,
    pub lists: Vec<Option<Vec<usize>>>,
}

impl Pattern {
    pub fn new(graph: Graph, lists: Vec<Option<Vec<usize>>>) -> Result<Self, GraphError> {
        if graph.vertex_count() == 0 {
            return Err(GraphError::EmptyPattern);
        }
        assert_eq!(lists.len(), graph.vertex_count());
        let lists = lists
            .into_iter()
            .map(|l| {
                l.map(|mut v| {
                    v.sort_unstable();
                    v.dedup();
                    v
                })
            })
            .collect();
        Ok(Pattern { graph, lists })
    }

    /// Pattern with no list restrictions.
    pub fn unrestricted(graph: Graph) -> Result<Self, GraphError> {
        let k = graph.vertex_count();
        Pattern::new(graph, vec![None; k])
    }

    pub fn k(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Allowed host vertices for pattern vertex `i`, given the host order.
    pub fn candidates(&self, i: usize, host_n: usize) -> Vec<usize> {
        match &self.lists[i] {
            Some(l) => l.clone(),
            None => (0..host_n).collect(),
        }
    }

    pub fn allows(&self, i: usize, host_vertex: usize) -> bool {
        match &self.lists[i] {
            Some(l) => l.binary_search(&host_vertex).is_ok(),
            None => true,
        }
    }

    /// Check that every list entry names a real host vertex.
    pub fn validate_against_host(&self, host_n: usize) -> Result<(), GraphError> {
        for list in self.lists.iter().flatten() {
            if let Some(&v) = list.iter().find(|&&v| v >= host_n) {
                return Err(GraphError::VertexOutOfRange { v, n: host_n });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("image has wrong length")]
    WrongLength,
    #[error("image is not injective: vertex {0} used twice")]
    NotInjective(usize),
    #[error("pattern edge ({0}, {1}) not preserved")]
    EdgeNotPreserved(usize, usize),
    #[error("pattern vertex {0} mapped outside its list")]
    ListViolated(usize),
    #[error("image vertex {0} out of host range")]
    OutOfRange(usize),
}

/// An injective, edge-preserving, list-respecting map from pattern vertices
/// to host vertices, stored as `image[pattern_vertex] = host_vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub image: Vec<usize>,
}

impl Embedding {
    pub fn validate(&self, host: &Graph, pat: &Pattern) -> Result<(), EmbeddingError> {
        if self.image.len() != pat.k() {
            return Err(EmbeddingError::WrongLength);
        }
        let mut seen = vec![false; host.vertex_count()];
        for (i, &v) in self.image.iter().enumerate() {
            if v >= host.vertex_count() {
                return Err(EmbeddingError::OutOfRange(v));
            }
            if seen[v] {
                return Err(EmbeddingError::NotInjective(v));
            }
            seen[v] = true;
            if !pat.allows(i, v) {
                return Err(EmbeddingError::ListViolated(i));
            }
        }
        for &(i, j) in pat.graph.edges() {
            if !host.has_edge(self.image[i], self.image[j]) {
                return Err(EmbeddingError::EdgeNotPreserved(i, j));
            }
        }
        Ok(())
    }
}

/// Convenience constructors for common test graphs.
pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).unwrap()
}

pub fn path_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3);
    let edges = (1..n).map(|v| (v - 1, v)).chain([(n - 1, 0)]);
    Graph::new(n, edges).unwrap()
}

pub fn star_graph(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
}
