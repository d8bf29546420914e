//! Structural analyzers: greedy degree peeling, almost-bounded-degree
//! splits, and exact small vertex covers via bounded search trees.

use crate::error::CountError;
use crate::graph::Graph;

/// Hard cap on the vertex-cover search bound; the search tree is 2^bound.
pub const VC_BOUND_GUARD: usize = 32;

/// One greedy removal: which vertex went, and the residual maximum degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    /// 1-based step index.
    pub step: usize,
    pub removed_vertex: usize,
    /// Maximum degree of the residual graph after this removal.
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeelTrace {
    pub steps: Vec<PeelStep>,
}

/// The high-degree part of an almost-bounded-degree split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbdSplit {
    /// Vertices whose removal brings the maximum degree down.
    pub removed: Vec<usize>,
    /// Maximum degree of the graph with `removed` deleted.
    pub residual_max_degree: usize,
}

/// Incremental degree bookkeeping for greedy peeling; keeps original vertex
/// ids, which the traces must report.
struct Peeler {
    alive: Vec<bool>,
    degree: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl Peeler {
    fn new(g: &Graph) -> Self {
        Peeler {
            alive: vec![true; g.vertex_count()],
            degree: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
            adj: (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }

    fn max_degree(&self) -> usize {
        self.degree
            .iter()
            .zip(&self.alive)
            .filter(|&(_, &a)| a)
            .map(|(&d, _)| d)
            .max()
            .unwrap_or(0)
    }

    /// Remove the max-degree vertex, ties broken by smallest id.
    fn remove_hottest(&mut self) -> Option<usize> {
        let v = (0..self.alive.len())
            .filter(|&v| self.alive[v])
            .max_by_key(|&v| (self.degree[v], std::cmp::Reverse(v)))?;
        self.alive[v] = false;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if self.alive[w] {
                self.degree[w] -= 1;
            }
        }
        self.degree[v] = 0;
        Some(v)
    }
}

/// Greedily remove the highest-degree vertex `steps` times, recording the
/// residual maximum degree after each removal.
pub fn peel(g: &Graph, steps: usize) -> PeelTrace {
    assert!(steps <= g.vertex_count(), "cannot peel more vertices than exist");
    let mut peeler = Peeler::new(g);
    let mut trace = PeelTrace::default();
    for step in 1..=steps {
        let Some(v) = peeler.remove_hottest() else { break };
        trace.steps.push(PeelStep {
            step,
            removed_vertex: v,
            max_degree: peeler.max_degree(),
        });
    }
    trace
}

/// Greedily peel until the residual maximum degree is at most `d`.
pub fn abd_split(g: &Graph, d: usize) -> AbdSplit {
    let mut peeler = Peeler::new(g);
    let mut removed = Vec::new();
    while peeler.max_degree() > d {
        let v = peeler.remove_hottest().expect("positive degree implies a vertex");
        removed.push(v);
    }
    AbdSplit {
        removed,
        residual_max_degree: peeler.max_degree(),
    }
}

/// Smallest ℓ such that at most ℓ vertices have degree greater than 2ℓ.
pub fn abd_parameter(g: &Graph) -> usize {
    let mut degrees: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    for l in 0..=g.vertex_count() {
        // count of vertices with degree > 2l
        let over = degrees.len() - degrees.partition_point(|&d| d <= 2 * l);
        if over <= l {
            return l;
        }
    }
    unreachable!("l = n always satisfies the predicate");
}

/// Exact vertex cover of size at most `bound`, or `None` if none exists.
/// Branches on an endpoint of an uncovered edge; `bound` may not exceed
/// [`VC_BOUND_GUARD`].
pub fn vertex_cover_exact(g: &Graph, bound: usize) -> Result<Option<Vec<usize>>, CountError> {
    if bound > VC_BOUND_GUARD {
        return Err(CountError::GuardExceeded(format!(
            "vertex cover bound {bound} exceeds guard {VC_BOUND_GUARD}"
        )));
    }
    let mut peeler = Peeler::new(g);
    let mut chosen = Vec::new();
    let found = branch(&mut peeler, bound, &mut chosen);
    Ok(found.then(|| {
        chosen.sort_unstable();
        chosen
    }))
}

/// Smallest cover of size ≤ `cap`, found by growing the bound one at a time.
pub fn minimum_vertex_cover(g: &Graph, cap: usize) -> Result<Option<Vec<usize>>, CountError> {
    for bound in 0..=cap.min(g.vertex_count()) {
        if let Some(cover) = vertex_cover_exact(g, bound)? {
            return Ok(Some(cover));
        }
    }
    Ok(None)
}

fn branch(peeler: &mut Peeler, budget: usize, chosen: &mut Vec<usize>) -> bool {
    // pick the uncovered edge at the max-degree vertex; prune when even
    // covering Δ edges per pick cannot finish in budget
    let (v, deg) = match (0..peeler.alive.len())
        .filter(|&v| peeler.alive[v] && peeler.degree[v] > 0)
        .map(|v| (v, peeler.degree[v]))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
    {
        Some(best) => best,
        None => return true, // no edges left
    };
    if budget == 0 {
        return false;
    }
    let live_edges: usize = (0..peeler.alive.len())
        .filter(|&v| peeler.alive[v])
        .map(|v| peeler.degree[v])
        .sum::<usize>()
        / 2;
    if live_edges > budget * deg {
        return false;
    }
    let w = *peeler.adj[v]
        .iter()
        .find(|&&w| peeler.alive[w])
        .expect("degree > 0 implies a live neighbor");
    for pick in [v, w] {
        let saved_degrees: Vec<(usize, usize)> = peeler.adj[pick]
            .iter()
            .filter(|&&x| peeler.alive[x])
            .map(|&x| (x, peeler.degree[x]))
            .collect();
        peeler.alive[pick] = false;
        let saved_own = peeler.degree[pick];
        peeler.degree[pick] = 0;
        for &(x, _) in &saved_degrees {
            peeler.degree[x] -= 1;
        }
        chosen.push(pick);
        if branch(peeler, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
        peeler.alive[pick] = true;
        peeler.degree[pick] = saved_own;
        for &(x, d) in &saved_degrees {
            peeler.degree[x] = d;
        }
    }
    false
}

/// True iff `cover` touches every edge of `g`.
pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut in_cover = vec![false; g.vertex_count()];
    for &v in cover {
        if v >= g.vertex_count() {
            return false;
        }
        in_cover[v] = true;
    }
    g.edges().iter().all(|&(u, v)| in_cover[u] || in_cover[v])
}
