//! Window-scanning counter for hosts arranged in the plane.
//!
//! Every embedding of a connected pattern has a unique scan-minimal image
//! vertex under the total order (x ascending, y descending, id ascending).
//! Scanning a half-disc window of radius `diameter * longest-edge` around
//! each vertex therefore sees every embedding exactly once. Coordinates are
//! exact rationals and all comparisons use squared distances, so window
//! membership never depends on floating point.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::count::adjacency_search;
use crate::error::CountError;
use crate::graph::{Embedding, Graph, Pattern};

/// Planar positions, one per host vertex, as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricLayout {
    pub positions: Vec<(BigRational, BigRational)>,
}

impl GeometricLayout {
    pub fn new(positions: Vec<(BigRational, BigRational)>) -> Self {
        GeometricLayout { positions }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Squared Euclidean distance between the positions of `u` and `v`.
    pub fn dist_sq(&self, u: usize, v: usize) -> BigRational {
        let (ux, uy) = &self.positions[u];
        let (vx, vy) = &self.positions[v];
        let dx = ux - vx;
        let dy = uy - vy;
        &dx * &dx + &dy * &dy
    }

    /// Scan order: leftmost first (x ascending), then uppermost
    /// (y descending), then smallest id.
    pub fn scan_cmp(&self, a: usize, b: usize) -> Ordering {
        let (ax, ay) = &self.positions[a];
        let (bx, by) = &self.positions[b];
        ax.cmp(bx).then_with(|| by.cmp(ay)).then(a.cmp(&b))
    }
}

/// Size figures of one window-scan instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowStats {
    /// Squared length of the longest host edge (zero for edgeless hosts).
    pub max_edge_len_sq: BigRational,
    /// Pattern diameter in edges.
    pub diameter: usize,
    /// Largest window the scan touches.
    pub max_occupancy: usize,
}

fn require_layout(host: &Graph, layout: &GeometricLayout) -> Result<(), CountError> {
    if layout.len() != host.vertex_count() {
        return Err(CountError::InvalidArgument(format!(
            "layout covers {} vertices but the host has {}",
            layout.len(),
            host.vertex_count()
        )));
    }
    Ok(())
}

fn pattern_diameter(pat: &Pattern) -> Result<usize, CountError> {
    pat.graph.diameter().ok_or_else(|| {
        CountError::StrategyInfeasible(
            "geometric counting requires a connected pattern".into(),
        )
    })
}

/// Squared length of the longest host edge.
pub fn max_edge_len_sq(host: &Graph, layout: &GeometricLayout) -> BigRational {
    host.edges()
        .iter()
        .map(|&(u, v)| layout.dist_sq(u, v))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// The window anchored at `v`: vertices at squared distance at most
/// `radius_sq` that are not before `v` in the scan order. Always contains
/// `v` itself.
pub fn window(host: &Graph, layout: &GeometricLayout, v: usize, radius_sq: &BigRational) -> Vec<usize> {
    assert!(v < host.vertex_count(), "vertex out of range");
    let mut out: Vec<usize> = (0..host.vertex_count())
        .filter(|&w| layout.scan_cmp(w, v) != Ordering::Less)
        .filter(|&w| layout.dist_sq(v, w) <= *radius_sq)
        .collect();
    out.sort_unstable();
    out
}

/// Diameter, longest edge and worst-case window occupancy for this instance.
pub fn window_stats(
    host: &Graph,
    layout: &GeometricLayout,
    pat: &Pattern,
) -> Result<WindowStats, CountError> {
    require_layout(host, layout)?;
    let diameter = pattern_diameter(pat)?;
    let edge_sq = max_edge_len_sq(host, layout);
    let radius_sq = scan_radius_sq(&edge_sq, diameter);
    let max_occupancy = (0..host.vertex_count())
        .map(|v| window(host, layout, v, &radius_sq).len())
        .max()
        .unwrap_or(0);
    Ok(WindowStats {
        max_edge_len_sq: edge_sq,
        diameter,
        max_occupancy,
    })
}

/// Squared scan radius (diameter * longest edge)², kept exact by squaring.
pub fn scan_radius_sq(max_edge_len_sq: &BigRational, diameter: usize) -> BigRational {
    let d = BigRational::from_integer((diameter as u64).into());
    &d * &d * max_edge_len_sq
}

/// Count all list embeddings by scanning windows: for each host vertex `v`
/// and each pattern vertex `w`, count embeddings pinning `w` to `v` with
/// every image inside `v`'s window. The scan-order membership rule makes
/// each embedding contribute at exactly one anchor.
pub fn count_geometric(
    host: &Graph,
    layout: &GeometricLayout,
    pat: &Pattern,
) -> Result<BigUint, CountError> {
    require_layout(host, layout)?;
    let diameter = pattern_diameter(pat)?;
    let radius_sq = scan_radius_sq(&max_edge_len_sq(host, layout), diameter);
    let mut total = BigUint::zero();
    for v in 0..host.vertex_count() {
        total += count_in_window(host, layout, pat, v, &radius_sq, None);
    }
    Ok(total)
}

/// The embeddings counted at anchor `v`, materialized (test instrumentation;
/// images refer to original host ids).
pub fn window_embeddings(
    host: &Graph,
    layout: &GeometricLayout,
    pat: &Pattern,
    v: usize,
) -> Result<Vec<Embedding>, CountError> {
    require_layout(host, layout)?;
    let diameter = pattern_diameter(pat)?;
    let radius_sq = scan_radius_sq(&max_edge_len_sq(host, layout), diameter);
    let mut found = Vec::new();
    count_in_window(host, layout, pat, v, &radius_sq, Some(&mut found));
    Ok(found)
}

fn count_in_window(
    host: &Graph,
    layout: &GeometricLayout,
    pat: &Pattern,
    v: usize,
    radius_sq: &BigRational,
    mut collect: Option<&mut Vec<Embedding>>,
) -> BigUint {
    let verts = window(host, layout, v, radius_sq);
    let (sub, map) = host.induced_subgraph(&verts);
    let anchor = map.old_to_new[v].expect("v lies in its own window");
    let lists: Vec<Option<Vec<usize>>> = (0..pat.k())
        .map(|i| pat.lists[i].as_ref().map(|l| map.translate_list(l)))
        .collect();
    let Ok(local) = Pattern::new(pat.graph.clone(), lists) else {
        return BigUint::zero();
    };
    let mut count = BigUint::zero();
    for w in 0..pat.k() {
        adjacency_search(&sub, &local, Some((w, anchor)), &mut |image| {
            count += 1u32;
            if let Some(found) = collect.as_deref_mut() {
                found.push(Embedding {
                    image: image.iter().map(|&x| map.new_to_old[x]).collect(),
                });
            }
            true
        });
    }
    count
}

/// Scan-minimal vertex of a set of host vertices.
pub fn scan_minimum(layout: &GeometricLayout, verts: &[usize]) -> Option<usize> {
    verts.iter().copied().min_by(|&a, &b| layout.scan_cmp(a, b))
}
