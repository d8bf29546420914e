//! Seeded random instance generation for the CLI and the test harnesses.
//! Everything is driven by `ChaCha8Rng`, one stream per layer, so identical
//! seeds reproduce identical instances byte for byte.

use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::CountError;
use crate::geometry::GeometricLayout;
use crate::graph::{Graph, LayeredGraph};
use crate::io::CliqueInstance;

/// Per-layer generation model.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerModel {
    /// Every pair independently with probability `p`.
    Gnp(f64),
    /// Uniform grid positions, edges within the given radius.
    Geometric(BigRational),
    /// Disjoint random stars.
    StarForest,
    /// A random partial matching.
    Matching,
}

impl LayerModel {
    /// Parse `gnp:0.3`, `geometric:0.25`, `star-forest`, `matching`.
    pub fn parse(text: &str) -> Result<Self, String> {
        match text.split_once(':') {
            Some(("gnp", p)) => {
                let p: f64 = p.parse().map_err(|_| format!("bad gnp probability {p:?}"))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(format!("gnp probability {p} outside [0, 1]"));
                }
                Ok(LayerModel::Gnp(p))
            }
            Some(("geometric", r)) => {
                let r = crate::decimal::parse_decimal(r)?;
                Ok(LayerModel::Geometric(r))
            }
            None if text == "star-forest" => Ok(LayerModel::StarForest),
            None if text == "matching" => Ok(LayerModel::Matching),
            _ => Err(format!("unknown model {text:?}")),
        }
    }
}

pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect::<Vec<_>>();
    Graph::new(n, edges).expect("distinct pairs only")
}

/// Random star forest: shuffle the vertices, then repeatedly take a center
/// and a random bundle of leaves.
pub fn random_star_forest(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let mut edges = Vec::new();
    let mut rest = verts.as_slice();
    while rest.len() > 1 {
        let leaves = rng.gen_range(0..rest.len().min(6));
        let (star, remaining) = rest.split_at(leaves + 1);
        for &leaf in &star[1..] {
            edges.push((star[0], leaf));
        }
        rest = remaining;
    }
    Graph::new(n, edges).expect("stars are disjoint")
}

/// Random partial matching: shuffle and pair a random prefix.
pub fn random_matching(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let edges = verts
        .chunks_exact(2)
        .filter(|_| rng.gen_bool(0.7))
        .map(|pair| (pair[0], pair[1]))
        .collect::<Vec<_>>();
    Graph::new(n, edges).expect("pairs are disjoint")
}

/// Random geometric graph on a 0..1 grid with 3-decimal coordinates; two
/// vertices are adjacent when their exact squared distance is at most
/// `radius^2`.
pub fn random_geometric(rng: &mut ChaCha8Rng, n: usize, radius: &BigRational) -> (Graph, GeometricLayout) {
    let coord = |rng: &mut ChaCha8Rng| BigRational::new(rng.gen_range(0..=1000).into(), 1000.into());
    let positions: Vec<(BigRational, BigRational)> =
        (0..n).map(|_| (coord(rng), coord(rng))).collect();
    let layout = GeometricLayout::new(positions);
    let r_sq = radius * radius;
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| layout.dist_sq(u, v) <= r_sq)
        .collect::<Vec<_>>();
    (Graph::new(n, edges).expect("distinct pairs only"), layout)
}

/// Random pattern graph on `k` vertices with edge probability `p`.
pub fn random_pattern(rng: &mut ChaCha8Rng, k: usize, p: f64) -> Graph {
    gnp(rng, k, p)
}

/// Random allowed lists: a mix of unrestricted vertices and random subsets
/// (possibly empty).
pub fn random_lists(rng: &mut ChaCha8Rng, k: usize, host_n: usize) -> Vec<Option<Vec<usize>>> {
    (0..k)
        .map(|_| {
            if rng.gen_bool(0.4) {
                None
            } else {
                let density = rng.gen_range(0.2..0.9);
                Some((0..host_n).filter(|_| rng.gen_bool(density)).collect())
            }
        })
        .collect()
}

/// Generate a multi-layer host: one RNG stream per layer so layers are
/// independent, then merge. Duplicate pairs across layers collapse to the
/// lowest layer (with a warning), as everywhere else.
pub fn generate_host(
    seed: u64,
    n: usize,
    layers: usize,
    model: &LayerModel,
) -> Result<(LayeredGraph, Option<GeometricLayout>, Vec<String>), CountError> {
    if layers == 0 {
        return Err(CountError::InvalidArgument("need at least one layer".into()));
    }
    if let LayerModel::Geometric(radius) = model {
        if layers != 1 {
            return Err(CountError::InvalidArgument(
                "the geometric model generates a single layer".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, layout) = random_geometric(&mut rng, n, radius);
        return Ok((LayeredGraph::single_layer(g), Some(layout), Vec::new()));
    }
    let mut records = Vec::new();
    for layer in 0..layers {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(layer as u64);
        let g = match model {
            LayerModel::Gnp(p) => gnp(&mut rng, n, *p),
            LayerModel::StarForest => random_star_forest(&mut rng, n),
            LayerModel::Matching => random_matching(&mut rng, n),
            LayerModel::Geometric(_) => unreachable!("handled above"),
        };
        records.extend(g.edges().iter().map(|&(u, v)| (u, v, layer)));
    }
    let (graph, warnings) = LayeredGraph::from_records(n, &records, true)
        .map_err(|e| CountError::InvalidArgument(e.to_string()))?;
    Ok((graph, None, warnings))
}

/// Random multicolour-clique instance: class sizes in `1..=max_class_size`,
/// cross-class edges with probability `p`, intra-class edges with `p/2`.
pub fn random_clique_instance(
    rng: &mut ChaCha8Rng,
    k: usize,
    max_class_size: usize,
    p: f64,
) -> CliqueInstance {
    assert!(k >= 2 && max_class_size >= 1);
    let mut color_of = Vec::new();
    for c in 1..=k {
        let size = rng.gen_range(1..=max_class_size);
        color_of.extend(std::iter::repeat(c).take(size));
    }
    let n = color_of.len();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| {
            let cross = color_of[u] != color_of[v];
            rng.gen_bool(if cross { p } else { p / 2.0 })
        })
        .collect::<Vec<_>>();
    CliqueInstance::new(Graph::new(n, edges).expect("distinct pairs"), color_of)
        .expect("every class is nonempty")
}
