//! Reductions from list-restricted counting to unrestricted counting:
//! inclusion–exclusion over disjoint lists, host blow-ups with mirage
//! correction for overlapping lists, colorful counting, and a seeded
//! Monte Carlo color-coding estimator.
//!
//! Every routine here takes the unrestricted counter as a parameter, so the
//! reductions compose with any exact engine.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::count::count_bounded_degree;
use crate::decimal::{ceil_to_usize, to_f64};
use crate::error::CountError;
use crate::graph::{Graph, Pattern};

/// Patterns larger than this make automorphism brute force unreasonable.
pub const AUT_GUARD: usize = 12;
/// Signature enumeration grows with the Bell numbers; cap the pattern size.
pub const BLOWUP_GUARD: usize = 8;

/// Counter for unrestricted embeddings of a pattern graph into a host graph.
pub type UnrestrictedCounter<'a> = &'a (dyn Fn(&Graph, &Graph) -> BigUint + Sync);

/// Default unrestricted counter backed by the adjacency-driven engine.
pub fn bounded_degree_unrestricted(host: &Graph, pattern: &Graph) -> BigUint {
    let pat = Pattern::unrestricted(pattern.clone()).expect("patterns are nonempty");
    count_bounded_degree(host, &pat)
}

/// Number of edge-preserving bijections of `h` onto itself, by brute force.
pub fn count_automorphisms(h: &Graph) -> Result<BigUint, CountError> {
    let k = h.vertex_count();
    if k > AUT_GUARD {
        return Err(CountError::GuardExceeded(format!(
            "automorphism brute force limited to {AUT_GUARD} vertices, pattern has {k}"
        )));
    }
    if k == 0 {
        return Ok(BigUint::one());
    }
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    let mut count = BigUint::zero();

    fn assign(h: &Graph, depth: usize, image: &mut [usize], used: &mut [bool], count: &mut BigUint) {
        let k = h.vertex_count();
        if depth == k {
            *count += 1u32;
            return;
        }
        'cands: for x in 0..k {
            if used[x] || h.degree(x) != h.degree(depth) {
                continue;
            }
            for &w in h.neighbors(depth) {
                if w < depth && !h.has_edge(x, image[w]) {
                    continue 'cands;
                }
            }
            // degree equality + injectivity force non-edges to map to non-edges
            image[depth] = x;
            used[x] = true;
            assign(h, depth + 1, image, used, count);
            used[x] = false;
        }
    }

    assign(h, 0, &mut image, &mut used, &mut count);
    Ok(count)
}

fn materialize_lists(host_n: usize, pat: &Pattern) -> Vec<Vec<usize>> {
    (0..pat.k()).map(|i| pat.candidates(i, host_n)).collect()
}

/// Exact list count when the allowed sets are pairwise disjoint:
/// filter the host down to edges whose endpoint classes are pattern edges,
/// inclusion–exclude over subsets of classes to count embeddings hitting
/// every class, then divide out the pattern's automorphisms.
pub fn count_disjoint_lists(
    host: &Graph,
    pat: &Pattern,
    inner: UnrestrictedCounter<'_>,
) -> Result<BigUint, CountError> {
    let k = pat.k();
    let lists = materialize_lists(host.vertex_count(), pat);
    let mut class_of: Vec<Option<usize>> = vec![None; host.vertex_count()];
    for (i, list) in lists.iter().enumerate() {
        for &v in list {
            if let Some(j) = class_of[v] {
                return Err(CountError::InvalidArgument(format!(
                    "lists are not pairwise disjoint: host vertex {v} lies in lists {j} and {i}"
                )));
            }
            class_of[v] = Some(i);
        }
    }
    if lists.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero()); // some class can never be hit
    }

    // G' on the union of the lists, keeping host edges whose classes form a
    // pattern edge.
    let union: Vec<usize> = (0..host.vertex_count())
        .filter(|&v| class_of[v].is_some())
        .collect();
    let mut to_prime = vec![usize::MAX; host.vertex_count()];
    for (new, &old) in union.iter().enumerate() {
        to_prime[old] = new;
    }
    let prime_edges = host.edges().iter().filter_map(|&(u, v)| {
        let (a, b) = (class_of[u]?, class_of[v]?);
        pat.graph.has_edge(a, b).then(|| (to_prime[u], to_prime[v]))
    });
    let prime = Graph::new(union.len(), prime_edges).expect("filtered host stays simple");
    let prime_class: Vec<usize> = union.iter().map(|&v| class_of[v].unwrap()).collect();

    // A_I = unrestricted count inside the classes of I; alternating sum
    // counts the embeddings whose image meets every class.
    let mut hit_all = BigInt::zero();
    for mask in 0u32..(1 << k) {
        let keep: Vec<usize> = (0..prime.vertex_count())
            .filter(|&v| mask >> prime_class[v] & 1 == 1)
            .collect();
        let (sub, _) = prime.induced_subgraph(&keep);
        let a = inner(&sub, &pat.graph);
        let missing = k - (mask.count_ones() as usize);
        let term = BigInt::from(a);
        if missing % 2 == 0 {
            hit_all += term;
        } else {
            hit_all -= term;
        }
    }
    if hit_all.is_negative() {
        return Err(CountError::Inconsistency(format!(
            "inclusion-exclusion produced a negative total {hit_all}"
        )));
    }
    let aut = count_automorphisms(&pat.graph)?;
    let hit_all = hit_all.to_biguint().expect("checked nonnegative");
    let (good, rem) = (&hit_all / &aut, &hit_all % &aut);
    if !rem.is_zero() {
        return Err(CountError::Inconsistency(format!(
            "class-hitting total {hit_all} is not divisible by |aut| = {aut}"
        )));
    }
    Ok(good)
}

/// Replace every host vertex `u` by `copies` pairwise non-adjacent twins
/// `u_0..u_{copies-1}`, each adjacent to every twin of every neighbor of
/// `u`. Returns the blown-up graph and the projection back to original ids.
pub fn blow_up(host: &Graph, copies: usize) -> (Graph, Vec<usize>) {
    assert!(copies >= 1);
    let n = host.vertex_count();
    let edges = host.edges().iter().flat_map(|&(u, w)| {
        (0..copies).flat_map(move |c| (0..copies).map(move |d| (u * copies + c, w * copies + d)))
    });
    let blown = Graph::new(n * copies, edges).expect("blow-up of a simple graph is simple");
    let projection = (0..n * copies).map(|x| x / copies).collect();
    (blown, projection)
}

/// Ordered set partitions of `{0..k}` in restricted-growth order. Each entry
/// maps element -> block index; blocks are numbered by first appearance.
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    fn go(rgs: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        let k = rgs.len();
        if pos == k {
            out.push(rgs.clone());
            return;
        }
        for b in 0..=max_used + 1 {
            rgs[pos] = b;
            go(rgs, pos + 1, max_used.max(b), out);
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    rgs[0] = 0;
    go(&mut rgs, 1, 0, &mut out);
    out
}

fn intersect_lists(a: Option<Vec<usize>>, b: &Option<Vec<usize>>) -> Option<Vec<usize>> {
    match (a, b) {
        (None, None) => None,
        (None, Some(b)) => Some(b.clone()),
        (Some(a), None) => Some(a),
        (Some(a), Some(b)) => Some(a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()),
    }
}

/// Quotient of the pattern by a signature (blocks of vertices forced to
/// share an image). `None` when some block contains a pattern edge: such a
/// signature admits no mirage.
fn quotient_pattern(pat: &Pattern, rgs: &[usize]) -> Option<Pattern> {
    let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
    let mut edges = Vec::new();
    for &(i, j) in pat.graph.edges() {
        if rgs[i] == rgs[j] {
            return None; // adjacent vertices cannot collapse
        }
        edges.push((rgs[i].min(rgs[j]), rgs[i].max(rgs[j])));
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::new(blocks, edges).expect("quotient stays simple");
    let mut lists: Vec<Option<Vec<usize>>> = vec![None; blocks];
    for (i, &b) in rgs.iter().enumerate() {
        lists[b] = intersect_lists(lists[b].take(), &pat.lists[i]);
    }
    Some(Pattern::new(graph, lists).expect("blocks are nonempty"))
}

/// Exact list count for arbitrary (overlapping) lists: blow the host up
/// k-fold so the translated lists become disjoint, count there, and subtract
/// the phantom embeddings whose images collapse under projection, one
/// signature at a time (each with a strictly smaller quotient pattern).
pub fn count_lists_via_blowup(
    host: &Graph,
    pat: &Pattern,
    inner: UnrestrictedCounter<'_>,
) -> Result<BigUint, CountError> {
    let k = pat.k();
    if k > BLOWUP_GUARD {
        return Err(CountError::GuardExceeded(format!(
            "blow-up counting limited to patterns of {BLOWUP_GUARD} vertices, got {k}"
        )));
    }
    let (blown, _projection) = blow_up(host, k);
    let blown_lists: Vec<Option<Vec<usize>>> = (0..k)
        .map(|i| {
            Some(
                pat.candidates(i, host.vertex_count())
                    .into_iter()
                    .map(|u| u * k + i)
                    .collect(),
            )
        })
        .collect();
    let blown_pat = Pattern::new(pat.graph.clone(), blown_lists).expect("same pattern size");
    let with_mirages = count_disjoint_lists(&blown, &blown_pat, inner)?;

    let mut mirages = BigUint::zero();
    for rgs in set_partitions(k) {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        if blocks == k {
            continue; // the identity signature is not a mirage
        }
        if let Some(quotient) = quotient_pattern(pat, &rgs) {
            mirages += count_lists_via_blowup(host, &quotient, inner)?;
        }
    }
    if mirages > with_mirages {
        return Err(CountError::Inconsistency(format!(
            "mirage total {mirages} exceeds blown-up count {with_mirages}"
        )));
    }
    Ok(with_mirages - mirages)
}

/// Count embeddings whose image is colorful under `coloring` (all images get
/// pairwise distinct colors in `0..k`): sum the disjoint-list counts over
/// all assignments of colors to pattern vertices.
pub fn count_colorful(
    host: &Graph,
    pat: &Pattern,
    coloring: &[usize],
    inner: UnrestrictedCounter<'_>,
) -> Result<BigUint, CountError> {
    let k = pat.k();
    if coloring.len() != host.vertex_count() {
        return Err(CountError::InvalidArgument(format!(
            "coloring covers {} vertices, host has {}",
            coloring.len(),
            host.vertex_count()
        )));
    }
    if let Some(&c) = coloring.iter().find(|&&c| c >= k) {
        return Err(CountError::InvalidArgument(format!(
            "color {c} out of range (k = {k})"
        )));
    }
    let mut class: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in coloring.iter().enumerate() {
        class[c].push(v);
    }
    if class.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero()); // some color is never used
    }
    let mut total = BigUint::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let lists: Vec<Option<Vec<usize>>> = (0..k)
            .map(|i| {
                Some(
                    pat.candidates(i, host.vertex_count())
                        .into_iter()
                        .filter(|&v| coloring[v] == perm[i])
                        .collect(),
                )
            })
            .collect();
        let listed = Pattern::new(pat.graph.clone(), lists).expect("same pattern size");
        total += count_disjoint_lists(host, &listed, inner)?;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

/// Lexicographic next permutation; false when wrapped around.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Parameters of the randomized approximation.
#[derive(Debug, Clone)]
pub struct ApproxParams {
    pub epsilon: BigRational,
    pub delta: BigRational,
    pub seed: u64,
}

impl ApproxParams {
    pub fn validate(&self) -> Result<(), CountError> {
        if !self.epsilon.is_positive() {
            return Err(CountError::InvalidArgument("epsilon must be positive".into()));
        }
        if !self.delta.is_positive() || self.delta >= BigRational::one() {
            return Err(CountError::InvalidArgument("delta must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// The sampling plan derived from (k, epsilon, delta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxPlan {
    /// Probability k!/k^k that a fixed k-set is colorful under a uniform
    /// coloring.
    pub colorful_prob: BigRational,
    /// Colorings drawn per group: ceil(3 / (p * epsilon^2)).
    pub trials_per_group: usize,
    /// Groups for the median: ceil(8 * ln(1/delta)).
    pub groups: usize,
}

/// Derive the sampling plan. The group count uses f64 logarithms; for
/// rational delta in (0,1) the ceiling is insensitive to that rounding.
pub fn approx_plan(k: usize, params: &ApproxParams) -> Result<ApproxPlan, CountError> {
    params.validate()?;
    let mut factorial = BigInt::one();
    for i in 1..=k {
        factorial *= BigInt::from(i);
    }
    let power = BigInt::from(k).pow(k as u32);
    let p = BigRational::new(factorial, power);
    let denom = &p * &params.epsilon * &params.epsilon;
    let m = ceil_to_usize(&(BigRational::from_integer(3.into()) / denom))
        .ok_or_else(|| CountError::InvalidArgument("sample size overflows".into()))?;
    let g = (8.0 * (1.0 / to_f64(&params.delta)).ln()).ceil();
    if !g.is_finite() || g < 0.0 {
        return Err(CountError::InvalidArgument("group count overflows".into()));
    }
    Ok(ApproxPlan {
        colorful_prob: p,
        trials_per_group: m.max(1),
        groups: (g as usize).max(1),
    })
}

/// Seeded Monte Carlo estimate of the list-embedding count: draw uniform
/// colorings (one RNG stream per trial, so results are independent of
/// scheduling), average colorful counts per group scaled by 1/p, and return
/// the median of the group means. A zero-count instance yields exactly 0.
pub fn approx_count(
    host: &Graph,
    pat: &Pattern,
    params: &ApproxParams,
    inner: UnrestrictedCounter<'_>,
    threads: usize,
) -> Result<(BigRational, ApproxPlan), CountError> {
    let plan = approx_plan(pat.k(), params)?;
    let k = pat.k();
    let n = host.vertex_count();
    let total = plan.trials_per_group * plan.groups;

    let trial = |t: usize| -> Result<BigUint, CountError> {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(t as u64);
        let coloring: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        count_colorful(host, pat, &coloring, inner)
    };

    let counts: Vec<BigUint> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CountError::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| {
            use rayon::prelude::*;
            (0..total).into_par_iter().map(trial).collect::<Result<_, _>>()
        })?
    } else {
        (0..total).map(trial).collect::<Result<_, _>>()?
    };

    let scale = &plan.colorful_prob * BigRational::from_integer((plan.trials_per_group as u64).into());
    let mut means: Vec<BigRational> = counts
        .chunks(plan.trials_per_group)
        .map(|group| {
            let sum: BigUint = group.iter().sum();
            BigRational::from_integer(BigInt::from(sum)) / &scale
        })
        .collect();
    means.sort();
    let mid = means.len() / 2;
    let estimate = if means.len() % 2 == 1 {
        means[mid].clone()
    } else {
        (&means[mid - 1] + &means[mid]) / BigRational::from_integer(2.into())
    };
    Ok((estimate, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, star_graph, Graph, Pattern};
    use crate::oracle::{count_embeddings_oracle, enumerate_embeddings_oracle};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn inner() -> UnrestrictedCounter<'static> {
        &bounded_degree_unrestricted
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(count_automorphisms(&complete_graph(3)).unwrap(), 6u32.into());
        assert_eq!(count_automorphisms(&path_graph(3)).unwrap(), 2u32.into());
        assert_eq!(count_automorphisms(&star_graph(3)).unwrap(), 6u32.into());
        assert_eq!(count_automorphisms(&Graph::empty(4)).unwrap(), 24u32.into());
        assert!(count_automorphisms(&Graph::empty(13)).is_err());
    }

    #[test]
    fn disjoint_lists_examples() {
        let edge = path_graph(2);
        let pat = Pattern::new(path_graph(2), vec![Some(vec![0]), Some(vec![1])]).unwrap();
        assert_eq!(count_disjoint_lists(&edge, &pat, inner()).unwrap(), 1u32.into());

        let k3 = complete_graph(3);
        let pat = Pattern::new(path_graph(2), vec![Some(vec![0]), Some(vec![1, 2])]).unwrap();
        assert_eq!(count_disjoint_lists(&k3, &pat, inner()).unwrap(), 2u32.into());
    }

    #[test]
    fn disjoint_lists_rejects_overlap() {
        let k3 = complete_graph(3);
        let pat = Pattern::new(path_graph(2), vec![Some(vec![0, 1]), Some(vec![1])]).unwrap();
        assert!(matches!(
            count_disjoint_lists(&k3, &pat, inner()),
            Err(CountError::InvalidArgument(_))
        ));
    }

    fn random_disjoint_instance(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (Graph, Pattern) {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let host = Graph::new(n, edges).unwrap();
        let pedges: Vec<(usize, usize)> = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 0..n {
            let class = rng.gen_range(0..k + 1);
            if class < k {
                lists[class].push(v);
            }
        }
        let pat = Pattern::new(
            Graph::new(k, pedges).unwrap(),
            lists.into_iter().map(Some).collect(),
        )
        .unwrap();
        (host, pat)
    }

    #[test]
    fn disjoint_lists_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let n = rng.gen_range(2..12);
            let k = rng.gen_range(1..=3);
            let (host, pat) = random_disjoint_instance(&mut rng, n, k);
            assert_eq!(
                count_disjoint_lists(&host, &pat, inner()).unwrap(),
                count_embeddings_oracle(&host, &pat)
            );
        }
    }

    #[test]
    fn disjoint_lists_with_symmetric_patterns() {
        // directed checks for patterns whose automorphisms preserve lists
        let host = complete_graph(5);
        let pat = Pattern::new(
            complete_graph(3),
            vec![Some(vec![0, 1]), Some(vec![2]), Some(vec![3, 4])],
        )
        .unwrap();
        assert_eq!(
            count_disjoint_lists(&host, &pat, inner()).unwrap(),
            count_embeddings_oracle(&host, &pat)
        );

        let host = star_graph(6);
        let pat = Pattern::new(
            star_graph(3),
            vec![Some(vec![0]), Some(vec![1, 2]), Some(vec![3, 4]), Some(vec![5, 6])],
        )
        .unwrap();
        assert_eq!(
            count_disjoint_lists(&host, &pat, inner()).unwrap(),
            count_embeddings_oracle(&host, &pat)
        );
    }

    #[test]
    fn blow_up_examples() {
        let (c4, proj) = blow_up(&path_graph(2), 2);
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.is_bipartite());
        assert_eq!(proj, vec![0, 0, 1, 1]);
        // twins of one vertex stay non-adjacent
        assert!(!c4.has_edge(0, 1));

        let (same, _) = blow_up(&complete_graph(3), 1);
        assert_eq!(same, complete_graph(3));

        let pat = Pattern::unrestricted(path_graph(2)).unwrap();
        assert_eq!(count_embeddings_oracle(&c4, &pat), 8u32.into());
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        assert_eq!(set_partitions(1).len(), 1);
        assert_eq!(set_partitions(2).len(), 2);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
        // canonical restricted-growth order starts with the all-one-block string
        assert_eq!(set_partitions(3)[0], vec![0, 0, 0]);
        assert_eq!(set_partitions(3)[4], vec![0, 1, 2]);
    }

    #[test]
    fn blowup_counting_examples() {
        let k2 = path_graph(2);
        let pat = Pattern::new(path_graph(2), vec![Some(vec![0, 1]), Some(vec![0, 1])]).unwrap();
        assert_eq!(count_lists_via_blowup(&k2, &pat, inner()).unwrap(), 2u32.into());

        let host = complete_graph(4);
        let single = Pattern::new(Graph::empty(1), vec![Some(vec![1, 3])]).unwrap();
        assert_eq!(count_lists_via_blowup(&host, &single, inner()).unwrap(), 2u32.into());
    }

    #[test]
    fn blowup_counting_matches_oracle_on_overlapping_lists() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..40 {
            let n = rng.gen_range(2..9);
            let k = rng.gen_range(1..=3);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let host = Graph::new(n, edges).unwrap();
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.6))
                .collect();
            let lists: Vec<Option<Vec<usize>>> = (0..k)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        None
                    } else {
                        Some((0..n).filter(|_| rng.gen_bool(0.5)).collect())
                    }
                })
                .collect();
            let pat = Pattern::new(Graph::new(k, pedges).unwrap(), lists).unwrap();
            assert_eq!(
                count_lists_via_blowup(&host, &pat, inner()).unwrap(),
                count_embeddings_oracle(&host, &pat),
            );
        }
    }

    #[test]
    fn blowup_with_full_lists_equals_unrestricted_count() {
        let host = cycle_graph(6);
        let pat = Pattern::unrestricted(path_graph(3)).unwrap();
        assert_eq!(
            count_lists_via_blowup(&host, &pat, inner()).unwrap(),
            count_embeddings_oracle(&host, &pat)
        );
    }

    fn colorful_oracle(host: &Graph, pat: &Pattern, coloring: &[usize]) -> BigUint {
        enumerate_embeddings_oracle(host, pat)
            .into_iter()
            .filter(|image| {
                let mut seen = vec![false; pat.k()];
                image.iter().all(|&v| {
                    let c = coloring[v];
                    c < pat.k() && !std::mem::replace(&mut seen[c], true)
                })
            })
            .count()
            .into()
    }

    #[test]
    fn colorful_examples() {
        let k2 = path_graph(2);
        let pat = Pattern::unrestricted(path_graph(2)).unwrap();
        assert_eq!(count_colorful(&k2, &pat, &[0, 1], inner()).unwrap(), 2u32.into());
        assert_eq!(count_colorful(&k2, &pat, &[0, 0], inner()).unwrap(), BigUint::zero());
    }

    #[test]
    fn colorful_matches_filtered_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..40 {
            let n = rng.gen_range(2..9);
            let k = rng.gen_range(1..=3);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            let host = Graph::new(n, edges).unwrap();
            let pedges: Vec<(usize, usize)> = (0..k)
                .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.6))
                .collect();
            let pat = Pattern::unrestricted(Graph::new(k, pedges).unwrap()).unwrap();
            let coloring: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            assert_eq!(
                count_colorful(&host, &pat, &coloring, inner()).unwrap(),
                colorful_oracle(&host, &pat, &coloring)
            );
        }
    }

    #[test]
    fn exhaustive_average_over_colorings_is_unbiased() {
        // host on 5 vertices, k = 2: sum over all 2^5 colorings
        let host = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]).unwrap();
        let pat = Pattern::unrestricted(path_graph(2)).unwrap();
        let truth = count_embeddings_oracle(&host, &pat);
        let k = 2usize;
        let n = host.vertex_count();
        let mut sum = BigUint::zero();
        for mask in 0..(1u32 << n) {
            let coloring: Vec<usize> = (0..n).map(|v| (mask >> v & 1) as usize).collect();
            sum += count_colorful(&host, &pat, &coloring, inner()).unwrap();
        }
        // divide by p * k^n = k! * k^(n-k)
        let trials = BigUint::from(k as u32).pow(n as u32);
        let p = BigRational::new(BigInt::from(2), BigInt::from(4));
        let average = BigRational::new(BigInt::from(sum), BigInt::from(trials)) / p;
        assert_eq!(average, BigRational::from_integer(BigInt::from(truth)));
    }

    #[test]
    fn plan_arithmetic() {
        let params = ApproxParams {
            epsilon: BigRational::new(1.into(), 10.into()),
            delta: BigRational::new(1.into(), 10.into()),
            seed: 0,
        };
        let plan = approx_plan(3, &params).unwrap();
        assert_eq!(plan.colorful_prob, BigRational::new(2.into(), 9.into()));
        assert_eq!(plan.trials_per_group, 1350);
        assert_eq!(plan.groups, 19);
    }

    #[test]
    fn plan_rejects_bad_params() {
        let bad = ApproxParams {
            epsilon: BigRational::zero(),
            delta: BigRational::new(1.into(), 2.into()),
            seed: 0,
        };
        assert!(approx_plan(2, &bad).is_err());
        let bad = ApproxParams {
            epsilon: BigRational::one(),
            delta: BigRational::one(),
            seed: 0,
        };
        assert!(approx_plan(2, &bad).is_err());
    }

    #[test]
    fn approx_zero_instances_return_zero() {
        // triangle pattern in a triangle-free host
        let host = cycle_graph(4);
        let pat = Pattern::unrestricted(complete_graph(3)).unwrap();
        for seed in 0..5 {
            let params = ApproxParams {
                epsilon: BigRational::new(1.into(), 2.into()),
                delta: BigRational::new(1.into(), 2.into()),
                seed,
            };
            let (estimate, _) = approx_count(&host, &pat, &params, inner(), 1).unwrap();
            assert!(estimate.is_zero());
        }
    }

    #[test]
    fn approx_is_deterministic_per_seed_and_thread_count() {
        let host = complete_graph(4);
        let pat = Pattern::unrestricted(path_graph(2)).unwrap();
        let params = ApproxParams {
            epsilon: BigRational::new(1.into(), 2.into()),
            delta: BigRational::new(1.into(), 2.into()),
            seed: 7,
        };
        let (a, _) = approx_count(&host, &pat, &params, inner(), 1).unwrap();
        let (b, _) = approx_count(&host, &pat, &params, inner(), 4).unwrap();
        assert_eq!(a, b);
    }
}
