//! Seedable samplers: G(n, p), bipartite G(n1, n2, p), the uniform
//! minimum-degree-2 models K(n, m, 2) and K(n1, n2, m, 2), the configuration
//! model, and uniform simple graphs with a given degree sequence.
//!
//! The minimum-degree-2 models are sampled exactly uniformly by the
//! conditioned configuration route: draw iid Poisson(lambda) degrees
//! conditioned on being >= 2 (lambda calibrated so the conditional mean is
//! 2m/n), reject unless they sum to 2m, pair stubs uniformly, and accept iff
//! the multigraph is simple. For a simple graph G with degree sequence d the
//! acceptance weight is proportional to
//! prod_i lambda^{d_i}/d_i! * prod_i d_i! = lambda^{2m}, which is constant
//! over K(n, m, 2), so accepted samples are exactly uniform. Degrees must be
//! redrawn jointly with the pairing on every rejection, otherwise the
//! per-degree-sequence acceptance probabilities would skew the mixture.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::analytics::truncated_poisson_from_mean;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, MultiGraph};

/// Attempts allowed before a sampler gives up. Acceptance probability is
/// bounded away from zero in the intended parameter regimes, so the cap only
/// trips on misuse.
pub const DEFAULT_REJECTION_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Gnp { n: usize, p: f64 },
    BipartiteGnp { n1: usize, n2: usize, p: f64 },
    Min2 { n: usize, m: usize },
    Min2Bipartite { n1: usize, n2: usize, m: usize },
    DegreeSequence(Vec<usize>),
    BipartiteDegreeSequence(Vec<usize>, Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub model: Model,
    pub seed: u64,
    pub rejection_cap: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Graph(Graph),
    Bipartite(BipartiteGraph),
}

impl SamplerConfig {
    pub fn new(model: Model, seed: u64) -> Self {
        SamplerConfig { model, seed, rejection_cap: DEFAULT_REJECTION_CAP }
    }

    pub fn sample(&self) -> Result<Sample> {
        assert!(self.rejection_cap >= 1);
        let cap = self.rejection_cap;
        match &self.model {
            Model::Gnp { n, p } => sample_gnp(*n, *p, self.seed).map(Sample::Graph),
            Model::BipartiteGnp { n1, n2, p } => {
                sample_bipartite_gnp(*n1, *n2, *p, self.seed).map(Sample::Bipartite)
            }
            Model::Min2 { n, m } => {
                sample_min2_with_cap(*n, *m, self.seed, cap).map(Sample::Graph)
            }
            Model::Min2Bipartite { n1, n2, m } => {
                sample_min2_bipartite_with_cap(*n1, *n2, *m, self.seed, cap)
                    .map(Sample::Bipartite)
            }
            Model::DegreeSequence(d) => {
                sample_with_degree_sequence_cap(d, self.seed, cap).map(Sample::Graph)
            }
            Model::BipartiteDegreeSequence(d1, d2) => {
                sample_bipartite_with_degree_sequence_cap(d1, d2, self.seed, cap)
                    .map(Sample::Bipartite)
            }
        }
    }
}

/// Per-trial seed: a fixed splitmix64-style avalanche mix of the master seed
/// and the trial index, so concurrent trials use disjoint, reproducible
/// streams regardless of scheduling.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_from(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(p, "probability must be in [0, 1]"));
    }
    Ok(())
}

/// Geometric skipping over a linear pair index: with inclusion probability p,
/// the gap to the next included index is Geometric(p).
fn geometric_indices(total: u64, p: f64, rng: &mut ChaCha12Rng) -> Vec<u64> {
    let mut out = Vec::new();
    if p <= 0.0 || total == 0 {
        return out;
    }
    if p >= 1.0 {
        return (0..total).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut idx: u64 = 0;
    loop {
        // u in (0, 1]; skip >= 1
        let u = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / log_q).floor() as u64 + 1;
        idx = match idx.checked_add(skip) {
            Some(i) => i,
            None => return out,
        };
        if idx > total {
            return out;
        }
        out.push(idx - 1);
    }
}

/// Map a linear index over the C(n,2) pairs (0,1),(0,2),...,(n-2,n-1) back to
/// the pair.
fn pair_from_index(n: usize, idx: u64) -> (usize, usize) {
    let base = |u: u64| u * (2 * n as u64 - u - 1) / 2;
    let nf = n as f64;
    let mut u = (nf - 0.5 - ((nf - 0.5) * (nf - 0.5) - 2.0 * idx as f64).max(0.0).sqrt())
        .max(0.0) as u64;
    while u + 1 < n as u64 && base(u + 1) <= idx {
        u += 1;
    }
    while base(u) > idx {
        u -= 1;
    }
    let v = u + 1 + (idx - base(u));
    (u as usize, v as usize)
}

/// Erdos-Renyi G(n, p): each pair independently with probability p.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = rng_from(seed);
    let total = (n as u64) * (n as u64 - 1) / 2;
    let edges: Vec<(usize, usize)> = if n < 2 {
        Vec::new()
    } else {
        geometric_indices(total, p, &mut rng)
            .into_iter()
            .map(|idx| pair_from_index(n, idx))
            .collect()
    };
    Graph::new(n, &edges)
}

/// Bipartite Erdos-Renyi over the n1 * n2 pairs.
pub fn sample_bipartite_gnp(n1: usize, n2: usize, p: f64, seed: u64) -> Result<BipartiteGraph> {
    check_probability(p)?;
    let mut rng = rng_from(seed);
    let total = n1 as u64 * n2 as u64;
    let edges: Vec<(usize, usize)> = geometric_indices(total, p, &mut rng)
        .into_iter()
        .map(|idx| ((idx / n2 as u64) as usize, (idx % n2 as u64) as usize))
        .collect();
    BipartiteGraph::new(n1, n2, &edges)
}

/// Sampler for Poisson(lambda) conditioned on being >= 2, by inversion.
struct TruncatedPoisson {
    lambda: f64,
    /// Pr[Z = 2 | Z >= 2], the starting point of the pmf recurrence.
    p2: f64,
}

impl TruncatedPoisson {
    fn new(lambda: f64) -> Self {
        let p_ge2 = -((-lambda).exp_m1()) - lambda * (-lambda).exp();
        let p2 = (-lambda).exp() * lambda * lambda / 2.0 / p_ge2;
        TruncatedPoisson { lambda, p2 }
    }

    fn sample(&self, rng: &mut ChaCha12Rng) -> usize {
        let target = rng.gen::<f64>();
        let mut t = 2usize;
        let mut pt = self.p2;
        let mut cum = pt;
        while cum < target && t < 1000 {
            t += 1;
            pt *= self.lambda / t as f64;
            cum += pt;
        }
        t
    }
}

/// Degrees for one side of a min-degree-2 model: all equal to 2 when the
/// target mean is exactly 2, otherwise iid truncated Poisson conditioned on
/// the exact stub total. Returns None (one attempt consumed) on a sum miss.
fn draw_min2_degrees(
    count: usize,
    stub_total: usize,
    tp: Option<&TruncatedPoisson>,
    rng: &mut ChaCha12Rng,
) -> Option<Vec<usize>> {
    match tp {
        None => Some(vec![2; count]),
        Some(tp) => {
            let d: Vec<usize> = (0..count).map(|_| tp.sample(rng)).collect();
            (d.iter().sum::<usize>() == stub_total).then_some(d)
        }
    }
}

/// Uniform pairing of the stub multiset of `d`; edges returned with stub
/// buckets contracted to vertices (loops kept).
fn pair_stubs(d: &[usize], rng: &mut ChaCha12Rng) -> Vec<(usize, usize)> {
    let mut stubs: Vec<usize> = Vec::with_capacity(d.iter().sum());
    for (v, &dv) in d.iter().enumerate() {
        stubs.extend(std::iter::repeat(v).take(dv));
    }
    stubs.shuffle(rng);
    stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Uniform sample from K(n, m, 2): simple graphs on n vertices with exactly
/// m edges and minimum degree >= 2.
pub fn sample_min2(n: usize, m: usize, seed: u64) -> Result<Graph> {
    sample_min2_with_cap(n, m, seed, DEFAULT_REJECTION_CAP)
}

pub fn sample_min2_with_cap(n: usize, m: usize, seed: u64, cap: u64) -> Result<Graph> {
    if m < n || n < 3 {
        return Err(Error::InfeasibleParameters(format!(
            "K({n}, {m}, 2) is empty: need m >= n >= 3"
        )));
    }
    let tp = if 2 * m == 2 * n {
        None
    } else {
        Some(TruncatedPoisson::new(
            truncated_poisson_from_mean(2.0 * m as f64 / n as f64)?.lambda,
        ))
    };
    let mut rng = rng_from(seed);
    for _ in 0..cap {
        let Some(d) = draw_min2_degrees(n, 2 * m, tp.as_ref(), &mut rng) else {
            continue;
        };
        let edges = pair_stubs(&d, &mut rng);
        if let Some(g) = MultiGraph::new(n, edges)?.to_simple() {
            debug_assert!(g.degrees().iter().all(|&x| x >= 2));
            debug_assert_eq!(g.num_edges(), m);
            return Ok(g);
        }
    }
    Err(Error::RejectionCapExceeded(cap))
}

/// Uniform sample from K(n1, n2, m, 2): simple bipartite graphs with m edges
/// and minimum degree >= 2 on both sides.
pub fn sample_min2_bipartite(n1: usize, n2: usize, m: usize, seed: u64) -> Result<BipartiteGraph> {
    sample_min2_bipartite_with_cap(n1, n2, m, seed, DEFAULT_REJECTION_CAP)
}

pub fn sample_min2_bipartite_with_cap(
    n1: usize,
    n2: usize,
    m: usize,
    seed: u64,
    cap: u64,
) -> Result<BipartiteGraph> {
    if n1 == 0 || n2 == 0 || m < 2 * n1.max(n2) || m > n1 * n2 {
        return Err(Error::InfeasibleParameters(format!(
            "K({n1}, {n2}, {m}, 2) is empty: need 2 max(n1, n2) <= m <= n1 n2"
        )));
    }
    let tp_for = |count: usize| -> Result<Option<TruncatedPoisson>> {
        if m == 2 * count {
            Ok(None)
        } else {
            Ok(Some(TruncatedPoisson::new(
                truncated_poisson_from_mean(m as f64 / count as f64)?.lambda,
            )))
        }
    };
    let tp1 = tp_for(n1)?;
    let tp2 = tp_for(n2)?;
    let mut rng = rng_from(seed);
    'attempt: for _ in 0..cap {
        let Some(d1) = draw_min2_degrees(n1, m, tp1.as_ref(), &mut rng) else {
            continue;
        };
        let Some(d2) = draw_min2_degrees(n2, m, tp2.as_ref(), &mut rng) else {
            continue;
        };
        // uniform pairing of left stubs with right stubs
        let mut right_stubs: Vec<usize> = Vec::with_capacity(m);
        for (w, &dw) in d2.iter().enumerate() {
            right_stubs.extend(std::iter::repeat(w).take(dw));
        }
        right_stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(m);
        let mut pos = 0;
        for (u, &du) in d1.iter().enumerate() {
            for _ in 0..du {
                edges.push((u, right_stubs[pos]));
                pos += 1;
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt; // parallel edge: redraw degrees and pairing
        }
        let b = BipartiteGraph::new(n1, n2, &edges)?;
        debug_assert_eq!(b.num_edges(), m);
        return Ok(b);
    }
    Err(Error::RejectionCapExceeded(cap))
}

/// Configuration model: uniform pairing of the degree stubs, contracted to a
/// multigraph (loops contribute 2 to the degree).
pub fn sample_configuration(d: &[usize], seed: u64) -> Result<MultiGraph> {
    if d.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::OddDegreeSum);
    }
    let mut rng = rng_from(seed);
    let edges = pair_stubs(d, &mut rng);
    MultiGraph::new(d.len(), edges)
}

/// Uniform simple graph with degree sequence d, by repeated configuration
/// draws conditioned on simplicity.
pub fn sample_with_degree_sequence(d: &[usize], seed: u64) -> Result<Graph> {
    sample_with_degree_sequence_cap(d, seed, DEFAULT_REJECTION_CAP)
}

pub fn sample_with_degree_sequence_cap(d: &[usize], seed: u64, cap: u64) -> Result<Graph> {
    if d.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::OddDegreeSum);
    }
    let mut rng = rng_from(seed);
    for _ in 0..cap {
        let edges = pair_stubs(d, &mut rng);
        if let Some(g) = MultiGraph::new(d.len(), edges)?.to_simple() {
            debug_assert_eq!(&g.degrees(), d);
            return Ok(g);
        }
    }
    Err(Error::RejectionCapExceeded(cap))
}

/// Uniform simple bipartite graph with side degree sequences (d1, d2).
pub fn sample_bipartite_with_degree_sequence(
    d1: &[usize],
    d2: &[usize],
    seed: u64,
) -> Result<BipartiteGraph> {
    sample_bipartite_with_degree_sequence_cap(d1, d2, seed, DEFAULT_REJECTION_CAP)
}

pub fn sample_bipartite_with_degree_sequence_cap(
    d1: &[usize],
    d2: &[usize],
    seed: u64,
    cap: u64,
) -> Result<BipartiteGraph> {
    let m: usize = d1.iter().sum();
    if d2.iter().sum::<usize>() != m {
        return Err(Error::InfeasibleParameters(
            "side degree sums differ".to_string(),
        ));
    }
    let mut rng = rng_from(seed);
    'attempt: for _ in 0..cap {
        let mut right_stubs: Vec<usize> = Vec::with_capacity(m);
        for (w, &dw) in d2.iter().enumerate() {
            right_stubs.extend(std::iter::repeat(w).take(dw));
        }
        right_stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(m);
        let mut pos = 0;
        for (u, &du) in d1.iter().enumerate() {
            for _ in 0..du {
                edges.push((u, right_stubs[pos]));
                pos += 1;
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt;
        }
        return BipartiteGraph::new(d1.len(), d2.len(), &edges);
    }
    Err(Error::RejectionCapExceeded(cap))
}
