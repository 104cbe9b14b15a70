//! Combinatorial rank formulas assembled from peeling and cycles:
//! corank A(G) = i(G) + s(core_KS(G)),
//! corank B(G) = max(i1 + s1(core), i2 + s2(core)),
//! nu(G) = floor((n - i(G) - q(core_KS(G))) / 2),
//! and the Karp-Sipser-bound defect measured against the exact rank oracle.

use serde::Serialize;

use crate::cycles::{enumerate_special_cycles, enumerate_special_cycles_bipartite, isolated_cycle_census, DEFAULT_MAX_CYCLE_LEN};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};
use crate::linalg::{rank_adjacency, rank_biadjacency, RankMethod};
use crate::peeling::{karp_sipser, karp_sipser_bipartite, OrderPolicy};

/// A combinatorial prediction with its ingredients. Graph-valued inputs fill
/// (i, s, q); bipartite inputs fill (i1, i2, s1, s2).
#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub predicted: usize,
    pub i: Option<usize>,
    pub i1: Option<usize>,
    pub i2: Option<usize>,
    pub s: Option<usize>,
    pub s1: Option<usize>,
    pub s2: Option<usize>,
    pub q: Option<usize>,
    /// The cycle search hit its length cap; `predicted` is then only a lower
    /// bound.
    pub truncated: bool,
    /// exact corank minus the Karp-Sipser bound term, when attached.
    pub defect: Option<i64>,
}

impl Prediction {
    fn empty(predicted: usize) -> Self {
        Prediction {
            predicted,
            i: None,
            i1: None,
            i2: None,
            s: None,
            s1: None,
            s2: None,
            q: None,
            truncated: false,
            defect: None,
        }
    }
}

/// Predicted corank of A(G): i(G) + s(core_KS(G)).
pub fn predict_corank_adjacency(g: &Graph) -> Prediction {
    let ks = karp_sipser(g, OrderPolicy::LowestIndex, false);
    let report = enumerate_special_cycles(&ks.core, DEFAULT_MAX_CYCLE_LEN);
    let mut p = Prediction::empty(ks.i + report.s);
    p.i = Some(ks.i);
    p.s = Some(report.s);
    p.truncated = report.truncated;
    p
}

/// Predicted corank of B(G): max(i1 + s1(core), i2 + s2(core)).
pub fn predict_corank_biadjacency(b: &BipartiteGraph) -> Prediction {
    let ks = karp_sipser_bipartite(b, OrderPolicy::LowestIndex, false);
    let report = enumerate_special_cycles_bipartite(&ks.core, DEFAULT_MAX_CYCLE_LEN);
    let mut p = Prediction::empty((ks.i1 + report.s1).max(ks.i2 + report.s2));
    p.i1 = Some(ks.i1);
    p.i2 = Some(ks.i2);
    p.s1 = Some(report.s1);
    p.s2 = Some(report.s2);
    p.truncated = report.truncated;
    p
}

/// Predicted matching number: floor((n - i(G) - q(core_KS(G))) / 2).
pub fn predict_matching_number(g: &Graph) -> Prediction {
    let ks = karp_sipser(g, OrderPolicy::LowestIndex, false);
    let census = isolated_cycle_census(&ks.core);
    let mut p = Prediction::empty((g.num_vertices() - ks.i - census.q) / 2);
    p.i = Some(ks.i);
    p.q = Some(census.q);
    p
}

/// corank A(G) - i(G): the excess of the exact corank over the Karp-Sipser
/// bound, whose limit law is Y + 2Y-dagger. Nonnegative on every graph.
pub fn ks_bound_defect(g: &Graph) -> Result<i64> {
    let ks = karp_sipser(g, OrderPolicy::LowestIndex, false);
    let rank = rank_adjacency(g, RankMethod::Modular)?;
    Ok(rank.corank as i64 - ks.i as i64)
}

/// Bipartite defect corank B(G) - max(i1, i2) with the balanced corank
/// convention corank = n - rank; requires n1 = n2.
pub fn ks_bound_defect_bipartite(b: &BipartiteGraph) -> Result<i64> {
    if b.n1() != b.n2() {
        return Err(Error::InfeasibleParameters(
            "bipartite defect requires a balanced graph (n1 = n2)".to_string(),
        ));
    }
    let ks = karp_sipser_bipartite(b, OrderPolicy::LowestIndex, false);
    let rank = rank_biadjacency(b, RankMethod::Modular)?;
    Ok((b.n1() - rank.rank) as i64 - ks.i1.max(ks.i2) as i64)
}

/// Attach the exact (modular) corank: sets `defect` = exact corank - i(G).
pub fn predict_corank_adjacency_with_exact(g: &Graph) -> Result<(Prediction, usize)> {
    let mut p = predict_corank_adjacency(g);
    let rank = rank_adjacency(g, RankMethod::Modular)?;
    p.defect = Some(rank.corank as i64 - p.i.unwrap() as i64);
    Ok((p, rank.corank))
}

/// Attach the exact (modular) corank with the balanced bipartite convention
/// corank = n1 - rank: sets `defect` = corank - max(i1, i2).
pub fn predict_corank_biadjacency_with_exact(
    b: &BipartiteGraph,
) -> Result<(Prediction, usize)> {
    let mut p = predict_corank_biadjacency(b);
    let rank = rank_biadjacency(b, RankMethod::Modular)?;
    let corank = b.n1().max(b.n2()) - rank.rank;
    p.defect = Some(corank as i64 - p.i1.unwrap().max(p.i2.unwrap()) as i64);
    Ok((p, corank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn exact_corank(g: &Graph) -> usize {
        rank_adjacency(g, RankMethod::Exact).unwrap().corank
    }

    #[test]
    fn adjacency_examples() {
        let p3 = path(3);
        let pred = predict_corank_adjacency(&p3);
        assert_eq!((pred.i, pred.s), (Some(1), Some(0)));
        assert_eq!(pred.predicted, 1);
        assert_eq!(exact_corank(&p3), 1);

        let c4 = cycle(4);
        let pred = predict_corank_adjacency(&c4);
        assert_eq!(pred.predicted, 2);
        assert_eq!(exact_corank(&c4), 2);

        let k4 = complete(4);
        assert_eq!(predict_corank_adjacency(&k4).predicted, 0);
        assert_eq!(exact_corank(&k4), 0);
    }

    #[test]
    fn biadjacency_examples() {
        let c4 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let pred = predict_corank_biadjacency(&c4);
        assert_eq!(pred.predicted, 1);
        let rank = rank_biadjacency(&c4, RankMethod::Exact).unwrap();
        assert_eq!(rank.rank, 1);

        // path a-b-c-d, parts {a, c}, {b, d}
        let p4 = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        let pred = predict_corank_biadjacency(&p4);
        assert_eq!(pred.predicted, 0);
        assert_eq!(rank_biadjacency(&p4, RankMethod::Exact).unwrap().rank, 2);

        // K22 plus an isolated V1 vertex: B is 3x2 with a zero row
        let k22_pad =
            BipartiteGraph::new(3, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let pred = predict_corank_biadjacency(&k22_pad);
        assert_eq!((pred.i1, pred.i2), (Some(1), Some(0)));
        assert_eq!((pred.s1, pred.s2), (Some(1), Some(1)));
        assert_eq!(pred.predicted, 2);
        let rank = rank_biadjacency(&k22_pad, RankMethod::Exact).unwrap();
        assert_eq!(3 - rank.rank, 2);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(predict_matching_number(&cycle(3)).predicted, 1);
        assert_eq!(predict_matching_number(&path(3)).predicted, 1);
        assert_eq!(predict_matching_number(&cycle(4)).predicted, 2);
    }

    #[test]
    fn defects() {
        assert_eq!(ks_bound_defect(&cycle(4)).unwrap(), 2);
        assert_eq!(ks_bound_defect(&complete(4)).unwrap(), 0);
        // random forests: corank equals i, so defect 0
        let mut x = 77u64;
        for _ in 0..50 {
            let n = 12;
            // random tree via a uniform attachment of each vertex to an
            // earlier one, then a few random edge deletions to make a forest
            let mut edges = Vec::new();
            for v in 1..n {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(11);
                let u = (x >> 33) as usize % v;
                edges.push((u, v));
            }
            x = x.wrapping_mul(6364136223846793005).wrapping_add(11);
            edges.truncate(edges.len() - (x >> 60) as usize % 4);
            let g = Graph::new(n, &edges).unwrap();
            assert_eq!(ks_bound_defect(&g).unwrap(), 0, "edges {edges:?}");
        }
    }

    #[test]
    fn with_exact_attaches_defect() {
        let (pred, corank) = predict_corank_adjacency_with_exact(&cycle(4)).unwrap();
        assert_eq!(corank, 2);
        assert_eq!(pred.defect, Some(2));

        let c4 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let (pred, corank) = predict_corank_biadjacency_with_exact(&c4).unwrap();
        assert_eq!(corank, 1);
        assert_eq!(pred.defect, Some(1));
    }

    #[test]
    fn bipartite_defect_requires_balance() {
        let b = BipartiteGraph::new(3, 2, &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            ks_bound_defect_bipartite(&b),
            Err(Error::InfeasibleParameters(_))
        ));
    }

    #[test]
    fn prediction_matches_exact_on_min2_samples() {
        // min degree >= 2 is a leaf-removal fixed point: i = 0, core = G
        for seed in 0..10 {
            let g = crate::generators::sample_min2(20, 26, seed).unwrap();
            let pred = predict_corank_adjacency(&g);
            assert_eq!(pred.i, Some(0));
        }
    }
}
