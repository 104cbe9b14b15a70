//! Exact rank oracle for adjacency/biadjacency matrices, maximum matching,
//! and the permutation-submatrix parameter sigma.

mod exact;
mod matching;
mod modular;

pub use exact::{det_exact, rank_exact};
pub use matching::{blossom_max_matching, hopcroft_karp};
pub use modular::{is_prime, rank_mod_prime};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{BipartiteGraph, Graph};

/// The three largest primes below 2^62, fixed at build time. A nonzero minor
/// of an n x n 0/1 matrix is an integer of absolute value at most n^{n/2},
/// so it vanishes mod all three only if their ~2^186 product divides it.
pub const PRODUCTION_PRIMES: [u64; 3] =
    [4611686018427387847, 4611686018427387817, 4611686018427387787];

/// Matrices above this size are rejected by the exact method.
pub const EXACT_SIZE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Modular,
    Exact,
}

/// Rank/corank with method provenance.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// min(rows, cols) - rank; for a square adjacency matrix this is the
    /// kernel dimension.
    pub corank: usize,
    pub method: RankMethod,
    pub primes: Vec<u64>,
    pub per_prime_ranks: Vec<usize>,
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<u8>> {
    let n = g.num_vertices();
    let mut m = vec![vec![0u8; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] = 1;
        m[v][u] = 1;
    }
    m
}

pub fn biadjacency_matrix(b: &BipartiteGraph) -> Vec<Vec<u8>> {
    let mut m = vec![vec![0u8; b.n2()]; b.n1()];
    for &(u, w) in b.edges() {
        m[u][w] = 1;
    }
    m
}

fn rank_matrix(matrix: &[Vec<u8>], method: RankMethod) -> Result<RankReport> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    match method {
        RankMethod::Modular => {
            let per_prime = exec::map_indexed(PRODUCTION_PRIMES.len(), |i| {
                rank_mod_prime(matrix, PRODUCTION_PRIMES[i]).expect("fixed primes are prime")
            });
            let rank = per_prime.iter().copied().max().unwrap_or(0);
            Ok(RankReport {
                rows,
                cols,
                rank,
                corank: rows.min(cols) - rank,
                method,
                primes: PRODUCTION_PRIMES.to_vec(),
                per_prime_ranks: per_prime,
            })
        }
        RankMethod::Exact => {
            let dim = rows.max(cols);
            if dim > EXACT_SIZE_CAP {
                return Err(Error::ExactSizeExceeded { dim, cap: EXACT_SIZE_CAP });
            }
            let rank = rank_exact(matrix);
            Ok(RankReport {
                rows,
                cols,
                rank,
                corank: rows.min(cols) - rank,
                method,
                primes: Vec::new(),
                per_prime_ranks: Vec::new(),
            })
        }
    }
}

/// Rank of the symmetric adjacency matrix A(G).
pub fn rank_adjacency(g: &Graph, method: RankMethod) -> Result<RankReport> {
    rank_matrix(&adjacency_matrix(g), method)
}

/// Rank of the n1 x n2 biadjacency matrix B(G).
pub fn rank_biadjacency(b: &BipartiteGraph, method: RankMethod) -> Result<RankReport> {
    rank_matrix(&biadjacency_matrix(b), method)
}

/// Matching number of a general graph.
pub fn max_matching(g: &Graph) -> usize {
    blossom_max_matching(g)
}

/// Matching number of a bipartite graph.
pub fn max_matching_bipartite(b: &BipartiteGraph) -> usize {
    hopcroft_karp(b)
}

/// sigma(G): the maximum number of vertices in a union of vertex-disjoint
/// cycles and edges, i.e. the largest permutation submatrix of A(G). Computed
/// as the maximum matching of the rows-by-columns double cover; the zero
/// diagonal of A(G) forbids fixed points, so cycles of the selected
/// permutation have length >= 2 (2-cycles are edges, longer cycles are graph
/// cycles).
pub fn sigma(g: &Graph) -> usize {
    hopcroft_karp(&g.bipartite_double())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, Graph};

    #[test]
    fn rank_of_cycles() {
        // C4: rank l - 2 when l is divisible by 4
        let r = rank_adjacency(&cycle(4), RankMethod::Exact).unwrap();
        assert_eq!((r.rank, r.corank), (2, 2));
        // C6: all eigenvalues 2cos(2 pi k / 6) nonzero
        let r = rank_adjacency(&cycle(6), RankMethod::Exact).unwrap();
        assert_eq!(r.rank, 6);
        let r = rank_adjacency(&cycle(8), RankMethod::Exact).unwrap();
        assert_eq!(r.rank, 6);
    }

    #[test]
    fn rank_of_star() {
        let k13 = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = rank_adjacency(&k13, RankMethod::Exact).unwrap();
        assert_eq!((r.rank, r.corank), (2, 2));
    }

    #[test]
    fn modular_equals_exact_small() {
        for g in [cycle(4), cycle(6), complete(4), path(5), Graph::empty(3)] {
            let exact = rank_adjacency(&g, RankMethod::Exact).unwrap();
            let modular = rank_adjacency(&g, RankMethod::Modular).unwrap();
            assert_eq!(modular.rank, exact.rank);
            assert_eq!(modular.per_prime_ranks.len(), 3);
        }
    }

    #[test]
    fn biadjacency_ranks() {
        // C4 as bipartite: B is the all-ones 2x2 matrix
        let c4 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let r = rank_biadjacency(&c4, RankMethod::Exact).unwrap();
        assert_eq!((r.rank, r.corank), (1, 1));

        // C6 as bipartite: rank 3, and rank A(C6) = 6 = 2 * 3
        let c6 = BipartiteGraph::new(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
            .unwrap();
        let rb = rank_biadjacency(&c6, RankMethod::Exact).unwrap();
        assert_eq!(rb.rank, 3);
        let ra = rank_adjacency(&c6.to_graph(), RankMethod::Exact).unwrap();
        assert_eq!(ra.rank, 2 * rb.rank);

        let empty = BipartiteGraph::new(2, 3, &[]).unwrap();
        assert_eq!(rank_biadjacency(&empty, RankMethod::Exact).unwrap().rank, 0);
    }

    #[test]
    fn exact_cap_enforced() {
        let g = Graph::empty(65);
        assert!(matches!(
            rank_adjacency(&g, RankMethod::Exact),
            Err(Error::ExactSizeExceeded { dim: 65, cap: 64 })
        ));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&cycle(3)), 3);
        assert_eq!(sigma(&path(3)), 2);
        assert_eq!(sigma(&Graph::new(2, &[(0, 1)]).unwrap()), 2);
    }

    #[test]
    fn sigma_matches_brute_force() {
        use crate::oracle::sigma_brute;
        let mut x = 11u64;
        for trial in 0..200 {
            let n = 3 + (trial % 8) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(7);
                    if (x >> 40) % 10 < 4 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            assert_eq!(sigma(&g), sigma_brute(&g), "edges: {edges:?}");
        }
    }

    #[test]
    fn ks_bound_chain_small_random() {
        // max(rank A, 2 nu) <= sigma on every instance
        let mut x = 5u64;
        for _ in 0..100 {
            let n = 8;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(13);
                    if (x >> 40) % 10 < 3 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let rank = rank_adjacency(&g, RankMethod::Exact).unwrap().rank;
            let nu = max_matching(&g);
            let s = sigma(&g);
            assert!(rank.max(2 * nu) <= s);
        }
    }
}
