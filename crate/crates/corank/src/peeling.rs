//! Karp-Sipser leaf removal and generic k-core peeling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{BipartiteGraph, Graph};

/// Which degree-1 vertex is removed next. The resulting core vertex set and
/// isolated counts are order-independent; the trace is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPolicy {
    LowestIndex,
    Randomized(u64),
}

/// Result of leaf removal on a general graph.
#[derive(Debug, Clone)]
pub struct KsResult {
    /// Karp-Sipser core, relabeled densely.
    pub core: Graph,
    /// Old label of each core vertex (new index -> old label), ascending.
    pub core_vertices: Vec<usize>,
    /// Isolated vertices left behind by the process.
    pub i: usize,
    /// Number of leaf-removal steps (each removes a leaf and its neighbour).
    pub steps: usize,
    /// Removed (leaf, neighbour) pairs in removal order, if requested.
    pub trace: Option<Vec<(usize, usize)>>,
}

/// Result of leaf removal on a bipartite graph.
#[derive(Debug, Clone)]
pub struct KsBipartiteResult {
    pub core: BipartiteGraph,
    /// Old V1 labels (part-local) of core left vertices, ascending.
    pub core_left: Vec<usize>,
    /// Old V2 labels (part-local) of core right vertices, ascending.
    pub core_right: Vec<usize>,
    pub i1: usize,
    pub i2: usize,
    pub steps: usize,
    /// (leaf, neighbour) in combined labels (V2 shifted by n1).
    pub trace: Option<Vec<(usize, usize)>>,
}

struct Peeler {
    deg: Vec<usize>,
    removed: Vec<bool>,
    steps: usize,
    trace: Vec<(usize, usize)>,
}

impl Peeler {
    fn run(g: &Graph, policy: OrderPolicy, with_trace: bool) -> Self {
        let n = g.num_vertices();
        let mut p = Peeler {
            deg: g.degrees(),
            removed: vec![false; n],
            steps: 0,
            trace: Vec::new(),
        };
        // Worklist of leaf candidates; entries are validated lazily against
        // the current degrees, so stale entries are just skipped.
        enum Work {
            Heap(std::collections::BinaryHeap<std::cmp::Reverse<usize>>),
            Rand(Vec<usize>, ChaCha12Rng),
        }
        impl Work {
            fn push(&mut self, v: usize) {
                match self {
                    Work::Heap(h) => h.push(std::cmp::Reverse(v)),
                    Work::Rand(vec, _) => vec.push(v),
                }
            }
            fn pop(&mut self) -> Option<usize> {
                match self {
                    Work::Heap(h) => h.pop().map(|r| r.0),
                    Work::Rand(vec, rng) => {
                        if vec.is_empty() {
                            None
                        } else {
                            let idx = rng.gen_range(0..vec.len());
                            Some(vec.swap_remove(idx))
                        }
                    }
                }
            }
        }
        let mut work = match policy {
            OrderPolicy::LowestIndex => Work::Heap(Default::default()),
            OrderPolicy::Randomized(seed) => {
                Work::Rand(Vec::new(), ChaCha12Rng::seed_from_u64(seed))
            }
        };
        for v in (0..n).filter(|&v| p.deg[v] == 1) {
            work.push(v);
        }
        while let Some(v) = work.pop() {
            if p.removed[v] || p.deg[v] != 1 {
                continue;
            }
            let w = *g
                .neighbors(v)
                .iter()
                .find(|&&x| !p.removed[x])
                .expect("degree-1 vertex has a live neighbour");
            p.removed[v] = true;
            p.removed[w] = true;
            p.deg[v] = 0;
            for &x in g.neighbors(w) {
                if !p.removed[x] {
                    p.deg[x] -= 1;
                    if p.deg[x] == 1 {
                        work.push(x);
                    }
                }
            }
            p.deg[w] = 0;
            p.steps += 1;
            if with_trace {
                p.trace.push((v, w));
            }
        }
        p
    }
}

/// Karp-Sipser leaf removal: repeatedly delete a degree-1 vertex together
/// with its neighbour, then strip the remaining isolated vertices.
pub fn karp_sipser(g: &Graph, policy: OrderPolicy, with_trace: bool) -> KsResult {
    let p = Peeler::run(g, policy, with_trace);
    let n = g.num_vertices();
    let mut i = 0;
    let mut core_vertices = Vec::new();
    for v in 0..n {
        if p.removed[v] {
            continue;
        }
        if p.deg[v] == 0 {
            i += 1;
        } else {
            core_vertices.push(v);
        }
    }
    let (core, _) = g.induced_subgraph(&core_vertices).expect("core vertices valid");
    debug_assert!(core.degrees().iter().all(|&d| d >= 2));
    KsResult {
        core,
        core_vertices,
        i,
        steps: p.steps,
        trace: with_trace.then_some(p.trace),
    }
}

/// Bipartite variant with per-side isolated counts.
pub fn karp_sipser_bipartite(
    b: &BipartiteGraph,
    policy: OrderPolicy,
    with_trace: bool,
) -> KsBipartiteResult {
    let g = b.to_graph();
    let p = Peeler::run(&g, policy, with_trace);
    let n1 = b.n1();
    let (mut i1, mut i2) = (0, 0);
    let mut core_left = Vec::new();
    let mut core_right = Vec::new();
    for v in 0..g.num_vertices() {
        if p.removed[v] {
            continue;
        }
        if p.deg[v] == 0 {
            if v < n1 {
                i1 += 1;
            } else {
                i2 += 1;
            }
        } else if v < n1 {
            core_left.push(v);
        } else {
            core_right.push(v - n1);
        }
    }
    let mut left_map = vec![usize::MAX; b.n1()];
    for (new, &old) in core_left.iter().enumerate() {
        left_map[old] = new;
    }
    let mut right_map = vec![usize::MAX; b.n2()];
    for (new, &old) in core_right.iter().enumerate() {
        right_map[old] = new;
    }
    let edges: Vec<(usize, usize)> = b
        .edges()
        .iter()
        .filter(|&&(u, w)| left_map[u] != usize::MAX && right_map[w] != usize::MAX)
        .map(|&(u, w)| (left_map[u], right_map[w]))
        .collect();
    let core = BipartiteGraph::new(core_left.len(), core_right.len(), &edges)
        .expect("core edges valid");
    KsBipartiteResult {
        core,
        core_left,
        core_right,
        i1,
        i2,
        steps: p.steps,
        trace: with_trace.then_some(p.trace),
    }
}

/// Maximal induced subgraph with minimum degree >= k, with its old-label map.
pub fn k_core(g: &Graph, k: usize) -> (Graph, Vec<usize>) {
    let n = g.num_vertices();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < k).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] < k {
                    stack.push(w);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let (core, map) = g.induced_subgraph(&keep).expect("kept vertices valid");
    (core, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, Graph};

    fn ks(g: &Graph) -> KsResult {
        karp_sipser(g, OrderPolicy::LowestIndex, false)
    }

    #[test]
    fn single_edge() {
        let r = ks(&path(2));
        assert_eq!(r.core.num_vertices(), 0);
        assert_eq!((r.i, r.steps), (0, 1));
    }

    #[test]
    fn star_strands_two() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = ks(&g);
        assert_eq!(r.core.num_vertices(), 0);
        assert_eq!((r.i, r.steps), (2, 1));
    }

    #[test]
    fn cycles_are_fixed_points() {
        let r = ks(&cycle(4));
        assert_eq!(r.core, cycle(4));
        assert_eq!((r.i, r.steps), (0, 0));
    }

    #[test]
    fn bipartite_path() {
        // path a-b-c-d with parts {a, c}, {b, d}
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        let r = karp_sipser_bipartite(&b, OrderPolicy::LowestIndex, false);
        assert_eq!(r.core.n1() + r.core.n2(), 0);
        assert_eq!((r.i1, r.i2, r.steps), (0, 0, 2));
    }

    #[test]
    fn vertex_count_invariant() {
        let mut x = 17u64;
        for _ in 0..100 {
            let n = 20;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(3);
                    if (x >> 40) % 20 < 2 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let r = ks(&g);
            assert_eq!(n, r.core.num_vertices() + r.i + 2 * r.steps);
            assert!(r.core.degrees().iter().all(|&d| d >= 2));
        }
    }

    #[test]
    fn order_invariance_small() {
        let mut x = 29u64;
        for _ in 0..50 {
            let n = 15;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(3);
                    if (x >> 40) % 10 < 2 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let base = ks(&g);
            for seed in 0..4 {
                let r = karp_sipser(&g, OrderPolicy::Randomized(seed), false);
                assert_eq!(r.i, base.i);
                assert_eq!(r.core_vertices, base.core_vertices);
            }
        }
    }

    #[test]
    fn trace_only_when_requested() {
        let r = karp_sipser(&path(4), OrderPolicy::LowestIndex, true);
        assert_eq!(r.trace.as_ref().unwrap().len(), r.steps);
        assert!(ks(&path(4)).trace.is_none());
    }

    #[test]
    fn k_core_examples() {
        let (core, _) = k_core(&path(6), 2);
        assert_eq!(core.num_vertices(), 0);

        let (core, _) = k_core(&complete(4), 3);
        assert_eq!(core, complete(4));

        // C4 plus one pendant
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let (core, map) = k_core(&g, 2);
        assert_eq!(core, cycle(4));
        assert_eq!(map, vec![0, 1, 2, 3]);

        // idempotence
        let (core2, _) = k_core(&core, 2);
        assert_eq!(core2, core);
    }

    #[test]
    fn bipartite_vertex_count_invariant() {
        let mut x = 57u64;
        for _ in 0..50 {
            let (n1, n2) = (12, 10);
            let mut edges = Vec::new();
            for u in 0..n1 {
                for w in 0..n2 {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(3);
                    if (x >> 40) % 10 < 2 {
                        edges.push((u, w));
                    }
                }
            }
            let b = BipartiteGraph::new(n1, n2, &edges).unwrap();
            let r = karp_sipser_bipartite(&b, OrderPolicy::LowestIndex, false);
            assert_eq!(n1, r.core.n1() + r.i1 + r.steps);
            assert_eq!(n2, r.core.n2() + r.i2 + r.steps);
        }
    }
}
