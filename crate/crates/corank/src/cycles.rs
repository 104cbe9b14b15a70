//! Special cycles: enumeration, the isolated-cycle census, and the explicit
//! alternating +-1 kernel vectors they induce.
//!
//! A special cycle is an induced cycle whose length is divisible by 4 and in
//! which every second vertex has degree 2 in the host graph. An isolated
//! cycle of length divisible by 4 is special "in two ways" and contributes 2
//! to s(G). In the bipartite case the degree-2 condition applies to all of
//! V1 (1-special) or all of V2 (2-special).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

pub const DEFAULT_MAX_CYCLE_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    Special,
    OneSpecial,
    TwoSpecial,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialCycle {
    /// Vertices in cyclic order; the degree-2 (constrained) vertices sit at
    /// odd 0-based positions 1, 3, 5, ...
    pub vertices: Vec<usize>,
    pub length: usize,
    pub kind: CycleKind,
    pub isolated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialCycleReport {
    pub cycles: Vec<SpecialCycle>,
    /// Graph count: non-isolated special cycles once, isolated ones twice.
    pub s: usize,
    pub s1: usize,
    pub s2: usize,
    /// Set when some search path hit the length cap; counts are then only
    /// lower bounds.
    pub truncated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleCensus {
    /// length -> number of isolated cycles of that length.
    pub counts: BTreeMap<usize, usize>,
    /// Number of isolated odd cycles.
    pub q: usize,
}

/// The search walks paths of the forced shape
/// `x - u - y - w1 - z1 - ...` where u, w1, ... (odd positions) must have
/// degree 2 so each of their steps is forced, and even positions are free.
/// A cycle closes when a forced step returns to x.
struct Search<'a> {
    g: &'a Graph,
    max_len: usize,
    seen: HashSet<Vec<usize>>,
    found: Vec<Vec<usize>>,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, max_len: usize) -> Self {
        Search { g, max_len, seen: HashSet::new(), found: Vec::new(), truncated: false }
    }

    fn run(&mut self, starts: impl Iterator<Item = usize>) {
        for u in starts {
            if self.g.degree(u) != 2 {
                continue;
            }
            let (x, y) = (self.g.neighbors(u)[0], self.g.neighbors(u)[1]);
            let mut on_path = vec![false; self.g.num_vertices()];
            on_path[x] = true;
            on_path[u] = true;
            on_path[y] = true;
            let mut path = vec![x, u, y];
            self.extend(&mut path, &mut on_path);
        }
    }

    /// `path` ends at a free-position vertex; try every unused degree-2
    /// neighbour, each of which forces one further step.
    fn extend(&mut self, path: &mut Vec<usize>, on_path: &mut [bool]) {
        let end = *path.last().unwrap();
        let anchor = path[0];
        for &w in self.g.neighbors(end) {
            if on_path[w] || self.g.degree(w) != 2 {
                continue;
            }
            let z = {
                let nb = self.g.neighbors(w);
                if nb[0] == end {
                    nb[1]
                } else {
                    nb[0]
                }
            };
            if z == anchor {
                path.push(w);
                self.close(path);
                path.pop();
            } else if !on_path[z] {
                if path.len() + 2 > self.max_len {
                    self.truncated = true;
                    continue;
                }
                path.push(w);
                path.push(z);
                on_path[w] = true;
                on_path[z] = true;
                self.extend(path, on_path);
                on_path[w] = false;
                on_path[z] = false;
                path.pop();
                path.pop();
            }
        }
    }

    fn close(&mut self, path: &[usize]) {
        let len = path.len();
        if len % 4 != 0 {
            return;
        }
        // induced-ness: the only edges among cycle vertices are cycle edges
        for i in 0..len {
            for j in (i + 1)..len {
                let adjacent_on_cycle = j == i + 1 || (i == 0 && j == len - 1);
                if self.g.has_edge(path[i], path[j]) != adjacent_on_cycle {
                    return;
                }
            }
        }
        let mut key = path.to_vec();
        key.sort_unstable();
        if self.seen.insert(key) {
            self.found.push(path.to_vec());
        }
    }
}

/// All special cycles of a graph, up to the length cap.
pub fn enumerate_special_cycles(g: &Graph, max_len: usize) -> SpecialCycleReport {
    assert!(max_len >= 4);
    let mut search = Search::new(g, max_len.min(g.num_vertices().max(4)));
    search.run(0..g.num_vertices());
    let mut cycles = Vec::new();
    let mut s = 0;
    for path in std::mem::take(&mut search.found) {
        let isolated = path.iter().all(|&v| g.degree(v) == 2);
        s += if isolated { 2 } else { 1 };
        cycles.push(SpecialCycle {
            length: path.len(),
            vertices: path,
            kind: CycleKind::Special,
            isolated,
        });
    }
    SpecialCycleReport { cycles, s, s1: 0, s2: 0, truncated: search.truncated }
}

/// Bipartite variant: cycles alternate sides, so the constrained (degree-2)
/// positions of a search started on V1 are exactly the V1 vertices.
pub fn enumerate_special_cycles_bipartite(
    b: &BipartiteGraph,
    max_len: usize,
) -> SpecialCycleReport {
    assert!(max_len >= 4);
    let g = b.to_graph();
    let n1 = b.n1();
    let cap = max_len.min(g.num_vertices().max(4));
    let mut cycles = Vec::new();
    let mut truncated = false;
    let (mut s1, mut s2) = (0, 0);
    for (side, kind) in [(0usize, CycleKind::OneSpecial), (1, CycleKind::TwoSpecial)] {
        let mut search = Search::new(&g, cap);
        match side {
            0 => search.run(0..n1),
            _ => search.run(n1..g.num_vertices()),
        }
        truncated |= search.truncated;
        for path in std::mem::take(&mut search.found) {
            let isolated = path.iter().all(|&v| g.degree(v) == 2);
            match side {
                0 => s1 += 1,
                _ => s2 += 1,
            }
            cycles.push(SpecialCycle {
                length: path.len(),
                vertices: path,
                kind,
                isolated,
            });
        }
    }
    SpecialCycleReport { cycles, s: 0, s1, s2, truncated }
}

fn verify_special(g: &Graph, cycle: &[usize]) -> Result<()> {
    let len = cycle.len();
    if len < 4 || len % 4 != 0 {
        return Err(Error::NotASpecialCycle);
    }
    for (i, &v) in cycle.iter().enumerate() {
        if v >= g.num_vertices() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.num_vertices() });
        }
        if i % 2 == 1 && g.degree(v) != 2 {
            return Err(Error::NotASpecialCycle);
        }
    }
    for i in 0..len {
        for j in (i + 1)..len {
            let adjacent_on_cycle = j == i + 1 || (i == 0 && j == len - 1);
            if g.has_edge(cycle[i], cycle[j]) != adjacent_on_cycle {
                return Err(Error::NotASpecialCycle);
            }
        }
    }
    Ok(())
}

/// The alternating +-1 kernel vector of A(G) supported on the degree-2
/// vertices of a special cycle: +1 on u2, u6, ..., -1 on u4, u8, ...
/// (with the convention that the degree-2 vertices sit at odd 0-based
/// positions, as in the reports).
pub fn special_kernel_vector(g: &Graph, cycle: &[usize]) -> Result<Vec<i64>> {
    verify_special(g, cycle)?;
    let mut v = vec![0i64; g.num_vertices()];
    for (i, &u) in cycle.iter().enumerate() {
        if i % 2 == 1 {
            v[u] = if (i / 2) % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(v)
}

/// Kernel vector of the biadjacency matrix B(G) for a 1- or 2-special cycle:
/// a left kernel vector (indexed by V1) when the degree-2 positions lie in
/// V1, else a right kernel vector (indexed by V2). Cycle vertices use the
/// combined labeling (V2 shifted by n1), as in the bipartite reports.
pub fn special_kernel_vector_bipartite(
    b: &BipartiteGraph,
    cycle: &[usize],
) -> Result<(CycleKind, Vec<i64>)> {
    let g = b.to_graph();
    verify_special(&g, cycle)?;
    let n1 = b.n1();
    let constrained_left = cycle[1] < n1;
    if !cycle
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 1)
        .all(|(_, &v)| (v < n1) == constrained_left)
    {
        return Err(Error::NotASpecialCycle);
    }
    let mut v = vec![0i64; if constrained_left { n1 } else { b.n2() }];
    for (i, &u) in cycle.iter().enumerate() {
        if i % 2 == 1 {
            let idx = if constrained_left { u } else { u - n1 };
            v[idx] = if (i / 2) % 2 == 0 { 1 } else { -1 };
        }
    }
    let kind = if constrained_left { CycleKind::OneSpecial } else { CycleKind::TwoSpecial };
    Ok((kind, v))
}

/// Census of connected components that are cycles, bucketed by length.
pub fn isolated_cycle_census(g: &Graph) -> CycleCensus {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for comp in g.connected_components() {
        let len = comp.len();
        if len >= 3 && comp.iter().all(|&v| g.degree(v) == 2) {
            // connected and 2-regular means a single cycle
            *counts.entry(len).or_insert(0) += 1;
        }
    }
    let q = counts.iter().filter(|(&l, _)| l % 2 == 1).map(|(_, &c)| c).sum();
    CycleCensus { counts, q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, Graph};
    use crate::linalg::adjacency_matrix;
    use crate::oracle::special_cycle_count_brute;

    fn s_of(g: &Graph) -> usize {
        enumerate_special_cycles(g, DEFAULT_MAX_CYCLE_LEN).s
    }

    #[test]
    fn isolated_c8_counts_twice() {
        let report = enumerate_special_cycles(&cycle(8), DEFAULT_MAX_CYCLE_LEN);
        assert_eq!(report.cycles.len(), 1);
        assert!(report.cycles[0].isolated);
        assert_eq!(report.s, 2);
        assert!(!report.truncated);
    }

    #[test]
    fn pendant_c4_counts_once() {
        // 4-cycle whose opposite vertices 1, 3 have degree 2, with pendants on 0, 2
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]).unwrap();
        let report = enumerate_special_cycles(&g, DEFAULT_MAX_CYCLE_LEN);
        assert_eq!(report.s, 1);
        assert!(!report.cycles[0].isolated);
    }

    #[test]
    fn non_special_cases() {
        assert_eq!(s_of(&cycle(6)), 0); // 6 not divisible by 4
        let chord = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(s_of(&chord), 0); // not induced
        assert_eq!(s_of(&path(5)), 0);
        assert_eq!(s_of(&complete(4)), 0);
    }

    #[test]
    fn bipartite_c4() {
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let report = enumerate_special_cycles_bipartite(&b, DEFAULT_MAX_CYCLE_LEN);
        assert_eq!((report.s1, report.s2), (1, 1));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        for g in [
            cycle(4),
            cycle(8),
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]).unwrap(),
        ] {
            let report = enumerate_special_cycles(&g, DEFAULT_MAX_CYCLE_LEN);
            assert!(!report.cycles.is_empty());
            let a = adjacency_matrix(&g);
            for c in &report.cycles {
                let v = special_kernel_vector(&g, &c.vertices).unwrap();
                // support is exactly the degree-2 cycle positions
                assert_eq!(
                    v.iter().filter(|&&x| x != 0).count(),
                    c.length / 2
                );
                for row in &a {
                    let dot: i64 = row.iter().zip(&v).map(|(&m, &x)| m as i64 * x).sum();
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn kernel_vector_rejects_c6() {
        let g = cycle(6);
        let cyc: Vec<usize> = (0..6).collect();
        assert_eq!(special_kernel_vector(&g, &cyc), Err(Error::NotASpecialCycle));
    }

    #[test]
    fn bipartite_kernel_vector() {
        let b = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let report = enumerate_special_cycles_bipartite(&b, DEFAULT_MAX_CYCLE_LEN);
        let m = crate::linalg::biadjacency_matrix(&b);
        for c in &report.cycles {
            let (kind, v) = special_kernel_vector_bipartite(&b, &c.vertices).unwrap();
            assert_eq!(kind, c.kind);
            match kind {
                CycleKind::OneSpecial => {
                    // left kernel: v^T B = 0
                    for col in 0..b.n2() {
                        let dot: i64 =
                            (0..b.n1()).map(|r| m[r][col] as i64 * v[r]).sum();
                        assert_eq!(dot, 0);
                    }
                }
                _ => {
                    for row in 0..b.n1() {
                        let dot: i64 =
                            (0..b.n2()).map(|c2| m[row][c2] as i64 * v[c2]).sum();
                        assert_eq!(dot, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn census_examples() {
        let mut edges = vec![(0, 1), (1, 2), (2, 0)];
        edges.extend([(3, 4), (4, 5), (5, 6), (6, 3)]);
        let g = Graph::new(7, &edges).unwrap();
        let census = isolated_cycle_census(&g);
        assert_eq!(census.counts.get(&3), Some(&1));
        assert_eq!(census.counts.get(&4), Some(&1));
        assert_eq!(census.q, 1);

        assert_eq!(isolated_cycle_census(&path(5)).q, 0);

        let two_c5 = Graph::new(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5)],
        )
        .unwrap();
        let census = isolated_cycle_census(&two_c5);
        assert_eq!(census.counts.get(&5), Some(&2));
        assert_eq!(census.q, 2);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut x = 41u64;
        for trial in 0..500 {
            let n = 4 + (trial % 5) as usize;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(5);
                    if (x >> 40) % 10 < 4 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            assert_eq!(s_of(&g), special_cycle_count_brute(&g), "edges: {edges:?}");
        }
    }

    #[test]
    fn truncation_flag() {
        let report = enumerate_special_cycles(&cycle(8), 4);
        assert_eq!(report.s, 0);
        assert!(report.truncated);
    }
}
