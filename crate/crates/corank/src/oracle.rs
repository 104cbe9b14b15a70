//! Brute-force reference implementations, kept deliberately independent of
//! the production algorithms. Exponential; for graphs with at most ~12
//! vertices. Used by tests and the acceptance suite.

use std::collections::HashMap;

use crate::graph::{BipartiteGraph, Graph};

/// All simple cycles of `g`, each reported once, as a vertex sequence in
/// cyclic order starting at its smallest vertex.
pub fn enumerate_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    let mut used = vec![false; n];
    let mut path = Vec::new();

    fn dfs(
        g: &Graph,
        start: usize,
        v: usize,
        used: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &w in g.neighbors(v) {
            if w == start && path.len() >= 3 {
                // each cycle is seen in both directions; keep one
                if path[1] < *path.last().unwrap() {
                    out.push(path.clone());
                }
            } else if w > start && !used[w] {
                used[w] = true;
                path.push(w);
                dfs(g, start, w, used, path, out);
                path.pop();
                used[w] = false;
            }
        }
    }

    for start in 0..n {
        used[start] = true;
        path.push(start);
        dfs(g, start, start, &mut used, &mut path, &mut out);
        path.pop();
        used[start] = false;
    }
    out
}

fn is_induced_cycle(g: &Graph, cyc: &[usize]) -> bool {
    let len = cyc.len();
    for i in 0..len {
        for j in (i + 1)..len {
            let adjacent_on_cycle = j == i + 1 || (i == 0 && j == len - 1);
            if g.has_edge(cyc[i], cyc[j]) != adjacent_on_cycle {
                return false;
            }
        }
    }
    true
}

/// Number of special cycles s(G): induced cycles of length divisible by 4
/// where every second vertex has degree 2; isolated ones satisfy this for
/// both parities and are counted twice.
pub fn special_cycle_count_brute(g: &Graph) -> usize {
    let mut s = 0;
    for cyc in enumerate_cycles(g) {
        if cyc.len() % 4 != 0 || !is_induced_cycle(g, &cyc) {
            continue;
        }
        for parity in 0..2 {
            if cyc
                .iter()
                .enumerate()
                .filter(|(i, _)| i % 2 == parity)
                .all(|(_, &v)| g.degree(v) == 2)
            {
                s += 1;
            }
        }
    }
    s
}

/// Bipartite counts (s1, s2): 1-special cycles have every V1-vertex of
/// degree 2, and symmetrically for 2-special.
pub fn special_cycle_counts_bipartite_brute(b: &BipartiteGraph) -> (usize, usize) {
    let g = b.to_graph();
    let n1 = b.n1();
    let (mut s1, mut s2) = (0, 0);
    for cyc in enumerate_cycles(&g) {
        if cyc.len() % 4 != 0 || !is_induced_cycle(&g, &cyc) {
            continue;
        }
        if cyc.iter().filter(|&&v| v < n1).all(|&v| g.degree(v) == 2) {
            s1 += 1;
        }
        if cyc.iter().filter(|&&v| v >= n1).all(|&v| g.degree(v) == 2) {
            s2 += 1;
        }
    }
    (s1, s2)
}

/// Maximum matching by exhaustive search.
pub fn max_matching_brute(g: &Graph) -> usize {
    let n = g.num_vertices();
    assert!(n <= 24, "brute-force matching is exponential");
    fn go(g: &Graph, v: usize, matched: &mut Vec<bool>) -> usize {
        let n = g.num_vertices();
        let mut v = v;
        while v < n && matched[v] {
            v += 1;
        }
        if v >= n {
            return 0;
        }
        // v stays unmatched
        let mut best = go(g, v + 1, matched);
        for &w in g.neighbors(v) {
            if !matched[w] {
                matched[v] = true;
                matched[w] = true;
                best = best.max(1 + go(g, v + 1, matched));
                matched[v] = false;
                matched[w] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; n])
}

/// sigma(G) by exhaustive packing of vertex-disjoint cycles and edges.
pub fn sigma_brute(g: &Graph) -> usize {
    let n = g.num_vertices();
    assert!(n <= 16, "brute-force sigma is exponential");
    let cycles: Vec<(u32, usize)> = enumerate_cycles(g)
        .into_iter()
        .map(|cyc| (cyc.iter().fold(0u32, |m, &v| m | (1 << v)), cyc.len()))
        .collect();
    fn best(
        g: &Graph,
        cycles: &[(u32, usize)],
        mask: u32,
        memo: &mut HashMap<u32, usize>,
    ) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = mask.trailing_zeros() as usize;
        // v uncovered
        let mut out = best(g, cycles, mask & !(1 << v), memo);
        // v covered by an edge
        for &w in g.neighbors(v) {
            if mask & (1 << w) != 0 {
                out = out.max(2 + best(g, cycles, mask & !(1 << v) & !(1 << w), memo));
            }
        }
        // v covered by a cycle
        for &(cmask, clen) in cycles {
            if cmask & (1 << v) != 0 && cmask & !mask == 0 {
                out = out.max(clen + best(g, cycles, mask & !cmask, memo));
            }
        }
        memo.insert(mask, out);
        out
    }
    best(g, &cycles, (1u32 << n) - 1, &mut HashMap::new())
}

/// Graph on `n` vertices from an edge bitmask over the C(n,2) pairs in
/// lexicographic order (0,1), (0,2), ..., (n-2, n-1).
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask & (1 << bit) != 0 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Fast connectivity test on the bitmask representation, avoiding the cost of
/// building a `Graph` for masks that will be skipped.
pub fn mask_is_connected(n: usize, mask: u64) -> bool {
    let mut adj = [0u16; 16];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask & (1 << bit) != 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    let full: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut reach: u16 = 1;
    loop {
        let mut next = reach;
        let mut rest = reach;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[v];
        }
        if next == reach {
            return reach == full;
        }
        reach = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn cycle_enumeration_counts() {
        assert_eq!(enumerate_cycles(&cycle(5)).len(), 1);
        assert_eq!(enumerate_cycles(&path(5)).len(), 0);
        // K4 has 4 triangles and 3 four-cycles
        assert_eq!(enumerate_cycles(&complete(4)).len(), 7);
    }

    #[test]
    fn special_counts() {
        assert_eq!(special_cycle_count_brute(&cycle(8)), 2); // isolated, counted twice
        assert_eq!(special_cycle_count_brute(&cycle(6)), 0);
        assert_eq!(special_cycle_count_brute(&complete(4)), 0);
        // 4-cycle with two pendants on opposite vertices
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 5)]).unwrap();
        assert_eq!(special_cycle_count_brute(&g), 1);
    }

    #[test]
    fn matching_and_sigma() {
        assert_eq!(max_matching_brute(&cycle(5)), 2);
        assert_eq!(max_matching_brute(&complete(4)), 2);
        assert_eq!(sigma_brute(&cycle(3)), 3);
        assert_eq!(sigma_brute(&path(3)), 2);
        assert_eq!(sigma_brute(&path(4)), 4); // edges {0,1} and {2,3}
    }

    #[test]
    fn masks() {
        // triangle mask on 3 vertices: pairs (0,1),(0,2),(1,2)
        let g = graph_from_mask(3, 0b111);
        assert_eq!(g, complete(3));
        assert!(mask_is_connected(3, 0b111));
        assert!(!mask_is_connected(3, 0b001));
        assert!(mask_is_connected(2, 0b1));
        assert!(!mask_is_connected(2, 0));
    }
}
