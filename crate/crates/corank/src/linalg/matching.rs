//! Maximum matching: Hopcroft-Karp for bipartite graphs, Edmonds' blossom
//! contraction for general graphs.

use std::collections::VecDeque;

use crate::graph::{BipartiteGraph, Graph};

const NIL: usize = usize::MAX;

/// Maximum matching size of a bipartite graph (Hopcroft-Karp).
pub fn hopcroft_karp(g: &BipartiteGraph) -> usize {
    let (n1, n2) = (g.n1(), g.n2());
    let mut match_left = vec![NIL; n1];
    let mut match_right = vec![NIL; n2];
    let mut dist = vec![0usize; n1];
    let mut queue = VecDeque::new();

    fn bfs(
        g: &BipartiteGraph,
        match_left: &[usize],
        match_right: &[usize],
        dist: &mut [usize],
        queue: &mut VecDeque<usize>,
    ) -> bool {
        queue.clear();
        let inf = usize::MAX;
        for u in 0..g.n1() {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = inf;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors_left(u) {
                match match_right[w] {
                    NIL => found = true,
                    u2 => {
                        if dist[u2] == inf {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        found
    }

    fn dfs(
        g: &BipartiteGraph,
        u: usize,
        match_left: &mut [usize],
        match_right: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for i in 0..g.neighbors_left(u).len() {
            let w = g.neighbors_left(u)[i];
            let u2 = match_right[w];
            if u2 == NIL || (dist[u2] == dist[u] + 1 && dfs(g, u2, match_left, match_right, dist))
            {
                match_left[u] = w;
                match_right[w] = u;
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    let mut matching = 0;
    while bfs(g, &match_left, &match_right, &mut dist, &mut queue) {
        for u in 0..n1 {
            if match_left[u] == NIL && dfs(g, u, &mut match_left, &mut match_right, &mut dist) {
                matching += 1;
            }
        }
    }
    let _ = n2;
    matching
}

/// Maximum matching size of a general graph (Edmonds' blossom algorithm,
/// array-based contraction, O(V^3)).
pub fn blossom_max_matching(g: &Graph) -> usize {
    let n = g.num_vertices();
    let mut mate = vec![NIL; n];

    // greedy warm start
    for v in 0..n {
        if mate[v] == NIL {
            for &w in g.neighbors(v) {
                if mate[w] == NIL {
                    mate[v] = w;
                    mate[w] = v;
                    break;
                }
            }
        }
    }

    let mut parent = vec![NIL; n];
    let mut base = vec![0usize; n];
    let mut used = vec![false; n];
    let mut blossom = vec![false; n];

    fn lca(mate: &[usize], parent: &[usize], base: &[usize], mut a: usize, mut b: usize, n: usize) -> usize {
        let mut seen = vec![false; n];
        loop {
            a = base[a];
            seen[a] = true;
            if mate[a] == NIL {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if seen[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn mark_path(
        mate: &[usize],
        parent: &mut [usize],
        base: &[usize],
        blossom: &mut [bool],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            blossom[base[v]] = true;
            blossom[base[mate[v]]] = true;
            parent[v] = child;
            child = mate[v];
            v = parent[mate[v]];
        }
    }

    // BFS from `root` looking for an exposed vertex along an alternating tree.
    let find_path = |root: usize,
                         mate: &mut Vec<usize>,
                         parent: &mut Vec<usize>,
                         base: &mut Vec<usize>,
                         used: &mut Vec<bool>,
                         blossom: &mut Vec<bool>|
     -> usize {
        used.iter_mut().for_each(|x| *x = false);
        parent.iter_mut().for_each(|x| *x = NIL);
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &to in g.neighbors(v) {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NIL && parent[mate[to]] != NIL) {
                    // odd cycle: contract the blossom
                    let cur_base = lca(mate, parent, base, v, to, n);
                    blossom.iter_mut().for_each(|x| *x = false);
                    mark_path(mate, parent, base, blossom, v, cur_base, to);
                    mark_path(mate, parent, base, blossom, to, cur_base, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = cur_base;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NIL {
                    parent[to] = v;
                    if mate[to] == NIL {
                        return to;
                    }
                    used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        NIL
    };

    let mut matching = mate.iter().filter(|&&m| m != NIL).count() / 2;
    for root in 0..n {
        if mate[root] != NIL {
            continue;
        }
        let mut v = find_path(root, &mut mate, &mut parent, &mut base, &mut used, &mut blossom);
        if v == NIL {
            continue;
        }
        matching += 1;
        // augment along the found path
        while v != NIL {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    matching
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};
    use crate::oracle::max_matching_brute;

    #[test]
    fn bipartite_basics() {
        let k22 = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(hopcroft_karp(&k22), 2);
        let empty = BipartiteGraph::new(3, 3, &[]).unwrap();
        assert_eq!(hopcroft_karp(&empty), 0);
        let star = BipartiteGraph::new(1, 3, &[(0, 0), (0, 1), (0, 2)]).unwrap();
        assert_eq!(hopcroft_karp(&star), 1);
    }

    #[test]
    fn blossom_basics() {
        assert_eq!(blossom_max_matching(&cycle(5)), 2);
        assert_eq!(blossom_max_matching(&cycle(4)), 2);
        assert_eq!(blossom_max_matching(&path(4)), 2);
        assert_eq!(blossom_max_matching(&complete(6)), 3);
        // two triangles joined by an edge: perfect matching exists
        let g = crate::graph::Graph::new(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        assert_eq!(blossom_max_matching(&g), 3);
    }

    #[test]
    fn blossom_matches_brute_force_on_random_graphs() {
        let mut x = 7u64;
        for trial in 0..300 {
            let n = 4 + (trial % 9) as usize; // up to 12 vertices
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (x >> 40) % 10 < 3 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            assert_eq!(blossom_max_matching(&g), max_matching_brute(&g), "graph: {edges:?}");
        }
    }

    #[test]
    fn hopcroft_karp_matches_blossom_on_bipartite() {
        let mut x = 3u64;
        for _ in 0..200 {
            let (n1, n2) = (5, 6);
            let mut edges = Vec::new();
            for u in 0..n1 {
                for w in 0..n2 {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(99);
                    if (x >> 40) % 10 < 3 {
                        edges.push((u, w));
                    }
                }
            }
            let b = BipartiteGraph::new(n1, n2, &edges).unwrap();
            assert_eq!(hopcroft_karp(&b), blossom_max_matching(&b.to_graph()));
        }
    }
}
