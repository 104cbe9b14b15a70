//! Immutable simple-graph, bipartite-graph and multigraph representations.
//!
//! Vertices are dense 0-based indices. Adjacency lists are kept sorted so
//! that neighbour queries are binary searches; everything is immutable after
//! construction and safe to share across threads.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Undirected simple graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Build a simple graph from an edge list. Duplicate edges are collapsed;
    /// loops are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::LoopRejected(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as canonical (min, max) pairs, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Subgraph induced by `vertices`. Vertices are reindexed densely in the
    /// order given; the returned map sends new index -> old label.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            if old >= self.n {
                return Err(Error::VertexOutOfRange { vertex: old, n: self.n });
            }
            old_to_new[old] = new;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (nu, nv) = (old_to_new[u], old_to_new[v]);
            if nu != usize::MAX && nv != usize::MAX {
                edges.push((nu, nv));
            }
        }
        let g = Graph::new(vertices.len(), &edges)?;
        Ok((g, vertices.to_vec()))
    }

    /// Connected components, ordered by decreasing size, ties broken by the
    /// smallest contained vertex index. Vertices inside a component are sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// Rows-by-columns incidence of A(G): parts are two copies of V(G) and
    /// (u_row, v_col) is an edge iff {u, v} is an edge of G.
    pub fn bipartite_double(&self) -> BipartiteGraph {
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        for &(u, v) in &self.edges {
            edges.push((u, v));
            edges.push((v, u));
        }
        BipartiteGraph::new(self.n, self.n, &edges).expect("double cover is always valid")
    }
}

/// Bipartite graph with parts V1 = {0..n1-1} and V2 = {n1..n1+n2-1}.
/// Edges are stored as (left index in 0..n1, right index in 0..n2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<(usize, usize)>,
    adj_left: Vec<Vec<usize>>,
    adj_right: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n1: usize, n2: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, w) in edges {
            if u >= n1 {
                return Err(Error::VertexOutOfRange { vertex: u, n: n1 });
            }
            if w >= n2 {
                return Err(Error::VertexOutOfRange { vertex: w, n: n2 });
            }
            canon.push((u, w));
        }
        canon.sort_unstable();
        canon.dedup();
        let mut adj_left = vec![Vec::new(); n1];
        let mut adj_right = vec![Vec::new(); n2];
        for &(u, w) in &canon {
            adj_left[u].push(w);
            adj_right[w].push(u);
        }
        for list in adj_left.iter_mut().chain(adj_right.iter_mut()) {
            list.sort_unstable();
        }
        Ok(BipartiteGraph { n1, n2, edges: canon, adj_left, adj_right })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (left, right) pairs with part-local indices, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors_left(&self, u: usize) -> &[usize] {
        &self.adj_left[u]
    }

    pub fn neighbors_right(&self, w: usize) -> &[usize] {
        &self.adj_right[w]
    }

    pub fn degree_left(&self, u: usize) -> usize {
        self.adj_left[u].len()
    }

    pub fn degree_right(&self, w: usize) -> usize {
        self.adj_right[w].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj_left[u].binary_search(&w).is_ok()
    }

    /// The same graph viewed as a simple graph on n1 + n2 vertices, with the
    /// V2 part shifted by n1. Used for the symmetric adjacency matrix A(G).
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(u, w)| (u, self.n1 + w)).collect();
        Graph::new(self.n1 + self.n2, &edges).expect("bipartite edges are loop-free")
    }
}

/// Multigraph allowing loops and parallel edges. A loop contributes 2 to the
/// degree of its vertex.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            let bad = u.max(v);
            if bad >= n {
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
        }
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Ok(MultiGraph { n, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// True iff there is no loop and no repeated edge.
    pub fn is_simple(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.iter().all(|&(u, v)| u != v) && sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The underlying simple graph, if this multigraph is simple.
    pub fn to_simple(&self) -> Option<Graph> {
        if !self.is_simple() {
            return None;
        }
        Graph::new(self.n, &self.edges).ok()
    }
}

/// Parse the edge-list text format: header `n m` (graph) or `n1 n2 m`
/// (bipartite), then m lines `u v`. `#` starts a comment; blank lines are
/// skipped.
fn parse_lines(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::ParseError(format!("bad token {tok:?}")))
            })
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::ParseError("missing header line".into()));
    }
    Ok(rows)
}

fn parse_edges(rows: &[Vec<usize>], m: usize) -> Result<Vec<(usize, usize)>> {
    if rows.len() != m {
        return Err(Error::ParseError(format!(
            "expected {m} edge lines, found {}",
            rows.len()
        )));
    }
    rows.iter()
        .map(|row| match row.as_slice() {
            &[u, v] => Ok((u, v)),
            other => Err(Error::ParseError(format!("expected `u v`, got {other:?}"))),
        })
        .collect()
}

impl Graph {
    pub fn from_edge_list_str(text: &str) -> Result<Self> {
        let rows = parse_lines(text)?;
        let (n, m) = match rows[0].as_slice() {
            &[n, m] => (n, m),
            other => return Err(Error::ParseError(format!("expected `n m` header, got {other:?}"))),
        };
        Graph::new(n, &parse_edges(&rows[1..], m)?)
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

impl BipartiteGraph {
    pub fn from_edge_list_str(text: &str) -> Result<Self> {
        let rows = parse_lines(text)?;
        let (n1, n2, m) = match rows[0].as_slice() {
            &[n1, n2, m] => (n1, n2, m),
            other => {
                return Err(Error::ParseError(format!(
                    "expected `n1 n2 m` header, got {other:?}"
                )))
            }
        };
        BipartiteGraph::new(n1, n2, &parse_edges(&rows[1..], m)?)
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.n1, self.n2, self.edges.len()).unwrap();
        for &(u, w) in &self.edges {
            writeln!(out, "{u} {w}").unwrap();
        }
        out
    }
}

/// Convenience constructors used all over the tests.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_basics() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);

        let c4 = cycle(4);
        assert!(c4.degrees().iter().all(|&d| d == 2));

        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::LoopRejected(0)));
        assert_eq!(
            Graph::new(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        );
        // duplicates collapse
        let g = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = complete(5);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.num_edges());
    }

    #[test]
    fn induced_subgraphs() {
        let c4 = cycle(4);
        let (p, map) = c4.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p.num_edges(), 2);
        assert_eq!(p.degrees(), vec![1, 2, 1]);
        assert_eq!(map, vec![0, 1, 2]);

        let all: Vec<usize> = (0..4).collect();
        let (copy, map) = c4.induced_subgraph(&all).unwrap();
        assert_eq!(copy, c4);
        assert_eq!(map, all);

        let (tri, _) = complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(tri, complete(3));

        assert!(c4.induced_subgraph(&[0, 9]).is_err());
    }

    #[test]
    fn components_ordering() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![0, 1, 2], vec![3]]);

        let g = Graph::empty(3);
        assert_eq!(g.connected_components(), vec![vec![0], vec![1], vec![2]]);

        assert_eq!(cycle(4).connected_components(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn bipartite_doubles() {
        let e = Graph::new(2, &[(0, 1)]).unwrap();
        let d = e.bipartite_double();
        assert_eq!(d.edges(), &[(0, 1), (1, 0)]);

        assert_eq!(cycle(3).bipartite_double().num_edges(), 6);
        assert_eq!(Graph::empty(3).bipartite_double().num_edges(), 0);

        let g = complete(4);
        assert_eq!(g.bipartite_double().num_edges(), 2 * g.num_edges());
    }

    #[test]
    fn bipartite_parts() {
        let b = BipartiteGraph::new(2, 3, &[(0, 0), (1, 2)]).unwrap();
        assert_eq!(b.degree_left(0), 1);
        assert_eq!(b.degree_right(1), 0);
        assert!(b.has_edge(1, 2));
        assert!(BipartiteGraph::new(2, 3, &[(2, 0)]).is_err());

        let g = b.to_graph();
        assert_eq!(g.num_vertices(), 5);
        assert!(g.has_edge(1, 4));
    }

    #[test]
    fn multigraph_loop_degree() {
        let m = MultiGraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(m.degree(0), 4);
        assert!(!m.is_simple());

        let m = MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(m.is_simple());
        assert_eq!(m.to_simple().unwrap(), cycle(3));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let text = g.to_edge_list_string();
        let back = Graph::from_edge_list_str(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_edge_list_string(), text);

        let b = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        let text = b.to_edge_list_string();
        let back = BipartiteGraph::from_edge_list_str(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(back.to_edge_list_string(), text);
    }

    #[test]
    fn edge_list_comments_and_errors() {
        let g = Graph::from_edge_list_str("# a path\n3 2\n0 1 # first\n\n1 2\n").unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert!(Graph::from_edge_list_str("3 2\n0 1\n").is_err());
        assert!(Graph::from_edge_list_str("").is_err());
    }
}
