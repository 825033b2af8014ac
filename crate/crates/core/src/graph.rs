//! Dense simple graphs and the union / join operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::{ones, popcount, words_for, Ones, VertexSet};

/// Finite undirected graph without loops or multi-edges on vertices `0..n`.
///
/// Adjacency is stored as one bit row per vertex, so neighbourhood
/// intersections are word-wise ANDs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words in each adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    ///
    /// Panics on a loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.rows[u * self.words + (v >> 6)] |= 1 << (v & 63);
        self.rows[v * self.words + (u >> 6)] |= 1 << (u & 63);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "bad edge ({u},{v})");
        self.rows[u * self.words + (v >> 6)] &= !(1 << (v & 63));
        self.rows[v * self.words + (u >> 6)] &= !(1 << (u & 63));
    }

    pub fn degree(&self, u: usize) -> usize {
        popcount(self.row(u))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// `δ(G)`; zero for the null graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        popcount(&self.rows) / 2
    }

    pub fn neighbors(&self, u: usize) -> Ones<'_> {
        ones(self.row(u))
    }

    pub fn neighbor_set(&self, u: usize) -> VertexSet {
        VertexSet::from_words(self.row(u))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of neighbours of `u` inside `set`.
    pub fn degree_into(&self, u: usize, set: &VertexSet) -> usize {
        self.row(u)
            .iter()
            .zip(set.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn remove_vertex(&self, u: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != u).collect();
        self.induced(&keep)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Copy with `extra` isolated vertices appended.
    pub fn with_isolated(&self, extra: usize) -> Graph {
        let mut g = Graph::empty(self.n + extra);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn component_count(&self) -> usize {
        let mut seen = VertexSet::empty(self.n);
        let mut count = 0;
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            count += 1;
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Best-effort Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for u in 0..self.n {
            out.push_str(&format!("  {u};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Disjoint union; vertices of `graphs[i]` follow those of `graphs[i-1]`.
pub fn disjoint_union(graphs: &[Graph]) -> Result<Graph> {
    combine(graphs, false)
}

/// Join: the disjoint union plus every edge between different operands.
pub fn join(graphs: &[Graph]) -> Result<Graph> {
    combine(graphs, true)
}

fn combine(graphs: &[Graph], cross: bool) -> Result<Graph> {
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("empty graph list".into()));
    }
    let total = graphs.iter().map(Graph::n).sum();
    let mut out = Graph::empty(total);
    let mut offset = 0;
    for g in graphs {
        for (u, v) in g.edges() {
            out.add_edge(offset + u, offset + v);
        }
        if cross {
            let later = offset + g.n();
            for u in offset..later {
                for v in later..total {
                    out.add_edge(u, v);
                }
            }
        }
        offset += g.n();
    }
    Ok(out)
}
