//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! recurse. Leaves are discrete partitions; the canonical labelling is the
//! leaf whose relabelled adjacency bit string is largest. Leaves equal to the
//! current best yield automorphisms, which prune siblings in the same orbit
//! and let the search jump back to the node where the two leaves diverged.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6;
use crate::set::VertexSet;

/// Isomorphism certificate: the graph6 text of the canonically relabelled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Certificate(String);

impl Certificate {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.0)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> Certificate {
    Certificate(graph6::encode(&canonical_graph(g)))
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

/// `perm[v]` is the canonical label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    let cells = refine(g, vec![(0..n).collect()]);
    search.dfs(cells, &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in best.order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

type Cells = Vec<Vec<usize>>;

/// Refines an ordered partition until every cell is equitable with respect
/// to every other cell. Splits order the pieces by ascending neighbour count,
/// so the result depends only on the cell structure, never on labels.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.n();
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let mut mask = VertexSet::empty(n);
            for &v in &cells[si] {
                mask.insert(v);
            }
            let mut ci = 0;
            while ci < cells.len() {
                if cells[ci].len() == 1 {
                    ci += 1;
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cells[ci]
                    .iter()
                    .map(|&v| (g.degree_into(v, &mask), v))
                    .collect();
                keyed.sort_unstable();
                if keyed.first().map(|k| k.0) == keyed.last().map(|k| k.0) {
                    ci += 1;
                    continue;
                }
                let mut pieces: Cells = Vec::new();
                let mut last = usize::MAX;
                for (count, v) in keyed {
                    if count != last {
                        pieces.push(Vec::new());
                        last = count;
                    }
                    pieces.last_mut().unwrap().push(v);
                }
                let added = pieces.len();
                cells.splice(ci..=ci, pieces);
                ci += added;
                changed = true;
            }
            si += 1;
        }
        if !changed {
            return cells;
        }
    }
}

struct Leaf {
    bits: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to unwind to after an automorphism was found.
    fn dfs(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        let candidates = {
            let mut c = cells[target].clone();
            c.sort_unstable();
            c
        };
        for w in candidates {
            if !explored.is_empty() && self.same_orbit(path, &explored, w) {
                continue;
            }
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&v| v != w).collect();
            next.splice(target..=target, [vec![w], rest]);
            let next = refine(self.g, next);
            path.push(w);
            let unwind = self.dfs(next, path);
            path.pop();
            explored.push(w);
            if let Some(depth) = unwind {
                if depth < path.len() {
                    return Some(depth);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let bits = relabelled_bits(self.g, &order);
        match &self.best {
            Some(best) if bits == best.bits => {
                let mut gamma = vec![0; order.len()];
                for (b, &o) in best.order.iter().zip(&order) {
                    gamma[*b] = o;
                }
                let common = best
                    .path
                    .iter()
                    .zip(path)
                    .take_while(|(a, b)| a == b)
                    .count();
                self.autos.push(gamma);
                Some(common)
            }
            Some(best) if bits < best.bits => None,
            _ => {
                self.best = Some(Leaf {
                    bits,
                    order,
                    path: path.to_vec(),
                });
                None
            }
        }
    }

    /// Whether `w` lies in the orbit of an explored sibling under the known
    /// automorphisms that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], w: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            any = true;
            for (v, &img) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, img));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&u| find(&mut parent, u) == rw)
    }
}

fn relabelled_bits(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        let vj = order[j];
        for &vi in &order[..j] {
            if g.has_edge(vi, vj) {
                // most significant first so Vec comparison is lexicographic
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}
