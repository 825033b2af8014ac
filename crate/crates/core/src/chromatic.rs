//! Exact chromatic number and vertex/edge criticality.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::set::VertexSet;

/// Chromatic number with deletion witnesses.
///
/// `vertex_witness` is the smallest `u` with `χ(F−u) = χ(F)−1`;
/// `edge_witness` the lexicographically smallest edge with `χ(F−e) = χ(F)−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub chi: usize,
    pub vertex_witness: Option<usize>,
    pub edge_witness: Option<(usize, usize)>,
}

impl CriticalityReport {
    pub fn is_vertex_critical(&self) -> bool {
        self.vertex_witness.is_some()
    }

    pub fn is_edge_critical(&self) -> bool {
        self.edge_witness.is_some()
    }
}

/// Exact `χ(G)`. The null graph has `χ = 0`, an edgeless graph `χ = 1`.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = greedy_clique(g);
    let upper = dsatur_greedy(g);
    (lower..upper).find(|&k| is_colorable(g, k)).unwrap_or(upper)
}

pub fn criticality(f: &Graph) -> CriticalityReport {
    let chi = chromatic_number(f);
    let target = chi.saturating_sub(1);
    let vertex_witness = (0..f.n()).find(|&u| chromatic_number(&f.remove_vertex(u)) == target);
    let edge_witness = f.edges().find(|&(u, v)| {
        let mut h = f.clone();
        h.remove_edge(u, v);
        chromatic_number(&h) == target
    });
    CriticalityReport {
        chi,
        vertex_witness,
        edge_witness,
    }
}

fn greedy_clique(g: &Graph) -> usize {
    let mut best = 1;
    for start in 0..g.n() {
        let mut cand = g.neighbor_set(start);
        let mut size = 1;
        while !cand.is_empty() {
            let v = cand
                .iter()
                .max_by_key(|&v| (g.degree_into(v, &cand), std::cmp::Reverse(v)))
                .unwrap();
            size += 1;
            cand.intersect_with(g.row(v));
        }
        best = best.max(size);
    }
    best
}

fn dsatur_greedy(g: &Graph) -> usize {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (saturation(g, &color, v), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let taken: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
        let c = (0..).find(|c| !taken.contains(c)).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn saturation(g: &Graph, color: &[usize], v: usize) -> usize {
    let mut seen: Vec<usize> = g
        .neighbors(v)
        .map(|u| color[u])
        .filter(|&c| c != usize::MAX)
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Whether `g` admits a proper `k`-colouring.
pub fn is_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut state = Coloring {
        g,
        k,
        color: vec![usize::MAX; n],
        // blocked[v * k + c]: number of coloured neighbours of v using c
        blocked: vec![0; n * k],
        uncolored: VertexSet::full(n),
    };
    state.extend(0)
}

struct Coloring<'g> {
    g: &'g Graph,
    k: usize,
    color: Vec<usize>,
    blocked: Vec<u32>,
    uncolored: VertexSet,
}

impl Coloring<'_> {
    fn options(&self, v: usize) -> usize {
        (0..self.k).filter(|&c| self.blocked[v * self.k + c] == 0).count()
    }

    fn extend(&mut self, used: usize) -> bool {
        // fewest remaining colours first, then highest degree
        let Some(v) = self
            .uncolored
            .iter()
            .min_by_key(|&v| (self.options(v), std::cmp::Reverse(self.g.degree(v)), v))
        else {
            return true;
        };
        // unused colours are interchangeable; try only the first of them
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.blocked[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c, true);
            if self.extend(used.max(c + 1)) {
                return true;
            }
            self.assign(v, c, false);
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize, on: bool) {
        let k = self.k;
        if on {
            self.color[v] = c;
            self.uncolored.remove(v);
        } else {
            self.color[v] = usize::MAX;
            self.uncolored.insert(v);
        }
        for u in self.g.neighbors(v) {
            if on {
                self.blocked[u * k + c] += 1;
            } else {
                self.blocked[u * k + c] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, join};
    use crate::standard::{complete, cycle, turan, wheel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute force over all k^n assignments.
    fn brute_chi(g: &Graph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let mut assign = vec![0usize; n];
            loop {
                if g.edges().all(|(u, v)| assign[u] != assign[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n && assign[i] == k - 1 {
                    assign[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                assign[i] += 1;
            }
        }
        n
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(&wheel(7)), 3);
        for r in 1..6 {
            assert_eq!(chromatic_number(&turan(11, r)), r);
        }
        assert_eq!(chromatic_number(&Graph::empty(0)), 0);
        assert_eq!(chromatic_number(&Graph::empty(4)), 1);
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(0..=7);
            let g = {
                let (n, p) = (n, rng.gen_range(0.2..0.9));
                random_graph(&mut rng, n, p)
            };
            assert_eq!(chromatic_number(&g), brute_chi(&g), "{g:?}");
        }
    }

    #[test]
    fn criticality_examples() {
        let w6 = criticality(&wheel(6));
        assert!(w6.is_edge_critical() && w6.is_vertex_critical());
        assert_eq!(w6.chi, 4);

        let w7 = criticality(&wheel(7));
        assert_eq!(w7.chi, 3);
        assert_eq!(w7.vertex_witness, Some(0));
        assert!(!w7.is_edge_critical());

        let k4 = criticality(&complete(4));
        assert_eq!(k4.chi, 4);
        assert_eq!(k4.edge_witness, Some((0, 1)));

        let k1 = criticality(&complete(1));
        assert_eq!((k1.chi, k1.vertex_witness, k1.edge_witness), (1, Some(0), None));
    }

    #[test]
    fn wheel_parity_classification() {
        for k in 2..=4 {
            let odd = criticality(&wheel(2 * k + 1));
            assert!(odd.is_vertex_critical() && !odd.is_edge_critical(), "W{}", 2 * k + 1);
            let even = criticality(&wheel(2 * k));
            assert!(even.is_edge_critical(), "W{}", 2 * k);
        }
    }

    #[test]
    fn witnesses_are_verified() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(&mut rng, n, 0.5);
            let rep = criticality(&g);
            if let Some(u) = rep.vertex_witness {
                assert_eq!(chromatic_number(&g.remove_vertex(u)), rep.chi - 1);
            }
            if let Some((u, v)) = rep.edge_witness {
                let mut h = g.clone();
                h.remove_edge(u, v);
                assert_eq!(chromatic_number(&h), rep.chi - 1);
                assert!(rep.vertex_witness.is_some());
            }
        }
    }

    #[test]
    fn join_and_union_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let a = {
                let (n, p) = (rng.gen_range(1..=6), 0.5);
                random_graph(&mut rng, n, p)
            };
            let b = {
                let (n, p) = (rng.gen_range(1..=6), 0.5);
                random_graph(&mut rng, n, p)
            };
            let (ca, cb) = (chromatic_number(&a), chromatic_number(&b));
            assert_eq!(chromatic_number(&join(&[a.clone(), b.clone()]).unwrap()), ca + cb);
            assert_eq!(chromatic_number(&disjoint_union(&[a, b]).unwrap()), ca.max(cb));
        }
    }
}
