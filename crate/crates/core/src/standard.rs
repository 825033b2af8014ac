//! Builders for the standard graph families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A named standard graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "params")]
pub enum StandardKind {
    /// `C_n`, `n >= 3`, vertices in cycle order.
    Cycle(usize),
    /// `P_n` on `n >= 1` vertices.
    Path(usize),
    /// `K_n`; `K_0` is the null graph.
    Complete(usize),
    /// `K_{n_1,...,n_r}`, parts in declaration order.
    CompleteMultipartite(Vec<usize>),
    /// `T(n, r)`.
    Turan { n: usize, r: usize },
    /// `W_n = K_1 ∏ C_{n-1}`, hub 0, rim `1..n` in cycle order.
    Wheel(usize),
}

/// Part sizes of `T(n, r)`: the `n mod r` parts of size `⌈n/r⌉` come first.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    assert!(r >= 1);
    let (q, rem) = (n / r, n % r);
    (0..r).map(|i| if i < rem { q + 1 } else { q }).collect()
}

/// `e(T(n, r))` without building the graph.
pub fn turan_edge_count(n: usize, r: usize) -> usize {
    let parts = turan_part_sizes(n, r);
    let sq: usize = parts.iter().map(|p| p * p).sum();
    (n * n - sq) / 2
}

pub fn build(spec: &StandardKind) -> Result<Graph> {
    match *spec {
        StandardKind::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidSpec(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        StandardKind::Path(n) => {
            if n < 1 {
                return Err(Error::InvalidSpec("path needs n >= 1".into()));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        StandardKind::Complete(n) => Ok(multipartite(&vec![1; n])),
        StandardKind::CompleteMultipartite(ref sizes) => {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Error::InvalidSpec(format!(
                    "multipartite part sizes must be >= 1, got {sizes:?}"
                )));
            }
            Ok(multipartite(sizes))
        }
        StandardKind::Turan { n, r } => {
            if r < 1 {
                return Err(Error::InvalidSpec("Turán graph needs r >= 1".into()));
            }
            Ok(multipartite(&turan_part_sizes(n, r)))
        }
        StandardKind::Wheel(n) => {
            if n < 4 {
                return Err(Error::InvalidSpec(format!("wheel needs n >= 4, got {n}")));
            }
            let rim = n - 1;
            let spokes = (1..n).map(|v| (0, v));
            let cycle = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
            Graph::from_edges(n, spokes.chain(cycle))
        }
    }
}

/// Complete multipartite graph; zero-sized parts are allowed here.
fn multipartite(sizes: &[usize]) -> Graph {
    let n = sizes.iter().sum();
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn complete(n: usize) -> Graph {
    multipartite(&vec![1; n])
}

pub fn cycle(n: usize) -> Graph {
    build(&StandardKind::Cycle(n)).expect("cycle order")
}

pub fn path(n: usize) -> Graph {
    build(&StandardKind::Path(n)).expect("path order")
}

pub fn wheel(n: usize) -> Graph {
    build(&StandardKind::Wheel(n)).expect("wheel order")
}

pub fn turan(n: usize, r: usize) -> Graph {
    build(&StandardKind::Turan { n, r }).expect("turan parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_7_3() {
        let g = turan(7, 3);
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(turan_part_sizes(7, 3), vec![3, 2, 2]);
        // first part is {0,1,2}
        assert!(!g.has_edge(0, 2));
        assert!(g.has_edge(2, 3));
        assert_eq!(turan_edge_count(7, 3), 16);
    }

    #[test]
    fn wheel_6() {
        let g = wheel(6);
        assert_eq!((g.n(), g.edge_count()), (6, 10));
        assert_eq!(g.degree(0), 5);
        assert!(g.has_edge(5, 1));
    }

    #[test]
    fn cycle_5() {
        let g = cycle(5);
        assert_eq!((g.n(), g.edge_count()), (5, 5));
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn invalid_specs() {
        for spec in [
            StandardKind::Cycle(2),
            StandardKind::Wheel(3),
            StandardKind::Turan { n: 5, r: 0 },
            StandardKind::CompleteMultipartite(vec![2, 0]),
            StandardKind::CompleteMultipartite(vec![]),
            StandardKind::Path(0),
        ] {
            assert!(matches!(build(&spec), Err(Error::InvalidSpec(_))), "{spec:?}");
        }
    }

    #[test]
    fn turan_edges_match_closed_sum() {
        for n in 0..30 {
            for r in 1..7 {
                let parts = turan_part_sizes(n, r);
                let max = *parts.iter().max().unwrap();
                let min = *parts.iter().min().unwrap();
                assert!(max - min <= 1);
                let mut pairs = 0;
                for i in 0..r {
                    for j in i + 1..r {
                        pairs += parts[i] * parts[j];
                    }
                }
                let e = turan(n, r).edge_count();
                assert_eq!(e, pairs);
                let lower = (r as f64 - 1.0) / (2.0 * r as f64) * (n * n) as f64 - r as f64 / 8.0;
                assert!(e as f64 >= lower - 1e-9, "n={n} r={r}");
            }
        }
    }
}
