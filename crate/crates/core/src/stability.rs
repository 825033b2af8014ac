//! Finite versions of the structural arguments: minimum-internal-edge
//! partitions, high-internal-degree sets, minimum-degree audits and the
//! `K_{ℓ-1} ∏ H` decomposition of extremal graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{contains_subgraph, is_free};
use crate::error::{Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::Graph;
use crate::graph6;
use crate::set::VertexSet;
use crate::standard::complete;

pub const EXACT_PARTITION_CAP: usize = 14;
pub const DEFAULT_THETA: f64 = 0.1;
pub const DEFAULT_STARTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Subset dynamic programming; global optimum, `n <= 14`.
    Exact,
    /// Multi-start single-vertex moves until no move lowers the count.
    LocalSearch { seed: u64, starts: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionDiagnostics {
    pub parts: Vec<Vec<usize>>,
    pub internal_edges: usize,
    pub theta: f64,
    pub w_set: Vec<usize>,
}

pub fn internal_edges(g: &Graph, parts: &[Vec<usize>]) -> usize {
    parts
        .iter()
        .map(|p| {
            let set = to_set(g.n(), p);
            p.iter().map(|&v| g.degree_into(v, &set)).sum::<usize>() / 2
        })
        .sum()
}

fn to_set(n: usize, vertices: &[usize]) -> VertexSet {
    let mut s = VertexSet::empty(n);
    for &v in vertices {
        s.insert(v);
    }
    s
}

fn check_partition(n: usize, parts: &[Vec<usize>]) -> Result<()> {
    let mut seen = VertexSet::empty(n);
    for &v in parts.iter().flatten() {
        if v >= n || seen.contains(v) {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} is out of range or repeated in the partition"
            )));
        }
        seen.insert(v);
    }
    if seen.len() != n {
        return Err(Error::InvalidArgument("partition does not cover every vertex".into()));
    }
    Ok(())
}

/// An `r`-partition minimising the number of edges inside parts.
/// Parts may be empty.
pub fn min_internal_partition(
    g: &Graph,
    r: usize,
    mode: PartitionMode,
    theta: f64,
) -> Result<PartitionDiagnostics> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be >= 2, got {r}")));
    }
    let parts = match mode {
        PartitionMode::Exact => {
            if g.n() > EXACT_PARTITION_CAP {
                return Err(Error::OverCap {
                    n: g.n(),
                    cap: EXACT_PARTITION_CAP,
                    hint: "use local-search mode",
                });
            }
            exact_partition(g, r)
        }
        PartitionMode::LocalSearch { seed, starts } => local_search_partition(g, r, seed, starts.max(1)),
    };
    let w = w_set(g, &parts, theta)?;
    Ok(PartitionDiagnostics {
        internal_edges: internal_edges(g, &parts),
        parts,
        theta,
        w_set: w,
    })
}

fn exact_partition(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let full = (1usize << n) - 1;
    // edges inside each subset
    let mut inside = vec![0u16; 1 << n];
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let to_rest = (g.row(v)[0] as usize & rest).count_ones() as u16;
        inside[s] = inside[rest] + to_rest;
    }
    // best[j][s]: min internal edges splitting s into j+1 parts
    let mut best = vec![inside.clone()];
    let mut choice: Vec<Vec<usize>> = vec![(0..=full).collect()];
    for j in 1..r {
        let prev = &best[j - 1];
        let mut cur = vec![u16::MAX; 1 << n];
        let mut pick = vec![0usize; 1 << n];
        for s in 0..=full {
            // t = this part, s ^ t goes to the remaining j parts
            let mut t = s;
            loop {
                let v = inside[t] + prev[s ^ t];
                if v < cur[s] {
                    cur[s] = v;
                    pick[s] = t;
                }
                if t == 0 {
                    break;
                }
                t = (t - 1) & s;
            }
        }
        best.push(cur);
        choice.push(pick);
    }
    let mut parts = Vec::with_capacity(r);
    let mut s = full;
    for j in (0..r).rev() {
        let t = choice[j][s];
        parts.push((0..n).filter(|&v| t >> v & 1 == 1).collect());
        s ^= t;
    }
    parts
}

fn local_search_partition(g: &Graph, r: usize, seed: u64, starts: usize) -> Vec<Vec<usize>> {
    let runs: Vec<(usize, Vec<usize>)> = (0..starts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut assign: Vec<usize> = (0..g.n()).map(|_| rng.gen_range(0..r)).collect();
            descend(g, r, &mut assign);
            let parts = to_parts(&assign, r);
            (internal_edges(g, &parts), assign)
        })
        .collect();
    let (_, assign) = runs.into_iter().min().expect("at least one start");
    to_parts(&assign, r)
}

fn to_parts(assign: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); r];
    for (v, &p) in assign.iter().enumerate() {
        parts[p].push(v);
    }
    parts
}

/// Moves a vertex to the part holding the fewest of its neighbours (lowest
/// index on ties) while that strictly lowers its internal degree.
fn descend(g: &Graph, r: usize, assign: &mut [usize]) {
    let n = g.n();
    let mut counts = vec![0usize; n * r];
    for (u, v) in g.edges() {
        counts[u * r + assign[v]] += 1;
        counts[v * r + assign[u]] += 1;
    }
    loop {
        let mut moved = false;
        for v in 0..n {
            let row = &counts[v * r..(v + 1) * r];
            let (target, &low) = row.iter().enumerate().min_by_key(|&(j, c)| (c, j)).unwrap();
            let from = assign[v];
            if low < row[from] {
                assign[v] = target;
                for u in g.neighbors(v) {
                    counts[u * r + from] -= 1;
                    counts[u * r + target] += 1;
                }
                moved = true;
            }
        }
        if !moved {
            return;
        }
    }
}

/// `true` iff no single vertex move lowers that vertex's internal degree:
/// `d_{V_i}(v) <= d_{V_j}(v)` for every `v ∈ V_i` and every part `j`.
pub fn is_move_optimal(g: &Graph, parts: &[Vec<usize>]) -> bool {
    let sets: Vec<VertexSet> = parts.iter().map(|p| to_set(g.n(), p)).collect();
    parts.iter().enumerate().all(|(i, p)| {
        p.iter().all(|&v| {
            let own = g.degree_into(v, &sets[i]);
            sets.iter().all(|s| own <= g.degree_into(v, s))
        })
    })
}

/// Vertices with at least `θ·n` neighbours inside their own part.
pub fn w_set(g: &Graph, parts: &[Vec<usize>], theta: f64) -> Result<Vec<usize>> {
    check_partition(g.n(), parts)?;
    let bound = theta * g.n() as f64;
    let mut out: Vec<usize> = parts
        .iter()
        .flat_map(|p| {
            let set = to_set(g.n(), p);
            p.iter()
                .copied()
                .filter(move |&v| g.degree_into(v, &set) as f64 >= bound)
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `δ(G) > (1 - 1/r - θ) n`.
pub fn min_degree_audit(g: &Graph, r: usize, theta: f64) -> bool {
    let r = r.max(1) as f64;
    g.min_degree() as f64 > (1.0 - 1.0 / r - theta) * g.n() as f64
}

/// All universal vertices; they always form a clique.
pub fn dominating_clique(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    /// number of universal vertices
    pub q: usize,
    /// `q + 1`
    pub ell: usize,
    pub clique: Vec<usize>,
    /// `H = G - clique`, graph6
    pub h_graph6: String,
    pub h_edges: usize,
    /// `G = K_q ∏ H` exactly
    pub is_join: bool,
    /// `H` contains no `F_ell`; false when `ell` exceeds the family size
    pub h_free: bool,
    pub expected_h_edges: Option<u64>,
    pub ex_matches: bool,
    pub ell_out_of_range: bool,
    pub theta: f64,
    /// high-internal-degree vertices of a minimum `(χ-1)`-partition
    pub w_set: Vec<usize>,
    pub pass: bool,
}

/// Decomposes `g` as `K_q ∏ H` along its universal vertices and checks
/// that `H` avoids `F_{q+1}` and has `ex(n-q, F_{q+1})` edges, with
/// `provider(m, i)` supplying `ex(m, F_{i+1})`.
pub fn structure_audit(
    g: &Graph,
    family: &ForbiddenFamily,
    theta: f64,
    mut provider: impl FnMut(usize, usize) -> Result<u64>,
) -> Result<StructureReport> {
    if !is_free(g, family) {
        return Err(Error::InvalidArgument(format!(
            "structure audit needs a {family}-free graph"
        )));
    }
    let n = g.n();
    let clique = dominating_clique(g);
    let q = clique.len();
    let ell = q + 1;
    let rest: Vec<usize> = (0..n).filter(|v| !clique.contains(v)).collect();
    let h = g.induced(&rest);

    let mut perm = vec![0; n];
    for (pos, &v) in clique.iter().chain(&rest).enumerate() {
        perm[v] = pos;
    }
    let rebuilt = if q == 0 {
        h.clone()
    } else {
        crate::graph::join(&[complete(q), h.clone()])?
    };
    let is_join = g.permuted(&perm) == rebuilt;

    let ell_out_of_range = ell > family.len();
    let (h_free, expected) = if ell_out_of_range {
        (false, None)
    } else {
        let pattern = &family.patterns()[ell - 1].graph;
        (
            contains_subgraph(&h, pattern).is_none(),
            Some(provider(n - q, ell - 1)?),
        )
    };
    let ex_matches = expected == Some(h.edge_count() as u64);

    let r = family.min_chi().saturating_sub(1).max(2);
    let mode = if n <= EXACT_PARTITION_CAP {
        PartitionMode::Exact
    } else {
        PartitionMode::LocalSearch {
            seed: 0,
            starts: DEFAULT_STARTS,
        }
    };
    let w = if n == 0 {
        Vec::new()
    } else {
        min_internal_partition(g, r, mode, theta)?.w_set
    };

    Ok(StructureReport {
        q,
        ell,
        clique,
        h_graph6: graph6::encode(&h),
        h_edges: h.edge_count(),
        is_join,
        h_free,
        expected_h_edges: expected,
        ex_matches,
        ell_out_of_range,
        theta,
        w_set: w,
        pass: is_join && h_free && ex_matches,
    })
}
