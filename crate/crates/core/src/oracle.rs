//! Exact `ex(n, F)` and `EX(n, F)` for small `n`.
//!
//! The production path grows family-free graphs one vertex at a time and
//! keeps one representative per isomorphism class at every order. Two
//! facts make this both complete and small:
//!
//! * freeness is hereditary, so every free graph on `m` vertices minus a
//!   minimum-degree vertex is a free graph on `m - 1` vertices; children are
//!   only accepted when the new vertex has minimum degree;
//! * deleting a minimum-degree vertex never lowers edge density, so given a
//!   lower bound `L` for `ex(n, F)`, every extremal graph descends through
//!   graphs with `e · C(n,2) >= L · C(m,2)` and everything sparser is cut.
//!
//! `L` comes from a Turán graph `T(n, χ_min - 1)` grown greedily.
//!
//! A second path ([`labeled_ex`]) filters every labelled graph and exists to
//! cross-check the first on `n <= 7`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_graph, Certificate};
use crate::embed::is_free;
use crate::error::{Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::Graph;
use crate::graph6;
use crate::standard::turan;

pub const DEFAULT_CAP: usize = 10;
pub const LABELED_CAP: usize = 7;
pub const RESULT_SCHEMA: &str = "turan.extremal-result/v1";
pub const THRESHOLD_SCHEMA: &str = "turan.threshold-report/v1";

/// Resource limits for one oracle run. Node counts are exact when the run
/// is sequential and approximate under parallelism; results never are.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub cap: usize,
    /// Permits `n > cap`.
    pub allow_over_cap: bool,
    pub budget: Budget,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_CAP,
            allow_over_cap: false,
            budget: Budget::default(),
        }
    }
}

/// `ex(n, F)` with the extremal graphs up to isomorphism, sorted by
/// certificate and stored in canonical labelling.
#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub n: usize,
    pub family: ForbiddenFamily,
    pub ex_value: usize,
    pub witnesses: Vec<Graph>,
    /// Whether the search provably covered every isomorphism class.
    pub exhaustive: bool,
}

/// JSON form of [`ExtremalResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub schema: String,
    pub n: usize,
    pub family: Vec<String>,
    pub ex_value: usize,
    pub witnesses: Vec<String>,
    pub exhaustive: bool,
}

impl ExtremalResult {
    pub fn to_record(&self) -> ExtremalRecord {
        ExtremalRecord {
            schema: RESULT_SCHEMA.to_string(),
            n: self.n,
            family: self.family.tokens(),
            ex_value: self.ex_value,
            witnesses: self.witnesses.iter().map(graph6::encode).collect(),
            exhaustive: self.exhaustive,
        }
    }

    pub fn from_record(record: &ExtremalRecord) -> Result<Self> {
        if record.schema != RESULT_SCHEMA {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema `{}`",
                record.schema
            )));
        }
        Ok(ExtremalResult {
            n: record.n,
            family: ForbiddenFamily::parse(&record.family.join(","))?,
            ex_value: record.ex_value,
            witnesses: record
                .witnesses
                .iter()
                .map(|w| graph6::decode(w))
                .collect::<Result<_>>()?,
            exhaustive: record.exhaustive,
        })
    }
}

/// Family-free graph on `n` vertices grown greedily from `T(n, χ_min - 1)`.
pub fn greedy_lower_bound(n: usize, family: &ForbiddenFamily) -> Option<Graph> {
    let r = family.min_chi().saturating_sub(1);
    let mut g = if r >= 1 { turan(n, r) } else { Graph::empty(n) };
    if !is_free(&g, family) {
        return None;
    }
    for v in 1..n {
        for u in 0..v {
            if !g.has_edge(u, v) {
                g.add_edge(u, v);
                if !is_free(&g, family) {
                    g.remove_edge(u, v);
                }
            }
        }
    }
    Some(g)
}

struct Meter {
    nodes: AtomicU64,
    stop: AtomicBool,
    budget: Budget,
    start: Instant,
}

impl Meter {
    fn tick(&self, count: u64) -> bool {
        let total = self.nodes.fetch_add(count, Ordering::Relaxed) + count;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| total > m);
        let over_time = self
            .budget
            .time_limit
            .is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stopped()
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

fn pairs(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Exact `ex(n, family)` and `EX(n, family)` up to isomorphism.
pub fn brute_force_ex(n: usize, family: &ForbiddenFamily, config: &OracleConfig) -> Result<ExtremalResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("oracle needs n >= 1".into()));
    }
    if n > config.cap && !config.allow_over_cap {
        return Err(Error::OverCap {
            n,
            cap: config.cap,
            hint: "pass an explicit over-cap acknowledgement to run anyway",
        });
    }
    let seed = greedy_lower_bound(n, family).ok_or_else(|| {
        Error::InvalidArgument(format!("no {family}-free graph on {n} vertices exists"))
    })?;
    let lower = seed.edge_count();
    let meter = Meter {
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        budget: config.budget.clone(),
        start: Instant::now(),
    };
    let partial = |meter: &Meter| Error::BudgetExceeded {
        nodes: meter.nodes.load(Ordering::Relaxed),
        partial: Box::new(ExtremalResult {
            n,
            family: family.clone(),
            ex_value: lower,
            witnesses: vec![canonical_graph(&seed)],
            exhaustive: false,
        }),
    };

    let mut level = vec![Graph::empty(1)];
    for m in 2..n {
        level = next_level(&level, m, n, lower, family, &meter);
        if meter.stopped() {
            return Err(partial(&meter));
        }
    }
    let (ex_value, witnesses) = if n == 1 {
        (0, vec![Graph::empty(1)])
    } else {
        final_level(&level, n, lower, family, &meter)
    };
    if meter.stopped() {
        return Err(partial(&meter));
    }
    Ok(ExtremalResult {
        n,
        family: family.clone(),
        ex_value,
        witnesses,
        exhaustive: true,
    })
}

/// Children of `parent` on `m` vertices whose new vertex `m - 1` has
/// minimum degree and which meet the density cut; returned with edge counts.
fn children(parent: &Graph, m: usize, min_edges: usize) -> Vec<(usize, Graph)> {
    let k = m - 1;
    let degrees = parent.degrees();
    let base = parent.edge_count();
    let mut out = Vec::new();
    for mask in 0u64..1 << k {
        let d = mask.count_ones() as usize;
        if base + d < min_edges {
            continue;
        }
        let min_other = (0..k)
            .map(|u| degrees[u] + (mask >> u & 1) as usize)
            .min()
            .unwrap_or(usize::MAX);
        if d > min_other {
            continue;
        }
        let mut child = parent.with_isolated(1);
        for u in 0..k {
            if mask >> u & 1 == 1 {
                child.add_edge(u, k);
            }
        }
        out.push((base + d, child));
    }
    out
}

/// Smallest edge count on `m` vertices that can still lead to a graph with
/// `lower` edges on `n` vertices.
fn density_floor(m: usize, n: usize, lower: usize) -> usize {
    (lower * pairs(m)).div_ceil(pairs(n).max(1))
}

fn next_level(
    level: &[Graph],
    m: usize,
    n: usize,
    lower: usize,
    family: &ForbiddenFamily,
    meter: &Meter,
) -> Vec<Graph> {
    let floor = density_floor(m, n, lower);
    let found: Vec<Vec<(Certificate, Graph)>> = level
        .par_iter()
        .map(|parent| {
            let mut local = Vec::new();
            let kids = children(parent, m, floor);
            if !meter.tick(kids.len() as u64) {
                return local;
            }
            for (_, child) in kids {
                if is_free(&child, family) {
                    local.push((canonical_form(&child), child));
                }
            }
            local
        })
        .collect();
    let mut unique: BTreeMap<Certificate, Graph> = BTreeMap::new();
    for (cert, g) in found.into_iter().flatten() {
        unique.entry(cert).or_insert(g);
    }
    unique.into_values().collect()
}

fn final_level(
    level: &[Graph],
    n: usize,
    lower: usize,
    family: &ForbiddenFamily,
    meter: &Meter,
) -> (usize, Vec<Graph>) {
    let mut candidates: Vec<(usize, Graph)> = level
        .par_iter()
        .flat_map_iter(|parent| children(parent, n, lower))
        .collect();
    // densest first; stop after the first edge count with a free graph
    candidates.sort_by_key(|c| std::cmp::Reverse(c.0));
    let mut start = 0;
    while start < candidates.len() {
        let e = candidates[start].0;
        let end = start + candidates[start..].iter().take_while(|c| c.0 == e).count();
        if !meter.tick((end - start) as u64) {
            return (0, Vec::new());
        }
        let free: Vec<(Certificate, Graph)> = candidates[start..end]
            .par_iter()
            .filter(|(_, g)| is_free(g, family))
            .map(|(_, g)| (canonical_form(g), canonical_graph(g)))
            .collect();
        if !free.is_empty() {
            let unique: BTreeMap<Certificate, Graph> = free.into_iter().collect();
            return (e, unique.into_values().collect());
        }
        start = end;
    }
    unreachable!("the seed graph meets the lower bound and is always generated")
}

/// Independent cross-check: filters all `2^C(n,2)` labelled graphs.
pub fn labeled_ex(n: usize, family: &ForbiddenFamily) -> Result<ExtremalResult> {
    if n == 0 || n > LABELED_CAP {
        return Err(Error::OverCap {
            n,
            cap: LABELED_CAP,
            hint: "the labelled filter is a cross-check for tiny orders only",
        });
    }
    let slots: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total = 1u64 << slots.len();
    let build = |mask: u64| {
        let mut g = Graph::empty(n);
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        g
    };
    let best = (0..total)
        .into_par_iter()
        .filter(|&mask| is_free(&build(mask), family))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .ok_or_else(|| Error::InvalidArgument(format!("no {family}-free graph on {n} vertices exists")))?;
    let certs: BTreeMap<Certificate, Graph> = (0..total)
        .into_par_iter()
        .filter(|&mask| mask.count_ones() as usize == best)
        .filter_map(|mask| {
            let g = build(mask);
            is_free(&g, family).then(|| (canonical_form(&g), canonical_graph(&g)))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(ExtremalResult {
        n,
        family: family.clone(),
        ex_value: best,
        witnesses: certs.into_values().collect(),
        exhaustive: true,
    })
}

/// `true` iff adding any missing edge to `witness` creates a copy of the family.
pub fn maximality_audit(witness: &Graph, family: &ForbiddenFamily) -> bool {
    let n = witness.n();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            if witness.has_edge(u, v) {
                return true;
            }
            let mut g = witness.clone();
            g.add_edge(u, v);
            !is_free(&g, family)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub n: usize,
    /// `None` when the oracle ran out of budget.
    pub oracle: Option<usize>,
    pub formula: u64,
    pub matches: Option<bool>,
    pub witness_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub schema: String,
    pub family: Vec<String>,
    pub rows: Vec<ThresholdRow>,
    /// Least scanned `n` from which every later row matches.
    pub first_agreement: Option<usize>,
}

impl ThresholdReport {
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>4}  {:>8}  {:>8}  {:>6}  {:>9}\n",
            "n", "oracle", "formula", "match", "witnesses"
        );
        for row in &self.rows {
            let show = |v: Option<usize>| v.map_or("?".to_string(), |x| x.to_string());
            out.push_str(&format!(
                "{:>4}  {:>8}  {:>8}  {:>6}  {:>9}\n",
                row.n,
                show(row.oracle),
                row.formula,
                row.matches.map_or("?", |m| if m { "yes" } else { "no" }),
                show(row.witness_count),
            ));
        }
        match self.first_agreement {
            Some(n) => out.push_str(&format!("first agreement: n = {n}\n")),
            None => out.push_str("first agreement: none in range\n"),
        }
        out
    }
}

/// Compares the oracle with `formula` for every `n` in `range`.
pub fn threshold_scan(
    family: &ForbiddenFamily,
    range: std::ops::RangeInclusive<usize>,
    formula: impl Fn(usize) -> u64,
    config: &OracleConfig,
) -> Result<ThresholdReport> {
    let mut rows = Vec::new();
    for n in range {
        let value = formula(n);
        let row = match brute_force_ex(n, family, config) {
            Ok(res) => ThresholdRow {
                n,
                oracle: Some(res.ex_value),
                formula: value,
                matches: Some(res.ex_value as u64 == value),
                witness_count: Some(res.witnesses.len()),
            },
            Err(Error::BudgetExceeded { .. }) => ThresholdRow {
                n,
                oracle: None,
                formula: value,
                matches: None,
                witness_count: None,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    let mut first_agreement = None;
    for row in rows.iter().rev() {
        if row.matches != Some(true) {
            break;
        }
        first_agreement = Some(row.n);
    }
    Ok(ThresholdReport {
        schema: THRESHOLD_SCHEMA.to_string(),
        family: family.tokens(),
        rows,
        first_agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::standard::{cycle, turan_edge_count};

    fn fam(spec: &str) -> ForbiddenFamily {
        ForbiddenFamily::parse(spec).unwrap()
    }

    #[test]
    fn triangle_free_five() {
        let res = brute_force_ex(5, &fam("k3"), &OracleConfig::default()).unwrap();
        assert_eq!(res.ex_value, 6);
        assert_eq!(res.witnesses.len(), 1);
        assert!(are_isomorphic(&res.witnesses[0], &turan(5, 2)));
        assert!(res.exhaustive);
    }

    #[test]
    fn mantel_seven() {
        let res = brute_force_ex(7, &fam("k3"), &OracleConfig::default()).unwrap();
        assert_eq!(res.ex_value, 12);
    }

    #[test]
    fn two_triangles_six() {
        let res = brute_force_ex(6, &fam("k3,k3"), &OracleConfig::default()).unwrap();
        assert!(res.ex_value >= 11);
        for w in &res.witnesses {
            assert!(is_free(w, &fam("k3,k3")));
            assert_eq!(w.edge_count(), res.ex_value);
        }
    }

    #[test]
    fn trivial_orders() {
        let res = brute_force_ex(1, &fam("k3"), &OracleConfig::default()).unwrap();
        assert_eq!((res.ex_value, res.witnesses.len()), (0, 1));
        let res = brute_force_ex(2, &fam("k3"), &OracleConfig::default()).unwrap();
        assert_eq!(res.ex_value, 1);
    }

    #[test]
    fn labeled_agrees_on_tiny_orders() {
        for spec in ["k3", "c4", "k3,k3", "k4"] {
            let f = fam(spec);
            for n in 1..=5 {
                let a = brute_force_ex(n, &f, &OracleConfig::default()).unwrap();
                let b = labeled_ex(n, &f).unwrap();
                assert_eq!(a.ex_value, b.ex_value, "{spec} n={n}");
                assert_eq!(a.witnesses, b.witnesses, "{spec} n={n}");
            }
        }
    }

    #[test]
    fn over_cap_and_budget() {
        let f = fam("k3");
        assert!(matches!(
            brute_force_ex(11, &f, &OracleConfig::default()),
            Err(Error::OverCap { .. })
        ));
        let tight = OracleConfig {
            budget: Budget {
                max_nodes: Some(5),
                time_limit: None,
            },
            ..OracleConfig::default()
        };
        match brute_force_ex(8, &fam("c4"), &tight) {
            Err(Error::BudgetExceeded { partial, .. }) => {
                assert!(!partial.exhaustive);
                assert!(is_free(&partial.witnesses[0], &fam("c4")));
                assert_eq!(partial.witnesses[0].edge_count(), partial.ex_value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn turan_k4_small() {
        for n in 4..=6 {
            let res = brute_force_ex(n, &fam("k4"), &OracleConfig::default()).unwrap();
            assert_eq!(res.ex_value, turan_edge_count(n, 3));
        }
    }

    #[test]
    fn maximality_examples() {
        assert!(maximality_audit(&turan(5, 2), &fam("k3")));
        assert!(!maximality_audit(&cycle(6), &fam("k3")));
    }

    #[test]
    fn scan_mantel_and_empty_range() {
        let rep = threshold_scan(&fam("k3"), 3..=8, |n| (n * n / 4) as u64, &OracleConfig::default()).unwrap();
        assert!(rep.rows.iter().all(|r| r.matches == Some(true)));
        assert_eq!(rep.first_agreement, Some(3));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = threshold_scan(&fam("k3"), 5..=4, |_| 0, &OracleConfig::default()).unwrap();
        assert!(empty.rows.is_empty());
        assert_eq!(empty.first_agreement, None);
    }

    #[test]
    fn record_round_trip() {
        let res = brute_force_ex(5, &fam("k3,k3"), &OracleConfig::default()).unwrap();
        let record = res.to_record();
        let json = serde_json::to_string_pretty(&record).unwrap();
        let back: ExtremalRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
        let again = ExtremalResult::from_record(&back).unwrap();
        assert_eq!(again.witnesses, res.witnesses);
    }
}
