//! Exact subgraph containment for single patterns and for vertex-disjoint
//! copies of a whole family.
//!
//! Containment is non-induced: an embedding is an injective vertex map that
//! sends every pattern edge to a host edge.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::family::ForbiddenFamily;
use crate::graph::Graph;
use crate::set::{ones, VertexSet};

/// `map[p]` is the host vertex assigned to pattern vertex `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and edge preservation.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let mut seen = VertexSet::empty(host.n());
        for &v in &self.map {
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        pattern
            .edges()
            .all(|(a, b)| host.has_edge(self.map[a], self.map[b]))
    }

    pub fn image(&self, capacity: usize) -> VertexSet {
        let mut s = VertexSet::empty(capacity);
        for &v in &self.map {
            s.insert(v);
        }
        s
    }
}

/// Search plan for one pattern: a vertex order in which each vertex has as
/// many already-placed neighbours as possible, highest degree first.
#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    /// `back[i]`: positions `< i` adjacent to `order[i]`
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &Graph) -> Plan {
        let n = pattern.n();
        let mut placed = VertexSet::empty(n);
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| {
                    (
                        pattern.degree_into(v, &placed),
                        pattern.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            placed.insert(next);
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (0..i).filter(|&j| pattern.has_edge(order[j], v)).collect())
            .collect();
        let degree = order.iter().map(|&v| pattern.degree(v)).collect();
        Plan {
            order,
            back,
            degree,
        }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn to_embedding(&self, mapped: &[usize]) -> Embedding {
        let mut map = vec![0; self.len()];
        for (i, &p) in self.order.iter().enumerate() {
            map[p] = mapped[i];
        }
        Embedding { map }
    }
}

/// Backtracking matcher over bit rows of the host.
struct Matcher<'a> {
    host: &'a Graph,
    plan: &'a Plan,
    host_degree: Vec<usize>,
    mapped: Vec<usize>,
    used: VertexSet,
    /// one candidate buffer per depth
    buffers: Vec<Vec<u64>>,
}

impl<'a> Matcher<'a> {
    fn new(host: &'a Graph, plan: &'a Plan) -> Self {
        Matcher {
            host,
            plan,
            host_degree: host.degrees(),
            mapped: vec![0; plan.len()],
            used: VertexSet::empty(host.n()),
            buffers: vec![vec![0; host.row_words()]; plan.len()],
        }
    }

    /// Visits embeddings inside `avail` until `visit` returns `true`.
    /// Returns whether the visit was stopped.
    fn run(&mut self, avail: &VertexSet, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.plan.len() == 0 {
            return visit(&[]);
        }
        if self.plan.len() > avail.len() {
            return false;
        }
        self.used = VertexSet::empty(self.host.n());
        self.extend(0, avail, visit)
    }

    fn extend(
        &mut self,
        depth: usize,
        avail: &VertexSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.plan.len() {
            return visit(&self.mapped);
        }
        let mut cand = std::mem::take(&mut self.buffers[depth]);
        cand.copy_from_slice(avail.words());
        for &j in &self.plan.back[depth] {
            for (c, r) in cand.iter_mut().zip(self.host.row(self.mapped[j])) {
                *c &= r;
            }
        }
        for (c, u) in cand.iter_mut().zip(self.used.words()) {
            *c &= !u;
        }
        let need = self.plan.degree[depth];
        let mut stopped = false;
        for v in ones(&cand) {
            if self.host_degree[v] < need {
                continue;
            }
            self.mapped[depth] = v;
            self.used.insert(v);
            stopped = self.extend(depth + 1, avail, visit);
            self.used.remove(v);
            if stopped {
                break;
            }
        }
        self.buffers[depth] = cand;
        stopped
    }
}

/// Finds one copy of `pattern` in `host`, or proves there is none.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    contains_subgraph_within(host, pattern, &VertexSet::full(host.n()))
}

/// As [`contains_subgraph`], restricted to host vertices in `avail`.
pub fn contains_subgraph_within(host: &Graph, pattern: &Graph, avail: &VertexSet) -> Option<Embedding> {
    let plan = Plan::new(pattern);
    let mut matcher = Matcher::new(host, &plan);
    let mut found = None;
    matcher.run(avail, &mut |m| {
        found = Some(plan.to_embedding(m));
        true
    });
    found
}

/// Finds pairwise vertex-disjoint copies of every pattern of `family`,
/// reported in family order, or proves no such collection exists.
pub fn contains_disjoint_family(host: &Graph, family: &ForbiddenFamily) -> Option<Vec<Embedding>> {
    let graphs: Vec<&Graph> = family.graphs().collect();
    if graphs.len() == 1 {
        return contains_subgraph(host, graphs[0]).map(|e| vec![e]);
    }
    search_family(host, &graphs)
}

/// `true` iff `host` contains no disjoint union of the family's patterns.
pub fn is_free(host: &Graph, family: &ForbiddenFamily) -> bool {
    if family.total_order() > host.n() {
        return true;
    }
    contains_disjoint_family(host, family).is_none()
}

/// `true` iff `host` contains none of the family's patterns individually.
pub fn avoids_each(host: &Graph, family: &ForbiddenFamily) -> bool {
    family.graphs().all(|p| contains_subgraph(host, p).is_none())
}

const MEMO_LIMIT: usize = 4096;

/// Backtracking over copies of the patterns, largest first.
///
/// Copies are deduplicated by vertex set. A vertex whose removal leaves no
/// room for the remaining patterns never joins a copy of the current one.
/// `failed[i]` holds vertex sets known not to host patterns `i..`.
struct DisjointSearch<'a> {
    host: &'a Graph,
    plans: &'a [Plan],
    suffix_order: Vec<usize>,
    failed: Vec<Vec<VertexSet>>,
    found: Vec<(usize, Vec<usize>)>,
}

fn search_family(host: &Graph, graphs: &[&Graph]) -> Option<Vec<Embedding>> {
    // processing position -> family index
    let mut family_index: Vec<usize> = (0..graphs.len()).collect();
    family_index.sort_by_key(|&i| {
        (
            std::cmp::Reverse(graphs[i].n()),
            std::cmp::Reverse(graphs[i].edge_count()),
            i,
        )
    });
    let plans: Vec<Plan> = family_index.iter().map(|&i| Plan::new(graphs[i])).collect();
    let mut suffix_order = vec![0; plans.len() + 1];
    for i in (0..plans.len()).rev() {
        suffix_order[i] = suffix_order[i + 1] + plans[i].len();
    }
    let mut search = DisjointSearch {
        host,
        plans: &plans,
        suffix_order,
        failed: vec![Vec::new(); plans.len()],
        found: Vec::new(),
    };
    if !search.search(0, &VertexSet::full(host.n())) {
        return None;
    }
    let mut out: Vec<Option<Embedding>> = vec![None; plans.len()];
    for (level, mapped) in search.found {
        out[family_index[level]] = Some(plans[level].to_embedding(&mapped));
    }
    Some(out.into_iter().map(|e| e.expect("every level matched")).collect())
}

impl DisjointSearch<'_> {
    fn search(&mut self, level: usize, avail: &VertexSet) -> bool {
        if level == self.plans.len() {
            return true;
        }
        if avail.len() < self.suffix_order[level] {
            return false;
        }
        if self.failed[level].iter().any(|t| avail.is_subset_of(t)) {
            return false;
        }

        let mut allowed = avail.clone();
        if level + 1 < self.plans.len() {
            let mark = self.found.len();
            for v in avail.iter() {
                let mut rest = avail.clone();
                rest.remove(v);
                if !self.search(level + 1, &rest) {
                    allowed.remove(v);
                }
                self.found.truncate(mark);
            }
        }

        let (host, plans) = (self.host, self.plans);
        let mut matcher = Matcher::new(host, &plans[level]);
        let mut seen: HashSet<VertexSet> = HashSet::new();
        let mut hit: Option<Vec<usize>> = None;
        matcher.run(&allowed, &mut |mapped| {
            let mut image = VertexSet::empty(host.n());
            for &v in mapped {
                image.insert(v);
            }
            let mut rest = avail.clone();
            rest.difference_with(image.words());
            if !seen.insert(image) {
                return false;
            }
            if self.search(level + 1, &rest) {
                hit = Some(mapped.to_vec());
                return true;
            }
            false
        });
        match hit {
            Some(mapped) => {
                self.found.push((level, mapped));
                true
            }
            None => {
                if self.failed[level].len() < MEMO_LIMIT {
                    self.failed[level].push(avail.clone());
                }
                false
            }
        }
    }
}
