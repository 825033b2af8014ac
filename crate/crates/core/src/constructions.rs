//! Extremal constructions and closed-form maxima.
//!
//! * odd wheels `W_{2k+1}`: `K_{n0, n-n0}` with a `(k-1)`-regular (or
//!   nearly regular) graph on short components inside the `n0` side and a
//!   single edge inside the other side;
//! * disjoint unions `F_1 ∪ ... ∪ F_h`: the joins `K_{ℓ-1} ∏ H`.
//!
//! Every evaluator here is a total function of its arguments. Whether the
//! value equals a Turán number at a given `n` is a question for the oracle.

use serde::{Deserialize, Serialize};

use crate::embed::{avoids_each, contains_subgraph};
use crate::error::{Error, Result};
use crate::family::ForbiddenFamily;
use crate::graph::{join, Graph};
use crate::oracle::{brute_force_ex, OracleConfig};
use crate::standard::{complete, path};

pub const RECIPE_SCHEMA: &str = "turan.construction-recipe/v1";

/// Maximum of a formula together with every maximising parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: u64,
    pub argmax: Vec<usize>,
}

/// One component of the short-component regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub order: usize,
    /// `false` for the single component carrying the degree-`(k-2)` vertex
    pub regular: bool,
}

/// Parameters of one construction, as written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub schema: String,
    pub n: usize,
    pub k: Option<usize>,
    pub ell: usize,
    pub n0: Option<usize>,
    pub component_layout: Vec<ComponentSpec>,
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Component orders for a `(k-1)`-regular or nearly regular graph on `n0`
/// vertices with every component of order in `[k, 2k-2]`, largest first.
///
/// When `k` is even a regular component needs even order, and exactly one
/// odd-order component (carrying the low-degree vertex) appears iff `n0` is
/// odd. Greedy with a feasibility lookahead, so the layout is the
/// lexicographically largest one.
pub fn u_family_layout(n0: usize, k: usize) -> Result<Vec<ComponentSpec>> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k must be >= 3, got {k}")));
    }
    if n0 < k {
        return Err(Error::Infeasible(format!(
            "n0 = {n0} < k = {k}: no (k-1)-regular or nearly regular graph fits"
        )));
    }
    let (lo, hi) = (k, 2 * k - 2);
    let parity_bound = k.is_multiple_of(2);
    let need_odd = parity_bound && n0 % 2 == 1;

    // reach[r][o]: r vertices can be split with `o` odd components left to place
    let mut reach = vec![[false; 2]; n0 + 1];
    reach[0][0] = true;
    for r in 1..=n0 {
        for odd in 0..2 {
            reach[r][odd] = (lo..=hi.min(r)).any(|m| {
                let is_odd = parity_bound && m % 2 == 1;
                match (is_odd, odd) {
                    (false, o) => reach[r - m][o],
                    (true, 1) => reach[r - m][0],
                    (true, _) => false,
                }
            });
        }
    }
    let mut odd_left = need_odd as usize;
    if !reach[n0][odd_left] {
        return Err(Error::Infeasible(format!(
            "n0 = {n0} cannot be split into components of order {lo}..={hi} \
             with the parity needed for degree {}",
            k - 1
        )));
    }
    let mut layout = Vec::new();
    let mut rem = n0;
    while rem > 0 {
        let m = (lo..=hi.min(rem))
            .rev()
            .find(|&m| {
                let is_odd = parity_bound && m % 2 == 1;
                match (is_odd, odd_left) {
                    (false, o) => reach[rem - m][o],
                    (true, 1) => reach[rem - m][0],
                    (true, _) => false,
                }
            })
            .expect("reachability table guarantees a step");
        let is_odd = parity_bound && m % 2 == 1;
        if is_odd {
            odd_left = 0;
        }
        layout.push(ComponentSpec {
            order: m,
            regular: !is_odd,
        });
        rem -= m;
    }
    Ok(layout)
}

/// A member of the `P_{2k-1}`-free, `(k-1)`-regular-or-nearly family on `n0`
/// vertices. Components are circulants; components occupy consecutive
/// vertex ranges in layout order.
pub fn u_family_member(n0: usize, k: usize) -> Result<Graph> {
    let layout = u_family_layout(n0, k)?;
    Ok(realize_layout(&layout, k))
}

fn realize_layout(layout: &[ComponentSpec], k: usize) -> Graph {
    let n0 = layout.iter().map(|c| c.order).sum();
    let mut g = Graph::empty(n0);
    let mut base = 0;
    for c in layout {
        let m = c.order;
        let d = k - 1;
        let mut link = |i: usize, j: usize| g.add_edge(base + i % m, base + j % m);
        for off in 1..=d / 2 {
            for i in 0..m {
                link(i, i + off);
            }
        }
        if d % 2 == 1 {
            if m % 2 == 0 {
                for i in 0..m / 2 {
                    link(i, i + m / 2);
                }
            } else {
                // vertex m-1 is left with degree d-1
                let half = (m - 1) / 2;
                for i in 0..half {
                    link(i, i + half);
                }
            }
        }
        base += m;
    }
    g
}

/// `true` iff `g` is `P_{2k-1}`-free and `(k-1)`-regular or nearly so.
pub fn validate_u_family(g: &Graph, k: usize) -> bool {
    if k < 2 || g.n() == 0 {
        return false;
    }
    let degrees = g.degrees();
    let full = degrees.iter().filter(|&&d| d == k - 1).count();
    let low = degrees.iter().filter(|&&d| d + 2 == k).count();
    let shape_ok = full == g.n() || (full + 1 == g.n() && low == 1);
    shape_ok && (g.n() < 2 * k - 1 || contains_subgraph(g, &path(2 * k - 1)).is_none())
}

/// `n0 (n - n0) + ⌊(k-1) n0 / 2⌋ + 1`.
pub fn wheel_bracket(n: usize, k: usize, n0: usize) -> u64 {
    let (n, k, n0) = (n as i64, k as i64, n0 as i64);
    (n0 * (n - n0) + ((k - 1) * n0).div_euclid(2) + 1) as u64
}

/// Maximum of [`wheel_bracket`] over `1 <= n0 <= n`; the closed form for
/// `ex(n, W_{2k+1})`.
pub fn wheel_extremal_value(n: usize, k: usize) -> FormulaValue {
    scan_max((1..=n).map(|n0| (n0, wheel_bracket(n, k, n0))))
}

fn scan_max(items: impl Iterator<Item = (usize, u64)>) -> FormulaValue {
    let mut best = FormulaValue {
        value: 0,
        argmax: Vec::new(),
    };
    for (arg, v) in items {
        if best.argmax.is_empty() || v > best.value {
            best.value = v;
            best.argmax = vec![arg];
        } else if v == best.value {
            best.argmax.push(arg);
        }
    }
    best
}

fn check_wheel_split(n: usize, k: usize, n0: usize) -> Result<Vec<ComponentSpec>> {
    if n0 < k {
        return Err(Error::Infeasible(format!("n0 = {n0} violates n0 >= k = {k}")));
    }
    if n0 + 2 > n {
        return Err(Error::Infeasible(format!(
            "n0 = {n0} violates n - n0 >= 2 (n = {n}): no room for the edge side"
        )));
    }
    u_family_layout(n0, k)
}

/// Recipe for the odd-wheel construction; defaults to the largest
/// maximising `n0` that admits a layout.
pub fn wheel_extremal_recipe(n: usize, k: usize, n0: Option<usize>) -> Result<ConstructionRecipe> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k must be >= 3, got {k}")));
    }
    let (n0, layout) = match n0 {
        Some(n0) => (n0, check_wheel_split(n, k, n0)?),
        None => {
            let value = wheel_extremal_value(n, k);
            value
                .argmax
                .iter()
                .rev()
                .find_map(|&n0| check_wheel_split(n, k, n0).ok().map(|l| (n0, l)))
                .ok_or_else(|| {
                    Error::Infeasible(format!(
                        "no maximising n0 in {:?} admits a construction for n = {n}, k = {k}",
                        value.argmax
                    ))
                })?
        }
    };
    Ok(ConstructionRecipe {
        schema: RECIPE_SCHEMA.to_string(),
        n,
        k: Some(k),
        ell: 1,
        n0: Some(n0),
        component_layout: layout,
    })
}

/// Builds a recipe. Vertices `0..n0` form the regular side, `n0..n` the
/// other; the extra edge joins `n0` and `n0 + 1`. With `ell > 1` the whole
/// thing is the `H` of `K_{ell-1} ∏ H` on `n - ell + 1` vertices.
pub fn build_recipe(recipe: &ConstructionRecipe) -> Result<Graph> {
    let k = recipe
        .k
        .ok_or_else(|| Error::InvalidArgument("recipe has no wheel parameter k".into()))?;
    let n0 = recipe
        .n0
        .ok_or_else(|| Error::InvalidArgument("recipe has no n0".into()))?;
    if recipe.ell == 0 || recipe.ell > recipe.n {
        return Err(Error::InvalidArgument(format!("ell = {} out of range", recipe.ell)));
    }
    let m = recipe.n - recipe.ell + 1;
    let layout = check_wheel_split(m, k, n0)?;
    if layout != recipe.component_layout {
        return Err(Error::InvalidArgument(
            "component layout does not match (n0, k)".into(),
        ));
    }
    let inner = realize_layout(&layout, k);
    let mut h = Graph::empty(m);
    for (u, v) in inner.edges() {
        h.add_edge(u, v);
    }
    for u in 0..n0 {
        for v in n0..m {
            h.add_edge(u, v);
        }
    }
    h.add_edge(n0, n0 + 1);
    union_extremal_graph(recipe.n, recipe.ell, &h)
}

/// `K_{n0, n-n0}` plus a `u_family_member` on the `n0` side plus one edge.
pub fn wheel_extremal_graph(n: usize, k: usize, n0: Option<usize>) -> Result<Graph> {
    build_recipe(&wheel_extremal_recipe(n, k, n0)?)
}

/// `max over ℓ` of `C(ℓ-1,2) + (ℓ-1)(n-ℓ+1) + ex(n-ℓ+1, F_ℓ)`.
///
/// `provider(m, i)` supplies `ex(m, F_{i+1})` (zero-based pattern index).
/// Terms with `ℓ > n` have no vertices left for `H` and are skipped.
pub fn union_extremal_value(
    n: usize,
    family_len: usize,
    mut provider: impl FnMut(usize, usize) -> Result<u64>,
) -> Result<FormulaValue> {
    if family_len == 0 || n == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and a nonempty family".into()));
    }
    let mut terms = Vec::new();
    for ell in 1..=family_len.min(n) {
        let m = n - ell + 1;
        let l = ell as i64;
        let head = choose2(l - 1) + (l - 1) * m as i64;
        terms.push((ell, head as u64 + provider(m, ell - 1)?));
    }
    Ok(scan_max(terms.into_iter()))
}

/// `K_{ell-1} ∏ h`, clique on vertices `0..ell-1`.
pub fn union_extremal_graph(n: usize, ell: usize, h: &Graph) -> Result<Graph> {
    if ell == 0 || ell > n + 1 || h.n() + ell - 1 != n {
        return Err(Error::SizeMismatch(format!(
            "|H| = {} but n - ell + 1 = {}",
            h.n(),
            (n + 1).saturating_sub(ell)
        )));
    }
    if ell == 1 {
        return Ok(h.clone());
    }
    join(&[complete(ell - 1), h.clone()])
}

/// `ex(n, m W_{2k+1})` closed form for `m` copies of one odd wheel:
/// `max over n0` of `C(m-1,2) + ⌊(k-1)n0/2⌋ + (n0+m-1)(n-m+1) - n0² + 1`.
pub fn multi_wheel_value(n: usize, m: usize, k: usize) -> FormulaValue {
    let (ni, mi, ki) = (n as i64, m as i64, k as i64);
    scan_max((1..=n).map(|n0| {
        let x = n0 as i64;
        let v = choose2(mi - 1) + ((ki - 1) * x).div_euclid(2) + (x + mi - 1) * (ni - mi + 1) - x * x + 1;
        (n0, v.max(0) as u64)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Caveat {
    /// `k = 2` (the wheel `W_5`): the bracket is evaluated, but it is not
    /// a known value of `ex(n, W_5)`.
    NoClosedForm { index: usize },
    NotDescending,
}

/// Union-of-odd-wheels maximum in both of its forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelUnionValue {
    pub value: u64,
    /// maximising `(i, n0)` pairs of the double maximum, `i` one-based
    pub argmax_pairs: Vec<(usize, usize)>,
    /// the per-index form `max_i C(i-1,2) + (i-1)(n-i+1) + ex(n-i+1, W_{2k_i+1})`
    pub per_index: FormulaValue,
    pub caveats: Vec<Caveat>,
}

/// Double-maximum term for index `i` (one-based) and `n0`.
pub fn union_wheels_term(n: usize, ks: &[usize], i: usize, n0: usize) -> i64 {
    let (n, n0, il) = (n as i64, n0 as i64, i as i64);
    let k = ks[i - 1] as i64;
    let shifted = n0 - il + 1;
    n0 * (n - n0) + (il - 1) * shifted + choose2(il - 1) + ((k - 1) * shifted).div_euclid(2) + 1
}

/// Evaluates the union-of-odd-wheels maximum as a double maximum over
/// `(i, n0)` and as a maximum over `i` of the composed single-wheel value,
/// and fails if they differ. Indices `i > n` leave no vertices and are
/// skipped in both forms.
pub fn union_wheels_value(n: usize, ks: &[usize]) -> Result<WheelUnionValue> {
    if ks.is_empty() || n == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and a nonempty ks".into()));
    }
    if let Some(&k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidArgument(format!("wheel parameter k = {k} < 2")));
    }
    let mut caveats: Vec<Caveat> = ks
        .iter()
        .enumerate()
        .filter(|(_, &k)| k == 2)
        .map(|(index, _)| Caveat::NoClosedForm { index })
        .collect();
    if ks.windows(2).any(|w| w[0] < w[1]) {
        caveats.push(Caveat::NotDescending);
    }
    let top = ks.len().min(n);

    let mut best: Option<i64> = None;
    let mut argmax_pairs = Vec::new();
    for i in 1..=top {
        for n0 in 1..=n {
            let v = union_wheels_term(n, ks, i, n0);
            match best {
                Some(b) if v < b => {}
                Some(b) if v == b => argmax_pairs.push((i, n0)),
                _ => {
                    best = Some(v);
                    argmax_pairs = vec![(i, n0)];
                }
            }
        }
    }
    let value = best.expect("at least one term") as u64;

    let per_index = union_extremal_value(n, top, |m, idx| Ok(wheel_extremal_value(m, ks[idx]).value))?;
    if per_index.value != value {
        return Err(Error::FormulaMismatch {
            n,
            left: value,
            right: per_index.value,
        });
    }
    Ok(WheelUnionValue {
        value,
        argmax_pairs,
        per_index,
        caveats,
    })
}

/// Result of the properly-ordered check at one `n`.
#[derive(Clone, Debug)]
pub struct ProperOrderReport {
    pub n: usize,
    pub holds: bool,
    pub entries: Vec<ProperOrderEntry>,
}

#[derive(Clone, Debug)]
pub struct ProperOrderEntry {
    /// zero-based pattern index
    pub index: usize,
    pub ex_value: usize,
    /// an extremal graph for `F_index` avoiding `F_1..=F_index`, if any
    pub witness: Option<Graph>,
}

/// For each prefix `F_1..F_ℓ`, looks for a graph in `EX(n, F_ℓ)` that
/// contains none of `F_1..F_ℓ`. The oracle enumerates `EX` up to
/// isomorphism, so a missing witness is a certificate.
pub fn check_properly_ordered(
    family: &ForbiddenFamily,
    n: usize,
    config: &OracleConfig,
) -> Result<ProperOrderReport> {
    let mut entries = Vec::new();
    for index in 0..family.len() {
        let res = brute_force_ex(n, &family.member(index), config)?;
        let prefix = family.prefix(index + 1);
        let witness = res.witnesses.iter().find(|w| avoids_each(w, &prefix)).cloned();
        entries.push(ProperOrderEntry {
            index,
            ex_value: res.ex_value,
            witness,
        });
    }
    Ok(ProperOrderReport {
        n,
        holds: entries.iter().all(|e| e.witness.is_some()),
        entries,
    })
}
