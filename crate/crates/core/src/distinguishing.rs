//! Distinguishing labelings, the distinguishing number `D(G)`, and the
//! number `D(G,k)` of inequivalent distinguishing `k`-labelings.
//!
//! The general route is a backtracking search over labelings. Colours are
//! assigned vertex by vertex in order of descending degree; a partial
//! labeling is abandoned as soon as a non-identity automorphism preserves it
//! while fixing every still-unlabelled vertex, since that automorphism then
//! preserves every completion. Colours are introduced in order (restricted
//! growth), which is sound because renaming colours preserves the
//! distinguishing property.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::automorphism::{
    automorphism_group, canonical_form, canonical_form_colored, has_nontrivial_automorphism,
};
use crate::graph::{
    complete_multipartite_parts, connected_components, Bits, Combinations, Graph, GraphError, PartClass,
};

/// Upper limit on `k^n` for the labeling enumerations behind `D(G,k)`.
pub const DEFAULT_LABELING_BUDGET: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    #[error("the distinguishing number of the order-0 graph is undefined")]
    EmptyGraph,
    #[error("labeling has {found} entries but the graph has {expected} vertices")]
    LabelingLength { expected: usize, found: usize },
    #[error("colour 0 at vertex {0}; colours start at 1")]
    InvalidColor(usize),
    #[error("the number of colours must be at least 1")]
    ZeroColors,
    #[error("enumerating {k}^{n} labelings exceeds the budget of {budget}")]
    BudgetExceeded { n: usize, k: u32, budget: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Vertex colouring with colours `1..=k`. Not required to be proper.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(Vec<u32>);

impl Labeling {
    pub fn new(colors: Vec<u32>) -> Result<Self, DistError> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(DistError::InvalidColor(v));
        }
        Ok(Labeling(colors))
    }

    pub fn constant(n: usize) -> Self {
        Labeling(vec![1; n])
    }

    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest colour used.
    pub fn num_colors(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `classes[i]` holds the vertices of colour `i + 1`.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors() as usize];
        for (v, &c) in self.0.iter().enumerate() {
            classes[c as usize - 1].push(v);
        }
        classes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Search,
    MultipartiteFormula,
    DisjointCopiesFormula,
    AsymmetricShortcut,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Search => "search",
            Method::MultipartiteFormula => "multipartiteFormula",
            Method::DisjointCopiesFormula => "disjointCopiesFormula",
            Method::AsymmetricShortcut => "asymmetricShortcut",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistResult {
    pub value: usize,
    /// A distinguishing labeling with at most `value` colours.
    pub witness: Labeling,
    pub method: Method,
}

pub fn is_distinguishing(g: &Graph, phi: &Labeling) -> Result<bool, DistError> {
    if phi.len() != g.order() {
        return Err(DistError::LabelingLength { expected: g.order(), found: phi.len() });
    }
    Ok(!has_nontrivial_automorphism(g, Some(phi.colors())))
}

/// Backtracking enumeration of distinguishing labelings with colours `1..=k`.
struct LabelingSearch<'a> {
    g: &'a Graph,
    k: u32,
    order: Vec<usize>,
    colors: Vec<u32>,
    restricted_growth: bool,
}

impl<'a> LabelingSearch<'a> {
    fn new(g: &'a Graph, k: u32, restricted_growth: bool) -> Self {
        let n = g.order();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        // Unlabelled vertices carry private colours above k.
        let colors = (0..n).map(|v| k + 1 + v as u32).collect();
        LabelingSearch { g, k, order, colors, restricted_growth }
    }

    /// Calls `visit(labeling, colours used)` on every distinguishing labeling
    /// (restricted-growth representatives only, when enabled).
    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32], u32) -> ControlFlow<()>,
    {
        if self.g.order() == 0 {
            return visit(&[], 0);
        }
        self.dfs(0, 0, visit)
    }

    fn dfs<F>(&mut self, t: usize, used: u32, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32], u32) -> ControlFlow<()>,
    {
        if t == self.order.len() {
            return visit(&self.colors, used);
        }
        let v = self.order[t];
        let top = if self.restricted_growth { self.k.min(used + 1) } else { self.k };
        for c in 1..=top {
            self.colors[v] = c;
            if !has_nontrivial_automorphism(self.g, Some(&self.colors)) {
                self.dfs(t + 1, used.max(c), visit)?;
            }
        }
        self.colors[v] = self.k + 1 + v as u32;
        ControlFlow::Continue(())
    }
}

/// Some distinguishing labeling with at most `k` colours, if one exists.
pub fn find_distinguishing_labeling(g: &Graph, k: u32) -> Option<Labeling> {
    if k == 0 {
        return None;
    }
    let mut found = None;
    let _ = LabelingSearch::new(g, k, true).run(&mut |colors, _| {
        found = Some(Labeling(colors.to_vec()));
        ControlFlow::Break(())
    });
    found
}

fn check_budget(n: usize, k: u32, budget: u128) -> Result<(), DistError> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(u128::from(k));
        if total > budget {
            return Err(DistError::BudgetExceeded { n, k, budget });
        }
    }
    Ok(())
}

/// Number of distinguishing labelings `V -> {1..k}` (not up to symmetry).
pub fn count_distinguishing_labelings(g: &Graph, k: u32, budget: u128) -> Result<u128, DistError> {
    if k == 0 {
        return Err(DistError::ZeroColors);
    }
    check_budget(g.order(), k, budget)?;
    let n = g.order() as u32;
    if !has_nontrivial_automorphism(g, None) {
        return Ok(u128::from(k).pow(n));
    }
    // Each restricted-growth labeling with j colours stands for the
    // k(k-1)...(k-j+1) labelings obtained by renaming its colours.
    let falling: Vec<u128> = (0..=k)
        .scan(1u128, |acc, j| {
            let cur = *acc;
            *acc *= u128::from(k - j.min(k));
            Some(cur)
        })
        .collect();
    let mut total = 0u128;
    let _ = LabelingSearch::new(g, k, true).run(&mut |_, used| {
        total += falling[used as usize];
        ControlFlow::Continue(())
    });
    Ok(total)
}

/// Exact result of a `D(G,k)` computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishingCount {
    /// Distinguishing labelings with colours in `1..=k`.
    pub raw: u128,
    pub aut_order: BigUint,
    /// `raw / |Aut(G)|`: the number of Aut(G)-orbits.
    pub inequivalent: u128,
}

/// `D(G,k)`. `Aut(G)` acts freely on distinguishing labelings, so the
/// orbit count is the raw count divided by the group order.
pub fn count_inequivalent_distinguishing(g: &Graph, k: u32) -> Result<DistinguishingCount, DistError> {
    count_inequivalent_distinguishing_with_budget(g, k, DEFAULT_LABELING_BUDGET)
}

pub fn count_inequivalent_distinguishing_with_budget(
    g: &Graph,
    k: u32,
    budget: u128,
) -> Result<DistinguishingCount, DistError> {
    let raw = count_distinguishing_labelings(g, k, budget)?;
    let aut_order = automorphism_group(g, None).order;
    let raw_big = BigUint::from(raw);
    assert!(
        (&raw_big % &aut_order) == BigUint::from(0u32),
        "free action violated: {raw} distinguishing labelings, |Aut| = {aut_order}"
    );
    let inequivalent = (raw_big / &aut_order).to_u128().expect("quotient bounded by raw count");
    Ok(DistinguishingCount { raw, aut_order, inequivalent })
}

/// Calls `visit` on every distinguishing labeling with colours `1..=k` whose
/// colours first appear in increasing order along the search's vertex order.
/// Every distinguishing labeling is a colour renaming of exactly one of these.
pub fn visit_distinguishing_labelings<F>(
    g: &Graph,
    k: u32,
    budget: u128,
    mut visit: F,
) -> Result<(), DistError>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    if k == 0 {
        return Err(DistError::ZeroColors);
    }
    check_budget(g.order(), k, budget)?;
    let _ = LabelingSearch::new(g, k, true).run(&mut |colors, _| visit(colors));
    Ok(())
}

/// Up to `limit` pairwise inequivalent distinguishing labelings with colours `1..=k`.
pub fn inequivalent_distinguishing_labelings(g: &Graph, k: u32, limit: usize) -> Vec<Labeling> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if limit == 0 || k == 0 {
        return out;
    }
    let _ = LabelingSearch::new(g, k, false).run(&mut |colors, _| {
        if seen.insert(canonical_form_colored(g, colors).certificate) {
            out.push(Labeling(colors.to_vec()));
        }
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// Saturating binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `min { p : C(p, a_i) >= j_i for all i }` for the complete multipartite
/// graph with `j_i` parts of size `a_i`.
pub fn multipartite_distinguishing_number(parts: &[PartClass]) -> usize {
    (1..)
        .find(|&p| parts.iter().all(|c| binomial(p, c.size) >= c.count as u128))
        .expect("large enough p always exists")
}

/// `min { k : D(H,k) >= c }`, the distinguishing number of `c` disjoint copies
/// of the connected graph `h`.
pub fn disjoint_copies_distinguishing_number(h: &Graph, c: usize) -> Result<usize, DistError> {
    disjoint_copies_with_budget(h, c, DEFAULT_LABELING_BUDGET)
}

pub fn disjoint_copies_with_budget(h: &Graph, c: usize, budget: u128) -> Result<usize, DistError> {
    if h.order() == 0 {
        return Err(DistError::EmptyGraph);
    }
    if !h.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    if c == 0 {
        return Err(GraphError::InvalidParameters("copy count must be at least 1".into()).into());
    }
    for k in 1u32.. {
        let count = count_inequivalent_distinguishing_with_budget(h, k, budget)?;
        if count.inequivalent >= c as u128 {
            return Ok(k as usize);
        }
    }
    unreachable!()
}

/// `D(G)` with a witness labeling, using the closed forms where they apply.
pub fn distinguishing_number(g: &Graph) -> Result<DistResult, DistError> {
    let n = g.order();
    if n == 0 {
        return Err(DistError::EmptyGraph);
    }
    if !has_nontrivial_automorphism(g, None) {
        return Ok(DistResult {
            value: 1,
            witness: Labeling::constant(n),
            method: Method::AsymmetricShortcut,
        });
    }
    if let Some(parts) = complete_multipartite_parts(g) {
        return Ok(multipartite_result(g, &parts));
    }
    if !g.is_connected() {
        match disconnected_result(g) {
            Ok(r) => return Ok(r),
            Err(DistError::BudgetExceeded { .. }) => return search_result(g, n as u32),
            Err(e) => return Err(e),
        }
    }
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    // Connected graphs always have a distinguishing labeling with Δ+1 colours.
    search_result(g, max_degree as u32 + 1)
}

/// `D(G)` by labeling search alone, without any closed form.
pub fn distinguishing_number_by_search(g: &Graph) -> Result<DistResult, DistError> {
    if g.order() == 0 {
        return Err(DistError::EmptyGraph);
    }
    search_result(g, g.order() as u32)
}

fn search_result(g: &Graph, max_k: u32) -> Result<DistResult, DistError> {
    for k in 1..=max_k {
        if let Some(witness) = find_distinguishing_labeling(g, k) {
            return Ok(DistResult { value: k as usize, witness, method: Method::Search });
        }
    }
    panic!("no distinguishing labeling with {max_k} colours for {g:?}");
}

fn multipartite_result(g: &Graph, parts: &[PartClass]) -> DistResult {
    let p = multipartite_distinguishing_number(parts);
    let mut colors = vec![0u32; g.order()];
    // Parts are the components of the complement; equal-size parts get
    // distinct colour subsets, and each part gets distinct colours.
    let mut comps = g.complement().component_masks();
    comps.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut i = 0;
    while i < comps.len() {
        let size = comps[i].count_ones() as usize;
        let mut subsets = Combinations::new(p, size);
        while i < comps.len() && comps[i].count_ones() as usize == size {
            let subset = subsets.next().expect("formula guarantees enough subsets");
            for (v, c) in Bits(comps[i]).zip(subset) {
                colors[v] = c as u32 + 1;
            }
            i += 1;
        }
    }
    let witness = Labeling(colors);
    debug_assert!(is_distinguishing(g, &witness).unwrap());
    DistResult { value: p, witness, method: Method::MultipartiteFormula }
}

fn disconnected_result(g: &Graph) -> Result<DistResult, DistError> {
    let comps = connected_components(g);
    let canon: Vec<_> = comps.iter().map(|c| canonical_form(&c.graph)).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..comps.len() {
        match classes.iter_mut().find(|cl| canon[cl[0]].certificate == canon[i].certificate) {
            Some(cl) => cl.push(i),
            None => classes.push(vec![i]),
        }
    }

    let mut values = Vec::with_capacity(classes.len());
    for cl in &classes {
        let h = &comps[cl[0]].graph;
        let value = if cl.len() == 1 {
            distinguishing_number(h)?.value
        } else {
            disjoint_copies_distinguishing_number(h, cl.len())?
        };
        values.push(value);
    }
    let d = values.iter().copied().max().expect("at least one component");

    let mut colors = vec![0u32; g.order()];
    for cl in &classes {
        let rep = cl[0];
        let h = &comps[rep].graph;
        let labelings = if cl.len() == 1 {
            vec![distinguishing_number(h)?.witness]
        } else {
            inequivalent_distinguishing_labelings(h, d as u32, cl.len())
        };
        assert_eq!(labelings.len(), cl.len(), "not enough inequivalent labelings");
        let to_rep = canon[rep].relabeling.inverse();
        for (&ci, lab) in cl.iter().zip(&labelings) {
            for (x, &v) in comps[ci].vertices.iter().enumerate() {
                // x -> canonical position -> vertex of the representative
                let y = to_rep.apply(canon[ci].relabeling.apply(x));
                colors[v] = lab.colors()[y];
            }
        }
    }
    let witness = Labeling(colors);
    debug_assert!(is_distinguishing(g, &witness).unwrap());
    Ok(DistResult { value: d, witness, method: Method::DisjointCopiesFormula })
}
