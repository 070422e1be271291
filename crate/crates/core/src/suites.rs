//! Exhaustive searches and named verification suites.
//!
//! Work items are processed in chunks on the rayon pool, or sequentially on
//! request. Results are sorted by canonical certificate before they are
//! returned, so output never depends on scheduling.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::audit::{audit_structural_theorems, AuditError, StructuralAudit};
use crate::automorphism::{
    automorphism_group, canonical_form, canonical_form_colored, has_nontrivial_automorphism,
};
use crate::criticality::{
    is_critical, is_critical_with, is_minimal_asymmetric_with, CriticalityConfig, CriticalityError,
    CriticalityReport, DistCache,
};
use crate::distinguishing::{
    count_distinguishing_labelings, disjoint_copies_distinguishing_number,
    distinguishing_number_by_search, multipartite_distinguishing_number, DistError,
    DEFAULT_LABELING_BUDGET,
};
use crate::enumerate::{enumerate_graphs, EnumerationConfig, EnumerationError};
use crate::graph::{
    complete_multipartite_from_sizes, complete_multipartite_parts, copies, Graph, NamedGraph,
};
use crate::graph6::write_graph6;

/// Default order bound for criticality searches.
pub const DEFAULT_CRITICAL_MAX_ORDER: usize = 8;
/// Default order bound for plain `D(G)` scans.
pub const DEFAULT_SCAN_MAX_ORDER: usize = 9;

const CHUNK: usize = 4096;

pub const SUITES: &[&str] = &[
    "no-1-critical",
    "two-critical",
    "delta-plus-one",
    "complement-invariance",
    "three-critical",
    "three-critical-maxdeg",
    "five-six-critical-disconnected",
    "critical-tree",
    "tree-bound",
    "multipartite-formula",
    "disjoint-copies-formula",
    "conjecture-regularity",
    "conjecture-complete-components",
    "structural-audit",
    "minimal-asymmetric",
    "strong-critical",
    "free-action",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Criticality(#[from] CriticalityError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteKind {
    Theorem,
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuiteFailure {
    pub graph6: String,
    pub assertion: String,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub kind: SuiteKind,
    pub max_order: usize,
    pub graphs_checked: u64,
    pub assertions: u64,
    /// Counterexamples; for conjecture suites these are findings, not errors.
    pub failures: Vec<SuiteFailure>,
    /// graph6 of the graphs the suite singles out (critical graphs found, ...).
    pub found: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    /// Conjecture suites always pass; theorem suites need zero failures.
    pub fn passed(&self) -> bool {
        self.kind == SuiteKind::Conjecture || self.failures.is_empty()
    }
}

/// Equality ignores `elapsed`.
impl PartialEq for SuiteResult {
    fn eq(&self, other: &Self) -> bool {
        (&self.name, self.kind, self.max_order, self.graphs_checked, self.assertions, &self.failures, &self.found)
            == (&other.name, other.kind, other.max_order, other.graphs_checked, other.assertions, &other.failures, &other.found)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub parallel: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { parallel: true }
    }
}

fn par_map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Runs `f` over the configured graphs in chunks and concatenates the results
/// in enumeration order.
fn scan<R, F>(config: &EnumerationConfig, parallel: bool, f: F) -> Result<Vec<R>, SuiteError>
where
    R: Send,
    F: Fn(&Graph) -> Result<R, SuiteError> + Sync + Send,
{
    let mut stream = enumerate_graphs(config)?;
    let mut out = Vec::new();
    loop {
        let chunk: Vec<Graph> = stream.by_ref().take(CHUNK).collect::<Result<_, _>>()?;
        if chunk.is_empty() {
            return Ok(out);
        }
        for r in par_map(&chunk, parallel, &f) {
            out.push(r?);
        }
    }
}

fn certificate(g: &Graph) -> Vec<u8> {
    canonical_form(g).certificate
}

fn sort_by_certificate<T>(items: &mut [T], graph: impl Fn(&T) -> &Graph) {
    items.sort_by_cached_key(|x| certificate(graph(x)));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalHit {
    pub graph: Graph,
    pub report: CriticalityReport,
    /// Present for critical graphs.
    pub audit: Option<StructuralAudit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub min_order: usize,
    pub max_order: usize,
    pub d: Option<usize>,
    pub disconnected_only: bool,
    /// Report strong critical graphs instead of critical ones.
    pub strong: bool,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(max_order: usize) -> Self {
        SearchConfig { min_order: 1, max_order, d: None, disconnected_only: false, strong: false, parallel: true }
    }
}

/// All critical (or strong critical) graphs within the configured orders,
/// sorted by canonical certificate. Critical hits carry their audit.
pub fn search_critical(config: &SearchConfig) -> Result<Vec<CriticalHit>, SuiteError> {
    let cache = DistCache::new();
    search_critical_with(config, &cache)
}

fn search_critical_with(config: &SearchConfig, cache: &DistCache) -> Result<Vec<CriticalHit>, SuiteError> {
    let crit = CriticalityConfig { max_order: config.max_order.max(1), ..Default::default() };
    let enum_cfg = EnumerationConfig {
        disconnected_only: config.disconnected_only,
        ..EnumerationConfig::orders(config.min_order.max(1), config.max_order)
    };
    let hits = scan(&enum_cfg, config.parallel, |g| {
        if let Some(d) = config.d {
            if cache.distinguishing_number(g)?.0 != d {
                return Ok(None);
            }
        }
        let report = is_critical_with(g, &crit, Some(cache))?;
        let keep = if config.strong { report.strong_critical == Some(true) } else { report.critical };
        if !keep {
            return Ok(None);
        }
        let audit = if report.critical { Some(audit_structural_theorems(g, &report)?) } else { None };
        Ok(Some(CriticalHit { graph: g.clone(), report, audit }))
    })?;
    let mut hits: Vec<CriticalHit> = hits.into_iter().flatten().collect();
    sort_by_certificate(&mut hits, |h| &h.graph);
    Ok(hits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalAsymmetricSearch {
    pub graphs: Vec<Graph>,
    /// Whether the complement of every hit is also a hit.
    pub closed_under_complement: bool,
}

/// All minimal asymmetric graphs of order `2..=max_order`.
pub fn search_minimal_asymmetric(max_order: usize) -> Result<MinimalAsymmetricSearch, SuiteError> {
    search_minimal_asymmetric_with(max_order, true)
}

fn search_minimal_asymmetric_with(max_order: usize, parallel: bool) -> Result<MinimalAsymmetricSearch, SuiteError> {
    let hits = scan(&EnumerationConfig::orders(2, max_order), parallel, |g| {
        Ok(is_minimal_asymmetric_with(g, max_order.max(2))?.then(|| g.clone()))
    })?;
    let mut graphs: Vec<Graph> = hits.into_iter().flatten().collect();
    sort_by_certificate(&mut graphs, |g| g);
    let certs: HashSet<Vec<u8>> = graphs.iter().map(certificate).collect();
    let closed_under_complement = graphs.iter().all(|g| certs.contains(&certificate(&g.complement())));
    Ok(MinimalAsymmetricSearch { graphs, closed_under_complement })
}

/// A tree with a central vertex from which all leaves are equidistant and
/// whose non-leaf vertices all have the same degree.
pub fn is_symmetric_tree(t: &Graph) -> bool {
    if !t.is_tree() || t.order() < 2 {
        return false;
    }
    let n = t.order();
    let ecc: Vec<usize> = (0..n)
        .map(|v| t.distances_from(v).into_iter().map(|d| d.expect("connected")).max().unwrap_or(0))
        .collect();
    let radius = *ecc.iter().min().unwrap();
    let centers: Vec<usize> = (0..n).filter(|&v| ecc[v] == radius).collect();
    if centers.len() != 1 {
        return false;
    }
    let dist = t.distances_from(centers[0]);
    let leaves: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 1).collect();
    let inner: Vec<usize> = (0..n).filter(|&v| t.degree(v) > 1).collect();
    leaves.iter().all(|&v| dist[v] == dist[leaves[0]])
        && inner.iter().all(|&v| t.degree(v) == t.degree(inner[0]))
}

pub fn is_path(g: &Graph) -> bool {
    g.is_tree() && (0..g.order()).all(|v| g.degree(v) <= 2)
}

/// Integer partitions of `n` into non-increasing parts.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

struct Run {
    result: SuiteResult,
    start: Instant,
}

impl Run {
    fn new(name: &str, kind: SuiteKind, max_order: usize) -> Self {
        Run {
            result: SuiteResult {
                name: name.to_string(),
                kind,
                max_order,
                graphs_checked: 0,
                assertions: 0,
                failures: Vec::new(),
                found: Vec::new(),
                elapsed: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    fn assert(&mut self, ok: bool, g: &Graph, assertion: &str, detail: impl FnOnce() -> String) {
        self.result.assertions += 1;
        if !ok {
            self.result.failures.push(SuiteFailure {
                graph6: write_graph6(g),
                assertion: assertion.to_string(),
                detail: detail(),
            });
        }
    }

    fn finish(mut self) -> SuiteResult {
        self.result.failures.sort();
        self.result.elapsed = self.start.elapsed();
        self.result
    }
}

/// Asserts that the graphs found equal `expected`, restricted to `max_order`.
fn assert_set(run: &mut Run, found: &[Graph], expected: &[Graph], max_order: usize, label: &str) {
    let expected: Vec<&Graph> = expected.iter().filter(|g| g.order() <= max_order).collect();
    let want: BTreeSet<Vec<u8>> = expected.iter().map(|g| certificate(g)).collect();
    let have: BTreeSet<Vec<u8>> = found.iter().map(certificate).collect();
    for g in found {
        run.assert(want.contains(&certificate(g)), g, label, || "unexpected graph".into());
    }
    for g in expected {
        run.assert(have.contains(&certificate(g)), g, label, || "expected graph not found".into());
    }
    run.result.found.extend(found.iter().map(write_graph6));
}

fn named(n: NamedGraph) -> Graph {
    n.build().expect("small named graph")
}

pub fn run_verification_suite(name: &str, max_order: usize) -> Result<SuiteResult, SuiteError> {
    run_verification_suite_with(name, max_order, &SuiteOptions::default())
}

pub fn run_verification_suite_with(
    name: &str,
    max_order: usize,
    opts: &SuiteOptions,
) -> Result<SuiteResult, SuiteError> {
    let par = opts.parallel;
    let kind = if name.starts_with("conjecture-") { SuiteKind::Conjecture } else { SuiteKind::Theorem };
    if !SUITES.contains(&name) {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    }
    let mut run = Run::new(name, kind, max_order);
    let cache = DistCache::new();
    let all = EnumerationConfig::orders(1, max_order);
    let search = |d: Option<usize>, disconnected_only: bool| {
        let cfg = SearchConfig { d, disconnected_only, parallel: par, ..SearchConfig::new(max_order) };
        search_critical_with(&cfg, &cache)
    };
    let critical_graphs = |hits: &[CriticalHit]| hits.iter().map(|h| h.graph.clone()).collect::<Vec<_>>();

    match name {
        "no-1-critical" => {
            let hits = search(Some(1), false)?;
            run.result.graphs_checked = count_graphs(&all)?;
            for h in &hits {
                let n = h.graph.order();
                run.assert(n < 2, &h.graph, "no-1-critical", || format!("1-critical of order {n}"));
            }
            run.result.found.extend(hits.iter().map(|h| write_graph6(&h.graph)));
        }
        "two-critical" => {
            let hits = search(Some(2), false)?;
            run.result.graphs_checked = count_graphs(&all)?;
            let expected = [named(NamedGraph::Complete(2)), Graph::empty(2).unwrap()];
            assert_set(&mut run, &critical_graphs(&hits), &expected, max_order, "two-critical");
        }
        "delta-plus-one" => {
            let cfg = EnumerationConfig { connected_only: true, ..all.clone() };
            let rows = scan(&cfg, par, |g| {
                let d = cache.distinguishing_number(g)?.0;
                Ok((g.clone(), d))
            })?;
            for (g, d) in &rows {
                run.result.graphs_checked += 1;
                let delta = g.degrees().into_iter().max().unwrap_or(0);
                run.assert(*d <= delta + 1, g, "bound", || format!("D={d}, Δ={delta}"));
                let n = g.order();
                let balanced = n % 2 == 0 && are_iso(g, &named(NamedGraph::CompleteBipartite(n / 2, n / 2)));
                let c5 = n == 5 && are_iso(g, &named(NamedGraph::Cycle(5)));
                let special = g.is_complete() || balanced || c5;
                run.assert((*d == delta + 1) == special, g, "equality", || {
                    format!("D={d}, Δ={delta}, complete/balanced bipartite/C5={special}")
                });
            }
        }
        "complement-invariance" => {
            let crit = CriticalityConfig { max_order: max_order.max(1), ..Default::default() };
            let rows = scan(&all, par, |g| {
                let co = g.complement();
                let (d, dc) = (cache.distinguishing_number(g)?.0, cache.distinguishing_number(&co)?.0);
                let (c, cc) = (
                    is_critical_with(g, &crit, Some(&cache))?.critical,
                    is_critical_with(&co, &crit, Some(&cache))?.critical,
                );
                Ok((g.clone(), d, dc, c, cc))
            })?;
            for (g, d, dc, c, cc) in &rows {
                run.result.graphs_checked += 1;
                run.assert(d == dc, g, "distinguishing-number", || format!("D={d}, D(complement)={dc}"));
                run.assert(c == cc, g, "criticality", || format!("critical={c}, complement critical={cc}"));
            }
        }
        "three-critical" => {
            let hits = search(Some(3), false)?;
            run.result.graphs_checked = count_graphs(&all)?;
            let expected = [
                named(NamedGraph::Cycle(3)),
                named(NamedGraph::Cycle(4)),
                named(NamedGraph::Cycle(5)),
                Graph::empty(3).unwrap(),
                copies(&named(NamedGraph::Complete(2)), 2).unwrap(),
            ];
            assert_set(&mut run, &critical_graphs(&hits), &expected, max_order, "three-critical");
        }
        "three-critical-maxdeg" => {
            let hits = search(Some(3), false)?;
            run.result.graphs_checked = count_graphs(&all)?;
            for h in &hits {
                let delta = h.graph.degrees().into_iter().max().unwrap_or(0);
                run.assert(delta <= 2, &h.graph, "max-degree", || format!("Δ={delta}"));
            }
            run.result.found.extend(hits.iter().map(|h| write_graph6(&h.graph)));
        }
        "five-six-critical-disconnected" => {
            let k = |s| named(NamedGraph::Complete(s));
            for (d, expected) in [
                (5, vec![Graph::empty(5).unwrap(), copies(&k(4), 2).unwrap()]),
                (6, vec![Graph::empty(6).unwrap(), copies(&k(5), 2).unwrap()]),
            ] {
                let hits = search(Some(d), true)?;
                assert_set(&mut run, &critical_graphs(&hits), &expected, max_order, &format!("{d}-critical"));
                // Members above the enumeration bound are checked directly.
                for g in expected.iter().filter(|g| g.order() > max_order) {
                    let r = is_critical(g)?;
                    run.assert(r.critical && r.d == d, g, &format!("{d}-critical-direct"), || {
                        format!("D={}, critical={}", r.d, r.critical)
                    });
                }
            }
            let cfg = EnumerationConfig { disconnected_only: true, ..all.clone() };
            run.result.graphs_checked = count_graphs(&cfg)?;
        }
        "critical-tree" => {
            let cfg = EnumerationConfig { tree_only: true, ..EnumerationConfig::orders(2, max_order) };
            let crit = CriticalityConfig { max_order: max_order.max(2), ..Default::default() };
            let rows = scan(&cfg, par, |t| Ok((t.clone(), is_critical_with(t, &crit, Some(&cache))?.critical)))?;
            let mut found = Vec::new();
            for (t, critical) in &rows {
                run.result.graphs_checked += 1;
                if *critical {
                    found.push(t.clone());
                }
            }
            assert_set(&mut run, &found, &[named(NamedGraph::Complete(2))], max_order, "critical-tree");
        }
        "tree-bound" => {
            let cfg = EnumerationConfig { tree_only: true, ..EnumerationConfig::orders(3, max_order) };
            let rows = scan(&cfg, par, |t| Ok((t.clone(), cache.distinguishing_number(t)?.0)))?;
            for (t, d) in &rows {
                run.result.graphs_checked += 1;
                let delta = t.degrees().into_iter().max().unwrap_or(0);
                run.assert(*d <= delta, t, "bound", || format!("D={d}, Δ={delta}"));
                let special = is_symmetric_tree(t) || is_path(t);
                run.assert((*d == delta) == special, t, "equality", || {
                    format!("D={d}, Δ={delta}, symmetric tree or path={special}")
                });
            }
        }
        "multipartite-formula" => {
            let graphs: Vec<Graph> = (1..=max_order)
                .flat_map(partitions)
                .map(|p| complete_multipartite_from_sizes(&p).expect("small order"))
                .collect();
            let rows = par_map(&graphs, par, |g| -> Result<_, SuiteError> {
                let parts = complete_multipartite_parts(g).expect("built as complete multipartite");
                Ok((multipartite_distinguishing_number(&parts), distinguishing_number_by_search(g)?.value))
            });
            for (g, row) in graphs.iter().zip(rows) {
                let (formula, search) = row?;
                run.result.graphs_checked += 1;
                run.assert(formula == search, g, "formula", || format!("formula={formula}, search={search}"));
            }
        }
        "disjoint-copies-formula" => {
            let cfg = EnumerationConfig { connected_only: true, ..all.clone() };
            let hs: Vec<Graph> = enumerate_graphs(&cfg)?.collect::<Result<_, _>>()?;
            let cases: Vec<(Graph, usize)> =
                hs.iter().flat_map(|h| (1..=4).map(move |c| (h.clone(), c))).collect();
            let rows = par_map(&cases, par, |(h, c)| -> Result<_, SuiteError> {
                let g = copies(h, *c).expect("small order");
                Ok((g.clone(), disjoint_copies_distinguishing_number(h, *c)?, distinguishing_number_by_search(&g)?.value))
            });
            for row in rows {
                let (g, formula, search) = row?;
                run.result.graphs_checked += 1;
                run.assert(formula == search, &g, "formula", || format!("formula={formula}, search={search}"));
            }
        }
        "conjecture-regularity" | "conjecture-complete-components" | "structural-audit" => {
            let hits = search(None, name == "conjecture-complete-components")?;
            run.result.graphs_checked = count_graphs(&all)?;
            for h in &hits {
                let audit = h.audit.as_ref().expect("critical hits are audited");
                if name == "structural-audit" {
                    for e in audit.entries.iter().filter(|e| e.kind == crate::audit::AssertionKind::Theorem) {
                        if e.verdict != crate::audit::Verdict::NotApplicable {
                            run.assert(e.verdict == crate::audit::Verdict::Pass, &h.graph, e.id, || e.detail.clone());
                        }
                    }
                } else {
                    let e = audit.get(name).expect("conjecture entry present");
                    if e.verdict != crate::audit::Verdict::NotApplicable {
                        run.assert(e.verdict == crate::audit::Verdict::Pass, &h.graph, name, || e.detail.clone());
                    }
                }
            }
            run.result.found.extend(hits.iter().map(|h| write_graph6(&h.graph)));
        }
        "minimal-asymmetric" => {
            let s = search_minimal_asymmetric_with(max_order, par)?;
            run.result.graphs_checked = count_graphs(&all)?;
            let crit = CriticalityConfig { max_order: max_order.max(1), ..Default::default() };
            for g in &s.graphs {
                let r = is_critical_with(g, &crit, Some(&cache))?;
                run.assert(r.d == 1 && r.strong_critical == Some(true) && !r.critical, g, "strong-not-critical", || {
                    format!("D={}, strong={:?}, critical={}", r.d, r.strong_critical, r.critical)
                });
                let co_in = s.graphs.iter().any(|h| are_iso(h, &g.complement()));
                run.assert(co_in, g, "complement-closed", || "complement missing from output".into());
            }
            if max_order >= 8 {
                let total = s.graphs.len();
                let g = s.graphs.first().cloned().unwrap_or(Graph::empty(0).unwrap());
                run.assert(total == 18, &g, "count", || format!("found {total} graphs"));
            }
            if max_order <= 5 {
                run.assert(s.graphs.is_empty(), &Graph::empty(0).unwrap(), "none-below-six", || {
                    format!("found {}", s.graphs.len())
                });
            }
            run.result.found.extend(s.graphs.iter().map(write_graph6));
        }
        "strong-critical" => {
            let crit = CriticalityConfig { max_order: max_order.max(1), ..Default::default() };
            let rows = scan(&all, par, |g| Ok((g.clone(), is_critical_with(g, &crit, Some(&cache))?)))?;
            let mut strong_only = Vec::new();
            for (g, r) in &rows {
                run.result.graphs_checked += 1;
                if r.critical && !r.vacuous {
                    run.assert(r.strong_critical == Some(true), g, "critical-implies-strong", || {
                        format!("strong={:?}", r.strong_critical)
                    });
                }
                if r.strong_critical == Some(true) && !r.critical {
                    strong_only.push(g.clone());
                }
            }
            if max_order >= 6 {
                run.assert(!strong_only.is_empty(), &Graph::empty(0).unwrap(), "converse-fails", || {
                    "no strong critical graph that is not critical".into()
                });
            }
            sort_by_certificate(&mut strong_only, |g| g);
            run.result.found.extend(strong_only.iter().map(write_graph6));
        }
        "free-action" => {
            let rows = scan(&all, par, |g| {
                let mut out = Vec::new();
                for k in 1..=4u32 {
                    let raw = count_distinguishing_labelings(g, k, DEFAULT_LABELING_BUDGET)?;
                    let aut = automorphism_group(g, None).order_u128().expect("small group");
                    out.push((k, raw, aut, orbit_count(g, k)));
                }
                Ok((g.clone(), out))
            })?;
            for (g, per_k) in &rows {
                run.result.graphs_checked += 1;
                for &(k, raw, aut, orbits) in per_k {
                    run.assert(raw % aut == 0, g, "divisibility", || format!("k={k}, raw={raw}, |Aut|={aut}"));
                    run.assert(raw / aut == orbits, g, "orbit-count", || {
                        format!("k={k}, raw/|Aut|={}, orbits={orbits}", raw / aut)
                    });
                }
            }
        }
        _ => unreachable!("suite list checked above"),
    }
    Ok(run.finish())
}

fn are_iso(g: &Graph, h: &Graph) -> bool {
    crate::automorphism::are_isomorphic(g, h)
}

fn count_graphs(cfg: &EnumerationConfig) -> Result<u64, SuiteError> {
    let mut n = 0;
    for g in enumerate_graphs(cfg)? {
        g?;
        n += 1;
    }
    Ok(n)
}

/// Orbits of distinguishing `k`-labelings, counted as distinct coloured
/// canonical forms over all `k^n` labelings.
fn orbit_count(g: &Graph, k: u32) -> u128 {
    let n = g.order();
    let mut colors = vec![1u32; n];
    let mut seen = HashSet::new();
    loop {
        if !has_nontrivial_automorphism(g, Some(&colors)) {
            seen.insert(canonical_form_colored(g, &colors).certificate);
        }
        // Odometer increment over {1..k}^n.
        let mut i = 0;
        loop {
            if i == n {
                return seen.len() as u128;
            }
            if colors[i] < k {
                colors[i] += 1;
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(name: &str, n: usize) -> SuiteResult {
        let r = run_verification_suite(name, n).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.failures);
        r
    }

    #[test]
    fn three_critical_small() {
        let hits = search_critical(&SearchConfig { d: Some(3), ..SearchConfig::new(5) }).unwrap();
        assert_eq!(hits.len(), 5);
        assert!(hits.iter().all(|h| h.audit.as_ref().unwrap().theorems_hold()));
        let r = ok("three-critical", 6);
        assert_eq!(r.found.len(), 5);
    }

    #[test]
    fn two_critical_small() {
        let hits = search_critical(&SearchConfig { d: Some(2), ..SearchConfig::new(3) }).unwrap();
        let orders: Vec<usize> = hits.iter().map(|h| h.graph.order()).collect();
        assert_eq!(orders, vec![2, 2]);
    }

    #[test]
    fn small_suites_pass() {
        for name in ["no-1-critical", "two-critical", "delta-plus-one", "three-critical-maxdeg", "tree-bound", "critical-tree"] {
            ok(name, 6);
        }
        assert_eq!(ok("complement-invariance", 6).graphs_checked, 1 + 2 + 4 + 11 + 34 + 156);
        ok("multipartite-formula", 6);
        ok("free-action", 4);
    }

    #[test]
    fn minimal_asymmetric_none_below_six() {
        assert!(search_minimal_asymmetric(5).unwrap().graphs.is_empty());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_verification_suite("nope", 3), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = SuiteOptions { parallel: false };
        for name in ["three-critical", "tree-bound"] {
            let a = run_verification_suite(name, 6).unwrap();
            let b = run_verification_suite_with(name, 6, &seq).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetric_trees() {
        assert!(is_symmetric_tree(&named(NamedGraph::Star(4))));
        assert!(is_symmetric_tree(&named(NamedGraph::Path(5))));
        assert!(!is_symmetric_tree(&named(NamedGraph::Path(4))));
        assert!(is_path(&named(NamedGraph::Path(4))));
        // Spider with three legs of length two: inner degrees 3 and 2.
        let spider = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!is_symmetric_tree(&spider));
    }

    #[test]
    fn partitions_of_five() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(5)[0], vec![5]);
    }
}
