//! Distinguishing criticality, strong criticality and minimal asymmetry.
//!
//! A graph with `D(G) = d` is critical when no nonempty proper induced
//! subgraph has distinguishing number `d`. Singletons count, so `K1` is
//! vacuously critical and no graph of order at least 2 is 1-critical.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use thiserror::Error;

use crate::automorphism::{canonical_form, has_nontrivial_automorphism};
use crate::distinguishing::{distinguishing_number, DistError};
use crate::graph::{Combinations, Graph};

/// Default order limit for the subset-exponential checks.
pub const DEFAULT_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalityError {
    #[error("criticality is undefined for the order-0 graph")]
    EmptyGraph,
    #[error("order {n} exceeds the criticality budget of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("order {n} is below the minimum of {min} for this check")]
    OrderTooSmall { n: usize, min: usize },
    #[error(transparent)]
    Dist(#[from] DistError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalityConfig {
    pub max_order: usize,
    /// Look up subgraph distinguishing numbers by canonical certificate.
    pub memoize: bool,
}

impl Default for CriticalityConfig {
    fn default() -> Self {
        CriticalityConfig { max_order: DEFAULT_MAX_ORDER, memoize: true }
    }
}

/// `D` values keyed by canonical certificate. Shared across threads.
#[derive(Debug, Default)]
pub struct DistCache {
    map: DashMap<Vec<u8>, usize>,
    hits: AtomicU64,
}

impl DistCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    /// `D(g)` and whether it came from the cache.
    pub fn distinguishing_number(&self, g: &Graph) -> Result<(usize, bool), DistError> {
        let key = canonical_form(g).certificate;
        if let Some(d) = self.map.get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok((*d, true));
        }
        let d = distinguishing_number(g)?.value;
        self.map.insert(key, d);
        Ok((d, false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub d: usize,
    pub critical: bool,
    /// Set for `K1`, which has no nonempty proper subgraph to compare against.
    pub vacuous: bool,
    /// `None` for order 1, where strong criticality is not defined.
    pub strong_critical: Option<bool>,
    /// A nonempty proper vertex subset inducing a subgraph with the same `D`.
    pub witness_subset: Option<Vec<usize>>,
    /// A vertex whose deletion keeps `D` unchanged.
    pub witness_vertex: Option<usize>,
    pub subgraphs_evaluated: u64,
    pub cache_hits: u64,
}

struct Evaluator<'a> {
    cache: Option<&'a DistCache>,
    evaluated: u64,
    hits: u64,
}

impl Evaluator<'_> {
    fn d(&mut self, g: &Graph) -> Result<usize, DistError> {
        self.evaluated += 1;
        match self.cache {
            Some(c) => {
                let (d, hit) = c.distinguishing_number(g)?;
                self.hits += u64::from(hit);
                Ok(d)
            }
            None => Ok(distinguishing_number(g)?.value),
        }
    }
}

fn check_order(n: usize, min: usize, max: usize) -> Result<(), CriticalityError> {
    if n == 0 {
        return Err(CriticalityError::EmptyGraph);
    }
    if n < min {
        return Err(CriticalityError::OrderTooSmall { n, min });
    }
    if n > max {
        return Err(CriticalityError::OrderTooLarge { n, max });
    }
    Ok(())
}

/// Criticality with a private cache and the default budget.
pub fn is_critical(g: &Graph) -> Result<CriticalityReport, CriticalityError> {
    let cache = DistCache::new();
    is_critical_with(g, &CriticalityConfig::default(), Some(&cache))
}

/// Criticality check. Subsets are visited by descending size and then in
/// lexicographic order, stopping at the first subset with `D = d`. Subsets
/// with fewer than `d` vertices are skipped, since `D(H) <= |V(H)|`.
pub fn is_critical_with(
    g: &Graph,
    config: &CriticalityConfig,
    cache: Option<&DistCache>,
) -> Result<CriticalityReport, CriticalityError> {
    let n = g.order();
    check_order(n, 1, config.max_order)?;
    let cache = if config.memoize { cache } else { None };
    let mut eval = Evaluator { cache, evaluated: 0, hits: 0 };
    let d = eval.d(g)?;
    eval.evaluated = 0;
    eval.hits = 0;

    let mut report = CriticalityReport {
        d,
        critical: true,
        vacuous: n == 1,
        strong_critical: (n > 1).then_some(true),
        witness_subset: None,
        witness_vertex: None,
        subgraphs_evaluated: 0,
        cache_hits: 0,
    };
    'sizes: for size in (d.max(1)..n).rev() {
        for subset in Combinations::new(n, size) {
            let h = g.induced_subgraph(&subset).expect("subset vertices are in range");
            if eval.d(&h)? == d {
                if size == n - 1 {
                    let missing = (0..n).find(|v| !subset.contains(v)).expect("proper subset");
                    report.strong_critical = Some(false);
                    report.witness_vertex = Some(missing);
                }
                report.critical = false;
                report.witness_subset = Some(subset);
                break 'sizes;
            }
        }
    }
    report.subgraphs_evaluated = eval.evaluated;
    report.cache_hits = eval.hits;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCriticality {
    pub d: usize,
    pub strong_critical: bool,
    pub witness_vertex: Option<usize>,
}

/// Whether deleting any single vertex changes `D`.
pub fn is_strong_critical(g: &Graph) -> Result<StrongCriticality, CriticalityError> {
    let n = g.order();
    check_order(n, 2, crate::graph::MAX_ORDER)?;
    let d = distinguishing_number(g)?.value;
    for v in 0..n {
        let h = g.delete_vertex(v).expect("vertex in range");
        if distinguishing_number(&h)?.value == d {
            return Ok(StrongCriticality { d, strong_critical: false, witness_vertex: Some(v) });
        }
    }
    Ok(StrongCriticality { d, strong_critical: true, witness_vertex: None })
}

/// Rigid, while every induced subgraph on `2..n` vertices has a
/// non-identity automorphism.
pub fn is_minimal_asymmetric(g: &Graph) -> Result<bool, CriticalityError> {
    is_minimal_asymmetric_with(g, DEFAULT_MAX_ORDER)
}

pub fn is_minimal_asymmetric_with(g: &Graph, max_order: usize) -> Result<bool, CriticalityError> {
    let n = g.order();
    check_order(n, 2, max_order)?;
    if has_nontrivial_automorphism(g, None) {
        return Ok(false);
    }
    for size in (2..n).rev() {
        for subset in Combinations::new(n, size) {
            let h = g.induced_subgraph(&subset).expect("subset vertices are in range");
            if !has_nontrivial_automorphism(&h, None) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
