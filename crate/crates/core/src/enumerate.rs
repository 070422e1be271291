//! Isomorph-free graph generation by canonical augmentation.
//!
//! Graphs of order `n + 1` are produced from one representative per class of
//! order `n` by adding a vertex joined to a subset of the old vertices. A
//! child is kept only when the new vertex lies in the automorphism orbit of
//! the child's canonical deletion vertex, so each class has exactly one
//! accepted parent. Children of one parent are deduplicated by certificate.

use std::collections::{HashSet, VecDeque};
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::automorphism::analyze;
use crate::graph::{full_mask, Bits, Graph, MAX_ORDER};
use crate::graph6::{Graph6Error, Graph6Reader};
use crate::metrics::{metrics, GraphMetrics};

/// Largest order the internal generator accepts unless raised explicitly.
pub const DEFAULT_HARD_STOP: usize = 10;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("order {requested} is above the internal generator's limit of {hard_stop}; supply a graph6 source instead")]
    AboveHardStop { requested: usize, hard_stop: usize },
    #[error("order {0} exceeds the capacity of {MAX_ORDER} vertices")]
    OrderTooLarge(usize),
    #[error("connected_only and disconnected_only are mutually exclusive")]
    ConflictingFilters,
    #[error("{path}: {source}")]
    Open { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Decode(#[from] Graph6Error),
}

pub type GraphPredicate = Arc<dyn Fn(&Graph, &GraphMetrics) -> bool + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum GraphSource {
    #[default]
    Internal,
    /// Newline-delimited graph6 records; filters still apply.
    Graph6File(PathBuf),
}

#[derive(Clone)]
pub struct EnumerationConfig {
    pub min_order: usize,
    pub max_order: usize,
    pub connected_only: bool,
    pub disconnected_only: bool,
    pub tree_only: bool,
    pub predicate: Option<GraphPredicate>,
    /// Parents handed to the worker pool at a time on the last level.
    pub chunk_size: usize,
    pub hard_stop: usize,
    pub source: GraphSource,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            min_order: 1,
            max_order: 1,
            connected_only: false,
            disconnected_only: false,
            tree_only: false,
            predicate: None,
            chunk_size: 256,
            hard_stop: DEFAULT_HARD_STOP,
            source: GraphSource::Internal,
        }
    }
}

impl EnumerationConfig {
    /// All graphs of orders `min..=max`.
    pub fn orders(min: usize, max: usize) -> Self {
        EnumerationConfig { min_order: min, max_order: max, ..Default::default() }
    }

    pub fn exact(n: usize) -> Self {
        Self::orders(n, n)
    }

    fn accepts(&self, g: &Graph) -> bool {
        let n = g.order();
        if n < self.min_order || n > self.max_order {
            return false;
        }
        if self.connected_only && !g.is_connected() {
            return false;
        }
        if self.disconnected_only && g.is_connected() {
            return false;
        }
        if self.tree_only && !g.is_tree() {
            return false;
        }
        match &self.predicate {
            Some(p) => p(g, &metrics(g)),
            None => true,
        }
    }
}

impl std::fmt::Debug for EnumerationConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumerationConfig")
            .field("min_order", &self.min_order)
            .field("max_order", &self.max_order)
            .field("connected_only", &self.connected_only)
            .field("disconnected_only", &self.disconnected_only)
            .field("tree_only", &self.tree_only)
            .field("predicate", &self.predicate.is_some())
            .field("chunk_size", &self.chunk_size)
            .field("hard_stop", &self.hard_stop)
            .field("source", &self.source)
            .finish()
    }
}

pub type GraphStream = Box<dyn Iterator<Item = Result<Graph, EnumerationError>> + Send>;

/// One graph per isomorphism class within the configured orders, in a
/// deterministic order (by order, then by generation order).
pub fn enumerate_graphs(config: &EnumerationConfig) -> Result<GraphStream, EnumerationError> {
    if config.connected_only && config.disconnected_only {
        return Err(EnumerationError::ConflictingFilters);
    }
    if config.max_order > MAX_ORDER {
        return Err(EnumerationError::OrderTooLarge(config.max_order));
    }
    match &config.source {
        GraphSource::Internal => {
            if config.max_order > config.hard_stop {
                return Err(EnumerationError::AboveHardStop {
                    requested: config.max_order,
                    hard_stop: config.hard_stop,
                });
            }
            let cfg = config.clone();
            Ok(Box::new(Generator::new(config).filter(move |g| cfg.accepts(g)).map(Ok)))
        }
        GraphSource::Graph6File(path) => {
            let file = File::open(path)
                .map_err(|source| EnumerationError::Open { path: path.clone(), source })?;
            let cfg = config.clone();
            Ok(Box::new(Graph6Reader::new(BufReader::new(file)).filter_map(move |r| match r {
                Ok(g) => cfg.accepts(&g).then_some(Ok(g)),
                Err(e) => Some(Err(e.into())),
            })))
        }
    }
}

/// Every graph of order `n`, collected; panics above the hard stop.
pub fn graphs_of_order(n: usize) -> Vec<Graph> {
    enumerate_graphs(&EnumerationConfig::exact(n))
        .expect("order within the internal generator's limit")
        .map(|g| g.expect("internal generation is infallible"))
        .collect()
}

/// All connected graphs of order `n`.
pub fn connected_graphs_of_order(n: usize) -> Vec<Graph> {
    graphs_of_order(n).into_iter().filter(Graph::is_connected).collect()
}

/// All trees of order `n`.
pub fn trees_of_order(n: usize) -> Vec<Graph> {
    let cfg = EnumerationConfig { tree_only: true, ..EnumerationConfig::exact(n) };
    enumerate_graphs(&cfg).expect("valid config").map(|g| g.unwrap()).collect()
}

struct Generator {
    level: Vec<Graph>,
    order: usize,
    emitted: usize,
    max_order: usize,
    min_order: usize,
    tree_only: bool,
    chunk_size: usize,
    /// Parent index for chunked generation of the final level.
    last_level_cursor: Option<usize>,
    buffer: VecDeque<Graph>,
}

impl Generator {
    fn new(config: &EnumerationConfig) -> Self {
        // Trees start at K1; everything else at the order-0 graph.
        let (level, order) = if config.tree_only {
            (vec![Graph::empty(1).unwrap()], 1)
        } else {
            (vec![Graph::empty(0).unwrap()], 0)
        };
        Generator {
            level,
            order,
            emitted: 0,
            max_order: config.max_order,
            min_order: config.min_order,
            tree_only: config.tree_only,
            chunk_size: config.chunk_size.max(1),
            last_level_cursor: None,
            buffer: VecDeque::new(),
        }
    }

    fn children_of_chunk(&self, parents: &[Graph]) -> Vec<Graph> {
        let tree_only = self.tree_only;
        parents.par_iter().map(|p| children(p, tree_only)).collect::<Vec<_>>().concat()
    }
}

impl Iterator for Generator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if let Some(g) = self.buffer.pop_front() {
                return Some(g);
            }
            if let Some(cursor) = self.last_level_cursor {
                if cursor >= self.level.len() {
                    return None;
                }
                let end = (cursor + self.chunk_size).min(self.level.len());
                self.buffer.extend(self.children_of_chunk(&self.level[cursor..end]));
                self.last_level_cursor = Some(end);
                continue;
            }
            if self.order >= self.min_order && self.emitted < self.level.len() {
                self.emitted += 1;
                return Some(self.level[self.emitted - 1].clone());
            }
            if self.order >= self.max_order {
                return None;
            }
            if self.order + 1 == self.max_order {
                // The final level is streamed in chunks rather than stored.
                self.last_level_cursor = Some(0);
                continue;
            }
            self.level = self.children_of_chunk(&self.level);
            self.order += 1;
            self.emitted = 0;
        }
    }
}

/// Canonical children of `parent`, in order of the neighbourhood mask.
fn children(parent: &Graph, tree_only: bool) -> Vec<Graph> {
    let n = parent.order();
    let masks: Box<dyn Iterator<Item = u64>> = if tree_only {
        Box::new((0..n).map(|v| 1u64 << v))
    } else {
        Box::new(0..=full_mask(n))
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in masks {
        let child = parent.with_new_vertex(mask).expect("order below capacity");
        if let Some((cert, canon)) = accept(&child) {
            if seen.insert(cert) {
                out.push(canon);
            }
        }
    }
    out
}

fn deletion_key(g: &Graph, v: usize) -> (usize, usize) {
    (g.degree(v), Bits(g.neighbors(v)).map(|u| g.degree(u)).sum())
}

/// Returns the certificate and canonical relabelling of `child` when its
/// last vertex is in the orbit of the canonical deletion vertex.
fn accept(child: &Graph) -> Option<(Vec<u8>, Graph)> {
    let n = child.order();
    let new = n - 1;
    let keys: Vec<_> = (0..n).map(|v| deletion_key(child, v)).collect();
    let best = *keys.iter().min().expect("nonempty");
    if keys[new] != best {
        return None;
    }
    let (aut, canon) = analyze(child, None);
    let target = (0..n)
        .filter(|&v| keys[v] == best)
        .max_by_key(|&v| canon.relabeling.apply(v))
        .expect("new vertex qualifies");
    if !aut.orbit_of(new).contains(&target) {
        return None;
    }
    let g = canon.apply(child);
    Some((canon.certificate, g))
}
