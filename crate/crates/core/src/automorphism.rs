//! Automorphism groups, canonical forms and isomorphism testing by
//! individualization-refinement.
//!
//! The search tree is the usual one: a node is an ordered partition refined
//! to an equitable one; its children individualize each vertex of the first
//! smallest non-singleton cell. Leaves are discrete partitions, i.e. vertex
//! orderings, and the canonical form is the largest relabelled adjacency
//! matrix over all leaves. Two leaves with equal matrices give an
//! automorphism, which is used to prune the tree:
//!
//! * a child is skipped when an automorphism fixing the node's individualized
//!   vertices maps it onto an already explored sibling;
//! * a leaf equivalent to the first or best leaf returns straight to the
//!   deepest common ancestor with that leaf.
//!
//! The group order is the product, over the nodes of the first path, of the
//! orbit length of the first child under the automorphisms found there.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::graph::{full_mask, Bits, Graph};

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Returns `None` unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Non-trivial cycles, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Whether this maps edges to edges (and, if given, preserves colours).
    pub fn is_automorphism_of(&self, g: &Graph, colors: Option<&[u32]>) -> bool {
        if self.0.len() != g.order() {
            return false;
        }
        if let Some(c) = colors {
            if (0..g.order()).any(|v| c[v] != c[self.0[v]]) {
                return false;
            }
        }
        (0..g.order()).all(|v| {
            let mapped = Bits(g.neighbors(v)).fold(0u64, |acc, u| acc | 1 << self.0[u]);
            mapped == g.neighbors(self.0[v])
        })
    }

    #[inline]
    fn map_mask(&self, mask: u64) -> u64 {
        Bits(mask).fold(0, |acc, v| acc | 1 << self.0[v])
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
    /// Vertex orbits, each sorted, ordered by smallest element.
    pub orbits: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order.to_u128()
    }

    pub fn orbit_of(&self, v: usize) -> &[usize] {
        self.orbits
            .iter()
            .find(|o| o.contains(&v))
            .map(Vec::as_slice)
            .expect("every vertex lies in an orbit")
    }
}

/// Canonical certificate plus the relabelling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// Equal for two (coloured) graphs iff they are isomorphic.
    pub certificate: Vec<u8>,
    /// Maps each vertex to its canonical position.
    pub relabeling: Permutation,
}

impl CanonicalForm {
    /// The canonically relabelled graph.
    pub fn apply(&self, g: &Graph) -> Graph {
        g.relabel(self.relabeling.images())
    }
}

/// Ordered partition of the vertices. Cells are contiguous position ranges
/// identified by their first position; `cells[p]` is the vertex mask of the
/// cell starting at `p`.
#[derive(Clone)]
struct Partition {
    n: usize,
    starts: u64,
    cells: [u64; 64],
}

impl Partition {
    fn from_colors(n: usize, colors: Option<&[u32]>) -> Self {
        let mut part = Partition { n, starts: 0, cells: [0; 64] };
        if n == 0 {
            return part;
        }
        match colors {
            None => {
                part.starts = 1;
                part.cells[0] = full_mask(n);
            }
            Some(c) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&v| (c[v], v));
                let mut pos = 0;
                while pos < n {
                    let color = c[order[pos]];
                    let start = pos;
                    let mut mask = 0;
                    while pos < n && c[order[pos]] == color {
                        mask |= 1 << order[pos];
                        pos += 1;
                    }
                    part.starts |= 1 << start;
                    part.cells[start] = mask;
                }
            }
        }
        part
    }

    #[inline]
    fn is_discrete(&self) -> bool {
        self.starts == full_mask(self.n)
    }

    fn cells(&self) -> impl Iterator<Item = u64> + '_ {
        Bits(self.starts).map(|p| self.cells[p])
    }

    /// Start of the first smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for p in Bits(self.starts) {
            let size = self.cells[p].count_ones();
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, p));
            }
        }
        best.map(|(_, p)| p)
    }

    fn individualize(&mut self, p: usize, v: usize) {
        let cell = self.cells[p];
        debug_assert!(cell >> v & 1 == 1 && cell.count_ones() > 1);
        self.cells[p] = 1 << v;
        self.cells[p + 1] = cell & !(1 << v);
        self.starts |= 1 << (p + 1);
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the cells whose starts are in `queue` as the initial splitters.
    /// Fragments are ordered by ascending neighbour count, so the result
    /// depends only on the isomorphism type of the coloured graph.
    fn refine(&mut self, g: &Graph, mut queue: u64) {
        let mut scratch: [(u8, u8); 64] = [(0, 0); 64];
        while queue != 0 && !self.is_discrete() {
            let s = queue.trailing_zeros() as usize;
            queue &= queue - 1;
            let splitter = self.cells[s];
            for p in Bits(self.starts) {
                let cell = self.cells[p];
                if cell & (cell - 1) == 0 {
                    continue;
                }
                let mut len = 0;
                let mut uniform = true;
                for v in Bits(cell) {
                    let c = (g.neighbors(v) & splitter).count_ones() as u8;
                    scratch[len] = (c, v as u8);
                    uniform &= c == scratch[0].0;
                    len += 1;
                }
                if uniform {
                    continue;
                }
                let items = &mut scratch[..len];
                items.sort_unstable();
                let mut pos = p;
                let mut i = 0;
                while i < len {
                    let c = items[i].0;
                    let mut frag = 0u64;
                    let start = pos;
                    while i < len && items[i].0 == c {
                        frag |= 1 << items[i].1;
                        i += 1;
                        pos += 1;
                    }
                    self.cells[start] = frag;
                    self.starts |= 1 << start;
                    queue |= 1 << start;
                }
            }
        }
    }

    /// Position -> vertex for a discrete partition.
    fn leaf_order(&self) -> Vec<usize> {
        (0..self.n).map(|p| self.cells[p].trailing_zeros() as usize).collect()
    }
}

struct Leaf {
    order: Vec<usize>,
    cert: Vec<u64>,
    path: Vec<usize>,
}

enum Flow {
    Continue,
    ReturnTo(usize),
    Abort,
}

struct Searcher<'a> {
    g: &'a Graph,
    stop_on_first: bool,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Permutation>,
    orbit_lengths: Vec<usize>,
    found_nontrivial: bool,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, stop_on_first: bool) -> Self {
        Searcher {
            g,
            stop_on_first,
            first: None,
            best: None,
            generators: Vec::new(),
            orbit_lengths: Vec::new(),
            found_nontrivial: false,
        }
    }

    fn run(&mut self, colors: Option<&[u32]>) {
        let mut root = Partition::from_colors(self.g.order(), colors);
        let all_starts = root.starts;
        root.refine(self.g, all_starts);
        let mut path = Vec::new();
        self.search(&root, &mut path, true);
    }

    /// Orbit of `v` under the generators that fix every vertex of `fixed`.
    fn orbit_fixing(&self, v: usize, fixed: &[usize]) -> u64 {
        let gens: Vec<&Permutation> = self
            .generators
            .iter()
            .filter(|p| fixed.iter().all(|&x| p.apply(x) == x))
            .collect();
        let mut orbit = 1u64 << v;
        let mut frontier = orbit;
        while frontier != 0 {
            let mut next = 0;
            for p in &gens {
                next |= p.map_mask(frontier);
            }
            next &= !orbit;
            orbit |= next;
            frontier = next;
        }
        orbit
    }

    fn search(&mut self, part: &Partition, path: &mut Vec<usize>, on_first: bool) -> Flow {
        let Some(p) = part.target_cell() else {
            return self.leaf(part, path);
        };
        let level = path.len();
        let cell = part.cells[p];
        let mut explored = 0u64;
        for v in Bits(cell) {
            if explored != 0 && self.orbit_fixing(v, path) & explored != 0 {
                continue;
            }
            let mut child = part.clone();
            child.individualize(p, v);
            child.refine(self.g, 1 << p);
            path.push(v);
            let flow = self.search(&child, path, on_first && explored == 0);
            path.pop();
            explored |= 1 << v;
            match flow {
                Flow::Abort => return Flow::Abort,
                Flow::ReturnTo(t) if t < level => return flow,
                _ => {}
            }
        }
        if on_first {
            let first_child = cell.trailing_zeros() as usize;
            self.orbit_lengths.push(self.orbit_fixing(first_child, path).count_ones() as usize);
        }
        Flow::Continue
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Flow {
        let order = part.leaf_order();
        let mut pos = [0u8; 64];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i as u8;
        }
        let cert: Vec<u64> = order
            .iter()
            .map(|&v| Bits(self.g.neighbors(v)).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();

        let Some(first) = &self.first else {
            self.first = Some(Leaf { order: order.clone(), cert: cert.clone(), path: path.to_vec() });
            self.best = Some(Leaf { order, cert, path: path.to_vec() });
            return Flow::Continue;
        };
        if cert == first.cert {
            let gamma = leaf_map(&first.order, &order);
            let back = common_prefix(path, &first.path);
            return self.record(gamma, back);
        }
        let best = self.best.as_ref().expect("best leaf set with first leaf");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let gamma = leaf_map(&best.order, &order);
                let back = common_prefix(path, &best.path);
                self.record(gamma, back)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(Leaf { order, cert, path: path.to_vec() });
                Flow::Continue
            }
            std::cmp::Ordering::Less => Flow::Continue,
        }
    }

    fn record(&mut self, gamma: Permutation, back: usize) -> Flow {
        debug_assert!(!gamma.is_identity());
        self.found_nontrivial = true;
        self.generators.push(gamma);
        if self.stop_on_first {
            Flow::Abort
        } else {
            Flow::ReturnTo(back)
        }
    }
}

/// The permutation sending `from[i]` to `to[i]`.
fn leaf_map(from: &[usize], to: &[usize]) -> Permutation {
    let mut images = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        images[a] = b;
    }
    Permutation(images)
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn orbits_from_generators(n: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut assigned = 0u64;
    let mut out = Vec::new();
    for v in 0..n {
        if assigned >> v & 1 == 1 {
            continue;
        }
        let mut orbit = 1u64 << v;
        let mut frontier = orbit;
        while frontier != 0 {
            let mut next = 0;
            for p in generators {
                next |= p.map_mask(frontier);
            }
            next &= !orbit;
            orbit |= next;
            frontier = next;
        }
        assigned |= orbit;
        out.push(Bits(orbit).collect());
    }
    out
}

fn check_colors(g: &Graph, colors: Option<&[u32]>) {
    if let Some(c) = colors {
        assert_eq!(c.len(), g.order(), "colouring length must equal the graph order");
    }
}

/// Automorphism group and canonical form from a single search.
pub fn analyze(g: &Graph, colors: Option<&[u32]>) -> (AutGroup, CanonicalForm) {
    check_colors(g, colors);
    let n = g.order();
    let mut s = Searcher::new(g, false);
    s.run(colors);
    let order = s
        .orbit_lengths
        .iter()
        .fold(BigUint::one(), |acc, &k| acc * BigUint::from(k));
    let orbits = orbits_from_generators(n, &s.generators);
    let best = s.best.unwrap_or(Leaf { order: Vec::new(), cert: Vec::new(), path: Vec::new() });

    let mut certificate = Vec::with_capacity(2 + n * 9);
    certificate.push(n as u8);
    if let Some(c) = colors {
        certificate.push(1);
        for &v in &best.order {
            certificate.extend_from_slice(&c[v].to_le_bytes());
        }
    } else {
        certificate.push(0);
    }
    let row_bytes = n.div_ceil(8);
    for row in &best.cert {
        certificate.extend_from_slice(&row.to_le_bytes()[..row_bytes]);
    }
    let mut relabeling = vec![0; n];
    for (i, &v) in best.order.iter().enumerate() {
        relabeling[v] = i;
    }
    (
        AutGroup { generators: s.generators, order, orbits },
        CanonicalForm { certificate, relabeling: Permutation(relabeling) },
    )
}

/// Automorphisms of `g`, restricted to colour-preserving ones when a
/// colouring is given.
pub fn automorphism_group(g: &Graph, colors: Option<&[u32]>) -> AutGroup {
    analyze(g, colors).0
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    analyze(g, None).1
}

pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    analyze(g, Some(colors)).1
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_form(g).certificate == canonical_form(h).certificate
}

/// Whether some non-identity automorphism preserves `colors`. Stops at the
/// first automorphism found.
pub fn has_nontrivial_automorphism(g: &Graph, colors: Option<&[u32]>) -> bool {
    check_colors(g, colors);
    let mut root = Partition::from_colors(g.order(), colors);
    let all_starts = root.starts;
    root.refine(g, all_starts);
    if root.is_discrete() {
        return false;
    }
    let mut s = Searcher::new(g, true);
    let mut path = Vec::new();
    s.search(&root, &mut path, true);
    s.found_nontrivial
}

/// Coarsest equitable partition refining the colouring (or the unit
/// partition), as an ordered list of cells.
pub fn equitable_refinement(g: &Graph, colors: Option<&[u32]>) -> Vec<Vec<usize>> {
    check_colors(g, colors);
    let mut part = Partition::from_colors(g.order(), colors);
    let all_starts = part.starts;
    part.refine(g, all_starts);
    part.cells().map(|c| Bits(c).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{copies, NamedGraph};

    fn named(n: NamedGraph) -> Graph {
        n.build().unwrap()
    }

    fn order(g: &Graph, colors: Option<&[u32]>) -> u64 {
        automorphism_group(g, colors).order_u64().unwrap()
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(equitable_refinement(&named(NamedGraph::Cycle(6)), None).len(), 1);
        let star = equitable_refinement(&named(NamedGraph::Star(3)), None);
        assert_eq!(star, vec![vec![1, 2, 3], vec![0]]);
        let p4 = equitable_refinement(&named(NamedGraph::Path(4)), None);
        assert_eq!(p4, vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn group_orders() {
        assert_eq!(order(&named(NamedGraph::Cycle(4)), None), 8);
        assert_eq!(order(&named(NamedGraph::Complete(4)), None), 24);
        assert_eq!(order(&named(NamedGraph::Cycle(4)), Some(&[1, 1, 2, 2])), 2);
        assert_eq!(order(&named(NamedGraph::Complete(10)), None), 3_628_800);
        assert_eq!(order(&Graph::empty(1).unwrap(), None), 1);
        assert_eq!(order(&Graph::empty(0).unwrap(), None), 1);
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(order(&petersen, None), 120);
        let two_k4 = copies(&named(NamedGraph::Complete(4)), 2).unwrap();
        assert_eq!(order(&two_k4, None), 1152);
        let big = Graph::empty(64).unwrap();
        let expected = (1..=64u32).fold(BigUint::one(), |acc, k| acc * k);
        assert_eq!(automorphism_group(&big, None).order, expected);
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = named(NamedGraph::CompleteBipartite(3, 3));
        let aut = automorphism_group(&g, None);
        assert!(aut.generators.iter().all(|p| p.is_automorphism_of(&g, None)));
        assert_eq!(aut.orbits, vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(aut.order_u64(), Some(72));
    }

    #[test]
    fn canonical_examples() {
        let c5 = named(NamedGraph::Cycle(5));
        assert_eq!(canonical_form(&c5).certificate, canonical_form(&c5.complement()).certificate);
        let p4 = named(NamedGraph::Path(4));
        let shuffled = p4.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_form(&p4).certificate, canonical_form(&shuffled).certificate);
        assert_ne!(
            canonical_form(&named(NamedGraph::CompleteBipartite(3, 3))).certificate,
            canonical_form(&named(NamedGraph::Cycle(6))).certificate
        );
        let cf = canonical_form(&shuffled);
        assert_eq!(cf.apply(&shuffled), canonical_form(&p4).apply(&p4));
    }

    #[test]
    fn isomorphism_examples() {
        let c5 = named(NamedGraph::Cycle(5));
        assert!(are_isomorphic(&c5, &c5.complement()));
        assert!(!are_isomorphic(&named(NamedGraph::Complete(4)), &named(NamedGraph::Cycle(4))));
        let comps = crate::graph::connected_components(&copies(&named(NamedGraph::Complete(4)), 2).unwrap());
        assert!(are_isomorphic(&comps[0].graph, &comps[1].graph));
    }

    #[test]
    fn rigidity_check() {
        let c5 = named(NamedGraph::Cycle(5));
        assert!(has_nontrivial_automorphism(&c5, None));
        assert!(!has_nontrivial_automorphism(&c5, Some(&[1, 2, 3, 1, 1])));
        assert!(has_nontrivial_automorphism(&named(NamedGraph::Path(3)), Some(&[1, 2, 1])));
        assert!(!has_nontrivial_automorphism(
            &named(NamedGraph::Cycle(6)),
            Some(&[1, 1, 2, 1, 2, 2])
        ));
    }

    #[test]
    fn permutation_display() {
        let p = Permutation::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        assert!(p.then(&p.inverse()).is_identity());
    }
}
