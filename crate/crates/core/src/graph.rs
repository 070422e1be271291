//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Row `v` of the adjacency matrix is a single `u64` whose set bits are the
//! neighbours of `v`, so neighbourhood unions, intersections and degree
//! counts are single word operations.

use std::fmt;

use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds the capacity of {MAX_ORDER} vertices")]
    OrderTooLarge(usize),
    #[error("edge ({u}, {v}) has an endpoint out of range for order {n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// Bitmask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word in ascending order.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph { rows: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking the representation invariants.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mask = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let u = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::EndpointOutOfRange { u: v, v: u, n });
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::Loop(v));
            }
            for u in Bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(GraphError::InvalidParameters(format!(
                        "adjacency is not symmetric at ({v}, {u})"
                    )));
                }
            }
        }
        Ok(Graph { rows })
    }

    /// Crate-internal constructor for rows already known to be valid.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.order())
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| Bits(row & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mask = self.vertex_mask();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(v, &row)| !row & mask & !(1 << v))
            .collect();
        Graph { rows }
    }

    /// Subgraph induced by the vertices in `mask`, relabelled `0..|mask|` in
    /// ascending order of the original labels.
    pub fn induced_by_mask(&self, mask: u64) -> Result<Graph, GraphError> {
        if mask == 0 {
            return Err(GraphError::EmptySubset);
        }
        if mask & !self.vertex_mask() != 0 {
            let v = (mask & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { v, n: self.order() });
        }
        Ok(self.induced_unchecked(mask))
    }

    pub(crate) fn induced_unchecked(&self, mask: u64) -> Graph {
        let rows = Bits(mask).map(|v| compress(self.rows[v] & mask, mask)).collect();
        Graph { rows }
    }

    /// Subgraph induced by a vertex list. Duplicates are ignored.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut mask = 0u64;
        for &v in vertices {
            if v >= self.order() {
                return Err(GraphError::VertexOutOfRange { v, n: self.order() });
            }
            mask |= 1 << v;
        }
        self.induced_by_mask(mask)
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.order() {
            return Err(GraphError::VertexOutOfRange { v, n: self.order() });
        }
        self.induced_by_mask(self.vertex_mask() & !(1 << v))
    }

    /// Appends a new vertex adjacent to `neighbors`.
    pub fn with_new_vertex(&self, neighbors: u64) -> Result<Graph, GraphError> {
        let n = self.order();
        if n >= MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n + 1));
        }
        if neighbors & !self.vertex_mask() != 0 {
            let v = (neighbors & !self.vertex_mask()).trailing_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { v, n });
        }
        let mut rows = self.rows.clone();
        for u in Bits(neighbors) {
            rows[u] |= 1 << n;
        }
        rows.push(neighbors);
        Ok(Graph { rows })
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order();
        let total = n + other.order();
        if total > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(total));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|&r| r << n));
        Ok(Graph { rows })
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order(), "permutation length mismatch");
        let mut rows = vec![0u64; self.order()];
        for (v, &row) in self.rows.iter().enumerate() {
            rows[perm[v]] = Bits(row).fold(0, |acc, u| acc | 1 << perm[u]);
        }
        Graph { rows }
    }

    /// Vertices reachable from `v`, as a mask.
    pub fn reach(&self, v: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let next = Bits(frontier).fold(0, |acc, u| acc | self.rows[u]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Vertex masks of the connected components, ordered by smallest vertex.
    pub fn component_masks(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// The order-0 graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.reach(0) == self.vertex_mask()
    }

    /// True for a complete graph (including K1 and the order-0 graph).
    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.rows.iter().all(|r| r.count_ones() as usize + 1 == n)
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.is_connected() && self.edge_count() + 1 == self.order()
    }

    /// Distances from `v` by BFS; `None` for unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[v] = Some(0);
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let next = Bits(frontier).fold(0, |acc, u| acc | self.rows[u]) & !seen;
            for u in Bits(next) {
                dist[u] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }
}

/// Packs the bits of `x` selected by `mask` into the low bits (software pext).
#[inline]
pub(crate) fn compress(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    for (i, v) in Bits(mask).enumerate() {
        out |= (x >> v & 1) << i;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// One part class of a complete multipartite graph: `count` parts of `size` vertices each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartClass {
    pub size: usize,
    pub count: usize,
}

/// Named graph families.
///
/// Vertex numbering: paths and cycles follow the walk order; stars put the
/// centre at 0; bipartite and multipartite graphs keep each part contiguous,
/// multipartite parts listed largest first; disjoint copies occupy
/// consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGraph {
    /// `K_n`.
    Complete(usize),
    /// The complement of `K_n`.
    Empty(usize),
    /// `P_n` on `n` vertices.
    Path(usize),
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `K_{1,d}`.
    Star(usize),
    /// `K_{m,n}`.
    CompleteBipartite(usize, usize),
    /// Part classes with strictly decreasing sizes.
    CompleteMultipartite(Vec<PartClass>),
    /// `c` disjoint copies of a graph.
    DisjointCopies(usize, Box<NamedGraph>),
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph, GraphError> {
        let bad = |msg: &str| Err(GraphError::InvalidParameters(format!("{self:?}: {msg}")));
        match self {
            NamedGraph::Complete(n) => {
                if *n == 0 {
                    return bad("order must be at least 1");
                }
                Ok(Graph::empty(*n)?.complement())
            }
            NamedGraph::Empty(n) => {
                if *n == 0 {
                    return bad("order must be at least 1");
                }
                Graph::empty(*n)
            }
            NamedGraph::Path(n) => {
                if *n == 0 {
                    return bad("order must be at least 1");
                }
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(*n, &edges)
            }
            NamedGraph::Cycle(n) => {
                if *n < 3 {
                    return bad("a cycle needs at least 3 vertices");
                }
                let mut edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                edges.push((n - 1, 0));
                Graph::from_edges(*n, &edges)
            }
            NamedGraph::Star(d) => {
                if *d == 0 {
                    return bad("a star needs at least one leaf");
                }
                let edges: Vec<_> = (1..=*d).map(|i| (0, i)).collect();
                Graph::from_edges(d + 1, &edges)
            }
            NamedGraph::CompleteBipartite(m, n) => {
                if *m == 0 || *n == 0 {
                    return bad("part sizes must be at least 1");
                }
                complete_multipartite_from_sizes(&[*m, *n])
            }
            NamedGraph::CompleteMultipartite(classes) => {
                if classes.is_empty() {
                    return bad("no parts");
                }
                if classes.iter().any(|c| c.size == 0 || c.count == 0) {
                    return bad("part sizes and counts must be at least 1");
                }
                if classes.windows(2).any(|w| w[0].size <= w[1].size) {
                    return bad("part sizes must be strictly decreasing");
                }
                let sizes: Vec<usize> = classes
                    .iter()
                    .flat_map(|c| std::iter::repeat(c.size).take(c.count))
                    .collect();
                complete_multipartite_from_sizes(&sizes)
            }
            NamedGraph::DisjointCopies(c, inner) => {
                if *c == 0 {
                    return bad("copy count must be at least 1");
                }
                let h = inner.build()?;
                copies(&h, *c)
            }
        }
    }
}

/// `c` disjoint copies of `h`.
pub fn copies(h: &Graph, c: usize) -> Result<Graph, GraphError> {
    let total = h.order() * c;
    if total > MAX_ORDER {
        return Err(GraphError::OrderTooLarge(total));
    }
    let mut g = Graph::empty(0)?;
    for _ in 0..c {
        g = g.disjoint_union(h)?;
    }
    Ok(g)
}

/// Complete multipartite graph with parts of the given sizes, in the given order.
pub fn complete_multipartite_from_sizes(sizes: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = sizes.iter().sum();
    if n > MAX_ORDER {
        return Err(GraphError::OrderTooLarge(n));
    }
    let all = full_mask(n);
    let mut rows = vec![0u64; n];
    let mut start = 0;
    for &s in sizes {
        let part = full_mask(s) << start;
        for row in &mut rows[start..start + s] {
            *row = all & !part;
        }
        start += s;
    }
    Ok(Graph { rows })
}

/// If `g` is complete multipartite, returns its part classes with sizes
/// strictly decreasing. An edgeless graph is a single part.
pub fn complete_multipartite_parts(g: &Graph) -> Option<Vec<PartClass>> {
    if g.order() == 0 {
        return None;
    }
    // Complete multipartite iff the complement is a disjoint union of cliques.
    let co = g.complement();
    let mut sizes = Vec::new();
    for comp in co.component_masks() {
        let s = comp.count_ones() as usize;
        if Bits(comp).any(|v| co.neighbors(v) | 1 << v != comp) {
            return None;
        }
        sizes.push(s);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut classes: Vec<PartClass> = Vec::new();
    for s in sizes {
        match classes.last_mut() {
            Some(c) if c.size == s => c.count += 1,
            _ => classes.push(PartClass { size: s, count: 1 }),
        }
    }
    Some(classes)
}

/// A connected component: its vertices in ascending order and the induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// Connected components in ascending order of their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Component> {
    g.component_masks()
        .into_iter()
        .map(|m| Component {
            vertices: Bits(m).collect(),
            graph: g.induced_unchecked(m),
        })
        .collect()
}

/// Lexicographic `size`-subsets of `0..n`.
pub struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, size: usize) -> Self {
        Combinations { n, cur: (size <= n).then(|| (0..size).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}
