//! First-order graph metrics: degrees, distances, clique and independence
//! numbers, forbidden induced stars, and the a1/a2 vertex classification.

use crate::graph::{Bits, Graph, GraphError};

/// Eccentricity or diameter; `Infinite` when some vertex is unreachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub order: usize,
    pub edge_count: usize,
    /// Degree of each vertex, indexed by vertex.
    pub degrees: Vec<usize>,
    /// Degrees sorted in non-increasing order.
    pub degree_sequence: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `Some(k)` when every vertex has degree `k`.
    pub regular: Option<usize>,
    pub component_count: usize,
    pub eccentricities: Vec<Distance>,
    pub diameter: Distance,
    pub radius: Distance,
    pub clique_number: usize,
    pub independence_number: usize,
    pub triangle_free: bool,
    pub claw_free: bool,
}

impl GraphMetrics {
    pub fn is_regular(&self) -> bool {
        self.regular.is_some()
    }
}

pub fn metrics(g: &Graph) -> GraphMetrics {
    let n = g.order();
    let degrees = g.degrees();
    let mut degree_sequence = degrees.clone();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let min_degree = degrees.iter().copied().min().unwrap_or(0);
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let eccentricities = eccentricities(g);
    let diameter = eccentricities.iter().copied().max().unwrap_or(Distance::Finite(0));
    let radius = eccentricities.iter().copied().min().unwrap_or(Distance::Finite(0));
    GraphMetrics {
        order: n,
        edge_count: g.edge_count(),
        regular: (n > 0 && min_degree == max_degree).then_some(min_degree),
        degrees,
        degree_sequence,
        min_degree,
        max_degree,
        component_count: g.component_masks().len(),
        eccentricities,
        diameter,
        radius,
        clique_number: clique_number(g),
        independence_number: independence_number(g),
        triangle_free: is_triangle_free(g),
        claw_free: !has_induced_star(g, 3),
    }
}

pub fn eccentricities(g: &Graph) -> Vec<Distance> {
    (0..g.order())
        .map(|v| {
            g.distances_from(v)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
                .map_or(Distance::Infinite, Distance::Finite)
        })
        .collect()
}

/// Exact clique number by branch and bound with a greedy colouring bound.
pub fn clique_number(g: &Graph) -> usize {
    let mut best = 0;
    expand(g, 0, g.vertex_mask(), &mut best);
    best
}

pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// Largest clique inside `cand`.
pub(crate) fn clique_number_within(g: &Graph, cand: u64) -> usize {
    let mut best = 0;
    expand(g, 0, cand, &mut best);
    best
}

/// Largest independent set inside `cand`.
pub(crate) fn independence_number_within(g: &Graph, cand: u64) -> usize {
    clique_number_within(&g.complement(), cand)
}

fn expand(g: &Graph, size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    // Greedy colouring of the candidates; colour classes are independent sets,
    // so a vertex of colour c can extend the clique by at most c.
    let (order, colors) = greedy_color(g, cand);
    for i in (0..order.len()).rev() {
        if size + colors[i] <= *best {
            return;
        }
        let v = order[i];
        expand(g, size + 1, cand & g.neighbors(v), best);
        cand &= !(1 << v);
    }
}

fn greedy_color(g: &Graph, cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !g.neighbors(v);
            uncolored &= !(1 << v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges().all(|(u, v)| g.neighbors(u) & g.neighbors(v) == 0)
}

/// Whether `g` contains `K_{1,d}` as an induced subgraph.
pub fn has_induced_star(g: &Graph, d: usize) -> bool {
    (0..g.order()).any(|v| {
        g.degree(v) >= d && independence_number_within(g, g.neighbors(v)) >= d
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AVertex {
    A1,
    A2,
}

/// Tags `v` as `A1` when it has full degree or some neighbour `u` with
/// `N(u) ∪ N(v) = V`, and `A2` otherwise.
pub fn classify_a_vertices(g: &Graph) -> Vec<AVertex> {
    let n = g.order();
    let all = g.vertex_mask();
    (0..n)
        .map(|v| {
            let nv = g.neighbors(v);
            if g.degree(v) + 1 == n || Bits(nv).any(|u| g.neighbors(u) | nv == all) {
                AVertex::A1
            } else {
                AVertex::A2
            }
        })
        .collect()
}

/// Whether every vertex has eccentricity exactly `k`.
pub fn is_k_self_centered(g: &Graph, k: usize) -> Result<bool, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(eccentricities(g).into_iter().all(|e| e == Distance::Finite(k)))
}
