//! Digraph families and the two transformations that never lower the cop
//! number: clique substitution and arc subdivision.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, Vertex};
use crate::error::GraphError;

/// Which part of the owner's neighbourhood a port faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PortClass {
    /// Faces an in-only neighbour.
    Minus,
    /// Faces an out-only neighbour.
    Plus,
    /// Faces a neighbour joined in both directions.
    Pm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Port {
    /// Vertex of the source digraph that the port replaces.
    pub owner: Vertex,
    /// Neighbour of `owner` (in the source digraph) the port is joined to.
    pub facing: Vertex,
    pub class: PortClass,
}

/// Port vertices created by a clique substitution, in id order starting at
/// `first`. Ports are sorted by `(owner, facing)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortMap {
    pub first: Vertex,
    pub ports: Vec<Port>,
}

impl PortMap {
    /// Id of the port of `owner` facing `facing`.
    pub fn port(&self, owner: Vertex, facing: Vertex) -> Option<Vertex> {
        self.ports
            .binary_search_by(|p| (p.owner, p.facing).cmp(&(owner, facing)))
            .ok()
            .map(|i| self.first + i)
    }

    pub fn get(&self, id: Vertex) -> Option<&Port> {
        id.checked_sub(self.first).and_then(|i| self.ports.get(i))
    }
}

/// Arcs inside the port set of one vertex: each class is a bidirected
/// clique, `Pm` ports are bidirected to every other port and every `Minus`
/// port sends an arc to every `Plus` port.
fn internal_arc(a: PortClass, b: PortClass) -> bool {
    use PortClass::*;
    a == b || a == Pm || b == Pm || (a == Minus && b == Plus)
}

fn class_toward(d: &Digraph, v: Vertex, w: Vertex) -> PortClass {
    match (d.has_arc(w, v), d.has_arc(v, w)) {
        (true, true) => PortClass::Pm,
        (true, false) => PortClass::Minus,
        _ => PortClass::Plus,
    }
}

fn wire_ports(arcs: &mut Vec<(Vertex, Vertex)>, ids: &[(Vertex, PortClass)]) {
    for &(a, ca) in ids {
        for &(b, cb) in ids {
            if a != b && internal_arc(ca, cb) {
                arcs.push((a, b));
            }
        }
    }
}

/// Clique substitution at a single vertex `v`.
///
/// The other vertices keep their relative order (ids above `v` shift down
/// by one) and the ports of `v` are appended in ascending neighbour order.
pub fn clique_substitute_vertex(d: &Digraph, v: Vertex) -> Result<Digraph, GraphError> {
    clique_substitute_vertex_with_ports(d, v).map(|(g, _)| g)
}

pub fn clique_substitute_vertex_with_ports(d: &Digraph, v: Vertex) -> Result<(Digraph, PortMap), GraphError> {
    d.neighborhood_partition(v)?;
    let neighbors = d.neighbors(v);
    if neighbors.is_empty() {
        return Err(GraphError::IsolatedVertex(v));
    }
    let n = d.order();
    let keep = |w: Vertex| if w < v { w } else { w - 1 };
    let first = n - 1;
    let ports: Vec<Port> =
        neighbors.iter().map(|&w| Port { owner: v, facing: w, class: class_toward(d, v, w) }).collect();

    let mut arcs: Vec<(Vertex, Vertex)> =
        d.arcs().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (keep(a), keep(b))).collect();
    for (i, p) in ports.iter().enumerate() {
        let id = first + i;
        if d.has_arc(p.facing, v) {
            arcs.push((keep(p.facing), id));
        }
        if d.has_arc(v, p.facing) {
            arcs.push((id, keep(p.facing)));
        }
    }
    let ids: Vec<(Vertex, PortClass)> = ports.iter().enumerate().map(|(i, p)| (first + i, p.class)).collect();
    wire_ports(&mut arcs, &ids);

    let g = Digraph::new(first + ports.len(), arcs)?;
    Ok((g, PortMap { first, ports }))
}

/// Clique substitution at every vertex at once.
///
/// The result has one vertex per ordered adjacent pair `(v, w)`, numbered
/// in lexicographic order. Ports `(v, w)` and `(w, v)` are joined exactly as
/// `v` and `w` were.
pub fn clique_substitute_all(d: &Digraph) -> Result<Digraph, GraphError> {
    clique_substitute_all_with_ports(d).map(|(g, _)| g)
}

pub fn clique_substitute_all_with_ports(d: &Digraph) -> Result<(Digraph, PortMap), GraphError> {
    let mut ports = Vec::new();
    for v in 0..d.order() {
        let neighbors = d.neighbors(v);
        if neighbors.is_empty() {
            return Err(GraphError::IsolatedVertex(v));
        }
        ports.extend(neighbors.into_iter().map(|w| Port {
            owner: v,
            facing: w,
            class: class_toward(d, v, w),
        }));
    }
    let map = PortMap { first: 0, ports };

    let mut arcs = Vec::new();
    for (u, w) in d.arcs() {
        let a = map.port(u, w).expect("port exists for every arc");
        let b = map.port(w, u).expect("port exists for every arc");
        arcs.push((a, b));
    }
    let mut start = 0;
    while start < map.ports.len() {
        let owner = map.ports[start].owner;
        let end = start + map.ports[start..].iter().take_while(|p| p.owner == owner).count();
        let ids: Vec<(Vertex, PortClass)> = (start..end).map(|i| (i, map.ports[i].class)).collect();
        wire_ports(&mut arcs, &ids);
        start = end;
    }
    let g = Digraph::new(map.ports.len(), arcs)?;
    Ok((g, map))
}

/// Replaces every arc by a directed path of `m` arcs.
///
/// Original vertices keep their ids; interior vertices are appended per arc
/// in `(tail, head)` order.
pub fn subdivide_arcs(d: &Digraph, m: usize) -> Result<Digraph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidParameter("subdivision length must be at least 1"));
    }
    let mut next = d.order();
    let mut arcs = Vec::with_capacity(d.arc_count() * m);
    for (u, v) in d.arcs() {
        let mut prev = u;
        for _ in 1..m {
            arcs.push((prev, next));
            prev = next;
            next += 1;
        }
        arcs.push((prev, v));
    }
    Digraph::new(next, arcs)
}

/// `0 -> 1 -> ... -> k-1`.
pub fn directed_path(k: usize) -> Result<Digraph, GraphError> {
    if k == 0 {
        return Err(GraphError::InvalidParameter("path order must be at least 1"));
    }
    Digraph::new(k, (1..k).map(|i| (i - 1, i)))
}

/// `0 -> 1 -> ... -> n-1 -> 0`; `n = 2` gives an opposite arc pair.
pub fn directed_cycle(n: usize) -> Result<Digraph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter("cycle length must be at least 2"));
    }
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The four orientations of the claw `K_{1,3}` that every digraph with an
/// induced claw must contain; the centre is vertex 0.
pub fn lemma3_stars() -> [Digraph; 4] {
    let build = |arcs: [(Vertex, Vertex); 3]| Digraph::new(4, arcs).expect("valid star");
    [
        build([(0, 1), (0, 2), (0, 3)]),
        build([(1, 0), (0, 2), (0, 3)]),
        build([(1, 0), (2, 0), (3, 0)]),
        build([(0, 1), (2, 0), (3, 0)]),
    ]
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= q {
        if q.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

/// Normalised homogeneous coordinates of PG(2, q): the first non-zero
/// coordinate is 1. Listed in lexicographic order.
fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = vec![[0, 0, 1]];
    for b in 0..q {
        pts.push([0, 1, b]);
    }
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    pts
}

/// Point/line incidence graph of PG(2, q) with every edge doubled into an
/// opposite arc pair. Points are `0..N` and lines `N..2N`, `N = q² + q + 1`.
pub fn projective_plane_incidence_doubled(q: u64) -> Result<Digraph, GraphError> {
    if !is_prime(q) {
        return Err(GraphError::NotPrime(q));
    }
    let pts = projective_points(q);
    let count = pts.len();
    let mut arcs = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                arcs.push((i, count + j));
                arcs.push((count + j, i));
            }
        }
    }
    Digraph::new(2 * count, arcs)
}

/// Each ordered pair `(u, v)`, `u != v`, gets an arc independently with
/// probability `p`. The stream is ChaCha8 seeded with `seed`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs)
}
