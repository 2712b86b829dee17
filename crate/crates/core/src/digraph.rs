//! Finite simple digraphs: no loops, no parallel arcs in the same
//! direction. Opposite arc pairs are allowed.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;

/// Vertices are dense ids `0..n`.
pub type Vertex = usize;

/// An immutable simple digraph.
///
/// Arcs are kept as sorted out- and in-adjacency lists plus a bit matrix
/// for constant-time membership.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    matrix: Vec<u64>,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    arc_count: usize,
}

impl core::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs().collect::<Vec<_>>()).finish()
    }
}

/// The neighbours of a vertex split by the direction of the arcs joining
/// them to it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    /// Neighbours `w` with only the arc `(w, v)`.
    pub in_only: Vec<Vertex>,
    /// Neighbours `w` with only the arc `(v, w)`.
    pub out_only: Vec<Vertex>,
    /// Neighbours joined to `v` in both directions.
    pub both: Vec<Vertex>,
}

impl NeighborhoodPartition {
    pub fn len(&self) -> usize {
        self.in_only.len() + self.out_only.len() + self.both.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Digraph {
    /// Builds a digraph, rejecting loops, duplicate arcs and out of range ids.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if g.has_arc(u, v) {
                return Err(GraphError::DuplicateArc(u, v));
            }
            g.matrix[u * g.words + v / 64] |= 1 << (v % 64);
            g.out[u].push(v);
            g.inc[v].push(u);
            g.arc_count += 1;
        }
        for list in g.out.iter_mut().chain(g.inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// `n` vertices and no arcs.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            matrix: vec![0; n * words],
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    #[inline]
    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    /// True if `u` and `v` are joined by an arc in either direction.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Heads of arcs leaving `v`, ascending.
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    /// Tails of arcs entering `v`, ascending.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[v]
    }

    /// All arcs in `(tail, head)` lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, heads)| heads.iter().map(move |&v| (u, v)))
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Neighbours of `v` in the underlying undirected graph, ascending.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.out[v].iter().chain(&self.inc[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Degree in the underlying simple graph.
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn neighborhood_partition(&self, v: Vertex) -> Result<NeighborhoodPartition, GraphError> {
        self.check_vertex(v)?;
        let mut part = NeighborhoodPartition::default();
        for w in self.neighbors(v) {
            match (self.has_arc(w, v), self.has_arc(v, w)) {
                (true, true) => part.both.push(w),
                (true, false) => part.in_only.push(w),
                (false, true) => part.out_only.push(w),
                (false, false) => unreachable!(),
            }
        }
        Ok(part)
    }

    fn reach(&self, start: Vertex, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            let next = if forward { &self.out[u] } else { &self.inc[u] };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Every ordered pair of vertices is joined by a directed path.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reach(0, true).iter().all(|&s| s) && self.reach(0, false).iter().all(|&s| s)
    }

    /// The underlying undirected graph is connected.
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.out[u].iter().chain(&self.inc[u]) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Vertices of in-degree zero.
    pub fn count_sources(&self) -> usize {
        self.inc.iter().filter(|tails| tails.is_empty()).count()
    }

    /// Smallest vertex degree in the underlying simple graph; `None` when
    /// there are no vertices.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    /// Shortest cycle of the underlying multigraph, where an opposite arc
    /// pair is a cycle of length two. `None` if the underlying graph is a
    /// forest.
    pub fn underlying_girth(&self) -> Option<usize> {
        if self.arcs().any(|(u, v)| self.has_arc(v, u)) {
            return Some(2);
        }
        let adj: Vec<Vec<Vertex>> = (0..self.n).map(|v| self.neighbors(v)).collect();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// The digraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter("permutation length differs from order"));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            self.check_vertex(p)?;
            if core::mem::replace(&mut hit[p], true) {
                return Err(GraphError::InvalidParameter("relabeling is not a permutation"));
            }
        }
        Self::new(self.n, self.arcs().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subdigraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Self, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut arcs = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    arcs.push((i, j));
                }
            }
        }
        Self::new(vertices.len(), arcs)
    }
}
