//! Forbidden-substructure searches.
//!
//! Every search is a depth-first extension of an ordered vertex tuple with
//! candidates tried in ascending order, so the witness returned is the
//! lexicographically smallest one.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex};
use crate::error::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// `vertices[i]` is the image of pattern vertex `i` under an
    /// isomorphism onto the induced subdigraph.
    InducedIso,
    /// `vertices` is a directed path; chords are unconstrained.
    PkSubgraph,
    /// Forward arcs `(vertices[i], vertices[j])`, `i < j`, are exactly the
    /// consecutive ones; backward arcs are unconstrained.
    PkStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternWitness {
    pub vertices: Vec<Vertex>,
    pub kind: WitnessKind,
}

impl PatternWitness {
    /// Checks the witness against `host`. `pattern` is required for
    /// [`WitnessKind::InducedIso`] and ignored otherwise.
    pub fn is_valid(&self, host: &Digraph, pattern: Option<&Digraph>) -> bool {
        let vs = &self.vertices;
        if vs.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let distinct = vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v));
        if !distinct {
            return false;
        }
        match self.kind {
            WitnessKind::InducedIso => {
                let Some(p) = pattern else { return false };
                p.order() == vs.len()
                    && (0..vs.len()).all(|i| {
                        (0..vs.len()).all(|j| i == j || p.has_arc(i, j) == host.has_arc(vs[i], vs[j]))
                    })
            }
            WitnessKind::PkSubgraph => vs.windows(2).all(|w| host.has_arc(w[0], w[1])),
            WitnessKind::PkStar => {
                (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| host.has_arc(vs[i], vs[j]) == (j == i + 1)))
            }
        }
    }
}

/// Searches for `pattern` as an induced subdigraph of `host`.
pub fn find_induced(host: &Digraph, pattern: &Digraph) -> Option<PatternWitness> {
    let k = pattern.order();
    if k > host.order() {
        return None;
    }
    if k == 0 {
        return Some(PatternWitness { vertices: Vec::new(), kind: WitnessKind::InducedIso });
    }
    let mut search =
        InducedSearch { host, pattern, tuple: Vec::with_capacity(k), used: vec![false; host.order()] };
    search.extend().then_some(PatternWitness { vertices: search.tuple, kind: WitnessKind::InducedIso })
}

struct InducedSearch<'a> {
    host: &'a Digraph,
    pattern: &'a Digraph,
    tuple: Vec<Vertex>,
    used: Vec<bool>,
}

impl InducedSearch<'_> {
    fn extend(&mut self) -> bool {
        let i = self.tuple.len();
        if i == self.pattern.order() {
            return true;
        }
        let (p_out, p_in) = (self.pattern.out_neighbors(i).len(), self.pattern.in_neighbors(i).len());
        for cand in 0..self.host.order() {
            if self.used[cand]
                || self.host.out_neighbors(cand).len() < p_out
                || self.host.in_neighbors(cand).len() < p_in
            {
                continue;
            }
            let consistent = self.tuple.iter().enumerate().all(|(j, &h)| {
                self.pattern.has_arc(j, i) == self.host.has_arc(h, cand)
                    && self.pattern.has_arc(i, j) == self.host.has_arc(cand, h)
            });
            if !consistent {
                continue;
            }
            self.used[cand] = true;
            self.tuple.push(cand);
            if self.extend() {
                return true;
            }
            self.tuple.pop();
            self.used[cand] = false;
        }
        false
    }
}

fn check_k(k: usize) -> Result<(), GraphError> {
    if k < 2 {
        Err(GraphError::InvalidParameter("path order k must be at least 2"))
    } else {
        Ok(())
    }
}

/// Searches for a directed path on `k` distinct vertices, not necessarily
/// induced.
pub fn find_pk_subgraph(host: &Digraph, k: usize) -> Result<Option<PatternWitness>, GraphError> {
    check_k(k)?;
    Ok(path_search(host, k, false).map(|vertices| PatternWitness { vertices, kind: WitnessKind::PkSubgraph }))
}

/// Searches for an ordered `k`-tuple whose forward arcs are exactly the
/// consecutive pairs. Hosts with fewer than `k` vertices are `P_k*`-free.
pub fn find_pk_star(host: &Digraph, k: usize) -> Result<Option<PatternWitness>, GraphError> {
    check_k(k)?;
    Ok(path_search(host, k, true).map(|vertices| PatternWitness { vertices, kind: WitnessKind::PkStar }))
}

fn path_search(host: &Digraph, k: usize, exact_forward: bool) -> Option<Vec<Vertex>> {
    fn extend(host: &Digraph, k: usize, exact: bool, tuple: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
        if tuple.len() == k {
            return true;
        }
        let last = *tuple.last().expect("tuple is seeded");
        for &next in host.out_neighbors(last) {
            if used[next] {
                continue;
            }
            if exact && tuple[..tuple.len() - 1].iter().any(|&a| host.has_arc(a, next)) {
                continue;
            }
            used[next] = true;
            tuple.push(next);
            if extend(host, k, exact, tuple, used) {
                return true;
            }
            tuple.pop();
            used[next] = false;
        }
        false
    }

    if k > host.order() {
        return None;
    }
    let mut used = vec![false; host.order()];
    let mut tuple = Vec::with_capacity(k);
    for start in 0..host.order() {
        used[start] = true;
        tuple.push(start);
        if extend(host, k, exact_forward, &mut tuple, &mut used) {
            return Some(tuple);
        }
        tuple.pop();
        used[start] = false;
    }
    None
}

/// Freeness verdicts for the three nested path conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainmentChain {
    /// No directed `P_k` subgraph.
    pub subgraph_free: bool,
    /// No `P_k*` tuple.
    pub star_free: bool,
    /// No induced directed `P_k`.
    pub induced_free: bool,
}

impl ContainmentChain {
    /// `subgraph_free => star_free => induced_free`.
    pub fn holds(&self) -> bool {
        (!self.subgraph_free || self.star_free) && (!self.star_free || self.induced_free)
    }
}

pub fn containment_chain_check(d: &Digraph, k: usize) -> Result<ContainmentChain, GraphError> {
    check_k(k)?;
    let path = crate::constructions::directed_path(k)?;
    Ok(ContainmentChain {
        subgraph_free: find_pk_subgraph(d, k)?.is_none(),
        star_free: find_pk_star(d, k)?.is_none(),
        induced_free: find_induced(d, &path).is_none(),
    })
}
