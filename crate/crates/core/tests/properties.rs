use proptest::prelude::*;
use pursuit_core::constructions::{
    clique_substitute_all, clique_substitute_all_with_ports, clique_substitute_vertex_with_ports,
    directed_path, lemma3_stars, projective_plane_incidence_doubled, random_digraph, subdivide_arcs,
};
use pursuit_core::patterns::{
    containment_chain_check, find_induced, find_pk_star, find_pk_subgraph, WitnessKind,
};
use pursuit_core::{Digraph, PatternWitness};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |mask| {
            let arcs =
                (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && mask[u * n + v]);
            Digraph::new(n, arcs).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    digraph(max_n).prop_flat_map(|d| {
        let n = d.order();
        (Just(d), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Shortest cycle by enumerating simple cycles of the underlying
/// multigraph, each from its smallest vertex.
fn girth_by_enumeration(d: &Digraph) -> Option<usize> {
    let n = d.order();
    if (0..n).any(|u| (0..n).any(|v| d.has_arc(u, v) && d.has_arc(v, u))) {
        return Some(2);
    }
    fn walk(d: &Digraph, start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for w in start..d.order() {
            if !d.adjacent(last, w) {
                continue;
            }
            if w == start && path.len() >= 3 {
                *best = Some(best.map_or(path.len(), |b: usize| b.min(path.len())));
            } else if w > start && !path.contains(&w) {
                path.push(w);
                walk(d, start, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for s in 0..n {
        walk(d, s, &mut vec![s], &mut best);
    }
    best
}

/// Is there a simple cycle of length `3..=max_len` in the underlying graph?
fn has_short_cycle(d: &Digraph, max_len: usize) -> Option<usize> {
    fn walk(d: &Digraph, start: usize, path: &mut Vec<usize>, max_len: usize) -> Option<usize> {
        let last = *path.last().unwrap();
        for w in 0..d.order() {
            if !d.adjacent(last, w) {
                continue;
            }
            if w == start && path.len() >= 3 {
                return Some(path.len());
            }
            if path.len() < max_len && !path.contains(&w) {
                path.push(w);
                if let Some(l) = walk(d, start, path, max_len) {
                    return Some(l);
                }
                path.pop();
            }
        }
        None
    }
    (0..d.order()).find_map(|s| walk(d, s, &mut vec![s], max_len))
}

fn naive_pk_star(d: &Digraph, k: usize) -> Option<Vec<usize>> {
    fn rec(d: &Digraph, k: usize, t: &mut Vec<usize>) -> bool {
        if t.len() == k {
            let w = PatternWitness { vertices: t.clone(), kind: WitnessKind::PkStar };
            return w.is_valid(d, None);
        }
        for v in 0..d.order() {
            if !t.contains(&v) {
                t.push(v);
                if rec(d, k, t) {
                    return true;
                }
                t.pop();
            }
        }
        false
    }
    let mut t = Vec::new();
    rec(d, k, &mut t).then_some(t)
}

fn strongly_connected(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n, any::<u64>()).prop_filter_map("not strongly connected", |(n, seed)| {
        let d = random_digraph(n, 0.5, seed).unwrap();
        d.is_strongly_connected().then_some(d)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Label {
    Orig(usize),
    Port(usize, usize),
}

fn owner(l: Label) -> usize {
    match l {
        Label::Orig(u) | Label::Port(u, _) => u,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_covers_neighbourhood(d in digraph(7)) {
        for v in 0..d.order() {
            let p = d.neighborhood_partition(v).unwrap();
            prop_assert_eq!(p.len(), d.degree(v));
            let mut all: Vec<_> = p.in_only.iter().chain(&p.out_only).chain(&p.both).copied().collect();
            all.sort();
            prop_assert_eq!(all, d.neighbors(v));
            for &w in &p.both { prop_assert!(d.has_arc(v, w) && d.has_arc(w, v)); }
            for &w in &p.in_only { prop_assert!(d.has_arc(w, v) && !d.has_arc(v, w)); }
            for &w in &p.out_only { prop_assert!(d.has_arc(v, w) && !d.has_arc(w, v)); }
        }
    }

    #[test]
    fn connectivity_relations(d in digraph(7)) {
        if d.is_strongly_connected() {
            prop_assert!(d.is_weakly_connected());
            if d.order() >= 2 {
                prop_assert_eq!(d.count_sources(), 0);
            }
        }
    }

    #[test]
    fn girth_matches_enumeration_and_relabeling((d, perm) in with_permutation(7)) {
        let g = d.underlying_girth();
        prop_assert_eq!(g, girth_by_enumeration(&d));
        prop_assert_eq!(g, d.relabel(&perm).unwrap().underlying_girth());
    }

    #[test]
    fn clique_substitution_shape(d in strongly_connected(6)) {
        let plus = clique_substitute_all(&d).unwrap();
        let total: usize = (0..d.order()).map(|v| d.degree(v)).sum();
        prop_assert_eq!(plus.order(), total);
        prop_assert!(plus.is_strongly_connected());
        for s in lemma3_stars() {
            prop_assert_eq!(find_induced(&plus, &s), None);
        }
    }

    #[test]
    fn port_classes_follow_partition(d in digraph(6)) {
        if let Ok((_, ports)) = clique_substitute_all_with_ports(&d) {
            for p in &ports.ports {
                let part = d.neighborhood_partition(p.owner).unwrap();
                let expected = if part.in_only.contains(&p.facing) {
                    pursuit_core::constructions::PortClass::Minus
                } else if part.out_only.contains(&p.facing) {
                    pursuit_core::constructions::PortClass::Plus
                } else {
                    pursuit_core::constructions::PortClass::Pm
                };
                prop_assert_eq!(p.class, expected);
            }
        } else {
            prop_assert!(d.min_degree() == Some(0));
        }
    }

    #[test]
    fn sequential_substitution_matches_global((d, order) in with_permutation(5)) {
        prop_assume!(d.min_degree().unwrap_or(0) >= 1);
        let (global, ports) = clique_substitute_all_with_ports(&d).unwrap();
        let mut g = d.clone();
        let mut labels: Vec<Label> = (0..d.order()).map(Label::Orig).collect();
        for &v in &order {
            let id = labels.iter().position(|&l| l == Label::Orig(v)).unwrap();
            let (next, map) = clique_substitute_vertex_with_ports(&g, id).unwrap();
            let mut new_labels: Vec<Label> =
                labels.iter().enumerate().filter(|&(i, _)| i != id).map(|(_, &l)| l).collect();
            for p in &map.ports {
                new_labels.push(Label::Port(v, owner(labels[p.facing])));
            }
            g = next;
            labels = new_labels;
        }
        let to_global: Vec<usize> = labels
            .iter()
            .map(|&l| match l {
                Label::Port(v, w) => ports.port(v, w).unwrap(),
                Label::Orig(_) => unreachable!("every vertex was substituted"),
            })
            .collect();
        prop_assert_eq!(g.relabel(&to_global).unwrap(), global);
    }

    #[test]
    fn subdivision_properties(d in strongly_connected(6), m in 1usize..=4) {
        let s = subdivide_arcs(&d, m).unwrap();
        prop_assert_eq!(s.order(), d.order() + d.arc_count() * (m - 1));
        prop_assert!(s.is_strongly_connected());
        let (before, after) = (d.underlying_girth().unwrap(), s.underlying_girth().unwrap());
        prop_assert!(after >= m * before);
        prop_assert!(after >= m);
    }

    #[test]
    fn pk_star_agrees_with_naive(d in digraph(7), k in 2usize..=5) {
        let found = find_pk_star(&d, k).unwrap().map(|w| w.vertices);
        prop_assert_eq!(found, naive_pk_star(&d, k));
    }

    #[test]
    fn witnesses_validate(d in digraph(7), k in 2usize..=5) {
        if let Some(w) = find_pk_star(&d, k).unwrap() {
            prop_assert!(w.is_valid(&d, None));
        }
        if let Some(w) = find_pk_subgraph(&d, k).unwrap() {
            prop_assert!(w.is_valid(&d, None));
        }
        let path = directed_path(k).unwrap();
        if let Some(w) = find_induced(&d, &path) {
            prop_assert!(w.is_valid(&d, Some(&path)));
        }
        for s in lemma3_stars() {
            if let Some(w) = find_induced(&d, &s) {
                prop_assert!(w.is_valid(&d, Some(&s)));
            }
        }
    }

    #[test]
    fn patterns_survive_relabeling((d, perm) in with_permutation(7), k in 2usize..=4) {
        let r = d.relabel(&perm).unwrap();
        prop_assert_eq!(find_pk_star(&d, k).unwrap().is_some(), find_pk_star(&r, k).unwrap().is_some());
        prop_assert_eq!(find_pk_subgraph(&d, k).unwrap().is_some(), find_pk_subgraph(&r, k).unwrap().is_some());
        for s in lemma3_stars() {
            prop_assert_eq!(find_induced(&d, &s).is_some(), find_induced(&r, &s).is_some());
        }
    }

    #[test]
    fn containment_chain(d in digraph(7), k in 3usize..=5) {
        prop_assert!(containment_chain_check(&d, k).unwrap().holds());
    }
}

#[test]
fn projective_planes_are_regular_bipartite_girth_six() {
    for q in [2u64, 3] {
        let d = projective_plane_incidence_doubled(q).unwrap();
        let half = (q * q + q + 1) as usize;
        assert_eq!(d.order(), 2 * half);
        for v in 0..d.order() {
            assert_eq!(d.degree(v), q as usize + 1);
            for &w in d.out_neighbors(v) {
                assert_ne!(v < half, w < half, "edge inside one side");
                assert!(d.has_arc(w, v));
            }
        }
        // the oriented version (one arc per incidence) shows the simple girth
        let oriented = Digraph::new(d.order(), d.arcs().filter(|&(u, v)| u < v)).unwrap();
        assert_eq!(has_short_cycle(&oriented, 5), None);
        assert_eq!(has_short_cycle(&oriented, 6), Some(6));
        assert_eq!(oriented.underlying_girth(), Some(6));
    }
    let fano = projective_plane_incidence_doubled(2).unwrap();
    assert_eq!(find_induced(&fano, &directed_path(2).unwrap()), None);
}
