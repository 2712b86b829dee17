mod oracle;

use oracle::{minimax_cop_number, Minimax, Sweep};
use proptest::prelude::*;
use pursuit_core::constructions::{
    directed_cycle, directed_path, projective_plane_incidence_doubled, random_digraph,
};
use pursuit_core::solver::{
    cop_number, legal_moves, solve, CopNumber, TieBreak, TraceOutcome, DEFAULT_STATE_BUDGET,
};
use pursuit_core::{Digraph, GamePosition, Side};

const BUDGET: u64 = DEFAULT_STATE_BUDGET;

fn bi_complete(n: usize) -> Digraph {
    Digraph::new(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))).unwrap()
}

fn assert_matches_minimax(d: &Digraph, k: usize) {
    let res = solve(d, k, BUDGET).unwrap();
    let mut mm = Minimax::new(d, k);
    for (pos, rank) in res.positions() {
        let expected = mm.rank(&pos.cops, pos.robber, pos.to_move == Side::Cops);
        assert_eq!(rank, expected, "{d:?} k={k} at {pos:?}");
    }
}

#[test]
fn cycle_of_four_one_cop_loses_everywhere() {
    let c4 = directed_cycle(4).unwrap();
    let res = solve(&c4, 1, BUDGET).unwrap();
    let mut mm = Minimax::new(&c4, 1);
    for c in 0..4 {
        assert!(!res.cops_win_from_placement(&[c]).unwrap());
        assert!(!mm.cops_win_from(&[c]));
    }
    assert_eq!(res.winning_placement(), None);
}

#[test]
fn cycle_of_four_two_cops_win() {
    let c4 = directed_cycle(4).unwrap();
    let res = solve(&c4, 2, BUDGET).unwrap();
    assert!(Minimax::new(&c4, 2).some_placement_wins());
    let placement = res.winning_placement().unwrap();
    assert!(Minimax::new(&c4, 2).cops_win_from(&placement));
}

#[test]
fn small_families_match_minimax_position_by_position() {
    for n in 2..=5 {
        assert_matches_minimax(&directed_cycle(n).unwrap(), 1);
        assert_matches_minimax(&bi_complete(n), 1);
        assert_matches_minimax(&directed_path(n).unwrap(), 1);
    }
    assert_matches_minimax(&directed_cycle(4).unwrap(), 2);
    assert_matches_minimax(&directed_cycle(5).unwrap(), 2);
}

#[test]
fn cop_numbers_of_small_families() {
    for n in 2..=5 {
        let k = bi_complete(n);
        assert_eq!(minimax_cop_number(&k), 1);
        assert_eq!(cop_number(&k, n, BUDGET).unwrap().value(), Some(1));
    }
    for n in 3..=6 {
        let c = directed_cycle(n).unwrap();
        assert_eq!(minimax_cop_number(&c), 2);
        assert_eq!(cop_number(&c, n, BUDGET).unwrap().value(), Some(2));
    }
    assert_eq!(cop_number(&directed_cycle(2).unwrap(), 2, BUDGET).unwrap().value(), Some(1));
    assert_eq!(cop_number(&directed_cycle(5).unwrap(), 1, BUDGET).unwrap(), CopNumber::Exceeds { k_max: 1 });
}

#[test]
fn in_star_needs_a_cop_per_source() {
    let star = Digraph::new(4, [(1, 0), (2, 0), (3, 0)]).unwrap();
    let c = cop_number(&star, 4, BUDGET).unwrap().value().unwrap();
    assert!(c >= star.count_sources());
    assert_eq!(c, minimax_cop_number(&star));
}

#[test]
fn fano_needs_three_cops() {
    let fano = projective_plane_incidence_doubled(2).unwrap();
    let two = solve(&fano, 2, BUDGET).unwrap();
    assert_eq!(two.winning_placement(), None);
    // cross-check k = 2 against the sweeping oracle on ordered tuples
    let sweep = Sweep::new(&fano, 2);
    assert!(!sweep.some_placement_wins());
    for (pos, rank) in two.positions() {
        assert_eq!(rank.is_some(), sweep.is_win(&pos.cops, pos.robber, pos.to_move == Side::Robber));
    }
    let three = solve(&fano, 3, BUDGET).unwrap();
    assert!(three.winning_placement().is_some());
    assert_eq!(cop_number(&fano, 14, BUDGET).unwrap().value(), Some(3));
}

#[test]
fn fixed_point_and_rank_coherence() {
    for seed in 0..40 {
        let d = random_digraph(2 + (seed as usize % 5), 0.4, seed).unwrap();
        for k in 1..=2 {
            let res = solve(&d, k, BUDGET).unwrap();
            assert_eq!(res.audit(), None, "seed {seed} k {k}");
        }
    }
}

#[test]
fn robber_to_move_wins_need_every_reply_lost() {
    let d = random_digraph(5, 0.45, 3).unwrap();
    let res = solve(&d, 2, BUDGET).unwrap();
    for (pos, rank) in res.positions() {
        if rank.is_some() && pos.to_move == Side::Robber {
            assert!(legal_moves(&d, &pos).iter().all(|p| res.is_win(p)));
        }
        if let (Some(r), Side::Cops) = (rank, pos.to_move) {
            if !pos.is_capture() {
                let b = res.best_move(&pos).unwrap();
                assert!(legal_moves(&d, &pos).contains(&b));
                assert!(res.rank(&b).unwrap() < r);
            }
        }
    }
}

#[test]
fn monotone_in_cop_count() {
    for seed in 0..30u64 {
        let n = 2 + (seed as usize % 5);
        let d = random_digraph(n, 0.35, 100 + seed).unwrap();
        for k in 1..n {
            let res = solve(&d, k, BUDGET).unwrap();
            let more = solve(&d, k + 1, BUDGET).unwrap();
            if let Some(p) = res.winning_placement() {
                let mut padded = p.clone();
                padded.push(p[0]);
                assert!(more.cops_win_from_placement(&padded).unwrap());
            }
        }
        let c = cop_number(&d, n, BUDGET).unwrap().value().unwrap();
        for k_max in c..=n {
            assert_eq!(cop_number(&d, k_max, BUDGET).unwrap().value(), Some(c));
        }
        assert!(c >= d.count_sources());
    }
}

#[test]
fn traces() {
    let k2 = directed_cycle(2).unwrap();
    let t = solve(&k2, 1, BUDGET).unwrap().play_trace(1, TieBreak::Lexicographic).unwrap();
    assert_eq!(t.outcome, TraceOutcome::Capture);
    assert!(t.positions.len() <= 3);

    let c4 = directed_cycle(4).unwrap();
    let res = solve(&c4, 2, BUDGET).unwrap();
    let t = res.play_trace(100, TieBreak::Lexicographic).unwrap();
    assert_eq!(t.outcome, TraceOutcome::Capture);
    assert!(t.is_legal(&c4));
    assert!(t.positions.last().unwrap().is_capture());
    let start = &t.positions[0];
    assert_eq!(t.positions.len() - 1, res.rank(start).unwrap() as usize);
    assert!(res.cops_win_from_placement(&t.cop_placement).unwrap());

    let res = solve(&c4, 1, BUDGET).unwrap();
    let t = res.play_trace(100, TieBreak::Lexicographic).unwrap();
    let TraceOutcome::RobberEscapes { first_visit } = t.outcome else {
        panic!("one cop cannot win on C4");
    };
    assert!(t.is_legal(&c4));
    assert_eq!(t.positions[first_visit], *t.positions.last().unwrap());
    assert!(t.positions.iter().all(|p| !p.is_capture()));

    for seed in 0..5 {
        let t = solve(&c4, 2, BUDGET).unwrap().play_trace(100, TieBreak::Seeded(seed)).unwrap();
        assert!(t.is_legal(&c4));
        assert_eq!(t.outcome, TraceOutcome::Capture);
    }
    assert!(solve(&c4, 2, BUDGET).unwrap().play_trace(0, TieBreak::Lexicographic).is_err());
}

#[test]
fn capture_is_winning_for_either_side_to_move() {
    let d = directed_path(3).unwrap();
    let res = solve(&d, 1, BUDGET).unwrap();
    for side in [Side::Cops, Side::Robber] {
        let p = GamePosition::new(vec![2], 2, side);
        assert_eq!(res.rank(&p), Some(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_graphs_match_minimax(n in 1usize..=4, p in 0.0f64..=1.0, seed in any::<u64>(), k in 1usize..=2) {
        let d = random_digraph(n, p, seed).unwrap();
        assert_matches_minimax(&d, k);
    }
}
