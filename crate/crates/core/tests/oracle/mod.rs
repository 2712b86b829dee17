//! Reference game evaluators that share no code with the retrograde solver.
//!
//! Both work on ordered cop tuples (no multiset canonicalisation) and only
//! use `Digraph::has_arc` for move generation.
#![allow(dead_code)]

use std::collections::HashMap;

use pursuit_core::Digraph;

fn steps(d: &Digraph, v: usize) -> Vec<usize> {
    (0..d.order()).filter(|&w| w == v || d.has_arc(v, w)).collect()
}

fn cop_tuples_after(d: &Digraph, cops: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &c in cops {
        let mut next = Vec::new();
        for prefix in &out {
            for w in steps(d, c) {
                let mut t = prefix.clone();
                t.push(w);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Depth-limited minimax with a transposition table keyed on
/// `(cops, robber, cops_to_move, depth)`.
pub struct Minimax<'a> {
    d: &'a Digraph,
    k: usize,
    limit: usize,
    memo: HashMap<(Vec<usize>, usize, bool, usize), bool>,
}

impl<'a> Minimax<'a> {
    pub fn new(d: &'a Digraph, k: usize) -> Self {
        let n = d.order();
        // a forced capture never needs more half-moves than there are positions
        let limit = n.pow(k as u32) * n * 2;
        Self { d, k, limit, memo: HashMap::new() }
    }

    /// Cops capture within `depth` half-moves against any defence.
    pub fn wins_within(&mut self, cops: &[usize], robber: usize, cops_turn: bool, depth: usize) -> bool {
        if cops.contains(&robber) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        let key = (cops.to_vec(), robber, cops_turn, depth);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = if cops_turn {
            cop_tuples_after(self.d, cops).iter().any(|c| self.wins_within(c, robber, false, depth - 1))
        } else {
            steps(self.d, robber).into_iter().all(|r| self.wins_within(cops, r, true, depth - 1))
        };
        self.memo.insert(key, v);
        v
    }

    /// Optimal half-moves to capture, `None` if the robber survives.
    pub fn rank(&mut self, cops: &[usize], robber: usize, cops_turn: bool) -> Option<u32> {
        if !self.wins_within(cops, robber, cops_turn, self.limit) {
            return None;
        }
        (0..=self.limit).find(|&depth| self.wins_within(cops, robber, cops_turn, depth)).map(|d| d as u32)
    }

    pub fn cops_win_from(&mut self, cops: &[usize]) -> bool {
        let limit = self.limit;
        (0..self.d.order()).all(|r| self.wins_within(cops, r, true, limit))
    }

    pub fn some_placement_wins(&mut self) -> bool {
        all_tuples(self.d.order(), self.k).iter().any(|c| self.cops_win_from(c))
    }
}

/// Smallest k for which the minimax oracle finds a winning placement.
pub fn minimax_cop_number(d: &Digraph) -> usize {
    (1..=d.order()).find(|&k| Minimax::new(d, k).some_placement_wins()).expect("n cops always win")
}

/// Winner of every ordered position by repeated sweeps until nothing
/// changes. Index: `(tuple_id * n + robber) * 2 + (robber_to_move as usize)`.
pub struct Sweep {
    pub n: usize,
    pub k: usize,
    pub tuples: Vec<Vec<usize>>,
    pub win: Vec<bool>,
}

impl Sweep {
    pub fn new(d: &Digraph, k: usize) -> Self {
        let n = d.order();
        let tuples = all_tuples(n, k);
        let id = |t: &[usize]| t.iter().fold(0, |acc, &c| acc * n + c);
        let succ: Vec<Vec<usize>> =
            tuples.iter().map(|t| cop_tuples_after(d, t).iter().map(|s| id(s)).collect()).collect();
        let mut win = vec![false; tuples.len() * n * 2];
        for (ti, t) in tuples.iter().enumerate() {
            for r in 0..n {
                if t.contains(&r) {
                    win[(ti * n + r) * 2] = true;
                    win[(ti * n + r) * 2 + 1] = true;
                }
            }
        }
        loop {
            let mut changed = false;
            for ti in 0..tuples.len() {
                for r in 0..n {
                    let c = (ti * n + r) * 2;
                    if !win[c] && succ[ti].iter().any(|&s| win[(s * n + r) * 2 + 1]) {
                        win[c] = true;
                        changed = true;
                    }
                    if !win[c + 1] && steps(d, r).iter().all(|&r2| win[(ti * n + r2) * 2]) {
                        win[c + 1] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Self { n, k, tuples, win }
    }

    pub fn is_win(&self, cops: &[usize], robber: usize, robber_to_move: bool) -> bool {
        let ti = cops.iter().fold(0, |acc, &c| acc * self.n + c);
        self.win[(ti * self.n + robber) * 2 + robber_to_move as usize]
    }

    pub fn some_placement_wins(&self) -> bool {
        self.tuples.iter().any(|t| (0..self.n).all(|r| self.is_win(t, r, false)))
    }
}
