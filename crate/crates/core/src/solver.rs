//! Exact solution of the k-cop pursuit game on a digraph.
//!
//! Rules: the cops place their k pieces (repetition allowed), then the
//! robber places his. Cops move first; every cop independently stays or
//! follows one out-arc, then the robber stays or follows one out-arc. The
//! robber is caught as soon as he shares a vertex with a cop, whichever
//! side made the last move.
//!
//! Positions store the cops as a sorted multiset. [`solve`] labels every
//! position with the least fixed point of the cop-attractor of the capture
//! set using the counter-based retrograde method: robber-to-move positions
//! track how many of their successors are not yet won, so each
//! predecessor edge is visited once.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::{Digraph, Vertex};
use crate::error::SolveError;

/// Default cap on the number of positions a single solve may allocate.
pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

const UNWON: u32 = u32::MAX;
const NO_MOVE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Cops,
    Robber,
}

impl Side {
    pub fn other(self) -> Self {
        match self {
            Side::Cops => Side::Robber,
            Side::Robber => Side::Cops,
        }
    }
}

/// A game position with the cop multiset in canonical (ascending) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GamePosition {
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
    pub to_move: Side,
}

impl GamePosition {
    /// Sorts `cops` into canonical order.
    pub fn new(mut cops: Vec<Vertex>, robber: Vertex, to_move: Side) -> Self {
        cops.sort_unstable();
        Self { cops, robber, to_move }
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }

    fn is_valid_for(&self, n: usize, k: usize) -> bool {
        self.cops.len() == k
            && self.robber < n
            && self.cops.iter().all(|&c| c < n)
            && self.cops.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Calls `f` with every canonical multiset obtained by replacing each
/// `cops[i]` with one of `choices(cops[i])`. Duplicates are possible when
/// cops share a vertex.
fn for_each_cop_move<'a, C, F>(cops: &[u32], choices: C, buf: &mut Vec<u32>, mut f: F)
where
    C: Fn(u32) -> &'a [Vertex],
    F: FnMut(&[u32]),
{
    let k = cops.len();
    let lists: Vec<&[Vertex]> = cops.iter().map(|&c| choices(c)).collect();
    // digit 0 means "stay", digit j > 0 means lists[i][j - 1]
    let mut digits = vec![0usize; k];
    loop {
        buf.clear();
        buf.extend(
            digits.iter().zip(cops).zip(&lists).map(|((&d, &c), l)| if d == 0 { c } else { l[d - 1] as u32 }),
        );
        buf.sort_unstable();
        f(buf);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            digits[i] += 1;
            if digits[i] <= lists[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All positions reachable by one move of the side to move, canonical,
/// deduplicated and sorted.
pub fn legal_moves(d: &Digraph, pos: &GamePosition) -> Vec<GamePosition> {
    let next = pos.to_move.other();
    let mut out = Vec::new();
    match pos.to_move {
        Side::Cops => {
            let cops: Vec<u32> = pos.cops.iter().map(|&c| c as u32).collect();
            let mut buf = Vec::with_capacity(cops.len());
            for_each_cop_move(
                &cops,
                |c| d.out_neighbors(c as usize),
                &mut buf,
                |m| {
                    out.push(GamePosition {
                        cops: m.iter().map(|&c| c as usize).collect(),
                        robber: pos.robber,
                        to_move: next,
                    })
                },
            );
        }
        Side::Robber => {
            for &r in core::iter::once(&pos.robber).chain(d.out_neighbors(pos.robber)) {
                out.push(GamePosition { cops: pos.cops.clone(), robber: r, to_move: next });
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Bijection between cop multisets and `0..C(n+k-1, k)` through the
/// combinatorial number system.
#[derive(Debug, Clone)]
struct MultisetIndex {
    k: usize,
    binom: Vec<Vec<u64>>,
    table: Vec<u32>,
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k.min(n.saturating_sub(k)) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    if k > n {
        0
    } else {
        acc
    }
}

impl MultisetIndex {
    fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let mut binom = vec![vec![0u64; k + 2]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            if a > 0 {
                for b in 1..=k + 1 {
                    binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
                }
            }
        }
        let count = binom[n + k - 1][k] as usize;
        let mut index = Self { k, binom, table: vec![0; count * k] };
        let mut cur = vec![0u32; k];
        loop {
            let r = index.rank(&cur);
            index.table[r * k..(r + 1) * k].copy_from_slice(&cur);
            // next non-decreasing tuple
            let mut i = k;
            loop {
                if i == 0 {
                    return index;
                }
                i -= 1;
                if (cur[i] as usize) + 1 < n {
                    let v = cur[i] + 1;
                    cur[i..].fill(v);
                    break;
                }
            }
        }
    }

    fn count(&self) -> usize {
        self.table.len() / self.k
    }

    #[inline]
    fn rank(&self, sorted: &[u32]) -> usize {
        sorted.iter().enumerate().map(|(i, &c)| self.binom[c as usize + i][i + 1] as usize).sum()
    }

    #[inline]
    fn get(&self, m: usize) -> &[u32] {
        &self.table[m * self.k..(m + 1) * self.k]
    }
}

/// Winner and distance-to-capture of every position of the k-cop game.
#[derive(Debug, Clone)]
pub struct SolveResult {
    graph: Digraph,
    k: usize,
    index: MultisetIndex,
    /// Half-moves to capture under optimal play; `UNWON` if the robber
    /// escapes forever.
    rank: Vec<u32>,
    /// Multiset id of the chosen cop move for won cop-to-move positions.
    best: Vec<u32>,
}

/// Number of positions (both sides to move) of the k-cop game on n vertices.
pub fn state_count(n: usize, k: usize) -> u128 {
    binomial((n + k - 1) as u128, k as u128).saturating_mul(n as u128 * 2)
}

/// Solves the k-cop game on `d`, refusing to allocate more than `budget`
/// positions.
pub fn solve(d: &Digraph, k: usize, budget: u64) -> Result<SolveResult, SolveError> {
    let n = d.order();
    if n == 0 {
        return Err(SolveError::EmptyGraph);
    }
    if k == 0 {
        return Err(SolveError::NoCops);
    }
    let required = state_count(n, k);
    if required > budget as u128 || required > u32::MAX as u128 {
        return Err(SolveError::StateBudget { required, budget });
    }

    let index = MultisetIndex::new(n, k);
    let m_count = index.count();
    let state = |m: usize, r: usize, side: Side| ((m * n + r) << 1) | (side == Side::Robber) as usize;

    let mut rank = vec![UNWON; m_count * n * 2];
    let mut pending = vec![0u32; m_count * n];
    let mut queue: Vec<u32> = Vec::new();
    for m in 0..m_count {
        let cops = index.get(m);
        for r in 0..n {
            if cops.contains(&(r as u32)) {
                for side in [Side::Cops, Side::Robber] {
                    let s = state(m, r, side);
                    rank[s] = 0;
                    queue.push(s as u32);
                }
            } else {
                pending[m * n + r] = d.out_neighbors(r).len() as u32 + 1;
            }
        }
    }

    let mut head = 0;
    let mut buf = Vec::with_capacity(k);
    let mut cops = vec![0u32; k];
    while head < queue.len() {
        let s = queue[head] as usize;
        head += 1;
        let next_rank = rank[s] + 1;
        let (mr, robber_side) = (s >> 1, s & 1 == 1);
        let (m, r) = (mr / n, mr % n);
        cops.copy_from_slice(index.get(m));
        if !robber_side {
            // robber positions that can move (or stay) onto r
            for &r2 in core::iter::once(&r).chain(d.in_neighbors(r)) {
                if cops.contains(&(r2 as u32)) {
                    continue;
                }
                let t = state(m, r2, Side::Robber);
                if rank[t] != UNWON {
                    continue;
                }
                let p = &mut pending[m * n + r2];
                *p -= 1;
                if *p == 0 {
                    rank[t] = next_rank;
                    queue.push(t as u32);
                }
            }
        } else {
            // cop positions with a move onto this multiset
            for_each_cop_move(
                &cops,
                |c| d.in_neighbors(c as usize),
                &mut buf,
                |pred| {
                    if pred.contains(&(r as u32)) {
                        return;
                    }
                    let t = state(index.rank(pred), r, Side::Cops);
                    if rank[t] == UNWON {
                        rank[t] = next_rank;
                        queue.push(t as u32);
                    }
                },
            );
        }
    }

    let mut best = vec![NO_MOVE; m_count * n];
    for m in 0..m_count {
        cops.copy_from_slice(index.get(m));
        for r in 0..n {
            let here = rank[state(m, r, Side::Cops)];
            if here == UNWON || here == 0 {
                continue;
            }
            let mut choice: Option<(u32, Vec<u32>)> = None;
            for_each_cop_move(
                &cops,
                |c| d.out_neighbors(c as usize),
                &mut buf,
                |succ| {
                    let m2 = index.rank(succ);
                    let rk = rank[state(m2, r, Side::Robber)];
                    if rk == UNWON || rk + 1 != here {
                        return;
                    }
                    if choice.as_ref().is_none_or(|(_, t)| succ < t.as_slice()) {
                        choice = Some((m2 as u32, succ.to_vec()));
                    }
                },
            );
            best[m * n + r] = choice.expect("won position has a rank-decreasing move").0;
        }
    }

    Ok(SolveResult { graph: d.clone(), k, index, rank, best })
}

impl SolveResult {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn position_count(&self) -> usize {
        self.rank.len()
    }

    fn state_of(&self, pos: &GamePosition) -> usize {
        let n = self.graph.order();
        assert!(pos.is_valid_for(n, self.k), "position {pos:?} does not belong to this game");
        let cops: Vec<u32> = pos.cops.iter().map(|&c| c as u32).collect();
        let m = self.index.rank(&cops);
        ((m * n + pos.robber) << 1) | (pos.to_move == Side::Robber) as usize
    }

    fn position_of(&self, s: usize) -> GamePosition {
        let n = self.graph.order();
        let (mr, side) = (s >> 1, s & 1);
        GamePosition {
            cops: self.index.get(mr / n).iter().map(|&c| c as usize).collect(),
            robber: mr % n,
            to_move: if side == 1 { Side::Robber } else { Side::Cops },
        }
    }

    /// True if the cops force capture from `pos`.
    ///
    /// Panics if `pos` is not a canonical position of this game.
    pub fn is_win(&self, pos: &GamePosition) -> bool {
        self.rank[self.state_of(pos)] != UNWON
    }

    /// Optimal number of half-moves to capture, or `None` if the robber
    /// escapes forever.
    pub fn rank(&self, pos: &GamePosition) -> Option<u32> {
        let r = self.rank[self.state_of(pos)];
        (r != UNWON).then_some(r)
    }

    /// The cop move chosen from a won, cop-to-move, non-capture position:
    /// the lexicographically smallest successor of minimal rank.
    pub fn best_move(&self, pos: &GamePosition) -> Option<GamePosition> {
        let s = self.state_of(pos);
        if pos.to_move != Side::Cops {
            return None;
        }
        let b = self.best[s >> 1];
        (b != NO_MOVE).then(|| GamePosition {
            cops: self.index.get(b as usize).iter().map(|&c| c as usize).collect(),
            robber: pos.robber,
            to_move: Side::Robber,
        })
    }

    /// Every position with its rank.
    pub fn positions(&self) -> impl Iterator<Item = (GamePosition, Option<u32>)> + '_ {
        (0..self.rank.len()).map(|s| (self.position_of(s), (self.rank[s] != UNWON).then_some(self.rank[s])))
    }

    /// True if the cops, placed on `cops`, catch the robber wherever he
    /// places himself.
    pub fn cops_win_from_placement(&self, cops: &[Vertex]) -> Result<bool, SolveError> {
        let n = self.graph.order();
        if cops.len() != self.k || cops.iter().any(|&c| c >= n) {
            return Err(SolveError::InvalidPlacement);
        }
        let cops = {
            let mut c = cops.to_vec();
            c.sort_unstable();
            c
        };
        Ok((0..n).all(|r| self.is_win(&GamePosition { cops: cops.clone(), robber: r, to_move: Side::Cops })))
    }

    /// The lexicographically smallest winning cop placement.
    pub fn winning_placement(&self) -> Option<Vec<Vertex>> {
        let n = self.graph.order();
        let mut placements: Vec<Vec<Vertex>> = (0..self.index.count())
            .filter(|&m| (0..n).all(|r| self.rank[(m * n + r) << 1] != UNWON))
            .map(|m| self.index.get(m).iter().map(|&c| c as usize).collect())
            .collect();
        placements.sort_unstable();
        placements.into_iter().next()
    }

    /// Re-derives every label from its successors and returns the first
    /// position whose win flag or rank disagrees, if any.
    pub fn audit(&self) -> Option<GamePosition> {
        for s in 0..self.rank.len() {
            let pos = self.position_of(s);
            let here = self.rank[s];
            let expected = if pos.is_capture() {
                0
            } else {
                let succ: Vec<u32> =
                    legal_moves(&self.graph, &pos).iter().map(|p| self.rank[self.state_of(p)]).collect();
                match pos.to_move {
                    Side::Cops => succ.iter().copied().min().map_or(UNWON, |r| r.saturating_add(1)),
                    Side::Robber => {
                        if succ.contains(&UNWON) {
                            UNWON
                        } else {
                            succ.iter().copied().max().map_or(UNWON, |r| r + 1)
                        }
                    }
                }
            };
            if here != expected {
                return Some(pos);
            }
            if pos.to_move == Side::Cops && here != UNWON && here > 0 {
                match self.best_move(&pos) {
                    Some(b) if self.rank(&b) == Some(here - 1) => {}
                    _ => return Some(pos),
                }
            }
        }
        None
    }

    /// Plays one game under the solved strategies, see [`GameTrace`].
    pub fn play_trace(&self, max_rounds: usize, ties: TieBreak) -> Result<GameTrace, SolveError> {
        Tracer::new(self, ties).run(max_rounds)
    }
}

/// Outcome of [`cop_number`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CopNumber {
    /// `cops` cops suffice (and fewer do not); `placement` is a winning
    /// start for them.
    Exact { cops: usize, placement: Vec<Vertex> },
    /// Even `k_max` cops lose.
    Exceeds { k_max: usize },
}

impl CopNumber {
    pub fn value(&self) -> Option<usize> {
        match self {
            CopNumber::Exact { cops, .. } => Some(*cops),
            CopNumber::Exceeds { .. } => None,
        }
    }
}

/// Smallest `k <= k_max` for which some placement of k cops wins.
pub fn cop_number(d: &Digraph, k_max: usize, budget: u64) -> Result<CopNumber, SolveError> {
    cop_number_from(d, 1, k_max, budget)
}

/// Like [`cop_number`] when it is already known that fewer than `k_min`
/// cops lose.
pub fn cop_number_from(
    d: &Digraph,
    k_min: usize,
    k_max: usize,
    budget: u64,
) -> Result<CopNumber, SolveError> {
    if d.order() == 0 {
        return Err(SolveError::EmptyGraph);
    }
    for k in k_min.max(1)..=k_max {
        if let Some(placement) = solve(d, k, budget)?.winning_placement() {
            return Ok(CopNumber::Exact { cops: k, placement });
        }
    }
    Ok(CopNumber::Exceeds { k_max })
}

/// How a trace picks among equally good moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically smallest candidate.
    Lexicographic,
    /// Uniform choice from a ChaCha8 stream with this seed.
    Seeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome {
    /// The last snapshot has the robber on a cop.
    Capture,
    /// The last snapshot repeats the snapshot at `first_visit`; with both
    /// strategies fixed the game cycles forever.
    RobberEscapes { first_visit: usize },
}

/// A played game: placements, then one snapshot per half-move starting
/// with the position after placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTrace {
    pub cop_placement: Vec<Vertex>,
    pub robber_placement: Vertex,
    pub positions: Vec<GamePosition>,
    pub outcome: TraceOutcome,
}

impl GameTrace {
    /// Every snapshot follows from its predecessor by a legal move.
    pub fn is_legal(&self, d: &Digraph) -> bool {
        self.positions.windows(2).all(|w| legal_moves(d, &w[0]).contains(&w[1]))
    }
}

struct Tracer<'a> {
    result: &'a SolveResult,
    rng: Option<ChaCha8Rng>,
}

impl<'a> Tracer<'a> {
    fn new(result: &'a SolveResult, ties: TieBreak) -> Self {
        let rng = match ties {
            TieBreak::Lexicographic => None,
            TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Self { result, rng }
    }

    /// `cands` must be sorted and non-empty.
    fn pick<T: Clone>(&mut self, cands: &[T]) -> T {
        match &mut self.rng {
            None => cands[0].clone(),
            Some(rng) => cands[rng.random_range(0..cands.len())].clone(),
        }
    }

    fn score(&self, pos: &GamePosition) -> u64 {
        self.result.rank(pos).map_or(u64::MAX, u64::from)
    }

    fn run(mut self, max_rounds: usize) -> Result<GameTrace, SolveError> {
        let res = self.result;
        let d = &res.graph;
        let n = d.order();

        // cops: most losing robber replies
        let mut best_count = 0;
        let mut placements = Vec::new();
        for m in 0..res.index.count() {
            let count = (0..n).filter(|&r| res.rank[(m * n + r) << 1] != UNWON).count();
            let cops: Vec<Vertex> = res.index.get(m).iter().map(|&c| c as usize).collect();
            if count > best_count || placements.is_empty() {
                best_count = count;
                placements.clear();
            }
            if count == best_count {
                placements.push(cops);
            }
        }
        placements.sort_unstable();
        let cop_placement = self.pick(&placements);

        // robber: escape if possible, else the longest resistance
        let starts: Vec<GamePosition> =
            (0..n).map(|r| GamePosition::new(cop_placement.clone(), r, Side::Cops)).collect();
        let top = starts.iter().map(|p| self.score(p)).max().expect("n >= 1");
        let choices: Vec<GamePosition> = starts.into_iter().filter(|p| self.score(p) == top).collect();
        let mut pos = self.pick(&choices);
        let robber_placement = pos.robber;

        let mut positions = vec![pos.clone()];
        let mut seen = BTreeMap::new();
        let limit = max_rounds.saturating_mul(2);
        loop {
            if pos.is_capture() {
                return Ok(GameTrace {
                    cop_placement,
                    robber_placement,
                    positions,
                    outcome: TraceOutcome::Capture,
                });
            }
            if let Some(&first_visit) = seen.get(&pos) {
                return Ok(GameTrace {
                    cop_placement,
                    robber_placement,
                    positions,
                    outcome: TraceOutcome::RobberEscapes { first_visit },
                });
            }
            if positions.len() > limit {
                return Err(SolveError::TraceExhausted { max_rounds });
            }
            seen.insert(pos.clone(), positions.len() - 1);

            let succ = legal_moves(d, &pos);
            let scores: Vec<u64> = succ.iter().map(|p| self.score(p)).collect();
            // cops minimise distance to capture, the robber maximises it
            let target = match pos.to_move {
                Side::Cops => *scores.iter().min().expect("staying is always legal"),
                Side::Robber => *scores.iter().max().expect("staying is always legal"),
            };
            let cands: Vec<GamePosition> =
                succ.into_iter().zip(&scores).filter(|(_, &s)| s == target).map(|(p, _)| p).collect();
            pos = self.pick(&cands);
            positions.push(pos.clone());
        }
    }
}

/// Solves for `k` cops and plays one game with lexicographic tie-breaks.
pub fn play_trace(d: &Digraph, k: usize, max_rounds: usize, budget: u64) -> Result<GameTrace, SolveError> {
    solve(d, k, budget)?.play_trace(max_rounds, TieBreak::Lexicographic)
}
