//! JSON shapes emitted by the CLI.

use pursuit_core::solver::{CopNumber, TraceOutcome};
use pursuit_core::{Digraph, GamePosition, GameTrace, PatternWitness, Side};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub test: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub present: bool,
    pub witness: Option<Vec<usize>>,
}

impl CheckJson {
    pub fn new(test: &'static str, k: Option<usize>, witness: Option<PatternWitness>) -> Self {
        Self { test, k, present: witness.is_some(), witness: witness.map(|w| w.vertices) }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveJson {
    pub n: usize,
    pub arcs: usize,
    pub k_max: usize,
    pub cop_number: Option<usize>,
    pub exceeds_k_max: bool,
    pub placement: Option<Vec<usize>>,
}

impl SolveJson {
    pub fn new(d: &Digraph, k_max: usize, result: &CopNumber) -> Self {
        let (cop_number, placement) = match result {
            CopNumber::Exact { cops, placement } => (Some(*cops), Some(placement.clone())),
            CopNumber::Exceeds { .. } => (None, None),
        };
        Self {
            n: d.order(),
            arcs: d.arc_count(),
            k_max,
            cop_number,
            exceeds_k_max: cop_number.is_none(),
            placement,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PositionJson {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub to_move: &'static str,
}

impl From<&GamePosition> for PositionJson {
    fn from(p: &GamePosition) -> Self {
        Self {
            cops: p.cops.clone(),
            robber: p.robber,
            to_move: match p.to_move {
                Side::Cops => "cops",
                Side::Robber => "robber",
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceJson {
    pub k: usize,
    pub cop_placement: Vec<usize>,
    pub robber_placement: usize,
    pub positions: Vec<PositionJson>,
    pub outcome: &'static str,
    /// Index of the earlier snapshot the last one repeats.
    pub repeat_of: Option<usize>,
}

impl TraceJson {
    pub fn new(k: usize, t: &GameTrace) -> Self {
        let (outcome, repeat_of) = match t.outcome {
            TraceOutcome::Capture => ("capture", None),
            TraceOutcome::RobberEscapes { first_visit } => ("robber_escapes", Some(first_visit)),
        };
        Self {
            k,
            cop_placement: t.cop_placement.clone(),
            robber_placement: t.robber_placement,
            positions: t.positions.iter().map(PositionJson::from).collect(),
            outcome,
            repeat_of,
        }
    }
}
