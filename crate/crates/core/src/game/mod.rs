//! The attack/defence game: defender and attacker policies, the simulation
//! loop, certificate verification and the built-in strategy fixtures.

mod attackers;
mod defenders;
mod fixtures;
mod kneser;
mod verify;

pub use attackers::{caterpillar_sweep, cycle_sweep, ladder_sweep, path_sweep, Attacker, AttackerPolicy};
pub use defenders::{
    ConnectivityUniform, Defender, DefenderPolicy, DoubleGammaF, LpOnline, TableDefender,
};
pub use fixtures::{fixture_graph, fixture_names, load_fixture, C10_PUBLISHED_ROWS, Z8_PUBLISHED_PLANS};
pub use kneser::{kneser_canonical_state, KneserCanonical};
pub use verify::{verify_certificate, VerificationReport};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{Graph, GraphError};
use crate::rat::Rat;
use crate::reconfig::{apply_move_plan, FDFunction, MovePlan, ReconfigError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reconfig(#[from] ReconfigError),
    #[error("invalid initial state: {0}")]
    InvalidInitial(String),
    #[error("state does not have the shape this policy maintains: {0}")]
    WrongShape(String),
    #[error("defender produced an illegal response: {0}")]
    IllegalResponse(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

/// The current weights, the round number and the invariant total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub weights: FDFunction,
    pub round: usize,
    pub total: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub attack: usize,
    pub plan: MovePlan,
    pub resulting: FDFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Survived,
    /// The defender had no response to the attack of this (1-based) round.
    DefenderFailed { round: usize },
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Survived => f.write_str("survived"),
            Outcome::DefenderFailed { round } => write!(f, "defender_failed_at_round_{round}"),
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "survived" {
            return Ok(Outcome::Survived);
        }
        s.strip_prefix("defender_failed_at_round_")
            .and_then(|r| r.parse().ok())
            .map(|round| Outcome::DefenderFailed { round })
            .ok_or_else(|| serde::de::Error::custom(format!("bad outcome {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub initial: FDFunction,
    pub events: Vec<Event>,
    pub outcome: Outcome,
}

impl Transcript {
    pub fn survived(&self) -> bool {
        self.outcome == Outcome::Survived
    }

    pub fn failed_round(&self) -> Option<usize> {
        match self.outcome {
            Outcome::DefenderFailed { round } => Some(round),
            Outcome::Survived => None,
        }
    }
}

/// Plays `rounds` attacks, validating every response. Stops early when the
/// defender has no answer.
pub fn simulate(
    g: &Graph,
    defender: &mut dyn Defender,
    attacker: &mut Attacker,
    rounds: usize,
    initial: FDFunction,
) -> Result<Transcript, GameError> {
    initial.check_len(g.n())?;
    if !initial.is_dominating(g) {
        return Err(GameError::InvalidInitial(format!(
            "total {} leaves vertices {:?} undominated",
            initial.total(),
            initial.undominated(g)
        )));
    }
    let mut state = GameState { total: initial.total(), weights: initial.clone(), round: 0 };
    let mut events = Vec::new();
    for round in 1..=rounds {
        let attack = attacker.next(g, &state.weights);
        g.check_vertex(attack)?;
        let Some(plan) = defender.respond(g, &state.weights, attack)? else {
            return Ok(Transcript { initial, events, outcome: Outcome::DefenderFailed { round } });
        };
        let next = apply_move_plan(g, &state.weights, &plan)
            .map_err(|e| GameError::IllegalResponse(format!("{} in round {round}: {e}", defender.name())))?;
        check_response(g, &next, attack, &state.total)
            .map_err(|m| GameError::IllegalResponse(format!("{} in round {round}: {m}", defender.name())))?;
        state = GameState { weights: next.clone(), round, total: state.total };
        events.push(Event { attack, plan, resulting: next });
    }
    Ok(Transcript { initial, events, outcome: Outcome::Survived })
}

fn check_response(g: &Graph, w: &FDFunction, attack: usize, total: &Rat) -> Result<(), String> {
    if w.total() != *total {
        return Err(format!("total changed from {total} to {}", w.total()));
    }
    if *w.weight(attack) < Rat::one() {
        return Err(format!("attacked vertex {attack} holds only {}", w.weight(attack)));
    }
    if !w.is_dominating(g) {
        return Err(format!("vertices {:?} undominated", w.undominated(g)));
    }
    Ok(())
}
