use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{ClassTag, Graph};
use crate::rat::Rat;
use crate::reconfig::{FDFunction, MovePlan};

/// Enough of a graph to recognise what a certificate was built for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRef {
    pub n: usize,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<ClassTag>,
}

impl GraphRef {
    pub fn of(g: &Graph) -> GraphRef {
        GraphRef { n: g.n(), edges: g.edge_count(), tag: g.tag().cloned() }
    }

    /// Vertex and edge counts agree (tags are informational).
    pub fn matches(&self, g: &Graph) -> bool {
        self.n == g.n() && self.edges == g.edge_count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    LpA,
    Fixture,
    Constructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub plan: MovePlan,
}

/// Either every ordered pair of states is reconfigurable, or an explicit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transitions {
    Pairwise,
    Explicit(Vec<Transition>),
}

impl Serialize for Transitions {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Transitions::Pairwise => s.serialize_str("pairwise"),
            Transitions::Explicit(list) => list.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Transitions {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Word(String),
            List(Vec<Transition>),
        }
        match Raw::deserialize(d)? {
            Raw::Word(w) if w == "pairwise" => Ok(Transitions::Pairwise),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("unknown transitions kind {w:?}"))),
            Raw::List(l) => Ok(Transitions::Explicit(l)),
        }
    }
}

/// A family of fractional dominating functions of one common weight that
/// defends every attack: `cover[v]` names a state with weight `>= 1` on `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyCertificate {
    pub graph: GraphRef,
    pub weight: Rat,
    pub states: Vec<FDFunction>,
    pub cover: BTreeMap<usize, usize>,
    pub transitions: Transitions,
    pub provenance: Provenance,
}

impl StrategyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<StrategyCertificate, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Index of the first state equal to `w`.
    pub fn state_index(&self, w: &FDFunction) -> Option<usize> {
        self.states.iter().position(|s| s == w)
    }
}
