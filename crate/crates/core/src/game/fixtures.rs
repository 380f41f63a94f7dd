//! Built-in strategy certificates for graphs whose eternal strategies are
//! known explicitly: the Möbius–Kantor-type graph `Z8 = Cay(Z_8, {±1, 4})`,
//! the prism `C10 □ K2`, the Petersen graph and `KG(n,2)` for `6 <= n <= 9`.

use std::collections::BTreeMap;

use crate::fed::{GraphRef, Provenance, StrategyCertificate, Transition, Transitions};
use crate::graph::{kneser, moebius, prism, Graph};
use crate::rat::Rat;
use crate::reconfig::{apply_move_plan, can_reconfigure, FDFunction, Move, MovePlan};

use super::kneser::KneserCanonical;
use super::GameError;

/// Responses from the canonical `Z8` state, by attacked vertex: the published
/// moves, then the moves needed to land exactly on the rotated state.
pub const Z8_PUBLISHED_PLANS: [(usize, &str, &str); 7] = [
    (1, "0>1 1, 4>5 1/3, 6>7 2/3", "2>3 2/3"),
    (2, "0>4 1/3, 6>2 1/3", ""),
    (3, "0>1 2/3, 0>7 1/3, 6>5 2/3", "2>3 2/3, 4>3 1/3"),
    (4, "0>4 2/3", ""),
    (5, "0>1 1/3, 0>7 2/3, 4>5 1/3, 6>5 2/3, 2>3 2/3", ""),
    (6, "0>4 1/3, 2>6 1/3", ""),
    (7, "0>7 1, 2>1 2/3, 6>5 2/3", "4>3 1/3"),
];

const Z8_CANONICAL: [(i64, i64); 8] = [(1, 1), (0, 1), (2, 3), (0, 1), (1, 3), (0, 1), (2, 3), (0, 1)];

/// Published responses from the canonical `C10 □ K2` state (outer cycle
/// `v_i`, inner cycle `u_i`). Rows that do not land on the translated state
/// are replaced by a flow-derived plan.
pub const C10_PUBLISHED_ROWS: [(&str, &str); 11] = [
    ("v1", "v0>v1 1, v2>v3 1/5, v3>v4 2/5, v4>v5 1/5, v5>v6 1/5, v6>v7 1/5, v7>v8 2/5, v8>v9 1/5, u0>u1 2/5, u1>u2 1/5, u2>u3 2/5, u3>u4 1/5, u4>u5 1/5, u5>u6 2/5, u6>u7 1/5, u7>u8 1/5, u8>u9 2/5, u9>u0 1/5"),
    ("v2", "v0>v9 2/5, v0>u0 2/5, v3>v2 2/5, v6>v5 1/5, v7>v6 1/5, u0>u1 1/5, u0>u9 1/5, u1>u2 1/5, u2>v2 2/5, u3>u2 1/5, u4>u3 1/5, u5>u4 2/5, u6>u5 1/5, u7>u6 1/5, u8>u7 2/5, u9>u8 1/5"),
    ("v3", "v0>v1 1/5, v0>v9 1/5, v0>u0 1/5, v2>v3 1/5, v4>v3 1/5, v7>v6 1/5, u0>u1 1/5, u0>u9 1/5, u2>u3 1/5, u4>u3 1/5, u5>u4 1/5, u6>u5 1/5, u7>u6 1/5, u8>u7 1/5, u9>u8 1/5"),
    ("v4", "v0>v1 1/5, v0>v9 1/5, v0>u0 1/5, v3>v4 2/5, v5>v4 1/5, u0>u1 1/5, u0>u9 1/5, u1>u2 1/5, u2>u3 1/5, u3>u4 1/5, u5>u4 1/5, u7>u6 1/5, u8>u7 1/5"),
    ("v5", "v0>v1 1/5, v0>v9 1/5, v0>u0 2/5, v3>v2 2/5, v4>v5 1/5, v6>v5 1/5, v7>v8 2/5, u0>u1 1/5, u0>u9 1/5, u1>u2 1/5, u2>u3 2/5, u3>u4 1/5, u4>u5 1/5, u6>u5 1/5, u7>u6 1/5, u8>u7 2/5, u9>u8 1/5"),
    ("u0", "v0>v1 1/5, v0>v9 1/5, v0>u0 1/5, v3>v2 1/5, v7>v8 1/5, u1>u0 1/5, u2>u3 1/5, u5>v5 1/5, u8>u7 1/5, u9>u0 1/5"),
    ("u1", "v0>v1 2/5, v0>v9 2/5, v7>v6 1/5, u0>u1 2/5, u2>u1 2/5, u5>u4 1/5"),
    ("u2", "v0>v1 1/5, v0>v9 1/5, v0>u0 1/5, v2>u2 1/5, v3>v2 2/5, v4>v3 1/5, v5>v4 1/5, v6>v5 1/5, v7>v6 1/5, v8>v7 1/5, u0>u9 2/5, u1>u2 1/5, u3>u2 1/5, u4>v4 1/5, u5>u4 1/5, u6>u5 1/5, u7>u6 1/5, u8>u7 1/5, u8>v8 1/5, u9>u8 1/5"),
    ("u3", "v0>v1 2/5, v0>v9 1/5, v0>u0 1/5, v3>u3 1/5, v4>v3 1/5, v5>v4 1/5, v6>v5 1/5, v7>v6 1/5, u0>u9 1/5, u2>u3 2/5, u3>u3 1/5, u5>v5 1/5, u7>u6 1/5, u8>u7 1/5, u9>u8 1/5, u8>v8 1/5"),
    ("u4", "v0>v1 1/5, v0>v9 2/5, v0>u0 1/5, v3>v4 1/5, v4>u4 1/5, v5>v4 1/5, v6>v5 1/5, v7>v6 2/5, u0>u1 1/5, u0>u9 1/5, u3>u4 1/5, u5>u4 1/5, u8>u7 2/5, u9>u8 1/5"),
    ("u5", "v0>v1 1/5, v0>v9 1/5, v0>u0 1/5, v2>v3 1/5, v3>v4 1/5, v4>v5 1/5, v5>u5 1/5, v6>v5 1/5, v7>v6 1/5, v8>v7 1/5, u0>u1 1/5, u0>u9 1/5, u1>u2 1/5, u2>v2 1/5, u4>u5 1/5, u6>u5 1/5, u8>v8 1/5, u9>u8 1/5"),
];

/// `v0..v9 | u0..u9` in fifths.
const C10_CANONICAL: [i64; 20] = [5, 0, 1, 2, 1, 1, 1, 2, 1, 0, 2, 1, 2, 1, 1, 2, 1, 1, 2, 1];

const NAMES: [&str; 7] = ["z8", "c10k2", "petersen", "kneser6", "kneser7", "kneser8", "kneser9"];

pub fn fixture_names() -> &'static [&'static str] {
    &NAMES
}

fn normalize(name: &str) -> Result<&'static str, GameError> {
    let key: String = name.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
    let key = match key.as_str() {
        "c10xk2" | "c10k2" | "prism10" => "c10k2",
        "moebius4" => "z8",
        "kneser5" | "kneser52" => "petersen",
        k if k.starts_with("kneser") && k.len() == 8 && k.ends_with('2') => &k[..7],
        k => k,
    }
    .to_string();
    NAMES.iter().copied().find(|&n| n == key).ok_or_else(|| GameError::UnknownFixture(name.to_string()))
}

/// The graph a fixture certificate belongs to.
pub fn fixture_graph(name: &str) -> Result<Graph, GameError> {
    Ok(match normalize(name)? {
        "z8" => moebius(4)?,
        "c10k2" => prism(10)?,
        "petersen" => kneser(5, 2)?,
        k => kneser(k["kneser".len()..].parse().expect("known name"), 2)?,
    })
}

pub fn load_fixture(name: &str) -> Result<StrategyCertificate, GameError> {
    let key = normalize(name)?;
    let g = fixture_graph(key)?;
    Ok(match key {
        "z8" => z8(&g)?,
        "c10k2" => c10k2(&g)?,
        _ => kneser_fixture(&g, key == "petersen")?,
    })
}

fn parse_moves(text: &str, vertex: impl Fn(&str) -> usize) -> MovePlan {
    let moves = text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|item| {
        let (arc, amount) = item.split_once(' ').expect("move has an amount");
        let (from, to) = arc.split_once('>').expect("move has an arrow");
        Move { from: vertex(from), to: vertex(to), amount: amount.parse::<Rat>().expect("rational amount") }
    });
    MovePlan::new(moves)
}

fn c10_vertex(name: &str) -> usize {
    let i: usize = name[1..].parse().expect("vertex index");
    2 * i + usize::from(name.starts_with('u'))
}

fn exact_or_flow(g: &Graph, from: &FDFunction, to: &FDFunction, plan: MovePlan) -> Result<MovePlan, GameError> {
    if apply_move_plan(g, from, &plan).is_ok_and(|w| w == *to) {
        return Ok(plan);
    }
    can_reconfigure(g, from, to)?.ok_or_else(|| GameError::WrongShape("fixture states are not reconfigurable".into()))
}

/// Builds a certificate from a vertex-transitive family: `act(k, x)` maps
/// vertex `x` by the group element taking vertex 0 to vertex `k`, and state
/// `k` is the canonical state moved by that element. `base[b]` is the plan
/// from the canonical state to state `b`.
fn orbit_certificate(
    g: &Graph,
    canonical: FDFunction,
    act: impl Fn(usize, usize) -> usize,
    inverse: impl Fn(usize, usize) -> usize,
    base: &BTreeMap<usize, MovePlan>,
) -> StrategyCertificate {
    let n = g.n();
    let states: Vec<FDFunction> = (0..n)
        .map(|k| {
            let mut w = FDFunction::zeros(n);
            for x in 0..n {
                w.set(act(k, x), canonical.weight(x).clone());
            }
            w
        })
        .collect();
    let mut transitions = Vec::new();
    for k in 0..n {
        for a in 0..n {
            let Some(p) = base.get(&inverse(k, a)) else { continue };
            let moves = p.moves().iter().map(|m| Move { from: act(k, m.from), to: act(k, m.to), amount: m.amount.clone() });
            transitions.push(Transition { from: k, to: a, plan: MovePlan::new(moves) });
        }
    }
    StrategyCertificate {
        graph: GraphRef::of(g),
        weight: canonical.total(),
        states,
        cover: (0..n).map(|v| (v, v)).collect(),
        transitions: Transitions::Explicit(transitions),
        provenance: Provenance::Fixture,
    }
}

fn z8(g: &Graph) -> Result<StrategyCertificate, GameError> {
    let canonical = FDFunction::new(Z8_CANONICAL.iter().map(|&(a, b)| Rat::new(a, b)).collect())?;
    let rotate = |k: usize, x: usize| (x + k) % 8;
    let unrotate = |k: usize, x: usize| (x + 8 - k) % 8;
    let mut base = BTreeMap::new();
    for (b, published, completion) in Z8_PUBLISHED_PLANS {
        let plan = parse_moves(&format!("{published}, {completion}"), |s| s.parse().expect("vertex"));
        let mut target = FDFunction::zeros(8);
        for x in 0..8 {
            target.set(rotate(b, x), canonical.weight(x).clone());
        }
        base.insert(b, exact_or_flow(g, &canonical, &target, plan)?);
    }
    Ok(orbit_certificate(g, canonical, rotate, unrotate, &base))
}

fn c10k2(g: &Graph) -> Result<StrategyCertificate, GameError> {
    let canonical = FDFunction::new(
        (0..20).map(|v| Rat::new(C10_CANONICAL[if v % 2 == 0 { v / 2 } else { 10 + v / 2 }], 5)).collect(),
    )?;
    // Vertex 2i + l is (i, l); the element taking 0 to k = 2r + s is (i, l) -> (i + r, l ^ s).
    let act = |k: usize, x: usize| 2 * ((x / 2 + k / 2) % 10) + ((x % 2) ^ (k % 2));
    let inverse = |k: usize, x: usize| 2 * ((x / 2 + 10 - k / 2) % 10) + ((x % 2) ^ (k % 2));
    let published: BTreeMap<usize, &str> = C10_PUBLISHED_ROWS.iter().map(|&(a, m)| (c10_vertex(a), m)).collect();
    let mut base = BTreeMap::new();
    for b in 1..20 {
        let mut target = FDFunction::zeros(20);
        for x in 0..20 {
            target.set(act(b, x), canonical.weight(x).clone());
        }
        let plan = published.get(&b).map(|m| parse_moves(m, c10_vertex)).unwrap_or_default();
        base.insert(b, exact_or_flow(g, &canonical, &target, plan)?);
    }
    Ok(orbit_certificate(g, canonical, act, inverse, &base))
}

fn kneser_fixture(g: &Graph, explicit: bool) -> Result<StrategyCertificate, GameError> {
    let k = KneserCanonical::new(g)?;
    let n = g.n();
    let transitions = if explicit {
        let mut ts = Vec::new();
        for r in 0..n {
            for a in (0..n).filter(|&a| a != r) {
                ts.push(Transition { from: r, to: a, plan: k.plan(r, a) });
            }
        }
        Transitions::Explicit(ts)
    } else {
        Transitions::Pairwise
    };
    Ok(StrategyCertificate {
        graph: GraphRef::of(g),
        weight: k.weight(),
        states: (0..n).map(|r| k.state(r)).collect(),
        cover: (0..n).map(|v| (v, v)).collect(),
        transitions,
        provenance: Provenance::Fixture,
    })
}
