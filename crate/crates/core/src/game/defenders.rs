use std::collections::HashMap;

use crate::fed::{gamma_f, StrategyCertificate, Transitions};
use crate::graph::{connectivity, disjoint_paths, Graph};
use crate::lp::{self, LpModel, Relation};
use crate::rat::Rat;
use crate::reconfig::{can_reconfigure, FDFunction, Move, MovePlan};

use super::kneser::KneserCanonical;
use super::GameError;

/// A defender answers each attack with a move plan, or `None` when it has no
/// legal answer.
pub trait Defender {
    fn name(&self) -> &'static str;

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError>;
}

/// The defender policies selectable from the command line.
#[derive(Debug, Clone)]
pub enum DefenderPolicy {
    LpOnline,
    Table(StrategyCertificate),
    ConnectivityUniform,
    DoubleGammaF,
    KneserCanonical,
}

impl DefenderPolicy {
    pub fn from_name(name: &str, certificate: Option<StrategyCertificate>) -> Option<DefenderPolicy> {
        Some(match name {
            "lp_online" => DefenderPolicy::LpOnline,
            "table" => DefenderPolicy::Table(certificate?),
            "connectivity_uniform" => DefenderPolicy::ConnectivityUniform,
            "double_gamma_f" => DefenderPolicy::DoubleGammaF,
            "kneser_canonical" => DefenderPolicy::KneserCanonical,
            _ => return None,
        })
    }

    pub fn build(&self, g: &Graph) -> Result<Box<dyn Defender>, GameError> {
        Ok(match self {
            DefenderPolicy::LpOnline => Box::new(LpOnline),
            DefenderPolicy::Table(c) => Box::new(TableDefender::new(c.clone())),
            DefenderPolicy::ConnectivityUniform => Box::new(ConnectivityUniform::new(g)),
            DefenderPolicy::DoubleGammaF => Box::new(DoubleGammaF::new(g)),
            DefenderPolicy::KneserCanonical => Box::new(KneserCanonical::new(g)?),
        })
    }

    /// The state the policy starts from. Only `lp_online` uses `total`: it
    /// starts from an optimal fractional dominating function with the surplus
    /// placed on vertex 0.
    pub fn initial_state(&self, g: &Graph, total: Option<&Rat>) -> Result<FDFunction, GameError> {
        match self {
            DefenderPolicy::LpOnline => {
                let (gf, w) = gamma_f(g);
                let total = total.cloned().unwrap_or_else(|| gf.clone());
                initial_with_total(w, &gf, &total)
            }
            DefenderPolicy::Table(c) => {
                c.states.first().cloned().ok_or_else(|| GameError::InvalidInitial("certificate has no states".into()))
            }
            DefenderPolicy::ConnectivityUniform => Ok(ConnectivityUniform::new(g).state_with_rover(g.n(), 0)),
            DefenderPolicy::DoubleGammaF => Ok(DoubleGammaF::new(g).current()),
            DefenderPolicy::KneserCanonical => Ok(KneserCanonical::new(g)?.state(0)),
        }
    }
}

fn initial_with_total(mut w: FDFunction, gf: &Rat, total: &Rat) -> Result<FDFunction, GameError> {
    if total < gf {
        return Err(GameError::InvalidInitial(format!("total {total} is below gamma_f = {gf}")));
    }
    if w.is_empty() {
        return Ok(w);
    }
    let v0 = w.weight(0) + (total - gf);
    w.set(0, v0);
    Ok(w)
}

/// Re-solves a small LP each round: move weight along edges so the attacked
/// vertex receives 1 while maximising the worst domination slack.
#[derive(Debug, Clone, Copy, Default)]
pub struct LpOnline;

impl Defender for LpOnline {
    fn name(&self) -> &'static str {
        "lp_online"
    }

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError> {
        state.check_len(g.n())?;
        g.check_vertex(attack)?;
        let n = g.n();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in g.closed_nbhd(x) {
                pairs.push((x, y));
            }
        }
        let mut m = LpModel::new(pairs.len() + 1);
        let slack = pairs.len();
        m.set_objective(slack, -Rat::one());
        for x in 0..n {
            let terms = pairs.iter().enumerate().filter(|(_, p)| p.0 == x).map(|(k, _)| (k, Rat::one()));
            m.add_constraint(terms, Relation::Eq, state.weight(x).clone());
        }
        let into = |v: usize| pairs.iter().enumerate().filter(move |(_, p)| p.1 == v).map(|(k, _)| (k, Rat::one()));
        m.add_constraint(into(attack), Relation::Ge, Rat::one());
        for v in 0..n {
            let mut terms: Vec<(usize, Rat)> = g.closed_nbhd(v).into_iter().flat_map(into).collect();
            terms.push((slack, -Rat::one()));
            m.add_constraint(terms, Relation::Ge, Rat::one());
        }
        let Some((_, x)) = lp::solve(&m).into_optimum() else {
            return Ok(None);
        };
        let moves = pairs.iter().zip(&x).map(|(&(from, to), a)| Move { from, to, amount: a.clone() });
        Ok(Some(MovePlan::new(moves)))
    }
}

/// Plays a strategy certificate: stays put if the attack is already covered,
/// otherwise moves to the state the certificate assigns to the attacked vertex.
#[derive(Debug, Clone)]
pub struct TableDefender {
    cert: StrategyCertificate,
    index: HashMap<FDFunction, usize>,
}

impl TableDefender {
    pub fn new(cert: StrategyCertificate) -> TableDefender {
        let index = cert.states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        TableDefender { cert, index }
    }
}

impl Defender for TableDefender {
    fn name(&self) -> &'static str {
        "table"
    }

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError> {
        g.check_vertex(attack)?;
        let Some(&i) = self.index.get(state) else {
            return Err(GameError::WrongShape(format!("{state} is not a certificate state")));
        };
        if *state.weight(attack) >= Rat::one() {
            return Ok(Some(MovePlan::identity(state)));
        }
        let covers = |j: usize| *self.cert.states[j].weight(attack) >= Rat::one();
        match &self.cert.transitions {
            Transitions::Pairwise => {
                let Some(&j) = self.cert.cover.get(&attack) else {
                    return Ok(None);
                };
                Ok(can_reconfigure(g, state, &self.cert.states[j])?)
            }
            Transitions::Explicit(ts) => {
                let preferred = self.cert.cover.get(&attack).copied();
                let n_states = self.cert.states.len();
                let from_i = ts.iter().filter(|t| t.from == i && t.to < n_states && covers(t.to));
                let pick = from_i.clone().find(|t| Some(t.to) == preferred).or_else(|| from_i.clone().next());
                Ok(pick.map(|t| t.plan.clone()))
            }
        }
    }
}

/// One vertex (the rover) holds 1 and every other vertex holds `1/(κ+1)`.
/// After an attack at `z`, weight shifts by `1/(κ+1)` along each of κ
/// disjoint rover-to-`z` paths, making `z` the new rover.
#[derive(Debug, Clone)]
pub struct ConnectivityUniform {
    kappa: usize,
    share: Rat,
}

impl ConnectivityUniform {
    pub fn new(g: &Graph) -> ConnectivityUniform {
        let kappa = if g.n() <= 1 { 0 } else { connectivity(g) };
        ConnectivityUniform { kappa, share: Rat::new(1, kappa as i64 + 1) }
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn total(&self, n: usize) -> Rat {
        if n == 0 {
            return Rat::zero();
        }
        Rat::one() + Rat::new(n as i64 - 1, self.kappa as i64 + 1)
    }

    pub fn state_with_rover(&self, n: usize, rover: usize) -> FDFunction {
        let mut w = FDFunction::new(vec![self.share.clone(); n]).expect("nonnegative");
        if rover < n {
            w.set(rover, Rat::one());
        }
        w
    }

    fn rover(&self, state: &FDFunction) -> Result<usize, GameError> {
        let n = state.len();
        let rover = if self.kappa == 0 {
            0
        } else {
            (0..n).find(|&v| *state.weight(v) == Rat::one()).unwrap_or(0)
        };
        if *state != self.state_with_rover(n, rover) {
            return Err(GameError::WrongShape(format!("{state} is not uniform with a single rover")));
        }
        Ok(rover)
    }
}

impl Defender for ConnectivityUniform {
    fn name(&self) -> &'static str {
        "connectivity_uniform"
    }

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError> {
        state.check_len(g.n())?;
        g.check_vertex(attack)?;
        let rover = self.rover(state)?;
        if rover == attack || self.kappa == 0 {
            return Ok(Some(MovePlan::identity(state)));
        }
        let paths = disjoint_paths(g, rover, attack, self.kappa)?;
        let moves = paths.iter().flat_map(|p| {
            p.windows(2).map(|e| Move { from: e[0], to: e[1], amount: self.share.clone() }).collect::<Vec<_>>()
        });
        Ok(Some(MovePlan::new(moves)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Parcel {
    home: usize,
    at: usize,
    amount: Rat,
}

/// Two copies of an optimal fractional dominating function `h`. The copies
/// take turns: the active copy pulls its whole mass from `N[z]` onto the
/// attacked vertex `z` while the other copy returns home.
#[derive(Debug, Clone)]
pub struct DoubleGammaF {
    home: FDFunction,
    copies: [Vec<Parcel>; 2],
    round: usize,
}

impl DoubleGammaF {
    pub fn new(g: &Graph) -> DoubleGammaF {
        let (_, home) = gamma_f(g);
        let parcels: Vec<Parcel> = (0..home.len())
            .filter(|&v| home.weight(v).is_positive())
            .map(|v| Parcel { home: v, at: v, amount: home.weight(v).clone() })
            .collect();
        DoubleGammaF { home, copies: [parcels.clone(), parcels], round: 0 }
    }

    /// The function the two copies currently add up to.
    pub fn current(&self) -> FDFunction {
        let mut w = FDFunction::zeros(self.home.len());
        for p in self.copies.iter().flatten() {
            let v = w.weight(p.at) + &p.amount;
            w.set(p.at, v);
        }
        w
    }
}

impl Defender for DoubleGammaF {
    fn name(&self) -> &'static str {
        "double_gamma_f"
    }

    fn respond(&mut self, g: &Graph, state: &FDFunction, attack: usize) -> Result<Option<MovePlan>, GameError> {
        state.check_len(g.n())?;
        g.check_vertex(attack)?;
        if *state != self.current() {
            return Err(GameError::WrongShape(format!("{state} is not the tracked double function")));
        }
        let active = self.round % 2;
        let mut moves = Vec::new();
        for p in &mut self.copies[active] {
            debug_assert_eq!(p.at, p.home);
            if p.at == attack || g.has_edge(p.at, attack) {
                moves.push(Move { from: p.at, to: attack, amount: p.amount.clone() });
                p.at = attack;
            }
        }
        for p in &mut self.copies[1 - active] {
            if p.at != p.home {
                moves.push(Move { from: p.at, to: p.home, amount: p.amount.clone() });
                p.at = p.home;
            }
        }
        self.round += 1;
        Ok(Some(MovePlan::new(moves)))
    }
}
