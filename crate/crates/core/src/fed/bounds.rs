//! Lower and upper bounds on `fed`, each with a witness that [`check_bound`]
//! can re-derive the value from.

use serde::Serialize;

use crate::game::verify_certificate;
use crate::graph::{
    classify, connectivity, efficient_dominating_set, independence_number, is_dominating_set, is_two_packing,
    max_two_packing, maximum_independent_set, minimum_dominating_set, two_packing_lower, Graph, VertexSet,
};
use crate::rat::Rat;
use crate::reconfig::FDFunction;

use super::certificate::StrategyCertificate;
use super::closed_form::{closed_form_fed, FedValue};
use super::program_a::{solve_program_a_with, ProgramAOptions, DEFAULT_LP_BUDGET};
use super::{big_f, fractional_packing, gamma_f};

/// Largest order for which the `γ_f` LP is attempted.
pub const STATIC_LP_BUDGET: usize = 128;
/// Largest order for which `F(G)` (one LP per vertex) is attempted.
pub const BIG_F_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Dual of the `γ_f` LP (`pinned = None`) or of the `f(v)` LP.
    FractionalPacking { pinned: Option<usize>, packing: Vec<Rat>, pin: Rat },
    /// A 2-packing; `strict` when it fails to dominate, adding 1.
    TwoPacking { packing: VertexSet, strict: bool },
    NonAdjacentPair { u: usize, v: usize },
    EfficientDominatingSet { set: VertexSet },
    /// A 2-packing and a dominating set of the same size, so both are optimal.
    PackingMatchesDomination { packing: VertexSet, dominating: VertexSet },
    /// Two copies of a fractional dominating function.
    DoubledFunction { function: FDFunction },
    Connectivity { kappa: usize },
    IndependenceNumber { set: VertexSet },
    UniversalVertex { vertex: usize },
    DominatingEdges,
    ClosedForm { value: FedValue, reason: String },
    ProgramA { certificate: Box<StrategyCertificate> },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::FractionalPacking { pinned: None, .. } => "gamma_f",
            Witness::FractionalPacking { .. } => "big_f",
            Witness::TwoPacking { .. } => "two_packing",
            Witness::NonAdjacentPair { .. } => "non_complete",
            Witness::EfficientDominatingSet { .. } => "efficient_dominating_set",
            Witness::PackingMatchesDomination { .. } => "packing_equals_domination",
            Witness::DoubledFunction { .. } => "double_gamma_f",
            Witness::Connectivity { .. } => "connectivity",
            Witness::IndependenceNumber { .. } => "independence",
            Witness::UniversalVertex { .. } => "universal_vertex",
            Witness::DominatingEdges => "dominating_edges",
            Witness::ClosedForm { .. } => "closed_form",
            Witness::ProgramA { .. } => "program_a",
        }
    }

    /// One-line human summary of the witness payload.
    pub fn summary(&self) -> String {
        match self {
            Witness::FractionalPacking { pinned: None, packing, .. } => {
                format!("fractional packing {}", join(packing))
            }
            Witness::FractionalPacking { pinned: Some(v), packing, pin } => {
                format!("vertex {v}, pin multiplier {pin}, packing {}", join(packing))
            }
            Witness::TwoPacking { packing, strict } => {
                format!("2-packing {:?}{}", packing.members(), if *strict { " (not dominating, +1)" } else { "" })
            }
            Witness::NonAdjacentPair { u, v } => format!("{u} and {v} are not adjacent"),
            Witness::EfficientDominatingSet { set } => format!("efficient dominating set {:?}", set.members()),
            Witness::PackingMatchesDomination { packing, dominating } => {
                format!("2-packing {:?}, dominating set {:?}", packing.members(), dominating.members())
            }
            Witness::DoubledFunction { function } => format!("2 x {function}"),
            Witness::Connectivity { kappa } => format!("kappa = {kappa}"),
            Witness::IndependenceNumber { set } => format!("maximum independent set {:?}", set.members()),
            Witness::UniversalVertex { vertex } => format!("vertex {vertex} is universal"),
            Witness::DominatingEdges => "every edge is dominating".into(),
            Witness::ClosedForm { value, reason } => format!("{reason} ({value})"),
            Witness::ProgramA { certificate } => format!("{} pairwise-reconfigurable states", certificate.states.len()),
        }
    }
}

fn join(xs: &[Rat]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub value: Rat,
    /// The bound is strict (`fed > value` or `fed < value`).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub open: bool,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: Vec<BoundEntry>,
    pub upper: Vec<BoundEntry>,
    pub best_lower: Rat,
    pub best_upper: Rat,
    pub exact: Option<Rat>,
    /// Candidates skipped for size or budget reasons.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsOptions {
    pub program_a: bool,
    pub lp_budget: usize,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions { program_a: false, lp_budget: DEFAULT_LP_BUDGET }
    }
}

pub fn bounds(g: &Graph) -> BoundsReport {
    bounds_with(g, BoundsOptions::default())
}

fn entry(value: Rat, witness: Witness) -> BoundEntry {
    BoundEntry { value, open: false, witness }
}

pub fn bounds_with(g: &Graph, opts: BoundsOptions) -> BoundsReport {
    let n = g.n();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut notes = Vec::new();
    let size = |x: usize| Rat::from(x);

    if n <= STATIC_LP_BUDGET {
        let (gf, w) = gamma_f(g);
        let (packing, pin) = fractional_packing(g, None).expect("no pinned vertex");
        lower.push(entry(gf.clone(), Witness::FractionalPacking { pinned: None, packing, pin }));
        upper.push(entry(gf * Rat::from(2), Witness::DoubledFunction { function: w }));
    } else {
        notes.push(format!("gamma_f skipped: n = {n} > {STATIC_LP_BUDGET}"));
    }
    if n <= BIG_F_BUDGET {
        if let Some((f, v)) = big_f(g) {
            let (packing, pin) = fractional_packing(g, Some(v)).expect("vertex in range");
            lower.push(entry(f, Witness::FractionalPacking { pinned: Some(v), packing, pin }));
        }
    } else {
        notes.push(format!("F(G) skipped: n = {n} > {BIG_F_BUDGET}"));
    }
    match two_packing_lower(g) {
        Ok(p) if n > 0 => lower.push(entry(size(p.bound), Witness::TwoPacking { packing: p.witness, strict: p.strict })),
        Ok(_) => {}
        Err(e) => notes.push(format!("two_packing_lower skipped: {e}")),
    }
    if n > 0 && !g.is_complete() {
        let (u, v) = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| !g.has_edge(u, v))
            .expect("non-complete graph has a non-edge");
        lower.push(entry(size(2), Witness::NonAdjacentPair { u, v }));
    }
    match efficient_dominating_set(g) {
        Ok(Some(set)) if n > 0 => lower.push(entry(size(set.len()), Witness::EfficientDominatingSet { set })),
        Ok(_) => match (max_two_packing(g), minimum_dominating_set(g)) {
            (Ok(p), Ok(d)) if n > 0 && p.len() == d.len() => {
                lower.push(entry(size(d.len()), Witness::PackingMatchesDomination { packing: p, dominating: d }))
            }
            (Err(e), _) | (_, Err(e)) => notes.push(format!("packing/domination comparison skipped: {e}")),
            _ => {}
        },
        Err(e) => notes.push(format!("efficient dominating set skipped: {e}")),
    }

    if n > 0 && g.is_connected() {
        let kappa = connectivity(g);
        upper.push(entry(Rat::new((n + kappa) as i64, (kappa + 1) as i64), Witness::Connectivity { kappa }));
    }
    match maximum_independent_set(g) {
        Ok(set) if n > 0 => upper.push(entry(size(set.len()), Witness::IndependenceNumber { set })),
        Ok(_) => {}
        Err(e) => notes.push(format!("independence number skipped: {e}")),
    }
    let class = classify(g);
    if let Some(vertex) = class.universal_vertex {
        upper.push(entry(size(2), Witness::UniversalVertex { vertex }));
    }
    if class.every_edge_dominating {
        upper.push(entry(size(2), Witness::DominatingEdges));
    }
    if let Some(cf) = closed_form_fed(g) {
        let (lo, lo_open, hi, hi_open) = match &cf.value {
            FedValue::Exact { value } => (value.clone(), false, value.clone(), false),
            FedValue::Interval(i) => (i.lower.clone(), i.lower_open, i.upper.clone(), i.upper_open),
        };
        let w = Witness::ClosedForm { value: cf.value.clone(), reason: cf.reason.clone() };
        lower.push(BoundEntry { value: lo, open: lo_open, witness: w.clone() });
        upper.push(BoundEntry { value: hi, open: hi_open, witness: w });
    }
    if opts.program_a {
        let pa = ProgramAOptions { budget: opts.lp_budget, ..ProgramAOptions::default() };
        match solve_program_a_with(g, pa) {
            Ok(r) => upper.push(entry(r.value, Witness::ProgramA { certificate: Box::new(r.certificate) })),
            Err(e) => notes.push(format!("program A skipped: {e}")),
        }
    }

    let best_lower_entry = lower.iter().max_by(|a, b| a.value.cmp(&b.value).then(a.open.cmp(&b.open)));
    let best_upper_entry = upper.iter().min_by(|a, b| a.value.cmp(&b.value).then(b.open.cmp(&a.open)));
    let best_lower = best_lower_entry.map_or_else(Rat::zero, |e| e.value.clone());
    let best_upper = best_upper_entry.map_or_else(|| Rat::from(n.max(1)), |e| e.value.clone());
    let closed = !best_lower_entry.map_or(false, |e| e.open) && !best_upper_entry.map_or(false, |e| e.open);
    let exact = (closed && best_lower == best_upper && best_upper_entry.is_some()).then(|| best_lower.clone());
    assert!(best_lower <= best_upper, "bounds crossed: {best_lower} > {best_upper}");
    BoundsReport { lower, upper, best_lower, best_upper, exact, notes }
}

fn expect_value(entry: &BoundEntry, value: Rat) -> Result<(), String> {
    if entry.value == value {
        Ok(())
    } else {
        Err(format!("witness gives {value}, entry claims {}", entry.value))
    }
}

/// Recomputes an entry's value from its witness. `is_lower` selects which
/// side of an interval a closed-form witness supports.
pub fn check_bound(g: &Graph, entry: &BoundEntry, is_lower: bool) -> Result<(), String> {
    let n = g.n();
    match &entry.witness {
        Witness::FractionalPacking { pinned, packing, pin } => {
            if packing.len() != n || packing.iter().any(Rat::is_negative) || pin.is_negative() {
                return Err("packing has wrong length or negative entries".into());
            }
            if pinned.is_none() && !pin.is_zero() {
                return Err("unpinned packing carries a pin multiplier".into());
            }
            if let Some(v) = pinned {
                g.check_vertex(*v).map_err(|e| e.to_string())?;
            }
            for a in 0..n {
                let mut s: Rat = g.closed_nbhd(a).iter().map(|&u| &packing[u]).sum();
                if *pinned == Some(a) {
                    s += pin;
                }
                if s > Rat::one() {
                    return Err(format!("packing overloads N[{a}] with {s}"));
                }
            }
            expect_value(entry, packing.iter().sum::<Rat>() + pin)
        }
        Witness::TwoPacking { packing, strict } => {
            packing.validate(g).map_err(|e| e.to_string())?;
            if !is_two_packing(g, packing) {
                return Err("not a 2-packing".into());
            }
            let dominates = g.closed_neighborhood(packing).len() == n;
            if *strict && dominates {
                return Err("strict packing dominates the graph".into());
            }
            expect_value(entry, Rat::from(packing.len() + usize::from(*strict)))
        }
        Witness::NonAdjacentPair { u, v } => {
            if u == v || *u >= n || *v >= n || g.has_edge(*u, *v) {
                return Err("pair is not a non-edge".into());
            }
            expect_value(entry, Rat::from(2))
        }
        Witness::EfficientDominatingSet { set } => {
            set.validate(g).map_err(|e| e.to_string())?;
            for v in 0..n {
                if g.closed_nbhd(v).iter().filter(|&&u| set.contains(u)).count() != 1 {
                    return Err(format!("vertex {v} not dominated exactly once"));
                }
            }
            expect_value(entry, Rat::from(set.len()))
        }
        Witness::PackingMatchesDomination { packing, dominating } => {
            if !is_two_packing(g, packing) || !is_dominating_set(g, dominating) || packing.len() != dominating.len() {
                return Err("packing and dominating set do not certify each other".into());
            }
            expect_value(entry, Rat::from(dominating.len()))
        }
        Witness::DoubledFunction { function } => {
            if !function.is_dominating(g) {
                return Err("function does not dominate".into());
            }
            expect_value(entry, function.total() * Rat::from(2))
        }
        Witness::Connectivity { kappa } => {
            if !g.is_connected() || connectivity(g) != *kappa {
                return Err("connectivity does not match".into());
            }
            expect_value(entry, Rat::new((n + kappa) as i64, (kappa + 1) as i64))
        }
        Witness::IndependenceNumber { set } => {
            let alpha = independence_number(g).map_err(|e| e.to_string())?;
            let independent = set.iter().all(|a| set.iter().all(|b| !g.has_edge(a, b)));
            if !independent || set.len() != alpha {
                return Err("not a maximum independent set".into());
            }
            expect_value(entry, Rat::from(alpha))
        }
        Witness::UniversalVertex { vertex } => {
            if *vertex >= n || g.degree(*vertex) + 1 != n {
                return Err("vertex is not universal".into());
            }
            expect_value(entry, Rat::from(2))
        }
        Witness::DominatingEdges => {
            if !classify(g).every_edge_dominating {
                return Err("some edge does not dominate".into());
            }
            expect_value(entry, Rat::from(2))
        }
        Witness::ClosedForm { value, .. } => {
            let again = closed_form_fed(g).ok_or("no closed form applies")?;
            if again.value != *value {
                return Err("closed form changed".into());
            }
            expect_value(entry, if is_lower { value.lower().clone() } else { value.upper().clone() })
        }
        Witness::ProgramA { certificate } => {
            let report = verify_certificate(g, certificate);
            if !report.ok() {
                return Err(format!("certificate fails: {:?}", report.violations));
            }
            expect_value(entry, certificate.weight.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;
    use crate::rat::rat;

    fn all_check(g: &Graph, r: &BoundsReport) {
        for e in &r.lower {
            check_bound(g, e, true).unwrap_or_else(|m| panic!("{}: {m}", e.witness.kind()));
        }
        for e in &r.upper {
            check_bound(g, e, false).unwrap_or_else(|m| panic!("{}: {m}", e.witness.kind()));
        }
    }

    #[test]
    fn petersen() {
        let g = kneser(5, 2).unwrap();
        let r = bounds(&g);
        assert!(r.lower.iter().any(|e| e.value == rat(3, 1) && e.witness.kind() == "big_f"));
        assert!(r.upper.iter().any(|e| e.value == rat(13, 4) && e.witness.kind() == "connectivity"));
        assert!(r.upper.iter().any(|e| e.value == rat(3, 1) && e.witness.kind() == "closed_form"));
        assert_eq!(r.exact, Some(rat(3, 1)));
        all_check(&g, &r);
    }

    #[test]
    fn small_cases() {
        let k9 = complete(9).unwrap();
        let r = bounds(&k9);
        assert_eq!(r.exact, Some(Rat::one()));
        all_check(&k9, &r);

        let c7 = cycle(7).unwrap();
        let r = bounds(&c7);
        let p = r.lower.iter().find(|e| e.witness.kind() == "two_packing").unwrap();
        assert_eq!(p.value, rat(3, 1));
        assert!(matches!(p.witness, Witness::TwoPacking { strict: true, .. }));
        assert_eq!(r.exact, Some(rat(3, 1)));
        all_check(&c7, &r);
    }

    #[test]
    fn program_a_entry_checks() {
        let g = path(4).unwrap();
        let r = bounds_with(&g, BoundsOptions { program_a: true, lp_budget: 12 });
        assert!(r.upper.iter().any(|e| e.witness.kind() == "program_a" && e.value == rat(2, 1)));
        all_check(&g, &r);
    }

    #[test]
    fn prism_six_open_lower() {
        let g = prism(6).unwrap();
        let r = bounds(&g);
        assert_eq!(r.best_lower, rat(7, 2));
        assert_eq!(r.best_upper, rat(15, 4));
        assert_eq!(r.exact, None);
        all_check(&g, &r);
    }

    #[test]
    fn tampered_witness_rejected() {
        let g = cycle(5).unwrap();
        let mut r = bounds(&g);
        let e = r.lower.iter_mut().find(|e| e.witness.kind() == "gamma_f").unwrap();
        e.value = rat(2, 1);
        assert!(check_bound(&g, e, true).is_err());
    }
}
