//! Known values of `fed` for recognised graph classes.

use std::fmt;

use serde::Serialize;

use crate::graph::{classify, generate, split_partition, CubicCayley, Family, Graph};
use crate::rat::{rat, Rat};

use super::{big_f, gamma_f, med_tree, split_fed};

/// `F(G)` is only folded into generic interval endpoints up to this order.
const BIG_F_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: Rat,
    pub lower_open: bool,
    pub upper: Rat,
    pub upper_open: bool,
}

impl Interval {
    pub fn closed(lower: Rat, upper: Rat) -> Interval {
        Interval { lower, lower_open: false, upper, upper_open: false }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let lo = if self.lower_open { *x > self.lower } else { *x >= self.lower };
        let hi = if self.upper_open { *x < self.upper } else { *x <= self.upper };
        lo && hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_open { '(' } else { '[' },
            self.lower,
            self.upper,
            if self.upper_open { ')' } else { ']' }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FedValue {
    Exact { value: Rat },
    Interval(Interval),
}

impl FedValue {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            FedValue::Exact { value } => Some(value),
            FedValue::Interval(_) => None,
        }
    }

    /// Largest value consistent with this result (inclusive or not).
    pub fn upper(&self) -> &Rat {
        match self {
            FedValue::Exact { value } => value,
            FedValue::Interval(i) => &i.upper,
        }
    }

    pub fn lower(&self) -> &Rat {
        match self {
            FedValue::Exact { value } => value,
            FedValue::Interval(i) => &i.lower,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            FedValue::Exact { value } => value == x,
            FedValue::Interval(i) => i.contains(x),
        }
    }
}

impl fmt::Display for FedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FedValue::Exact { value } => write!(f, "{value}"),
            FedValue::Interval(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub value: FedValue,
    pub reason: String,
}

fn exact(value: Rat, reason: impl Into<String>) -> Option<ClosedForm> {
    Some(ClosedForm { value: FedValue::Exact { value }, reason: reason.into() })
}

fn interval(i: Interval, reason: impl Into<String>) -> Option<ClosedForm> {
    Some(ClosedForm { value: FedValue::Interval(i), reason: reason.into() })
}

fn int(n: usize) -> Rat {
    Rat::from(n)
}

/// `max(γ_f, F)`, skipping `F` on large graphs.
fn static_lower(g: &Graph) -> Rat {
    let gf = gamma_f(g).0;
    if g.n() <= BIG_F_LIMIT {
        if let Some((f, _)) = big_f(g) {
            return gf.max(f);
        }
    }
    gf
}

fn conn_upper(order: usize, kappa: usize) -> Rat {
    rat((order + kappa) as i64, (kappa + 1) as i64)
}

/// `(n+2)(n+4) / (2(n+5))`.
fn mod12_lower(n: usize) -> Rat {
    rat(((n + 2) * (n + 4)) as i64, (2 * (n + 5)) as i64)
}

fn prism_value(g: &Graph, n: usize) -> Option<ClosedForm> {
    let upper = conn_upper(2 * n, 3);
    if n % 4 != 2 {
        return exact(int(n.div_ceil(2)), format!("prism({n}), n not 2 mod 4: fed = γ = ⌈n/2⌉"));
    }
    match n {
        6 => interval(
            Interval { lower: rat(7, 2), lower_open: true, upper, upper_open: false },
            "prism(6): 7/2 < fed, upper from connectivity (n=12, κ=3)",
        ),
        10 => exact(rat(28, 5), "prism(10): fed = 28/5"),
        _ if n % 12 == 10 => interval(
            Interval::closed(mod12_lower(n), upper),
            format!("prism({n}), n ≡ 10 mod 12: (n+2)(n+4)/(2(n+5)) <= fed <= (2n+3)/4"),
        ),
        _ => interval(
            Interval::closed(static_lower(g), upper),
            format!("prism({n}), n ≡ 2 mod 4: max(γ_f, F) <= fed <= (2n+3)/4"),
        ),
    }
}

fn moebius_value(g: &Graph, n: usize) -> Option<ClosedForm> {
    let upper = conn_upper(2 * n, 3);
    if n % 4 != 0 {
        return exact(int(n.div_ceil(2)), format!("moebius({n}), n not 0 mod 4: fed = γ = ⌈n/2⌉"));
    }
    match n {
        4 => exact(rat(8, 3), "moebius(4) = Cay(Z_8, {±1, 4}): fed = 8/3"),
        _ if n % 12 == 4 => interval(
            Interval::closed(mod12_lower(n), upper),
            format!("moebius({n}), n ≡ 4 mod 12: (n+2)(n+4)/(2(n+5)) <= fed <= (2n+3)/4"),
        ),
        _ => interval(
            Interval::closed(static_lower(g), upper),
            format!("moebius({n}), n ≡ 0 mod 4: max(γ_f, F) <= fed <= (2n+3)/4"),
        ),
    }
}

fn hypercube_value(d: usize) -> Option<ClosedForm> {
    let order = 1usize << d;
    let lower = rat(order as i64, (d + 1) as i64);
    if (d + 1).is_power_of_two() {
        return exact(lower, format!("hypercube({d}): efficient dominating set, fed = 2^d/(d+1)"));
    }
    interval(
        Interval::closed(lower, conn_upper(order, d)),
        format!("hypercube({d}): 2^d/(d+1) <= fed <= (2^d+d)/(d+1)"),
    )
}

fn ladder_value(n: usize) -> Option<ClosedForm> {
    exact(int((2 * n).div_ceil(3)), format!("ladder P_{n}□P_2: fed = ⌈2n/3⌉"))
}

fn grid_value(g: &Graph, m: usize, n: usize) -> Option<ClosedForm> {
    match m.min(n) {
        0 => None,
        1 => exact(int(g.n().div_ceil(2)), "grid with one row is a path"),
        2 => ladder_value(m.max(n)),
        _ => {
            let upper = rat((m * n) as i64, 5) + rat(2 * (m + n) as i64, 15) + rat(39, 15);
            let lower = static_lower(g);
            interval(Interval::closed(lower.clone().min(upper.clone()), upper), format!("grid({m},{n}): mn/5 + 2(m+n)/15 + 39/15 upper bound"))
        }
    }
}

fn strong_grid_value(g: &Graph, m: usize, n: usize) -> Option<ClosedForm> {
    match m.min(n) {
        0 => None,
        1 => exact(int(g.n().div_ceil(2)), "strong grid with one row is a path"),
        _ => {
            let upper = rat((m * n + 16 * (m + n) + 114) as i64, 9);
            let lower = static_lower(g);
            interval(Interval::closed(lower.clone().min(upper.clone()), upper), format!("strong_grid({m},{n}): mn/9 + 16(m+n)/9 + 114/9 upper bound"))
        }
    }
}

fn tag_value(g: &Graph) -> Option<ClosedForm> {
    let tag = g.tag()?;
    // Only trust a tag that reproduces the graph exactly.
    let regenerated = generate(tag).ok()?;
    if regenerated.edges() != g.edges() || regenerated.n() != g.n() {
        return None;
    }
    let p = |i: usize| tag.param(i);
    match tag.family {
        Family::Path => exact(int(p(0).div_ceil(2)), "path: fed = α = ⌈n/2⌉"),
        Family::Cycle => exact(int(p(0).div_ceil(3)), "cycle: fed = γ = ⌈n/3⌉"),
        Family::Kneser if p(1) == 2 && p(0) == 5 => exact(rat(3, 1), "Petersen graph KG(5,2): fed = 3"),
        Family::Kneser if p(1) == 2 && p(0) >= 6 => {
            let n = p(0) as i64;
            exact(rat(2 * n - 6, n - 4), "KG(n,2), n >= 6: fed = (2n-6)/(n-4)")
        }
        Family::Gtd | Family::Gq if p(0) >= p(1) && p(1) >= 1 => {
            exact(Rat::one() + rat(p(0) as i64, p(1) as i64), "G_{t,d} construction: fed = 1 + t/d")
        }
        Family::Hypercube => hypercube_value(p(0)),
        Family::Prism => prism_value(g, p(0)),
        Family::Moebius => moebius_value(g, p(0)),
        Family::Grid => grid_value(g, p(0), p(1)),
        Family::StrongGrid => strong_grid_value(g, p(0), p(1)),
        _ => None,
    }
}

/// `fed(G)` from the class results, exact or as an interval. Returns `None`
/// when no class applies. A tag is used only if regenerating it reproduces `g`.
pub fn closed_form_fed(g: &Graph) -> Option<ClosedForm> {
    let n = g.n();
    if n == 0 {
        return None;
    }
    if g.is_complete() {
        return exact(Rat::one(), "complete graph: fed = 1");
    }
    let class = classify(g);
    if class.is_tree && g.max_degree() <= 2 {
        return exact(int(n.div_ceil(2)), "path: fed = α = ⌈n/2⌉");
    }
    if class.is_connected && g.is_regular() && g.max_degree() == 2 {
        return exact(int(n.div_ceil(3)), "cycle: fed = γ = ⌈n/3⌉");
    }
    if let Some(found) = tag_value(g) {
        return Some(found);
    }
    if class.complete_multipartite.is_some() {
        return exact(int(2), "complete multipartite: fed = 2");
    }
    if class.universal_vertex.is_some() {
        return exact(int(2), "universal vertex, not complete: fed = 2");
    }
    if class.every_edge_dominating {
        return exact(int(2), "every edge dominating, not complete: fed = 2");
    }
    if class.is_tree {
        let m = med_tree(g).expect("checked tree");
        return exact(int(m), "tree: fed = med from the leaf recursion");
    }
    if let Some((x, y)) = split_partition(g) {
        let (v, _) = split_fed(g, &x, &y).expect("valid split partition");
        return exact(v, "split graph: fed = F(G)");
    }
    if let Some(matches) = &class.cubic_cayley {
        for m in matches {
            let found = match *m {
                CubicCayley::K4 => exact(Rat::one(), "K_4"),
                CubicCayley::Q3 => hypercube_value(3),
                CubicCayley::Prism(k) => prism_value(g, k),
                CubicCayley::Moebius(k) => moebius_value(g, k),
            };
            if found.is_some() {
                return found;
            }
        }
    }
    None
}
