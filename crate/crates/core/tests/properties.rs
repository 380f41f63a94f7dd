use fedlab::fed::{
    bounds_with, check_bound, f_values, fractional_packing, gamma_f, solve_program_a_with, BoundsOptions,
    ProgramAMethod, ProgramAOptions,
};
use fedlab::game::{simulate, Attacker, AttackerPolicy, DefenderPolicy};
use fedlab::lp::{solve, LpModel, Relation};
use fedlab::reconfig::{apply_move_plan, can_reconfigure, FDFunction, MovePlan};
use fedlab::{rat, Graph, Rat};
use proptest::prelude::*;

/// Connected graph on `n` vertices: a random spanning tree plus extra edges.
fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
            (Just(n), parents, prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2))
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extra[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, &edges).unwrap()
        })
}

/// Weights with denominators dividing 6 and numerators up to 6.
fn weights(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((0i64..=6, prop::sample::select(vec![1i64, 2, 3])), n)
        .prop_map(|v| v.into_iter().map(|(a, d)| rat(a, d)).collect())
}

/// One round of moves out of `w`, each vertex sending a share of its own
/// weight to one neighbour at most once.
fn shuffled(g: &Graph, w: &[Rat], picks: &[(usize, usize, u8)]) -> Vec<Rat> {
    let mut out = w.to_vec();
    for &(v, k, frac) in picks {
        let v = v % g.n();
        let nb = g.neighbors(v);
        if nb.is_empty() {
            continue;
        }
        let u = nb[k % nb.len()];
        let amount = w[v].clone() * rat(i64::from(frac % 4), 3);
        out[v] -= amount.clone();
        out[u] += amount;
    }
    out
}

fn hall_holds(g: &Graph, w1: &[Rat], w2: &[Rat]) -> bool {
    let n = g.n();
    (1u32..1 << n).all(|mask| {
        let mut nb = vec![false; n];
        let mut lhs = Rat::zero();
        for v in (0..n).filter(|&v| mask >> v & 1 == 1) {
            lhs += w1[v].clone();
            nb[v] = true;
            for &u in g.neighbors(v) {
                nb[u] = true;
            }
        }
        let rhs: Rat = (0..n).filter(|&u| nb[u]).map(|u| w2[u].clone()).sum();
        lhs <= rhs
    })
}

fn fd(w: Vec<Rat>) -> FDFunction {
    FDFunction::new(w).unwrap()
}

fn scaled_to(w: Vec<Rat>, total: &Rat) -> Option<Vec<Rat>> {
    let t: Rat = w.iter().cloned().sum();
    if t.is_zero() {
        return None;
    }
    let s = total.clone() / t;
    Some(w.into_iter().map(|x| x * s.clone()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rat_arithmetic_is_a_field(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -9i64..9) {
        let (x, y, z) = (rat(a, b), rat(c, d), rat(e, 7));
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
        prop_assert_eq!(x.clone() - x.clone(), Rat::zero());
        if !y.is_zero() {
            prop_assert_eq!(x.clone() / y.clone() * y.clone(), x.clone());
        }
        prop_assert_eq!(x < y, a * d < c * b);
        let parsed: Rat = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn rat_promotes_without_losing_precision(k in 1u32..6) {
        let big = rat(i64::MAX, 1);
        let mut acc = big.clone();
        for _ in 0..k {
            acc = acc * big.clone();
        }
        for _ in 0..k {
            acc = acc / big.clone();
        }
        prop_assert_eq!(acc, big);
    }

    #[test]
    fn reconfiguration_matches_hall_condition(
        (g, w1, w2) in connected_graph(1, 5).prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n), weights(n)) })
    ) {
        let Some(w2) = scaled_to(w2, &w1.iter().cloned().sum()) else { return Ok(()); };
        let (f1, f2) = (fd(w1.clone()), fd(w2.clone()));
        let plan = can_reconfigure(&g, &f1, &f2).unwrap();
        prop_assert_eq!(plan.is_some(), hall_holds(&g, &w1, &w2));
        if let Some(plan) = plan {
            prop_assert_eq!(apply_move_plan(&g, &f1, &plan).unwrap(), f2);
        }
    }

    #[test]
    fn single_round_shuffles_are_reconfigurable(
        (g, w, picks) in connected_graph(2, 7).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), weights(n), prop::collection::vec((0usize..16, 0usize..16, any::<u8>()), 0..6))
        })
    ) {
        let mut seen = vec![false; g.n()];
        let picks: Vec<_> = picks.into_iter().filter(|p| !std::mem::replace(&mut seen[p.0 % g.n()], true)).collect();
        let w2 = shuffled(&g, &w, &picks);
        let plan = can_reconfigure(&g, &fd(w.clone()), &fd(w2.clone())).unwrap();
        prop_assert!(plan.is_some());
    }

    #[test]
    fn reconfiguration_is_symmetric(
        (g, w1, w2) in connected_graph(1, 6).prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n), weights(n)) })
    ) {
        let Some(w2) = scaled_to(w2, &w1.iter().cloned().sum()) else { return Ok(()); };
        let (f1, f2) = (fd(w1), fd(w2));
        let there = can_reconfigure(&g, &f1, &f2).unwrap();
        let back = can_reconfigure(&g, &f2, &f1).unwrap();
        prop_assert_eq!(there.is_some(), back.is_some());
    }

    #[test]
    fn move_plans_conserve_weight_and_respect_edges(
        (g, w1, w2) in connected_graph(2, 7).prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n), weights(n)) })
    ) {
        let Some(w2) = scaled_to(w2, &w1.iter().cloned().sum()) else { return Ok(()); };
        let (f1, f2) = (fd(w1.clone()), fd(w2));
        if let Some(plan) = can_reconfigure(&g, &f1, &f2).unwrap() {
            let n = g.n();
            let mut out = vec![Rat::zero(); n];
            for m in plan.moves() {
                prop_assert!(m.amount.is_positive());
                prop_assert!(m.from == m.to || g.has_edge(m.from, m.to));
                out[m.from] += m.amount.clone();
            }
            prop_assert_eq!(out, w1);
            prop_assert_eq!(MovePlan::new(plan.moves().to_vec()), plan);
        }
    }

    #[test]
    fn gamma_f_meets_its_packing_dual(g in connected_graph(1, 8)) {
        let (value, w) = gamma_f(&g);
        prop_assert!(w.is_dominating(&g));
        prop_assert_eq!(w.total(), value.clone());
        let (packing, pin) = fractional_packing(&g, None).unwrap();
        prop_assert!(pin.is_zero());
        prop_assert_eq!(packing.iter().cloned().sum::<Rat>(), value.clone());
        for v in 0..g.n() {
            let s: Rat = g.closed_nbhd(v).into_iter().map(|u| packing[u].clone()).sum();
            prop_assert!(s <= Rat::one());
        }
        for f in f_values(&g) {
            prop_assert!(f >= value);
        }
    }

    #[test]
    fn lp_optimum_beats_every_feasible_point(
        costs in prop::collection::vec(1i64..6, 3),
        rows in prop::collection::vec((prop::collection::vec(0i64..4, 3), 1i64..8), 1..4),
        probe in prop::collection::vec(0i64..12, 3),
    ) {
        let mut m = LpModel::new(3);
        for (j, &c) in costs.iter().enumerate() {
            m.set_objective(j, rat(c, 1));
        }
        for (a, b) in &rows {
            m.add_constraint(a.iter().enumerate().map(|(j, &x)| (j, rat(x, 1))), Relation::Ge, rat(*b, 1));
        }
        let sol = solve(&m);
        let probe: Vec<Rat> = probe.iter().map(|&x| rat(x, 2)).collect();
        let feasible_rows = rows.iter().all(|(a, _)| a.iter().any(|&x| x > 0));
        match sol.into_optimum() {
            Some((value, x)) => {
                prop_assert!(m.check_feasible(&x).is_ok());
                prop_assert_eq!(m.objective_value(&x), value.clone());
                if m.check_feasible(&probe).is_ok() {
                    prop_assert!(m.objective_value(&probe) >= value);
                }
            }
            None => prop_assert!(!feasible_rows),
        }
    }

    #[test]
    fn simulation_conserves_weight(g in connected_graph(2, 8), seed in any::<u64>(), which in 0usize..3) {
        let policy = [DefenderPolicy::ConnectivityUniform, DefenderPolicy::DoubleGammaF, DefenderPolicy::LpOnline][which].clone();
        let start = policy.initial_state(&g, None).unwrap();
        let total = start.total();
        let mut defender = policy.build(&g).unwrap();
        let mut attacker = Attacker::new(AttackerPolicy::Random { seed });
        let t = simulate(&g, defender.as_mut(), &mut attacker, 20, start).unwrap();
        for e in &t.events {
            prop_assert_eq!(e.resulting.total(), total.clone());
            prop_assert!(e.resulting.is_dominating(&g));
            prop_assert!(*e.resulting.weight(e.attack) >= Rat::one());
        }
        if which < 2 {
            prop_assert!(t.survived());
        }
    }

    #[test]
    fn graph_serialisation_round_trips(g in connected_graph(1, 9)) {
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap().edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bound_chain_holds(g in connected_graph(2, 7)) {
        let report = bounds_with(&g, BoundsOptions { program_a: true, lp_budget: 7 });
        let (gf, _) = gamma_f(&g);
        prop_assert!(gf <= report.best_lower);
        prop_assert!(report.best_lower <= report.best_upper);
        for e in &report.lower {
            prop_assert!(check_bound(&g, e, true).is_ok(), "{:?}", e.witness.kind());
        }
        for e in &report.upper {
            prop_assert!(check_bound(&g, e, false).is_ok(), "{:?}", e.witness.kind());
        }
        let a = solve_program_a_with(&g, ProgramAOptions { budget: 7, method: ProgramAMethod::Cuts }).unwrap();
        prop_assert!(report.best_lower <= a.value);
        prop_assert!(report.best_upper <= a.value);
        if let Some(x) = report.exact {
            prop_assert_eq!(x, a.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cut_and_full_program_a_agree(g in connected_graph(2, 4)) {
        let run = |method| solve_program_a_with(&g, ProgramAOptions { budget: 5, method }).unwrap().value;
        prop_assert_eq!(run(ProgramAMethod::Cuts), run(ProgramAMethod::Full));
    }
}
