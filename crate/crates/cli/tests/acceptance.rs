//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. All comparisons are exact.

use std::collections::HashMap;
use std::panic;
use std::process::{Command, ExitCode};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use fedlab::fed::{
    big_f, closed_form_fed, gamma_f, med_tree, solve_program_a_with, split_fed, FedValue, ProgramAMethod,
    ProgramAOptions, Transitions,
};
use fedlab::game::{
    caterpillar_sweep, cycle_sweep, ladder_sweep, load_fixture, simulate, verify_certificate, Attacker,
    AttackerPolicy, ConnectivityUniform, DefenderPolicy, GameError, Transcript,
};
use fedlab::graph::{
    caterpillar, complete, complete_multipartite, cycle, domination_number, grid, gtd, hypercube, kneser, moebius,
    path, prism, random_split, random_tree, split_partition, star, Graph,
};
use fedlab::lp::{self, LpModel, LpSolution, Relation};
use fedlab::reconfig::{apply_move_plan, build_reconfig_network, can_reconfigure, max_flow, Capacity, FDFunction};
use fedlab::{rat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Program-A values computed anywhere in the suite, for the bound chain of criterion 11.
static LP_A: Mutex<Vec<(String, Graph, Rat)>> = Mutex::new(Vec::new());

fn program_a(name: &str, g: &Graph) -> Rat {
    let opts = ProgramAOptions { budget: 16, method: ProgramAMethod::Cuts };
    let r = solve_program_a_with(g, opts).expect("within budget");
    LP_A.lock().unwrap().push((name.to_string(), g.clone(), r.value.clone()));
    r.value
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ceil_div(a: usize, b: usize) -> Rat {
    Rat::from(a.div_ceil(b))
}

fn exact_closed_form(g: &Graph) -> Option<Rat> {
    closed_form_fed(g).and_then(|c| c.value.exact().cloned())
}

// ---------------------------------------------------------------------------
// Oracles

/// Least number of guards (at most one per vertex) that can answer every
/// attack forever when all guards may move: the greatest fixed point of
/// "dominating and every attack has a reachable surviving reply".
fn m_eternal_number(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16);
    let closed: Vec<u32> = (0..n).map(|v| g.closed_nbhd(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let dominates = |c: u32| closed.iter().all(|&nb| nb & c != 0);
    for k in 1..=n {
        let configs: Vec<u32> =
            (0u32..1 << n).filter(|&c| c.count_ones() as usize == k && dominates(c)).collect();
        if configs.is_empty() {
            continue;
        }
        let index: HashMap<u32, usize> = configs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let succ: Vec<Vec<usize>> = configs
            .iter()
            .map(|&c| {
                let guards: Vec<usize> = (0..n).filter(|&v| c >> v & 1 == 1).collect();
                let mut out = Vec::new();
                assign(&guards, 0, 0, &closed, &mut out);
                out.sort_unstable();
                out.dedup();
                out.into_iter().filter_map(|m| index.get(&m).copied()).collect()
            })
            .collect();
        let mut alive = vec![true; configs.len()];
        loop {
            let mut changed = false;
            for i in 0..configs.len() {
                if alive[i]
                    && !(0..n).all(|v| succ[i].iter().any(|&j| alive[j] && configs[j] >> v & 1 == 1))
                {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if alive.iter().any(|&a| a) {
            return k;
        }
    }
    n
}

fn assign(guards: &[usize], i: usize, used: u32, closed: &[u32], out: &mut Vec<u32>) {
    if i == guards.len() {
        out.push(used);
        return;
    }
    let mut options = closed[guards[i]] & !used;
    while options != 0 {
        let b = options.trailing_zeros();
        assign(guards, i + 1, used | 1 << b, closed, out);
        options &= options - 1;
    }
}

/// Reconfigurability by Hall's condition: `w1(S) <= w2(N[S])` for every `S`.
fn hall_oracle(g: &Graph, w1: &[Rat], w2: &[Rat]) -> bool {
    let n = g.n();
    (0u32..1 << n).all(|s| {
        let mut nb = 0u32;
        let mut left = Rat::zero();
        for v in (0..n).filter(|&v| s >> v & 1 == 1) {
            left += &w1[v];
            for u in g.closed_nbhd(v) {
                nb |= 1 << u;
            }
        }
        let right: Rat = (0..n).filter(|&u| nb >> u & 1 == 1).map(|u| &w2[u]).sum();
        left <= right
    })
}

/// Optimum of a bounded LP by enumerating every basic solution.
fn vertex_oracle(nv: usize, cost: &[Rat], rows: &[(Vec<Rat>, Relation, Rat)]) -> Option<Rat> {
    let mut planes: Vec<(Vec<Rat>, Rat)> = rows.iter().map(|(a, _, b)| (a.clone(), b.clone())).collect();
    for j in 0..nv {
        let mut e = vec![Rat::zero(); nv];
        e[j] = Rat::one();
        planes.push((e, Rat::zero()));
    }
    let feasible = |x: &[Rat]| {
        x.iter().all(|v| !v.is_negative())
            && rows.iter().all(|(a, rel, b)| {
                let lhs: Rat = a.iter().zip(x).map(|(p, q)| p * q).sum();
                match rel {
                    Relation::Le => lhs <= *b,
                    Relation::Ge => lhs >= *b,
                    Relation::Eq => lhs == *b,
                }
            })
    };
    let mut best: Option<Rat> = None;
    let mut pick = vec![0usize; nv];
    fn combos(k: usize, start: usize, total: usize, pick: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == pick.len() {
            f(pick);
            return;
        }
        for i in start..total {
            pick[k] = i;
            combos(k + 1, i + 1, total, pick, f);
        }
    }
    let total = planes.len();
    combos(0, 0, total, &mut pick, &mut |idx| {
        let a: Vec<Vec<Rat>> = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let b: Vec<Rat> = idx.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(&x) {
                let v: Rat = cost.iter().zip(&x).map(|(c, y)| c * y).sum();
                if best.as_ref().map_or(true, |b| v < *b) {
                    best = Some(v);
                }
            }
        }
    });
    best
}

fn solve_square(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for k in col..n {
                    let d = &f * &a[col][k];
                    a[r][k] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn transcript_sound(g: &Graph, t: &Transcript) -> Result<(), String> {
    let total = t.initial.total();
    for (k, e) in t.events.iter().enumerate() {
        ensure(e.resulting.total() == total, || format!("round {}: total {} != {total}", k + 1, e.resulting.total()))?;
        ensure(*e.resulting.weight(e.attack) >= Rat::one(), || format!("round {}: attack uncovered", k + 1))?;
        ensure(e.resulting.is_dominating(g), || format!("round {}: not dominating", k + 1))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Criteria

fn criterion_1() -> Outcome {
    let mut cases: Vec<(String, Graph, Rat)> = Vec::new();
    for n in 1..=8 {
        cases.push((format!("K{n}"), complete(n).unwrap(), Rat::one()));
    }
    for n in 1..=12 {
        cases.push((format!("P{n}"), path(n).unwrap(), ceil_div(n, 2)));
    }
    for n in 3..=12 {
        cases.push((format!("C{n}"), cycle(n).unwrap(), ceil_div(n, 3)));
    }
    cases.push(("K2,3".into(), complete_multipartite(&[2, 3]).unwrap(), rat(2, 1)));
    cases.push(("K1,4".into(), star(4).unwrap(), rat(2, 1)));
    let mut cross = 0;
    for (name, g, want) in &cases {
        let got = exact_closed_form(g).ok_or_else(|| format!("{name}: no exact closed form"))?;
        ensure(got == *want, || format!("{name}: closed form {got}, expected {want}"))?;
        if g.n() <= 9 {
            let a = program_a(name, g);
            ensure(a == *want, || format!("{name}: program A {a} differs from closed form {want}"))?;
            cross += 1;
        }
    }
    Ok(format!("{} closed forms exact; program A equal on all {cross} graphs with n <= 9", cases.len()))
}

fn criterion_2() -> Outcome {
    let mut sizes = Vec::new();
    for seed in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let clique = rng.gen_range(1..=5);
        let indep = rng.gen_range(1..=(10 - clique).min(6));
        let g = random_split(clique, indep, seed).unwrap();
        let (x, y) = split_partition(&g).ok_or("random split graph not recognised as split")?;
        let (f, _) = big_f(&g).unwrap();
        let (value, cert) = split_fed(&g, &x, &y).map_err(|e| e.to_string())?;
        let a = program_a(&format!("split{seed}"), &g);
        ensure(a == f && value == f, || format!("seed {seed}: program A {a}, split_fed {value}, F {f}"))?;
        let rep = verify_certificate(&g, &cert);
        ensure(rep.ok() && cert.transitions == Transitions::Pairwise, || {
            format!("seed {seed}: D_v certificate fails: {:?}", rep.violations)
        })?;
        sizes.push(g.n());
    }
    Ok(format!("30 split graphs (n = {}..={}): program A = F = split_fed, D_v certificates verify pairwise",
        sizes.iter().min().unwrap(), sizes.iter().max().unwrap()))
}

fn criterion_3() -> Outcome {
    let g = gtd(3, 2).unwrap();
    let (gf, _) = gamma_f(&g);
    let (x, y) = split_partition(&g).ok_or("G_{3,2} not split")?;
    let (sf, _) = split_fed(&g, &x, &y).map_err(|e| e.to_string())?;
    let gamma = domination_number(&g).unwrap();
    let a = program_a("G_{3,2}", &g);
    let med = m_eternal_number(&g);
    ensure(gf == rat(3, 2), || format!("gamma_f = {gf}"))?;
    ensure(sf == rat(5, 2) && sf == Rat::one() + rat(3, 2), || format!("split_fed = {sf}"))?;
    ensure(gamma == 2, || format!("gamma = {gamma}"))?;
    ensure(a == rat(5, 2), || format!("program A = {a}"))?;
    ensure(med == gamma + 1, || format!("m-eternal oracle gives {med}, expected gamma + 1 = {}", gamma + 1))?;
    ensure(gf < sf && sf < Rat::from(gamma + 1), || "strict chain fails".into())?;
    Ok(format!("gamma_f = {gf} < fed = {sf} = program A < gamma + 1 = med = {med}; gamma = {gamma}"))
}

fn criterion_4() -> Outcome {
    let (f5, _) = big_f(&kneser(5, 2).unwrap()).unwrap();
    ensure(f5 == rat(3, 1), || format!("F(KG(5,2)) = {f5}"))?;
    let mut parts = vec![format!("F(KG5,2) = {f5}")];
    for n in [6usize, 7] {
        let (f, _) = big_f(&kneser(n, 2).unwrap()).unwrap();
        let want = Rat::one() + rat(n as i64 - 2, n as i64 - 4);
        ensure(f == want, || format!("F(KG({n},2)) = {f}, expected {want}"))?;
        parts.push(format!("F(KG{n},2) = {f}"));
    }
    for (name, n) in [("petersen", 5usize), ("kneser6", 6), ("kneser7", 7)] {
        let g = kneser(n, 2).unwrap();
        let cert = load_fixture(name).map_err(|e| e.to_string())?;
        let rep = verify_certificate(&g, &cert);
        ensure(rep.ok(), || format!("{name}: {:?}", rep.violations))?;
        let (f, _) = big_f(&g).unwrap();
        ensure(cert.weight == f, || format!("{name}: certificate weight {} != F = {f}", cert.weight))?;
    }
    parts.push("petersen/kneser6/kneser7 certificates verify at weight F".into());
    Ok(parts.join("; "))
}

fn criterion_5() -> Outcome {
    let z8 = load_fixture("z8").map_err(|e| e.to_string())?;
    let m4 = moebius(4).unwrap();
    let rep = verify_certificate(&m4, &z8);
    ensure(rep.ok() && z8.weight == rat(8, 3), || format!("z8: weight {} {:?}", z8.weight, rep.violations))?;
    let a = program_a("moebius(4)", &m4);
    ensure(a == rat(8, 3), || format!("program A(moebius(4)) = {a}"))?;
    let c10 = load_fixture("c10k2").map_err(|e| e.to_string())?;
    let rep = verify_certificate(&prism(10).unwrap(), &c10);
    ensure(rep.ok() && c10.weight == rat(28, 5), || format!("c10k2: weight {} {:?}", c10.weight, rep.violations))?;
    let v = program_a("prism(6)", &prism(6).unwrap());
    ensure(rat(7, 2) < v && v <= rat(15, 4), || format!("program A(prism(6)) = {v} outside (7/2, 15/4]"))?;
    Ok(format!("z8 verifies at 8/3, program A(moebius(4)) = {a}; c10k2 verifies at 28/5; program A(prism(6)) = {v}"))
}

fn criterion_6() -> Outcome {
    for n in [3usize, 4, 5, 7, 8, 9, 11, 12] {
        let got = exact_closed_form(&prism(n).unwrap());
        ensure(got == Some(ceil_div(n, 2)), || format!("prism({n}): {got:?}"))?;
    }
    for n in [3usize, 5, 6, 7, 9] {
        let got = exact_closed_form(&moebius(n).unwrap());
        ensure(got == Some(ceil_div(n, 2)), || format!("moebius({n}): {got:?}"))?;
    }
    // Over a wider range: interval exactly on the residue classes, except the
    // two members whose value is determined exactly.
    let mut intervals = Vec::new();
    for (family, n, special) in (3..=22usize)
        .map(|n| ("prism", n, (n % 4 == 2).then_some((10, rat(28, 5)))))
        .chain((3..=20usize).map(|n| ("moebius", n, (n % 4 == 0).then_some((4, rat(8, 3))))))
    {
        let g = if family == "prism" { prism(n) } else { moebius(n) }.unwrap();
        let cf = closed_form_fed(&g).ok_or_else(|| format!("{family}({n}): no closed form"))?;
        let ceil = ceil_div(n, 2);
        let exact = match special {
            None => Some(ceil.clone()),
            Some((m, v)) if m == n => Some(v),
            Some(_) => None,
        };
        match (exact, &cf.value) {
            (Some(want), FedValue::Exact { value }) if *value == want => {}
            (None, FedValue::Interval(i)) if !i.contains(&ceil) => intervals.push(format!("{family}({n})")),
            _ => return Err(format!("{family}({n}): unexpected {}", cf.value)),
        }
    }
    Ok(format!(
        "ceil(n/2) on the listed prisms and Moebius ladders; intervals on {}; prism(10) = 28/5 and moebius(4) = 8/3 exact",
        intervals.join(", ")
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..200u64 {
        let n = rng.gen_range(1..=9);
        let t = random_tree(n, 1000 + k).unwrap();
        let (m, o) = (med_tree(&t).unwrap(), m_eternal_number(&t));
        ensure(m == o, || format!("tree {:?}: med_tree {m}, oracle {o}", t.edges()))?;
    }
    let mut eq = 0;
    for k in 0..25u64 {
        let n = rng.gen_range(2..=11);
        let t = random_tree(n, 5000 + k).unwrap();
        let m = Rat::from(med_tree(&t).unwrap());
        let a = program_a(&format!("tree{k}"), &t);
        ensure(a >= m, || format!("tree {:?}: program A {a} < med {m}", t.edges()))?;
        ensure(a == m, || format!("tree {:?}: program A {a} > med {m} (finding)", t.edges()))?;
        eq += 1;
    }
    ensure(med_tree(&star(5).unwrap()).unwrap() == 2, || "star".into())?;
    ensure(med_tree(&caterpillar(2).unwrap()).unwrap() == 4, || "caterpillar".into())?;
    Ok(format!("med_tree = brute-force oracle on 200 trees (n <= 9); program A = med on {eq} trees (n <= 11); spot values hold"))
}

fn criterion_8() -> Outcome {
    let graphs = [
        ("Petersen", kneser(5, 2).unwrap()),
        ("Q4", hypercube(4).unwrap()),
        ("C8", cycle(8).unwrap()),
        ("prism(7)", prism(7).unwrap()),
    ];
    let mut parts = Vec::new();
    for (seed, (name, g)) in graphs.iter().enumerate() {
        let cu = ConnectivityUniform::new(g);
        let n = g.n();
        let want = rat((n + cu.kappa()) as i64, (cu.kappa() + 1) as i64);
        for (policy, total) in [
            (DefenderPolicy::ConnectivityUniform, want.clone()),
            (DefenderPolicy::DoubleGammaF, gamma_f(g).0 * rat(2, 1)),
        ] {
            let init = policy.initial_state(g, None).map_err(|e| e.to_string())?;
            ensure(init.total() == total, || format!("{name}: initial total {} != {total}", init.total()))?;
            let mut d = policy.build(g).map_err(|e| e.to_string())?;
            let mut atk = Attacker::new(AttackerPolicy::Random { seed: seed as u64 });
            let t = simulate(g, d.as_mut(), &mut atk, 200, init).map_err(|e| format!("{name}: {e}"))?;
            ensure(t.survived() && t.events.len() == 200, || format!("{name}: {} failed: {}", d.name(), t.outcome))?;
            transcript_sound(g, &t).map_err(|e| format!("{name}: {e}"))?;
        }
        parts.push(format!("{name} ({want})"));
    }
    Ok(format!("both defenders survive 200 random attacks on {}", parts.join(", ")))
}

/// Round at which lp_online fails, 0 when no dominating start of that total exists.
fn lp_online_failure(g: &Graph, total: &Rat, script: Vec<usize>, rounds: usize) -> Result<Option<usize>, String> {
    let policy = DefenderPolicy::LpOnline;
    let init = match policy.initial_state(g, Some(total)) {
        Ok(w) => w,
        Err(GameError::InvalidInitial(_)) => return Ok(Some(0)),
        Err(e) => return Err(e.to_string()),
    };
    let mut d = policy.build(g).map_err(|e| e.to_string())?;
    let t = match simulate(g, d.as_mut(), &mut Attacker::new(AttackerPolicy::Scripted(script)), rounds, init) {
        Ok(t) => t,
        Err(GameError::InvalidInitial(_)) => return Ok(Some(0)),
        Err(e) => return Err(e.to_string()),
    };
    transcript_sound(g, &t)?;
    Ok(t.failed_round())
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut runs: Vec<(String, Graph, Rat, Vec<usize>, usize)> = Vec::new();
    for n in [6usize, 7, 9] {
        runs.push((format!("grid({n},2)"), grid(n, 2).unwrap(), ceil_div(2 * n, 3) - rat(1, 2), ladder_sweep(n), 2 * n));
    }
    runs.push(("caterpillar(2)".into(), caterpillar(2).unwrap(), rat(7, 2), caterpillar_sweep(2), 8));
    for n in [6usize, 9] {
        runs.push((format!("C{n}"), cycle(n).unwrap(), ceil_div(n, 3) - rat(1, 2), cycle_sweep(n), n));
    }
    for (name, g, total, script, limit) in runs {
        let r = lp_online_failure(&g, &total, script, limit)?;
        match r {
            Some(0) => parts.push(format!("{name} @ {total}: no dominating start (total < gamma_f), round 0")),
            Some(k) => parts.push(format!("{name} @ {total}: fails in round {k}")),
            None => return Err(format!("{name} @ {total}: survived {limit} rounds")),
        }
    }
    Ok(parts.join("; "))
}

fn criterion_10() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_fedlab"))
        .args(["table", "hypercube", "--max-d", "10"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit {:?}", out.status))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let gamma = ["1", "2", "2", "4", "7", "12", "16", "32", "62", "[107,120]"];
    let mut expected = String::from("d\tgamma\tfed\n");
    for d in 1..=10usize {
        let lo = rat(1 << d, d as i64 + 1);
        let hi = rat((1 << d) + d as i64, d as i64 + 1);
        let fed = if [1, 3, 7].contains(&d) { lo.to_string() } else { format!("[{lo},{hi}]") };
        expected.push_str(&format!("{d}\t{}\t{fed}\n", gamma[d - 1]));
    }
    ensure(text == expected, || format!("table differs:\n{text}"))?;
    let q3 = program_a("Q3", &hypercube(3).unwrap());
    ensure(q3 == rat(2, 1), || format!("program A(Q3) = {q3}"))?;
    Ok(format!("table rows d = 1..10 match; exact at d = 1, 3, 7; program A(Q3) = {q3}"))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn random_thirds(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| rat(rng.gen_range(0..=4), 3)).collect()
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // Exact LP: optimum agrees with vertex enumeration and substitutes exactly.
    let mut lps = 0;
    for _ in 0..300 {
        let nv = rng.gen_range(1..=3);
        let mut model = LpModel::new(nv);
        let cost: Vec<Rat> = (0..nv).map(|_| Rat::from(rng.gen_range(-3i64..=3))).collect();
        for (j, c) in cost.iter().enumerate() {
            model.set_objective(j, c.clone());
        }
        let mut rows = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let a: Vec<Rat> = (0..nv).map(|_| Rat::from(rng.gen_range(-3i64..=3))).collect();
            let rel = [Relation::Le, Relation::Ge, Relation::Eq][rng.gen_range(0..3)];
            rows.push((a, rel, Rat::from(rng.gen_range(-4i64..=6))));
        }
        for j in 0..nv {
            let mut e = vec![Rat::zero(); nv];
            e[j] = Rat::one();
            rows.push((e, Relation::Le, Rat::from(5)));
        }
        for (a, rel, b) in &rows {
            model.add_constraint(a.iter().cloned().enumerate(), *rel, b.clone());
        }
        let oracle = vertex_oracle(nv, &cost, &rows);
        match (lp::solve(&model), oracle) {
            (LpSolution::Optimal { value, assignment }, Some(best)) => {
                ensure(value == best, || format!("LP optimum {value}, vertex oracle {best}"))?;
                ensure(model.check_feasible(&assignment).is_ok(), || "LP solution violates a row".into())?;
                ensure(model.objective_value(&assignment) == value, || "objective mismatch".into())?;
            }
            (LpSolution::Infeasible, None) => {}
            (got, want) => return Err(format!("LP status {:?}, oracle {want:?}", got.status())),
        }
        lps += 1;
    }
    // Reconfiguration: flow conservation, Hall oracle agreement, plans land exactly.
    let mut pairs = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=5);
        let g = random_graph(&mut rng, n);
        let mut w1 = random_thirds(&mut rng, n);
        let mut w2 = random_thirds(&mut rng, n);
        let (t1, t2): (Rat, Rat) = (w1.iter().sum(), w2.iter().sum());
        if t1 < t2 {
            w1[0] += t2 - t1;
        } else {
            w2[0] += t1 - t2;
        }
        let (f1, f2) = (FDFunction::new(w1.clone()).unwrap(), FDFunction::new(w2.clone()).unwrap());
        let net = build_reconfig_network(&g, &f1, &f2).unwrap();
        let flow = max_flow(&net);
        let mut balance = vec![Rat::zero(); net.node_count()];
        for (arc, x) in net.arcs().iter().zip(&flow.arc_flows) {
            ensure(!x.is_negative(), || "negative arc flow".into())?;
            if let Capacity::Finite(c) = &arc.capacity {
                ensure(x <= c, || "arc flow over capacity".into())?;
            }
            balance[arc.from] -= x;
            balance[arc.to] += x;
        }
        for (v, b) in balance.iter().enumerate() {
            let want = if v == net.source() {
                -flow.value.clone()
            } else if v == net.sink() {
                flow.value.clone()
            } else {
                Rat::zero()
            };
            ensure(*b == want, || format!("conservation fails at node {v}"))?;
        }
        let plan = can_reconfigure(&g, &f1, &f2).unwrap();
        ensure(plan.is_some() == hall_oracle(&g, &w1, &w2), || format!("oracle disagrees on {:?}", g.edges()))?;
        if let Some(p) = plan {
            ensure(apply_move_plan(&g, &f1, &p).unwrap() == f2, || "plan misses target".into())?;
        }
        pairs += 1;
    }
    // Weight conservation: table defenders on every fixture and lp_online on small graphs.
    let mut sims = 0;
    for (k, name) in ["z8", "c10k2", "petersen", "kneser6", "kneser7"].iter().enumerate() {
        let cert = load_fixture(name).map_err(|e| e.to_string())?;
        let g = fedlab::game::fixture_graph(name).unwrap();
        let policy = DefenderPolicy::Table(cert);
        let init = policy.initial_state(&g, None).map_err(|e| e.to_string())?;
        let mut d = policy.build(&g).map_err(|e| e.to_string())?;
        let t = simulate(&g, d.as_mut(), &mut Attacker::new(AttackerPolicy::Random { seed: k as u64 }), 500, init)
            .map_err(|e| e.to_string())?;
        ensure(t.survived(), || format!("table defender failed on {name}"))?;
        transcript_sound(&g, &t)?;
        sims += 1;
    }
    for seed in 0..20u64 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n);
        let total = gamma_f(&g).0 * rat(2, 1);
        let policy = DefenderPolicy::LpOnline;
        let init = policy.initial_state(&g, Some(&total)).map_err(|e| e.to_string())?;
        let mut d = policy.build(&g).map_err(|e| e.to_string())?;
        let t = simulate(&g, d.as_mut(), &mut Attacker::new(AttackerPolicy::Random { seed }), 30, init)
            .map_err(|e| e.to_string())?;
        transcript_sound(&g, &t)?;
        sims += 1;
    }
    // Bound chain on every graph with a program-A value.
    let recorded = LP_A.lock().unwrap().clone();
    for (name, g, a) in &recorded {
        let (gf, _) = gamma_f(g);
        let (f, _) = big_f(g).unwrap();
        ensure(gf <= f && f <= *a && *a <= &gf * rat(2, 1), || format!("{name}: chain {gf} <= {f} <= {a} <= 2*{gf} fails"))?;
    }
    Ok(format!(
        "{lps} LPs match vertex enumeration; {pairs} reconfiguration pairs match Hall oracle with conservation; \
         {sims} simulations conserve weight; bound chain holds on {} program-A graphs",
        recorded.len()
    ))
}

fn run_guarded(f: fn() -> Outcome) -> Outcome {
    panic::catch_unwind(f).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    })
}

fn main() -> ExitCode {
    let first: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let start = Instant::now();
    let mut results: Vec<(usize, Outcome, f64)> = thread::scope(|s| {
        let handles: Vec<_> = first
            .iter()
            .map(|&(k, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    (k, run_guarded(f), t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("guarded")).collect()
    });
    let t = Instant::now();
    results.push((11, run_guarded(criterion_11), t.elapsed().as_secs_f64()));
    let mut failed = 0;
    for (k, r, secs) in &results {
        match r {
            Ok(detail) => println!("criterion {k}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k}: FAIL ({secs:.1}s) {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
