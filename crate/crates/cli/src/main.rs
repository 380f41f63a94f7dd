use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use fedlab::fed::{
    big_f, bounds_with, closed_form_fed, fractional_packing, gamma_f, program_a_budget_from_env, solve_program_a_with,
    BoundsOptions, FedValue, ProgramAMethod, ProgramAOptions, StrategyCertificate,
};
use fedlab::game::{
    caterpillar_sweep, cycle_sweep, fixture_names, ladder_sweep, load_fixture, path_sweep, simulate, verify_certificate,
    Attacker, AttackerPolicy, DefenderPolicy, GameError,
};
use fedlab::graph::{generate, random_split, ClassTag, Family, Graph, GraphError};
use fedlab::Rat;

#[derive(Parser)]
#[command(name = "fedlab", version, about = "Exact fractional eternal domination toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a family name and integer parameters.
    Gen {
        family: String,
        params: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the `n m` edge-list format instead of JSON.
        #[arg(long)]
        edge_list: bool,
    },
    /// Fractional domination number with an optimal function.
    #[command(name = "gamma-f")]
    GammaF {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// F(G) = max over v of the least weight of a fractional dominating function with w(v) >= 1.
    Bigf {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve program A exactly and emit its strategy certificate.
    #[command(name = "solve-a")]
    SolveA {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Largest vertex count attempted (default: FEDLAB_LP_BUDGET or 12).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Cuts)]
        method: Method,
    },
    /// Every applicable lower and upper bound, each with its witness.
    Bounds {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also solve program A (subject to the budget).
        #[arg(long)]
        program_a: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Closed-form value or interval, if the graph is in a known family.
    #[command(name = "closed-form")]
    ClosedForm {
        graph: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Play the attack/defence game for a number of rounds.
    Simulate {
        graph: String,
        #[arg(long, value_enum)]
        defender: DefenderName,
        /// Certificate for the table defender.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, value_enum, default_value_t = AttackerName::Random)]
        attacker: AttackerName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated attack sequence for the scripted attacker.
        #[arg(long, value_delimiter = ',')]
        script: Vec<usize>,
        /// Built-in attack sequence for the scripted attacker.
        #[arg(long, value_enum)]
        sweep: Option<Sweep>,
        #[arg(long, default_value_t = 100)]
        rounds: usize,
        /// Total weight for lp_online, as an integer or p/q.
        #[arg(long)]
        total: Option<Rat>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a strategy certificate against a graph; exits 1 on any violation.
    Verify {
        certificate: String,
        graph: String,
    },
    /// Print a built-in strategy certificate.
    Fixture {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write the fixture's graph here.
        #[arg(long)]
        graph_output: Option<PathBuf>,
    },
    /// Reproduce a numeric table.
    Table {
        #[arg(value_enum)]
        which: TableName,
        #[arg(long, default_value_t = 10)]
        max_d: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Cuts,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum DefenderName {
    LpOnline,
    Table,
    ConnectivityUniform,
    DoubleGammaF,
    KneserCanonical,
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackerName {
    Random,
    Greedy,
    Scripted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    Ladder,
    Path,
    Caterpillar,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    Hypercube,
}

enum CliError {
    Usage(String),
    Verification(String),
    Budget(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn report(&self) -> serde_json::Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m),
            CliError::Verification(m) => ("verification", m),
            CliError::Budget(m) => ("budget_exceeded", m),
            CliError::Failed(m) => ("error", m),
        };
        json!({ "error": kind, "message": message, "exit_code": self.code() })
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeLimitExceeded { .. } => CliError::Budget(e.to_string()),
            GraphError::Parse(_) | GraphError::InvalidParams(_) | GraphError::InvalidVertex { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Graph(g) => g.into(),
            GameError::UnknownFixture(_) | GameError::InvalidInitial(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    Ok(Graph::parse(&read_input(path)?)?)
}

fn read_certificate(path: &str) -> Result<StrategyCertificate, CliError> {
    StrategyCertificate::from_json(&read_input(path)?).map_err(|e| CliError::Usage(format!("certificate: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

/// Writes to `path`, or to stdout when no path is given.
fn emit(path: Option<&PathBuf>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Writes witness JSON only when a path was requested.
fn emit_witness<T: Serialize>(path: Option<&PathBuf>, value: &T) -> CliResult {
    if let Some(p) = path {
        fs::write(p, to_json(value))?;
    }
    Ok(())
}

fn budget(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(program_a_budget_from_env)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Gen { family, params, output, edge_list } => {
            let g = if family == "random_split" {
                let [c, i, seed] = params[..] else {
                    return Err(CliError::Usage("random_split takes <clique> <independent> <seed>".into()));
                };
                random_split(c as usize, i as usize, seed)?
            } else {
                let fam = Family::from_name(&family)
                    .ok_or_else(|| CliError::Usage(format!("unknown family {family:?}")))?;
                generate(&ClassTag::new(fam, params)?)?
            };
            let text = if edge_list { g.to_edge_list() } else { g.to_json() + "\n" };
            emit(output.as_ref(), &text)
        }
        Command::GammaF { graph, output } => {
            let g = read_graph(&graph)?;
            let (value, w) = gamma_f(&g);
            let (packing, _) = fractional_packing(&g, None)?;
            println!("gamma_f = {value}");
            emit_witness(output.as_ref(), &json!({ "value": value, "function": w, "packing": packing }))
        }
        Command::Bigf { graph, output } => {
            let g = read_graph(&graph)?;
            let Some((value, v)) = big_f(&g) else {
                println!("F = 0 (empty graph)");
                return Ok(());
            };
            let (packing, _) = fractional_packing(&g, Some(v))?;
            println!("F = {value} (attained at vertex {v})");
            emit_witness(output.as_ref(), &json!({ "value": value, "vertex": v, "packing": packing }))
        }
        Command::SolveA { graph, output, budget: b, method } => {
            let g = read_graph(&graph)?;
            let method = match method {
                Method::Cuts => ProgramAMethod::Cuts,
                Method::Full => ProgramAMethod::Full,
            };
            let r = solve_program_a_with(&g, ProgramAOptions { budget: budget(b), method })?;
            eprintln!("program A = {} ({} master solves, {} cuts)", r.value, r.rounds, r.cuts);
            emit(output.as_ref(), &(r.certificate.to_json() + "\n"))
        }
        Command::Bounds { graph, output, program_a, budget: b } => {
            let g = read_graph(&graph)?;
            let report = bounds_with(&g, BoundsOptions { program_a, lp_budget: budget(b) });
            for e in &report.lower {
                println!("lower {}{} [{}] {}", e.value, if e.open { " (strict)" } else { "" }, e.witness.kind(), e.witness.summary());
            }
            for e in &report.upper {
                println!("upper {}{} [{}] {}", e.value, if e.open { " (strict)" } else { "" }, e.witness.kind(), e.witness.summary());
            }
            for n in &report.notes {
                println!("note {n}");
            }
            match &report.exact {
                Some(v) => println!("fed = {v}"),
                None => println!("fed in [{}, {}]", report.best_lower, report.best_upper),
            }
            emit_witness(output.as_ref(), &report)
        }
        Command::ClosedForm { graph, output } => {
            let g = read_graph(&graph)?;
            match closed_form_fed(&g) {
                Some(cf) => {
                    match &cf.value {
                        FedValue::Exact { value } => println!("fed = {value} ({})", cf.reason),
                        FedValue::Interval(i) => println!("fed in {i} ({})", cf.reason),
                    }
                    emit_witness(output.as_ref(), &cf)
                }
                None => {
                    println!("no closed form applies");
                    Ok(())
                }
            }
        }
        Command::Simulate { graph, defender, certificate, attacker, seed, script, sweep, rounds, total, output } => {
            let g = read_graph(&graph)?;
            let policy = match defender {
                DefenderName::LpOnline => DefenderPolicy::LpOnline,
                DefenderName::Table => {
                    let path = certificate.ok_or_else(|| CliError::Usage("--defender table needs --certificate".into()))?;
                    DefenderPolicy::Table(read_certificate(&path)?)
                }
                DefenderName::ConnectivityUniform => DefenderPolicy::ConnectivityUniform,
                DefenderName::DoubleGammaF => DefenderPolicy::DoubleGammaF,
                DefenderName::KneserCanonical => DefenderPolicy::KneserCanonical,
            };
            let attack_policy = match attacker {
                AttackerName::Random => AttackerPolicy::Random { seed },
                AttackerName::Greedy => AttackerPolicy::Greedy,
                AttackerName::Scripted => {
                    let n = g.n();
                    let seq = match sweep {
                        Some(Sweep::Ladder) => ladder_sweep(n / 2),
                        Some(Sweep::Path) => path_sweep(n),
                        Some(Sweep::Caterpillar) => caterpillar_sweep(n / 5),
                        Some(Sweep::Cycle) => cycle_sweep(n),
                        None => script,
                    };
                    if seq.is_empty() {
                        return Err(CliError::Usage("scripted attacker needs --script or --sweep".into()));
                    }
                    AttackerPolicy::Scripted(seq)
                }
            };
            let initial = policy.initial_state(&g, total.as_ref())?;
            let mut d = policy.build(&g)?;
            let t = simulate(&g, d.as_mut(), &mut Attacker::new(attack_policy), rounds, initial)?;
            eprintln!("outcome: {} after {} rounds", t.outcome, t.events.len());
            emit(output.as_ref(), &to_json(&t))
        }
        Command::Verify { certificate, graph } => {
            let cert = read_certificate(&certificate)?;
            let g = read_graph(&graph)?;
            let report = verify_certificate(&g, &cert);
            println!("{}", to_json(&report).trim_end());
            if report.ok() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("{} violation(s)", report.violations.len())))
            }
        }
        Command::Fixture { name, output, graph_output } => {
            let cert = load_fixture(&name).map_err(|e| match e {
                GameError::UnknownFixture(_) => {
                    CliError::Usage(format!("{e}; known fixtures: {}", fixture_names().join(", ")))
                }
                other => other.into(),
            })?;
            if let Some(p) = graph_output {
                fs::write(p, fedlab::game::fixture_graph(&name)?.to_json() + "\n")?;
            }
            emit(output.as_ref(), &(cert.to_json() + "\n"))
        }
        Command::Table { which: TableName::Hypercube, max_d } => {
            print!("{}", fedlab_cli::hypercube_table(max_d));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.report());
            return ExitCode::from(err.code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.code())
        }
    }
}
