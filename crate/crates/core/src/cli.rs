//! Command-line front end. Exit codes: 0 success, 1 domain failure (not
//! controllable, no algorithm, infeasible), 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::SolveError;
use crate::generate::{generate, synthetic_topology, Family, GeneratorSpec, Topology};
use crate::graph::{check_controllability, classify, to_dot, AssumptionClass};
use crate::oracle::brute_force;
use crate::pattern::{parse_instance, serialize_instance, SystemInstance};
use crate::solvers::{solve, Mode, Problem, Solution};

#[derive(Parser, Debug)]
#[command(name = "structctl", version, about = "Cheapest input-connections preserving structural controllability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report structural controllability and the instance class.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Select input-connections and print the solution as JSON.
    Solve {
        file: PathBuf,
        #[arg(long)]
        problem: Problem,
        #[arg(long, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive optimum over all subsets of B (at most 20 entries).
    Oracle {
        file: PathBuf,
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        json: bool,
    },
    /// Solver result next to the exhaustive optimum.
    Compare {
        file: PathBuf,
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long = "d", default_value_t = 0)]
        d: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long = "cost-lo", default_value_t = 0.0)]
        cost_lo: f64,
        #[arg(long = "cost-hi", default_value_t = 20.0)]
        cost_hi: f64,
        #[arg(long)]
        topology: Option<PathBuf>,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long)]
        loads: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Write G(A, B) in Graphviz format.
    ExportDot {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
}

/// An error that ends the command, with its exit code.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind,
            message: message.into(),
        }
    }

    fn domain(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            kind,
            message: message.into(),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = if matches!(e, SolveError::InvalidInstance(_)) { 2 } else { 1 };
        Failure {
            code,
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn read_instance(path: &Path) -> Result<SystemInstance, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage("Io", format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::usage("Parse", format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage("Io", format!("{}: {e}", path.display())))
}

fn fmt_num(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.6}")
    }
}

/// Objective ratio solver / optimum for `problem`.
fn ratio(problem: Problem, solver: &Solution, optimum: &Solution) -> f64 {
    let (s, o) = match problem {
        Problem::MinCount => (solver.count() as f64, optimum.count() as f64),
        _ => (solver.cost(), optimum.cost()),
    };
    if o == 0.0 {
        if s == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        s / o
    }
}

fn run_command(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::usage("Io", e.to_string());
    match command {
        Command::Check { file, json } => {
            let inst = read_instance(&file)?;
            let report = check_controllability(&inst);
            let class = classify(&inst);
            if json {
                let root = match class {
                    AssumptionClass::RootedTree { root } => Some(root),
                    _ => None,
                };
                let v = json!({
                    "controllable": report.controllable,
                    "accessible": report.accessible,
                    "sdr": report.sdr,
                    "class": class.name(),
                    "root": root,
                    "sources": report.source_count,
                    "inaccessible_states": report.inaccessible_states,
                    "inaccessible_sources": report.inaccessible_sources,
                    "unsaturated": report.unsaturated,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{}: d={} m={} |A|={} |B|={}",
                    file.display(),
                    inst.d(),
                    inst.m(),
                    inst.a.len(),
                    inst.b.len()
                )
                .map_err(io)?;
                writeln!(out, "controllable: {}", report.controllable).map_err(io)?;
                if !report.controllable {
                    writeln!(out, "reason: {report}").map_err(io)?;
                }
                writeln!(out, "class: {class}").map_err(io)?;
                writeln!(out, "source components: {}", report.source_count).map_err(io)?;
            }
            if report.controllable {
                Ok(())
            } else {
                Err(Failure::domain("NotStructurallyControllable", report.to_string()))
            }
        }
        Command::Solve {
            file,
            problem,
            mode,
            json: _,
        } => {
            let inst = read_instance(&file)?;
            let solution = solve(&inst, problem, mode)?;
            writeln!(out, "{}", solution.to_json()).map_err(io)
        }
        Command::Oracle { file, problem, json: _ } => {
            let inst = read_instance(&file)?;
            let result = brute_force(&inst).map_err(|e| Failure::usage("OracleCap", e.to_string()))?;
            let solution = result.solution(problem).ok_or_else(|| {
                Failure::domain("NotStructurallyControllable", "no subset of B is feasible")
            })?;
            writeln!(out, "{}", solution.to_json()).map_err(io)
        }
        Command::Compare { file, problem, json } => {
            let inst = read_instance(&file)?;
            let solver = solve(&inst, problem, Mode::Auto)?;
            let result = brute_force(&inst).map_err(|e| Failure::usage("OracleCap", e.to_string()))?;
            let optimum = result
                .solution(problem)
                .ok_or_else(|| Failure::domain("NotStructurallyControllable", "no subset of B is feasible"))?;
            let r = ratio(problem, &solver, &optimum);
            if json {
                let v = json!({
                    "problem": problem.name(),
                    "solver": solver,
                    "oracle": optimum,
                    "ratio": r,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).map_err(io)
            } else {
                writeln!(
                    out,
                    "solver ({}): count {} cost {}",
                    solver.method.tag(),
                    solver.count(),
                    fmt_num(solver.cost())
                )
                .map_err(io)?;
                writeln!(
                    out,
                    "oracle: count {} cost {}",
                    optimum.count(),
                    fmt_num(optimum.cost())
                )
                .map_err(io)?;
                writeln!(out, "ratio: {r:.6}").map_err(io)
            }
        }
        Command::Gen {
            family,
            d,
            m,
            density,
            cost_lo,
            cost_hi,
            topology,
            gens,
            loads,
            seed,
            output,
        } => {
            let mut spec = GeneratorSpec::new(family, d, m, seed)
                .with_density(density)
                .with_costs(cost_lo, cost_hi);
            if family == Family::Grid {
                let topo = match topology {
                    Some(path) => {
                        let text = fs::read_to_string(&path).map_err(|e| {
                            Failure::usage("Io", format!("{}: {e}", path.display()))
                        })?;
                        let t = Topology::from_json(&text)
                            .map_err(|e| Failure::usage("Parse", e.to_string()))?;
                        if gens.is_some_and(|g| g != t.generator_buses.len())
                            || loads.is_some_and(|l| l != t.load_buses.len())
                        {
                            return Err(Failure::usage(
                                "InvalidSpec",
                                "--gens/--loads disagree with the topology file",
                            ));
                        }
                        t
                    }
                    None => {
                        let (g, l) = gens.zip(loads).ok_or_else(|| {
                            Failure::usage("InvalidSpec", "grid needs --topology or --gens and --loads")
                        })?;
                        synthetic_topology(g + l, g, seed)
                            .map_err(|e| Failure::usage("InvalidSpec", e.to_string()))?
                    }
                };
                spec.topology = Some(topo);
            }
            let inst = generate(&spec).map_err(|e| Failure::usage("InvalidSpec", e.to_string()))?;
            write_file(&output, &serialize_instance(&inst))?;
            writeln!(
                out,
                "wrote {} (d={} m={} |A|={} |B|={})",
                output.display(),
                inst.d(),
                inst.m(),
                inst.a.len(),
                inst.b.len()
            )
            .map_err(io)
        }
        Command::ExportDot { file, output } => {
            let inst = read_instance(&file)?;
            write_file(&output, &to_dot(&inst))?;
            writeln!(out, "wrote {}", output.display()).map_err(io)
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Check { json, .. }
        | Command::Solve { json, .. }
        | Command::Oracle { json, .. }
        | Command::Compare { json, .. } => *json,
        Command::Gen { .. } | Command::ExportDot { .. } => false,
    }
}

/// Run the CLI on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let json = wants_json(&cli.command);
    match run_command(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            if json {
                let v = json!({"error": f.kind, "message": f.message});
                let _ = writeln!(err, "{v}");
            } else {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}
