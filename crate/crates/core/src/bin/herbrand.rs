use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use herbrand::builder::{BuildConfig, Builder, Strategy, DEFAULT_FUEL, DEFAULT_MAX_DEPTH};
use herbrand::builtin;
use herbrand::debugger::{try_walk, verify, DebugError};
use herbrand::frontend::Theory;
use herbrand::kam::{parse_program, prelude, Machine, Outcome, Process, Program, StdInstructions};
use herbrand::logic::{htree_check, Atom, HerbrandTree};
use herbrand::sched::{run_herbrand, SchedError};
use herbrand::treeio::{from_json, render, Format};

/// Herbrand trees for contradictory finite universal theories.
#[derive(Parser)]
#[command(name = "herbrand", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a Herbrand tree for a theory.
    Build {
        /// Theory file or builtin:<name>.
        theory: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// relevance or fair.
        #[arg(long, default_value = "relevance")]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Write the tree here instead of standard output.
        #[arg(short, long)]
        output: Option<String>,
        /// Print builder statistics to standard error.
        #[arg(long)]
        stats: bool,
    },
    /// Check that a JSON tree is a Herbrand tree for a theory.
    Check { theory: String, tree: String },
    /// Walk a tree with an atom oracle and print the falsified instance.
    Debug {
        theory: String,
        tree: String,
        /// A valuation file, or inline `Atom=true|false` entries separated by
        /// commas or semicolons. May be repeated.
        #[arg(long)]
        valuation: Vec<String>,
        /// Value of atoms the valuation does not mention.
        #[arg(long)]
        default: Option<bool>,
    },
    /// Krivine machine commands.
    #[command(subcommand)]
    Kam(KamCmd),
}

#[derive(Subcommand)]
enum KamCmd {
    /// Run a λc program (linked with the prelude) and print the value it
    /// halts with.
    Run {
        program: String,
        #[arg(long, default_value = "main")]
        entry: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        trace: bool,
        /// Instruction names that record their visit and pass control on.
        #[arg(long)]
        probe: Vec<String>,
    },
    /// Run a contradiction proof under all atom interpretations.
    Herbrand(HerbrandArgs),
}

#[derive(Args)]
struct HerbrandArgs {
    theory: String,
    /// Proof file or builtin:<name>.
    #[arg(long)]
    proof: String,
    #[arg(long, default_value = "proof")]
    entry: String,
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    stats: bool,
}

/// A failure and its exit status.
struct Failure {
    code: u8,
    msg: String,
}

/// Usage, input or parse problem: exit 2.
fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

/// Domain failure (rejected tree, fuel, machine error): exit 1.
fn domain(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
}

fn source(spec: &str, pick: fn(&str) -> Option<&'static str>) -> Result<String, Failure> {
    if builtin::is_builtin(spec) {
        let known: Vec<_> = builtin::names().collect();
        return pick(spec)
            .map(str::to_string)
            .ok_or_else(|| usage(format!("unknown {spec} (known: {})", known.join(", "))));
    }
    read(spec)
}

fn load_theory(spec: &str) -> Result<Theory, Failure> {
    let src = source(spec, builtin::theory)?;
    Theory::from_source(&src).map_err(|e| usage(format!("{spec}: {e}")))
}

fn load_program(spec: &str) -> Result<Program, Failure> {
    let src = source(spec, builtin::proof)?;
    parse_program(&src).map_err(|e| usage(format!("{spec}:{e}")))
}

fn load_tree(th: &Theory, path: &str) -> Result<HerbrandTree, Failure> {
    from_json(th, &read(path)?).map_err(|e| usage(format!("{path}: {e}")))
}

fn emit(out: &str, output: Option<&str>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, out).map_err(|e| usage(format!("{path}: {e}"))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

/// Splits on `;` and on commas outside parentheses.
fn split_entries(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' | ',' if c == ';' || depth <= 0 => {
                out.push(&line[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&line[start..]);
    out
}

/// Parses valuation entries from files or inline lists.
fn parse_valuation(th: &Theory, specs: &[String]) -> Result<Vec<(Atom, bool)>, Failure> {
    let mut out = Vec::new();
    for spec in specs {
        let text = if std::path::Path::new(spec).is_file() {
            read(spec)?
        } else {
            spec.clone()
        };
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for e in split_entries(line)
                .into_iter()
                .map(str::trim)
                .filter(|e| !e.is_empty())
            {
                let (atom, value) = e.rsplit_once('=').ok_or_else(|| {
                    usage(format!("valuation entry `{e}` lacks `=true` or `=false`"))
                })?;
                let value = match value.trim() {
                    "true" => true,
                    "false" => false,
                    v => return Err(usage(format!("`{v}` is not true or false in `{e}`"))),
                };
                let atom = th
                    .parse_atom(atom.trim())
                    .map_err(|err| usage(format!("valuation entry `{e}`: {err}")))?;
                out.push((atom, value));
            }
        }
    }
    Ok(out)
}

fn build(
    theory: &str,
    format: Format,
    cfg: BuildConfig,
    output: Option<&str>,
    stats: bool,
) -> Result<(), Failure> {
    let th = load_theory(theory)?;
    let mut b = Builder::new(&th, cfg);
    let res = b.build();
    if stats {
        let s = b.stats();
        eprintln!(
            "scan steps {}, decisions {}, relevance hits {}, fair scans {}, frontier {}",
            s.scan_steps, s.decisions, s.relevance_hits, s.fair_scans, s.frontier
        );
    }
    let t = res.map_err(|e| domain(format!("build failed: {e}")))?;
    emit(&render(&t, format), output)
}

fn check(theory: &str, tree: &str) -> Result<(), Failure> {
    let th = load_theory(theory)?;
    let t = load_tree(&th, tree)?;
    htree_check(&th, &t).map_err(|v| domain(format!("rejected: {v}")))?;
    println!(
        "ok: Herbrand tree with {} leaves, {} inner nodes, depth {}",
        t.leaf_count(),
        t.inner_count(),
        t.depth()
    );
    Ok(())
}

fn debug(
    theory: &str,
    tree: &str,
    valuation: &[String],
    default: Option<bool>,
) -> Result<(), Failure> {
    let th = load_theory(theory)?;
    let t = load_tree(&th, tree)?;
    let entries = parse_valuation(&th, valuation)?;
    let oracle = |a: &Atom| {
        entries
            .iter()
            .rev()
            .find(|(b, _)| b == a)
            .map(|(_, v)| *v)
            .or(default)
            .ok_or("no value given (use --valuation or --default)")
    };
    let cex = try_walk(&th, &t, oracle).map_err(|e| match e {
        DebugError::Rejected(v) => domain(format!("rejected: {v}")),
        e => domain(e.to_string()),
    })?;
    let ok = verify(&th, &cex).map_err(|e| domain(e.to_string()))?;
    println!("{cex}");
    if !ok {
        return Err(domain("the counter-example does not falsify its instance"));
    }
    Ok(())
}

fn kam_run(
    program: &str,
    entry: &str,
    fuel: u64,
    trace: bool,
    probes: &[String],
) -> Result<(), Failure> {
    let mut prog = prelude();
    prog.extend(load_program(program)?)
        .map_err(|e| usage(format!("{program}: {e}")))?;
    let handler = StdInstructions::with_probes(probes.iter().map(String::as_str));
    let (head, env) = {
        let names: Vec<&str> = probes.iter().map(String::as_str).collect();
        prog.link(entry, &|n| {
            matches!(n, "stop" | "print") || names.contains(&n)
        })
        .map_err(|e| usage(e.to_string()))?
    };
    let mut m = Machine::new(&env, handler).with_trace(trace);
    let r = m.run(Process::on_nil(head), fuel);
    for line in &r.trace {
        eprintln!("{line}");
    }
    if !m.handler.visits.is_empty() {
        let v: Vec<&str> = m.handler.visits.iter().map(|n| &**n).collect();
        eprintln!("probes: {}", v.join(" "));
    }
    match r.outcome {
        Outcome::Halted(v) => {
            println!("{v}");
            Ok(())
        }
        Outcome::FuelExhausted(p) => Err(domain(format!(
            "fuel exhausted after {} steps at {p}",
            r.steps
        ))),
        Outcome::Stuck { process, reason } => Err(domain(format!("stuck: {reason} at {process}"))),
        Outcome::Fault { process, message } => {
            Err(domain(format!("fault: {message} at {process}")))
        }
    }
}

fn kam_herbrand(a: &HerbrandArgs) -> Result<(), Failure> {
    let th = load_theory(&a.theory)?;
    let proof = load_program(&a.proof)?;
    let run = run_herbrand(&th, proof, &a.entry, a.fuel, a.trace).map_err(|e| match e {
        SchedError::Program(e) => usage(e.to_string()),
        e => domain(e.to_string()),
    })?;
    for line in &run.trace {
        eprintln!("{line}");
    }
    if a.stats {
        eprintln!("steps {}, {}", run.steps, run.stats);
    }
    emit(&render(&run.tree, a.format), None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Build {
            theory,
            format,
            strategy,
            fuel,
            max_depth,
            output,
            stats,
        } => build(
            theory,
            *format,
            BuildConfig {
                fuel: *fuel,
                max_depth: *max_depth,
                strategy: *strategy,
            },
            output.as_deref(),
            *stats,
        ),
        Cmd::Check { theory, tree } => check(theory, tree),
        Cmd::Debug {
            theory,
            tree,
            valuation,
            default,
        } => debug(theory, tree, valuation, *default),
        Cmd::Kam(KamCmd::Run {
            program,
            entry,
            fuel,
            trace,
            probe,
        }) => kam_run(program, entry, *fuel, *trace, probe),
        Cmd::Kam(KamCmd::Herbrand(a)) => kam_herbrand(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("herbrand: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
