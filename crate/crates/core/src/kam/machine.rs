use std::fmt;

use super::{Env, Process, Stack, Term};
use crate::logic::Name;

/// The rule that fired in one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Grab,
    Push,
    Save,
    Restore,
    /// Unfolding a definition reference in head position.
    Deref,
    Instr(Name),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Grab => f.write_str("Grab"),
            Rule::Push => f.write_str("Push"),
            Rule::Save => f.write_str("Save"),
            Rule::Restore => f.write_str("Restore"),
            Rule::Deref => f.write_str("Deref"),
            Rule::Instr(n) => write!(f, "Instr {n}"),
        }
    }
}

/// What an instruction handler does with `name ⋆ stack`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transition {
    Continue(Process),
    Halt(Term),
    /// Not enough arguments, or otherwise no rule applies.
    Stuck(String),
    /// The instruction rejected its arguments.
    Fault(String),
}

/// Extra instructions plugged into the machine.
pub trait Handler {
    fn is_instruction(&self, name: &str) -> bool;
    fn exec(&mut self, name: &str, stack: &Stack) -> Transition;
}

impl<H: Handler + ?Sized> Handler for &mut H {
    fn is_instruction(&self, name: &str) -> bool {
        (**self).is_instruction(name)
    }

    fn exec(&mut self, name: &str, stack: &Stack) -> Transition {
        (**self).exec(name, stack)
    }
}

/// No extra instructions at all.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoInstructions;

impl Handler for NoInstructions {
    fn is_instruction(&self, _: &str) -> bool {
        false
    }

    fn exec(&mut self, name: &str, _: &Stack) -> Transition {
        Transition::Stuck(format!("unknown instruction `{name}`"))
    }
}

/// `stop`, `print` and optional probes.
///
/// `stop ⋆ v·π` and `print ⋆ v·π` halt with `v`; a probe `p ⋆ t·π` records
/// its name and continues as `t ⋆ π`.
#[derive(Clone, Debug, Default)]
pub struct StdInstructions {
    probes: Vec<Name>,
    pub visits: Vec<Name>,
    pub printed: Vec<String>,
}

impl StdInstructions {
    pub fn new() -> StdInstructions {
        StdInstructions::default()
    }

    pub fn with_probes<'a, I: IntoIterator<Item = &'a str>>(probes: I) -> StdInstructions {
        StdInstructions {
            probes: probes.into_iter().map(Name::from).collect(),
            ..StdInstructions::default()
        }
    }
}

impl Handler for StdInstructions {
    fn is_instruction(&self, name: &str) -> bool {
        matches!(name, "stop" | "print") || self.probes.iter().any(|p| &**p == name)
    }

    fn exec(&mut self, name: &str, stack: &Stack) -> Transition {
        let Some((arg, rest)) = stack.pop() else {
            return Transition::Stuck(format!("`{name}` needs an argument"));
        };
        match name {
            "stop" => Transition::Halt(arg.clone()),
            "print" => {
                self.printed.push(arg.to_string());
                Transition::Halt(arg.clone())
            }
            _ if self.is_instruction(name) => {
                self.visits.push(name.into());
                Transition::Continue(Process::new(arg.clone(), rest.clone()))
            }
            _ => Transition::Stuck(format!("unknown instruction `{name}`")),
        }
    }
}

/// Result of one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Next(Rule, Process),
    Halt(Rule, Term),
    Stuck(String),
    Fault(String),
}

/// Performs one machine step.
pub fn step<H: Handler + ?Sized>(env: &Env, handler: &mut H, p: &Process) -> Step {
    let stack = &p.stack;
    match &p.head {
        Term::Lam(x, body) => match stack.pop() {
            Some((u, rest)) => Step::Next(
                Rule::Grab,
                Process::new(body.subst_closed(x, u), rest.clone()),
            ),
            None => Step::Stuck("abstraction on an empty stack".into()),
        },
        Term::App(t, u) => Step::Next(
            Rule::Push,
            Process::new((**t).clone(), stack.push((**u).clone())),
        ),
        Term::Callcc => match stack.pop() {
            Some((t, rest)) => Step::Next(
                Rule::Save,
                Process::new(t.clone(), rest.push(Term::Cont(rest.clone()))),
            ),
            None => Step::Stuck("callcc on an empty stack".into()),
        },
        Term::Cont(saved) => match stack.pop() {
            Some((t, _)) => Step::Next(Rule::Restore, Process::new(t.clone(), saved.clone())),
            None => Step::Stuck("continuation on an empty stack".into()),
        },
        Term::Ref(name) => match env.get(name) {
            Some(body) => Step::Next(Rule::Deref, Process::new(body.clone(), stack.clone())),
            None => Step::Stuck(format!("undefined reference `{name}`")),
        },
        Term::Instr(name) => {
            if !handler.is_instruction(name) {
                return Step::Stuck(format!("unknown instruction `{name}`"));
            }
            let rule = Rule::Instr(name.clone());
            match handler.exec(name, stack) {
                Transition::Continue(next) => Step::Next(rule, next),
                Transition::Halt(v) => Step::Halt(rule, v),
                Transition::Stuck(r) => Step::Stuck(r),
                Transition::Fault(m) => Step::Fault(m),
            }
        }
        Term::TypeDummy => Step::Stuck(".type in head position".into()),
        Term::Var(x) => Step::Stuck(format!("free variable `{x}` in head position")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Halted(Term),
    Stuck { process: Process, reason: String },
    Fault { process: Process, message: String },
    FuelExhausted(Process),
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: Outcome,
    pub steps: u64,
    /// One line per step when tracing is on.
    pub trace: Vec<String>,
}

/// A machine over linked definitions with an instruction handler.
pub struct Machine<'e, H> {
    env: &'e Env,
    pub handler: H,
    trace: bool,
}

fn shorten(s: String, max: usize) -> String {
    if s.chars().count() <= max {
        return s;
    }
    let mut out: String = s.chars().take(max).collect();
    out.push_str("...");
    out
}

impl<'e, H: Handler> Machine<'e, H> {
    pub fn new(env: &'e Env, handler: H) -> Self {
        Machine {
            env,
            handler,
            trace: false,
        }
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    /// Runs until halt, stuck, fault, or `fuel` steps.
    pub fn run(&mut self, mut p: Process, fuel: u64) -> RunResult {
        let mut steps = 0u64;
        let mut trace = Vec::new();
        loop {
            if steps >= fuel {
                return RunResult {
                    outcome: Outcome::FuelExhausted(p),
                    steps,
                    trace,
                };
            }
            let s = step(self.env, &mut self.handler, &p);
            let rule = match &s {
                Step::Next(r, _) | Step::Halt(r, _) => Some(r.clone()),
                _ => None,
            };
            if let (true, Some(r)) = (self.trace, &rule) {
                trace.push(format!(
                    "step {}: {r} | {} | {}",
                    steps + 1,
                    shorten(p.head.to_string(), 72),
                    p.stack.len()
                ));
            }
            let outcome = match s {
                Step::Next(_, next) => {
                    steps += 1;
                    p = next;
                    continue;
                }
                Step::Halt(_, v) => {
                    steps += 1;
                    Outcome::Halted(v)
                }
                Step::Stuck(reason) => Outcome::Stuck { process: p, reason },
                Step::Fault(message) => {
                    steps += 1;
                    Outcome::Fault {
                        process: p,
                        message,
                    }
                }
            };
            return RunResult {
                outcome,
                steps,
                trace,
            };
        }
    }
}
