//! A Krivine machine that explores every atom interpretation of a
//! contradiction proof and records the exploration as a Herbrand tree.
//!
//! Extra instructions (with `K` the knowledge base above the working node):
//!
//! - `test a u1 u2 ⋆ π`: `u1 ⋆ π` if `a` is true in `K`, `u2 ⋆ π` if false;
//!   otherwise freezes `u1 ⋆ π` as the true branch and goes on with `u2 ⋆ π`;
//! - `contradict t ⋆ π`: closes the branch with leaf `t` and resumes the
//!   leftmost frozen process, or behaves as `finish ⋆ π`;
//! - `finish ⋆ π`: `c ⋆ t̂ · π` with `c` the stored continuation;
//! - `save c k ⋆ π`: stores `c`, then `k ⋆ π`;
//! - `reset k ⋆ π`: clears the tree, then `k ⋆ π`.

mod codec;
mod realizer;
mod zipper;

use std::fmt;

use thiserror::Error;

use crate::frontend::Theory;
use crate::kam::{
    decode_atom, decode_index, decode_tree, encode_tree, prelude, Handler, Machine, Outcome,
    Process, Program, ProgramError, Stack, Term, Transition,
};
use crate::logic::{htree_check, Atom, HerbrandTree, Truth, Violation};

pub use codec::{
    atom_to_host, host_to_atom, host_to_index, host_to_term, host_to_tree, index_to_host,
    term_to_host, tree_to_host,
};
pub use realizer::{axiom_realizer, compound_realizer, schema_realizer, theory_program};
pub use zipper::{PTree, Zipper};

/// Instruction names reserved by the scheduler machine.
pub const INSTRUCTIONS: [&str; 7] = [
    "test",
    "contradict",
    "reset",
    "finish",
    "save",
    "stop",
    "print",
];

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchedStats {
    pub tests: u64,
    /// Tests answered from the knowledge base.
    pub tests_known: u64,
    pub frozen_created: u64,
    pub thawed: u64,
    pub contradictions: u64,
}

/// One `test` as seen by the running process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestEvent {
    /// Knowledge base before the test, root first.
    pub kb: Vec<(Atom, bool)>,
    pub atom: Atom,
    /// The branch the process continued on.
    pub value: bool,
    /// Whether the test created a new branch point.
    pub fresh: bool,
}

/// Scheduler instructions over the `zipper` and `cont` stores.
pub struct SchedHandler<'t> {
    th: &'t Theory,
    zipper: Zipper,
    cont: Option<Term>,
    pub stats: SchedStats,
    pub audit: Vec<TestEvent>,
    pub printed: Vec<String>,
}

impl<'t> SchedHandler<'t> {
    pub fn new(th: &'t Theory) -> Self {
        SchedHandler {
            th,
            zipper: Zipper::new(),
            cont: None,
            stats: SchedStats::default(),
            audit: Vec::new(),
            printed: Vec::new(),
        }
    }

    pub fn zipper(&self) -> &Zipper {
        &self.zipper
    }

    pub fn cont(&self) -> Option<&Term> {
        self.cont.as_ref()
    }

    fn fault(&self, msg: String) -> Transition {
        Transition::Fault(format!("{msg}; tree so far: {}", self.zipper))
    }

    fn test(&mut self, a: &Term, u1: &Term, u2: &Term, rest: &Stack) -> Transition {
        let atom = match decode_atom(a)
            .map_err(|e| e.to_string())
            .and_then(|h| host_to_atom(self.th, &h))
        {
            Ok(atom) => atom,
            Err(e) => return self.fault(format!("test: {e}")),
        };
        self.stats.tests += 1;
        let kb = self.zipper.kb().to_assignment();
        let (value, fresh) = match self.zipper.find(&atom) {
            Truth::True => (true, false),
            Truth::False => (false, false),
            Truth::Unknown => {
                self.zipper
                    .branch(atom.clone(), Process::new(u1.clone(), rest.clone()));
                self.stats.frozen_created += 1;
                (false, true)
            }
        };
        if !fresh {
            self.stats.tests_known += 1;
        }
        self.audit.push(TestEvent {
            kb,
            atom,
            value,
            fresh,
        });
        let next = if value { u1 } else { u2 };
        Transition::Continue(Process::new(next.clone(), rest.clone()))
    }

    fn contradict(&mut self, t: &Term, rest: &Stack) -> Transition {
        let index = match decode_index(t)
            .map_err(|e| e.to_string())
            .and_then(|h| host_to_index(self.th, &h))
        {
            Ok(i) => i,
            Err(e) => return self.fault(format!("contradict: {e}")),
        };
        self.stats.contradictions += 1;
        match self.zipper.seal(index) {
            Some(p) => {
                self.stats.thawed += 1;
                Transition::Continue(p)
            }
            None => self.finish(rest),
        }
    }

    fn finish(&mut self, rest: &Stack) -> Transition {
        let Some(c) = self.cont.clone() else {
            return self.fault("finish: the continuation store is empty".into());
        };
        let Some(tree) = self.zipper.root().to_tree() else {
            return self.fault("finish: the tree is not complete".into());
        };
        let host = tree_to_host(self.th, &tree).expect("theory trees encode");
        Transition::Continue(Process::new(c, rest.push(encode_tree(&host))))
    }
}

impl Handler for SchedHandler<'_> {
    fn is_instruction(&self, name: &str) -> bool {
        INSTRUCTIONS.contains(&name)
    }

    fn exec(&mut self, name: &str, stack: &Stack) -> Transition {
        let arity = match name {
            "test" => 3,
            "save" => 2,
            "finish" => 0,
            _ => 1,
        };
        let Some((args, rest)) = stack.take(arity) else {
            return Transition::Stuck(format!("`{name}` needs {arity} argument(s)"));
        };
        match name {
            "test" => self.test(args[0], args[1], args[2], rest),
            "contradict" => self.contradict(args[0], rest),
            "finish" => self.finish(rest),
            "save" => {
                self.cont = Some(args[0].clone());
                Transition::Continue(Process::new(args[1].clone(), rest.clone()))
            }
            "reset" => {
                self.zipper = Zipper::new();
                Transition::Continue(Process::new(args[0].clone(), rest.clone()))
            }
            "stop" => Transition::Halt(args[0].clone()),
            "print" => {
                self.printed.push(args[0].to_string());
                Transition::Halt(args[0].clone())
            }
            _ => Transition::Stuck(format!("unknown instruction `{name}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchedError {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("fuel exhausted after {steps} steps; tree so far: {tree}")]
    Fuel { steps: u64, tree: String },
    #[error("machine stuck after {steps} steps: {reason}; tree so far: {tree}")]
    Stuck {
        steps: u64,
        reason: String,
        tree: String,
    },
    #[error("instruction failed after {steps} steps: {message}")]
    Fault { steps: u64, message: String },
    #[error("the run halted with a value that is not a tree: {0}")]
    NotATree(String),
    #[error("the halted tree differs from the tree store")]
    Mismatch,
    #[error("the computed tree is not a Herbrand tree: {0}")]
    Check(Violation),
}

/// A completed scheduler run.
#[derive(Clone, Debug)]
pub struct SchedRun {
    pub tree: HerbrandTree,
    pub steps: u64,
    pub stats: SchedStats,
    pub audit: Vec<TestEvent>,
    pub trace: Vec<String>,
}

impl fmt::Display for SchedStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tests {} ({} known), frozen {}, thawed {}, contradictions {}",
            self.tests, self.tests_known, self.frozen_created, self.thawed, self.contradictions
        )
    }
}

/// Prelude, axiom realizers and `proof`, ready to link.
pub fn herbrand_program(th: &Theory, proof: Program) -> Result<Program, ProgramError> {
    let mut prog = prelude();
    prog.extend(theory_program(th))?;
    prog.extend(proof)?;
    Ok(prog)
}

/// Runs `eval_tree <entry> stop` and returns the checked tree.
pub fn run_herbrand(
    th: &Theory,
    proof: Program,
    entry: &str,
    fuel: u64,
    trace: bool,
) -> Result<SchedRun, SchedError> {
    let prog = herbrand_program(th, proof)?;
    if !prog.contains(entry) {
        return Err(ProgramError::Unresolved {
            name: entry.to_string(),
            context: "the proof entry point".to_string(),
        }
        .into());
    }
    let main = Term::apply(
        Term::var("eval_tree"),
        [Term::var(entry), Term::var("stop")],
    );
    let (head, env) = prog.link_term(&main, &|n| INSTRUCTIONS.contains(&n))?;
    let mut m = Machine::new(&env, SchedHandler::new(th)).with_trace(trace);
    let r = m.run(Process::on_nil(head), fuel);
    let h = m.handler;
    let value = match r.outcome {
        Outcome::Halted(v) => v,
        Outcome::FuelExhausted(_) => {
            return Err(SchedError::Fuel {
                steps: r.steps,
                tree: h.zipper.to_string(),
            })
        }
        Outcome::Stuck { reason, .. } => {
            return Err(SchedError::Stuck {
                steps: r.steps,
                reason,
                tree: h.zipper.to_string(),
            })
        }
        Outcome::Fault { message, .. } => {
            return Err(SchedError::Fault {
                steps: r.steps,
                message,
            })
        }
    };
    let tree = decode_tree(&value)
        .map_err(|e| e.to_string())
        .and_then(|t| host_to_tree(th, &t))
        .map_err(SchedError::NotATree)?;
    if h.zipper.root().to_tree().as_ref() != Some(&tree) {
        return Err(SchedError::Mismatch);
    }
    htree_check(th, &tree).map_err(SchedError::Check)?;
    Ok(SchedRun {
        tree,
        steps: r.steps,
        stats: h.stats,
        audit: h.audit,
        trace: r.trace,
    })
}
