//! The λc-calculus and the Krivine abstract machine.

mod encode;
mod machine;
mod parse;
mod term;
mod witness;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::logic::Name;

pub use encode::{
    decode, decode_atom, decode_index, decode_nat, decode_term, decode_tree, encode, encode_atom,
    encode_constructor, encode_index, encode_term, encode_tree, nat_term, prelude,
    storage_operator, DecodeError, HAtom, HIndex, HTerm, HTree, Kind, Value, DATATYPES,
};
pub use machine::{
    step, Handler, Machine, NoInstructions, Outcome, Rule, RunResult, StdInstructions, Step,
    Transition,
};
pub use parse::{parse_program, parse_term};
pub use term::{Process, Stack, Term};
pub use witness::{extract_witness, WitnessError, WITNESS_CONTINUATION};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("`{0}` is defined twice")]
    Duplicate(String),
    #[error("override for undefined name `{0}`")]
    UnknownOverride(String),
    #[error("unresolved name `{name}` in {context}")]
    Unresolved { name: String, context: String },
}

/// Definitions in file order plus substitution overrides.
#[derive(Clone, Debug, Default)]
pub struct Program {
    defs: Vec<(Name, Term)>,
    index: HashMap<Name, usize>,
    overrides: HashMap<Name, Term>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    pub fn define(&mut self, name: &str, body: Term) -> Result<(), ProgramError> {
        if self.index.contains_key(name) {
            return Err(ProgramError::Duplicate(name.to_string()));
        }
        self.index.insert(name.into(), self.defs.len());
        self.defs.push((name.into(), body));
        Ok(())
    }

    /// Appends every definition of `other`.
    pub fn extend(&mut self, other: Program) -> Result<(), ProgramError> {
        for (name, body) in other.defs {
            self.define(&name, body)?;
        }
        for (name, body) in other.overrides {
            self.set_override(&name, body)?;
        }
        Ok(())
    }

    /// Replaces the body of an existing definition when linking.
    pub fn set_override(&mut self, name: &str, body: Term) -> Result<(), ProgramError> {
        if !self.index.contains_key(name) {
            return Err(ProgramError::UnknownOverride(name.to_string()));
        }
        self.overrides.insert(name.into(), body);
        Ok(())
    }

    /// The body used at link time.
    pub fn get(&self, name: &str) -> Option<&Term> {
        self.overrides
            .get(name)
            .or_else(|| self.index.get(name).map(|&i| &self.defs[i].1))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|(n, _)| &**n)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Turns free names into definition references or instructions.
    fn resolve(
        &self,
        t: &Term,
        bound: &mut Vec<Name>,
        is_instr: &dyn Fn(&str) -> bool,
        context: &str,
        refs: &mut Vec<Name>,
    ) -> Result<Term, ProgramError> {
        Ok(match t {
            Term::Var(x) if bound.contains(x) => t.clone(),
            Term::Var(x) | Term::Ref(x) if self.contains(x) => {
                refs.push(x.clone());
                Term::Ref(x.clone())
            }
            Term::Var(x) if is_instr(x) => Term::Instr(x.clone()),
            Term::Var(x) | Term::Ref(x) => {
                return Err(ProgramError::Unresolved {
                    name: x.to_string(),
                    context: context.to_string(),
                })
            }
            Term::App(f, a) => Term::App(
                Arc::new(self.resolve(f, bound, is_instr, context, refs)?),
                Arc::new(self.resolve(a, bound, is_instr, context, refs)?),
            ),
            Term::Lam(x, b) => {
                bound.push(x.clone());
                let b = self.resolve(b, bound, is_instr, context, refs);
                bound.pop();
                Term::Lam(x.clone(), Arc::new(b?))
            }
            _ => t.clone(),
        })
    }

    /// Resolves `entry` and every definition reachable from it.
    pub fn link_term(
        &self,
        entry: &Term,
        is_instr: &dyn Fn(&str) -> bool,
    ) -> Result<(Term, Env), ProgramError> {
        let mut refs = Vec::new();
        let head = self.resolve(
            entry,
            &mut Vec::new(),
            is_instr,
            "the entry term",
            &mut refs,
        )?;
        let mut defs = HashMap::new();
        let mut seen: HashSet<Name> = HashSet::new();
        let mut todo: VecDeque<Name> = refs.into();
        while let Some(name) = todo.pop_front() {
            if !seen.insert(name.clone()) {
                continue;
            }
            let body = self.get(&name).expect("resolved names are defined");
            let mut refs = Vec::new();
            let ctx = format!("definition `{name}`");
            let linked = self.resolve(body, &mut Vec::new(), is_instr, &ctx, &mut refs)?;
            todo.extend(refs);
            defs.insert(name, linked);
        }
        Ok((head, Env { defs }))
    }

    /// Links from a named entry definition.
    pub fn link(
        &self,
        entry: &str,
        is_instr: &dyn Fn(&str) -> bool,
    ) -> Result<(Term, Env), ProgramError> {
        if !self.contains(entry) {
            return Err(ProgramError::Unresolved {
                name: entry.to_string(),
                context: "the entry point".to_string(),
            });
        }
        self.link_term(&Term::var(entry), is_instr)
    }
}

/// Linked definitions, as seen by the machine.
#[derive(Clone, Debug, Default)]
pub struct Env {
    defs: HashMap<Name, Term>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Term> {
        self.defs.get(name)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_resolves_references_and_instructions() {
        let p =
            parse_program("Define a = \\x. b x stop ;; Define b = \\y. y ;; Define unused = zz ;;")
                .unwrap();
        let (head, env) = p.link("a", &|n| n == "stop").unwrap();
        assert_eq!(head, Term::reference("a"));
        assert_eq!(env.len(), 2);
        assert_eq!(
            env.get("a").unwrap(),
            &Term::lam(
                "x",
                Term::apply(Term::reference("b"), [Term::var("x"), Term::instr("stop")])
            )
        );
    }

    #[test]
    fn unresolved_reference_is_a_link_error() {
        let p = parse_program("Define a = b ;;").unwrap();
        assert_eq!(
            p.link("a", &|_| false).unwrap_err(),
            ProgramError::Unresolved {
                name: "b".into(),
                context: "definition `a`".into()
            }
        );
        assert!(p.link("nope", &|_| false).is_err());
    }

    #[test]
    fn overrides_replace_bodies() {
        let mut p =
            parse_program("Define slow = \\x. (\\y. y) x ;; Define main = slow ;;").unwrap();
        p.set_override("slow", Term::lam("x", Term::var("x")))
            .unwrap();
        let (_, env) = p.link("main", &|_| false).unwrap();
        assert_eq!(env.get("slow"), Some(&Term::lam("x", Term::var("x"))));
        assert!(p.set_override("fast", Term::TypeDummy).is_err());
    }

    #[test]
    fn extend_rejects_duplicates() {
        let mut p = prelude();
        let q = parse_program("Define Mnat = \\x. x ;;").unwrap();
        assert_eq!(
            p.extend(q).unwrap_err(),
            ProgramError::Duplicate("Mnat".into())
        );
    }
}
