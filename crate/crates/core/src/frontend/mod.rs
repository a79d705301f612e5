//! Finite universal theories: parsing, Herbrand universe enumeration and
//! compilation to a [`GroundTheory`](crate::logic::GroundTheory).

mod enumerate;
mod parse;
mod theory;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::logic::Name;

pub use enumerate::TermEnumerator;
pub use parse::parse_theory;
pub use theory::Theory;

/// A function symbol; constants have arity zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunSymbol {
    pub name: Name,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredSymbol {
    pub name: Name,
    pub arity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolRef {
    Fun(usize),
    Pred(usize),
}

/// Constant, function and predicate symbols in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    funs: Vec<FunSymbol>,
    preds: Vec<PredSymbol>,
    /// When numerals are enabled: how many function symbols were declared
    /// before `option numerals`, which fixes the family's place in tie-breaks.
    numerals: Option<usize>,
    #[doc(hidden)]
    by_name: HashMap<Name, SymbolRef>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_fun(&mut self, name: &str, arity: usize) -> Result<usize, ErrorKind> {
        self.check_fresh(name)?;
        let id = self.funs.len();
        self.funs.push(FunSymbol {
            name: name.into(),
            arity,
        });
        self.by_name.insert(name.into(), SymbolRef::Fun(id));
        Ok(id)
    }

    pub fn add_const(&mut self, name: &str) -> Result<usize, ErrorKind> {
        self.add_fun(name, 0)
    }

    pub fn add_pred(&mut self, name: &str, arity: usize) -> Result<usize, ErrorKind> {
        self.check_fresh(name)?;
        let id = self.preds.len();
        self.preds.push(PredSymbol {
            name: name.into(),
            arity,
        });
        self.by_name.insert(name.into(), SymbolRef::Pred(id));
        Ok(id)
    }

    pub fn enable_numerals(&mut self) {
        if self.numerals.is_none() {
            self.numerals = Some(self.funs.len());
        }
    }

    fn check_fresh(&self, name: &str) -> Result<(), ErrorKind> {
        if self.by_name.contains_key(name) {
            Err(ErrorKind::Duplicate(name.to_string()))
        } else {
            Ok(())
        }
    }

    pub fn funs(&self) -> &[FunSymbol] {
        &self.funs
    }

    pub fn preds(&self) -> &[PredSymbol] {
        &self.preds
    }

    pub fn numerals(&self) -> bool {
        self.numerals.is_some()
    }

    pub(crate) fn numerals_slot(&self) -> Option<usize> {
        self.numerals
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolRef> {
        self.by_name.get(name).copied()
    }

    pub fn fun_id(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some(SymbolRef::Fun(id)) => Some(id),
            _ => None,
        }
    }

    pub fn pred_id(&self, name: &str) -> Option<usize> {
        match self.lookup(name) {
            Some(SymbolRef::Pred(id)) => Some(id),
            _ => None,
        }
    }

    /// Whether the Herbrand universe has at least one element.
    pub fn has_terms(&self) -> bool {
        self.numerals.is_some() || self.funs.iter().any(|f| f.arity == 0)
    }
}

/// A term pattern inside an axiom body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PTerm {
    /// A universally bound variable, by position in the axiom's binder list.
    Var(usize),
    Num(u64),
    Fn(usize, Vec<PTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAtom {
    pub pred: usize,
    pub args: Vec<PTerm>,
}

/// A quantifier-free axiom body with `->` and `<->` already desugared.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(PAtom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    /// Atomic patterns in left-to-right order, duplicates included.
    pub fn atoms(&self) -> Vec<&PAtom> {
        let mut out = Vec::new();
        let mut todo = vec![self];
        while let Some(f) = todo.pop() {
            match f {
                Formula::Atom(a) => out.push(a),
                Formula::Not(f) => todo.push(f),
                Formula::And(l, r) | Formula::Or(l, r) => {
                    todo.push(r);
                    todo.push(l);
                }
            }
        }
        out
    }
}

/// `axiom name: forall x1 .. xk. body;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub name: Name,
    pub vars: Vec<Name>,
    pub body: Formula,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheorySpec {
    pub signature: Signature,
    pub axioms: Vec<AxiomSchema>,
}

impl TheorySpec {
    pub fn axiom(&self, name: &str) -> Option<(usize, &AxiomSchema)> {
        self.axioms
            .iter()
            .enumerate()
            .find(|(_, a)| &*a.name == name)
    }

    /// Renders a formula back into theory-file syntax.
    pub fn show_formula(&self, ax: &AxiomSchema, f: &Formula) -> String {
        let mut s = String::new();
        self.write_formula(&mut s, ax, f);
        s
    }

    fn write_formula(&self, s: &mut String, ax: &AxiomSchema, f: &Formula) {
        match f {
            Formula::Atom(a) => {
                s.push_str(&self.signature.preds[a.pred].name);
                if !a.args.is_empty() {
                    s.push('(');
                    for (k, t) in a.args.iter().enumerate() {
                        if k > 0 {
                            s.push(',');
                        }
                        self.write_pterm(s, ax, t);
                    }
                    s.push(')');
                }
            }
            Formula::Not(f) => {
                s.push('~');
                self.write_formula(s, ax, f);
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                s.push('(');
                self.write_formula(s, ax, l);
                s.push_str(if matches!(f, Formula::And(..)) {
                    " /\\ "
                } else {
                    " \\/ "
                });
                self.write_formula(s, ax, r);
                s.push(')');
            }
        }
    }

    fn write_pterm(&self, s: &mut String, ax: &AxiomSchema, t: &PTerm) {
        match t {
            PTerm::Var(v) => s.push_str(&ax.vars[*v]),
            PTerm::Num(n) => s.push_str(&n.to_string()),
            PTerm::Fn(id, args) => {
                s.push_str(&self.signature.funs[*id].name);
                if !args.is_empty() {
                    s.push('(');
                    for (k, t) in args.iter().enumerate() {
                        if k > 0 {
                            s.push(',');
                        }
                        self.write_pterm(s, ax, t);
                    }
                    s.push(')');
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("`{0}` is declared twice")]
    Duplicate(String),
    #[error("numeric literals are not enabled (add `option numerals;`)")]
    NumeralsDisabled,
    #[error("axiom `{0}` has variables but the Herbrand universe is empty")]
    EmptyUniverse(String),
}

/// A theory-file error with its source location (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("a theory with no axioms cannot be contradictory")]
    EmptyTheory,
    #[error("the Herbrand universe is empty")]
    EmptyUniverse,
    #[error("rank {0} is past the end of a finite enumeration")]
    OutOfRange(u64),
    #[error("{0} is not an index of this theory")]
    InvalidIndex(String),
}
