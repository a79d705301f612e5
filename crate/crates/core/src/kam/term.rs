use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::logic::Name;

/// A λc term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(Name),
    App(Arc<Term>, Arc<Term>),
    Lam(Name, Arc<Term>),
    Callcc,
    /// A saved stack `k_π`.
    Cont(Stack),
    Instr(Name),
    /// The inert `.type` constant.
    TypeDummy,
    /// A reference to a program definition, unfolded on demand.
    Ref(Name),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.into())
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(x.into(), Arc::new(body))
    }

    /// `\x1. \x2. ... body`
    pub fn lams<'a, I: IntoIterator<Item = &'a str>>(xs: I, body: Term) -> Term {
        let xs: Vec<&str> = xs.into_iter().collect();
        xs.into_iter().rev().fold(body, |b, x| Term::lam(x, b))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// Left-nested application `f a1 ... an`.
    pub fn apply<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn reference(name: &str) -> Term {
        Term::Ref(name.into())
    }

    pub fn instr(name: &str) -> Term {
        Term::Instr(name.into())
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn free_vars(&self) -> HashSet<Name> {
        let mut out = HashSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut HashSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            _ => {}
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn has_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::App(f, a) => f.has_free(x) || a.has_free(x),
            Term::Lam(y, b) => &**y != x && b.has_free(x),
            _ => false,
        }
    }

    /// Capture-avoiding `self[u/x]`.
    pub fn subst(&self, x: &str, u: &Term) -> Term {
        let fv = u.free_vars();
        self.subst_in(x, u, &fv).unwrap_or_else(|| self.clone())
    }

    /// `self[u/x]` for closed `u`, where no capture can happen.
    pub fn subst_closed(&self, x: &str, u: &Term) -> Term {
        self.subst_in(x, u, &HashSet::new())
            .unwrap_or_else(|| self.clone())
    }

    // None when nothing changed, so unchanged subterms stay shared.
    fn subst_in(&self, x: &str, u: &Term, fv: &HashSet<Name>) -> Option<Term> {
        match self {
            Term::Var(y) if &**y == x => Some(u.clone()),
            Term::App(f, a) => {
                let f2 = f.subst_in(x, u, fv);
                let a2 = a.subst_in(x, u, fv);
                if f2.is_none() && a2.is_none() {
                    return None;
                }
                Some(Term::App(
                    f2.map(Arc::new).unwrap_or_else(|| f.clone()),
                    a2.map(Arc::new).unwrap_or_else(|| a.clone()),
                ))
            }
            Term::Lam(y, _) if &**y == x => None,
            Term::Lam(y, b) if fv.contains(y) && b.has_free(x) => {
                let mut avoid = fv.clone();
                avoid.extend(b.free_vars());
                let fresh = fresh_name(y, &avoid);
                let renamed = b.subst_closed(y, &Term::Var(fresh.clone()));
                let body = renamed.subst_in(x, u, fv).unwrap_or(renamed);
                Some(Term::Lam(fresh, Arc::new(body)))
            }
            Term::Lam(y, b) => b
                .subst_in(x, u, fv)
                .map(|b| Term::Lam(y.clone(), Arc::new(b))),
            _ => None,
        }
    }
}

fn fresh_name(base: &str, avoid: &HashSet<Name>) -> Name {
    let mut name = format!("{base}'");
    while avoid.contains(name.as_str()) {
        name.push('\'');
    }
    name.into()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Instr(x) | Term::Ref(x) => f.write_str(x),
            Term::Lam(x, b) => write!(f, "\\{x}. {b}"),
            Term::App(g, a) => {
                match &**g {
                    Term::Lam(..) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
                match &**a {
                    Term::Lam(..) | Term::App(..) => write!(f, " ({a})"),
                    _ => write!(f, " {a}"),
                }
            }
            Term::Callcc => f.write_str("callcc"),
            Term::Cont(s) => write!(f, "k[{}]", s.len()),
            Term::TypeDummy => f.write_str(".type"),
        }
    }
}

#[derive(Debug)]
struct Cell {
    head: Term,
    tail: Stack,
    len: usize,
}

/// A persistent stack of closed terms over the single bottom `nil`.
#[derive(Clone, Debug, Default)]
pub struct Stack(Option<Arc<Cell>>);

impl Stack {
    pub fn nil() -> Stack {
        Stack(None)
    }

    /// Builds `t1 · t2 · ... · nil` with `t1` on top.
    pub fn from_terms<I>(terms: I) -> Stack
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        terms.into_iter().rev().fold(Stack::nil(), |s, t| s.push(t))
    }

    pub fn push(&self, t: Term) -> Stack {
        Stack(Some(Arc::new(Cell {
            head: t,
            tail: self.clone(),
            len: self.len() + 1,
        })))
    }

    pub fn pop(&self) -> Option<(&Term, &Stack)> {
        self.0.as_ref().map(|c| (&c.head, &c.tail))
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |c| c.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        let mut cur = self;
        std::iter::from_fn(move || {
            let (t, rest) = cur.pop()?;
            cur = rest;
            Some(t)
        })
    }

    /// The top `n` terms and the rest, if the stack is deep enough.
    pub fn take(&self, n: usize) -> Option<(Vec<&Term>, &Stack)> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self;
        for _ in 0..n {
            let (t, rest) = cur.pop()?;
            out.push(t);
            cur = rest;
        }
        Some((out, cur))
    }
}

impl PartialEq for Stack {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) if Arc::ptr_eq(a, b) => true,
            _ => self.len() == other.len() && self.iter().eq(other.iter()),
        }
    }
}

impl Eq for Stack {}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.iter() {
            match t {
                Term::App(..) | Term::Lam(..) => write!(f, "({t}) · ")?,
                _ => write!(f, "{t} · ")?,
            }
        }
        f.write_str("nil")
    }
}

/// `head ⋆ stack`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub head: Term,
    pub stack: Stack,
}

impl Process {
    pub fn new(head: Term, stack: Stack) -> Process {
        Process { head, stack }
    }

    pub fn on_nil(head: Term) -> Process {
        Process::new(head, Stack::nil())
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⋆ {}", self.head, self.stack)
    }
}
