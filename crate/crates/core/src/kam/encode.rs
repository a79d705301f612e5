//! Second-order constructor encodings, canonical values and the prelude.

use std::fmt;

use thiserror::Error;

use super::{parse_program, Program, Term};

/// `\p1..\pm. \a1..\aj. \e1..\en. e_k a1 .. aj`
pub fn encode_constructor(params: usize, args: usize, k: usize, n: usize) -> Term {
    assert!(1 <= k && k <= n, "constructor {k} of {n}");
    let ps = (1..=params).map(|i| format!("p{i}"));
    let xs: Vec<String> = (1..=args).map(|i| format!("a{i}")).collect();
    let es = (1..=n).map(|i| format!("e{i}"));
    let body = Term::apply(Term::var(&format!("e{k}")), xs.iter().map(|x| Term::var(x)));
    let binders: Vec<String> = ps.chain(xs.iter().cloned()).chain(es).collect();
    Term::lams(binders.iter().map(String::as_str), body)
}

/// Inductive types of the prelude: (constructor name, parameter count, argument count).
pub const DATATYPES: &[&[(&str, usize, usize)]] = &[
    &[("Bool.true", 0, 0), ("Bool.false", 0, 0)],
    &[("unit", 0, 0)],
    &[("Pair.mk", 0, 2)],
    &[("or_introl", 2, 1), ("or_intror", 2, 1)],
    &[("Nat.O", 0, 0), ("Nat.S", 0, 1)],
    &[("List.nil", 0, 0), ("List.cons", 0, 2)],
    &[("Term.num", 0, 1), ("Term.fun", 0, 2)],
    &[("Atom.mk", 0, 2)],
    &[("Index.mk", 0, 2)],
    &[("Trees.Contrad", 0, 1), ("Trees.Exp", 0, 3)],
];

const PRELUDE: &str = include_str!("prelude.lc");

/// Constructors, storage operators and the classical helpers.
pub fn prelude() -> Program {
    let mut prog = Program::new();
    for family in DATATYPES {
        for (k, (name, params, args)) in family.iter().enumerate() {
            prog.define(
                name,
                encode_constructor(*params, *args, k + 1, family.len()),
            )
            .expect("prelude constructor names are distinct");
        }
    }
    let rest = parse_program(PRELUDE).expect("prelude parses");
    prog.extend(rest).expect("prelude names are distinct");
    prog
}

/// Canonical encoding of a natural number.
pub fn nat_term(n: u64) -> Term {
    (0..n).fold(Term::reference("Nat.O"), |t, _| {
        Term::app(Term::reference("Nat.S"), t)
    })
}

/// A ground term over numbered function symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HTerm {
    Num(u64),
    Fun(u64, Vec<HTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HAtom {
    pub pred: u64,
    pub args: Vec<HTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HIndex {
    pub axiom: u64,
    pub args: Vec<HTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HTree {
    Contrad(HIndex),
    Exp(HAtom, Box<HTree>, Box<HTree>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Nat,
    Term,
    Atom,
    Index,
    Tree,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Nat, Kind::Term, Kind::Atom, Kind::Index, Kind::Tree];

    /// Name of the storage operator for this kind.
    pub fn storage_operator(self) -> &'static str {
        match self {
            Kind::Nat => "Mnat",
            Kind::Term => "Mterm",
            Kind::Atom => "Matom",
            Kind::Index => "Mindex",
            Kind::Tree => "Mtree",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Nat => "nat",
            Kind::Term => "term",
            Kind::Atom => "atom",
            Kind::Index => "index",
            Kind::Tree => "tree",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Nat(u64),
    Term(HTerm),
    Atom(HAtom),
    Index(HIndex),
    Tree(HTree),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Nat(_) => Kind::Nat,
            Value::Term(_) => Kind::Term,
            Value::Atom(_) => Kind::Atom,
            Value::Index(_) => Kind::Index,
            Value::Tree(_) => Kind::Tree,
        }
    }
}

/// The storage operator `M_kind` as a term.
pub fn storage_operator(kind: Kind) -> Term {
    Term::reference(kind.storage_operator())
}

fn cons(name: &str, args: Vec<Term>) -> Term {
    Term::apply(Term::reference(name), args)
}

fn list_term(items: Vec<Term>) -> Term {
    items
        .into_iter()
        .rev()
        .fold(Term::reference("List.nil"), |l, h| {
            cons("List.cons", vec![h, l])
        })
}

pub fn encode_term(t: &HTerm) -> Term {
    match t {
        HTerm::Num(n) => cons("Term.num", vec![nat_term(*n)]),
        HTerm::Fun(s, args) => cons(
            "Term.fun",
            vec![
                nat_term(*s),
                list_term(args.iter().map(encode_term).collect()),
            ],
        ),
    }
}

pub fn encode_atom(a: &HAtom) -> Term {
    cons(
        "Atom.mk",
        vec![
            nat_term(a.pred),
            list_term(a.args.iter().map(encode_term).collect()),
        ],
    )
}

pub fn encode_index(i: &HIndex) -> Term {
    cons(
        "Index.mk",
        vec![
            nat_term(i.axiom),
            list_term(i.args.iter().map(encode_term).collect()),
        ],
    )
}

pub fn encode_tree(t: &HTree) -> Term {
    match t {
        HTree::Contrad(i) => cons("Trees.Contrad", vec![encode_index(i)]),
        HTree::Exp(a, l, r) => cons(
            "Trees.Exp",
            vec![encode_atom(a), encode_tree(l), encode_tree(r)],
        ),
    }
}

/// Canonical encoding of a value.
pub fn encode(v: &Value) -> Term {
    match v {
        Value::Nat(n) => nat_term(*n),
        Value::Term(t) => encode_term(t),
        Value::Atom(a) => encode_atom(a),
        Value::Index(i) => encode_index(i),
        Value::Tree(t) => encode_tree(t),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not a canonical {kind}: {term}")]
pub struct DecodeError {
    pub kind: Kind,
    pub term: String,
}

fn fail<T>(kind: Kind, t: &Term) -> Result<T, DecodeError> {
    let mut term = t.to_string();
    if term.len() > 200 {
        let cut = (0..=200)
            .rev()
            .find(|&i| term.is_char_boundary(i))
            .unwrap_or(0);
        term.truncate(cut);
        term.push_str("...");
    }
    Err(DecodeError { kind, term })
}

/// Arguments of `t` if it is the constructor `name` fully applied.
fn match_cons<'t>(t: &'t Term, name: &str, arity: usize) -> Option<Vec<&'t Term>> {
    let (h, args) = t.spine();
    match h {
        Term::Ref(n) if &**n == name && args.len() == arity => Some(args),
        _ => None,
    }
}

pub fn decode_nat(t: &Term) -> Result<u64, DecodeError> {
    let mut n = 0u64;
    let mut cur = t;
    loop {
        if match_cons(cur, "Nat.O", 0).is_some() {
            return Ok(n);
        }
        match match_cons(cur, "Nat.S", 1) {
            Some(args) => {
                n += 1;
                cur = args[0];
            }
            None => return fail(Kind::Nat, t),
        }
    }
}

fn decode_list(t: &Term, kind: Kind) -> Result<Vec<&Term>, DecodeError> {
    let mut out = Vec::new();
    let mut cur = t;
    loop {
        if match_cons(cur, "List.nil", 0).is_some() {
            return Ok(out);
        }
        match match_cons(cur, "List.cons", 2) {
            Some(args) => {
                out.push(args[0]);
                cur = args[1];
            }
            None => return fail(kind, t),
        }
    }
}

pub fn decode_term(t: &Term) -> Result<HTerm, DecodeError> {
    if let Some(a) = match_cons(t, "Term.num", 1) {
        return Ok(HTerm::Num(
            decode_nat(a[0]).or_else(|_| fail(Kind::Term, t))?,
        ));
    }
    if let Some(a) = match_cons(t, "Term.fun", 2) {
        let s = decode_nat(a[0]).or_else(|_| fail(Kind::Term, t))?;
        let args = decode_list(a[1], Kind::Term)?
            .into_iter()
            .map(decode_term)
            .collect::<Result<_, _>>()?;
        return Ok(HTerm::Fun(s, args));
    }
    fail(Kind::Term, t)
}

fn decode_pair(t: &Term, name: &str, kind: Kind) -> Result<(u64, Vec<HTerm>), DecodeError> {
    let Some(a) = match_cons(t, name, 2) else {
        return fail(kind, t);
    };
    let id = decode_nat(a[0]).or_else(|_| fail(kind, t))?;
    let args = decode_list(a[1], kind)?
        .into_iter()
        .map(decode_term)
        .collect::<Result<_, _>>()?;
    Ok((id, args))
}

pub fn decode_atom(t: &Term) -> Result<HAtom, DecodeError> {
    let (pred, args) = decode_pair(t, "Atom.mk", Kind::Atom)?;
    Ok(HAtom { pred, args })
}

pub fn decode_index(t: &Term) -> Result<HIndex, DecodeError> {
    let (axiom, args) = decode_pair(t, "Index.mk", Kind::Index)?;
    Ok(HIndex { axiom, args })
}

pub fn decode_tree(t: &Term) -> Result<HTree, DecodeError> {
    if let Some(a) = match_cons(t, "Trees.Contrad", 1) {
        return Ok(HTree::Contrad(decode_index(a[0])?));
    }
    if let Some(a) = match_cons(t, "Trees.Exp", 3) {
        return Ok(HTree::Exp(
            decode_atom(a[0])?,
            Box::new(decode_tree(a[1])?),
            Box::new(decode_tree(a[2])?),
        ));
    }
    fail(Kind::Tree, t)
}

/// Decodes a canonical value of the given kind.
pub fn decode(kind: Kind, t: &Term) -> Result<Value, DecodeError> {
    Ok(match kind {
        Kind::Nat => Value::Nat(decode_nat(t)?),
        Kind::Term => Value::Term(decode_term(t)?),
        Kind::Atom => Value::Atom(decode_atom(t)?),
        Kind::Index => Value::Index(decode_index(t)?),
        Kind::Tree => Value::Tree(decode_tree(t)?),
    })
}
