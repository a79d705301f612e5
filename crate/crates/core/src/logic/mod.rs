//! Ground atoms, axiom instances, quantifier-free compounds and Herbrand trees.
//!
//! Everything here is theory-agnostic: a theory is anything implementing
//! [`GroundTheory`], which maps indices (axiom instances) to compounds.

mod check;
mod eval;
mod order;

use std::fmt;
use std::sync::Arc;

pub use check::{htree_check, Violation, ViolationKind};
pub use eval::{atoms_of, eval, find, peval};
pub use order::{pair_pred, pairs_up_to, AtomPair, OrderError};

/// Symbol names are shared, immutable strings.
pub type Name = Arc<str>;

/// A ground term of the Herbrand universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Numeric literal, an element of the infinite numeral constant family.
    Num(u64),
    /// Function application; constants are applications with no arguments.
    Fn(Name, Vec<Term>),
}

impl Term {
    pub fn constant(name: &str) -> Term {
        Term::Fn(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::Fn(name.into(), args)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Num(n) => write!(f, "{n}"),
            Term::Fn(name, args) => {
                f.write_str(name)?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (k, a) in args.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

#[derive(Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct AtomData {
    pred: Name,
    args: Vec<Term>,
}

/// A ground atomic formula `P(t1, ..., tn)`.
///
/// Cheap to clone; equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<AtomData>);

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom(Arc::new(AtomData {
            pred: pred.into(),
            args,
        }))
    }

    /// A nullary atom such as `Q`.
    pub fn prop(pred: &str) -> Atom {
        Atom::new(pred, Vec::new())
    }

    pub fn pred(&self) -> &str {
        &self.0.pred
    }

    pub fn args(&self) -> &[Term] {
        &self.0.args
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.pred)?;
        write_args(f, &self.0.args)
    }
}

#[derive(Debug)]
struct IndexData {
    axiom: usize,
    name: Name,
    args: Vec<Term>,
    rank: u64,
}

/// An axiom instance: the axiom's position and name plus the ground terms
/// substituted for its universal variables.
///
/// The rank is the index's position in its theory's enumeration; indices are
/// ordered by rank. Equality ignores the rank (it is determined by the other
/// fields for indices coming from the same theory).
#[derive(Clone, Debug)]
pub struct Index(Arc<IndexData>);

impl Index {
    pub fn new(axiom: usize, name: &str, args: Vec<Term>, rank: u64) -> Index {
        Index(Arc::new(IndexData {
            axiom,
            name: name.into(),
            args,
            rank,
        }))
    }

    pub fn axiom(&self) -> usize {
        self.0.axiom
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn args(&self) -> &[Term] {
        &self.0.args
    }

    pub fn rank(&self) -> u64 {
        self.0.rank
    }
}

impl PartialEq for Index {
    fn eq(&self, other: &Self) -> bool {
        self.0.axiom == other.0.axiom && self.0.args == other.0.args
    }
}

impl Eq for Index {}

impl std::hash::Hash for Index {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.axiom.hash(state);
        self.0.args.hash(state);
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .rank
            .cmp(&other.0.rank)
            .then_with(|| self.0.axiom.cmp(&other.0.axiom))
            .then_with(|| self.0.args.cmp(&other.0.args))
    }
}

/// Renders as `name` for parameterless axioms and `name@t1,t2` otherwise.
impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)?;
        for (k, a) in self.0.args.iter().enumerate() {
            f.write_str(if k == 0 { "@" } else { "," })?;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A quantifier-free formula: the Boolean algebra generated by atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Compound {
    Atomic(Atom),
    And(Box<Compound>, Box<Compound>),
    Or(Box<Compound>, Box<Compound>),
    Not(Box<Compound>),
}

impl Compound {
    pub fn atom(a: Atom) -> Compound {
        Compound::Atomic(a)
    }

    pub fn and(l: Compound, r: Compound) -> Compound {
        Compound::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Compound, r: Compound) -> Compound {
        Compound::Or(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Compound) -> Compound {
        Compound::Not(Box::new(c))
    }
}

impl fmt::Display for Compound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compound::Atomic(a) => write!(f, "{a}"),
            Compound::And(l, r) => write!(f, "({l} /\\ {r})"),
            Compound::Or(l, r) => write!(f, "({l} \\/ {r})"),
            Compound::Not(c) => write!(f, "~{c}"),
        }
    }
}

/// Kleene three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }

    pub fn negate(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }
}

/// A partial interpretation, read from a tree node back up to the root.
///
/// `Left(a, p)` makes `a` true, `Right(a, p)` makes it false.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    Top,
    Left(Atom, Arc<Path>),
    Right(Atom, Arc<Path>),
}

impl Path {
    pub fn left(&self, a: Atom) -> Path {
        Path::Left(a, Arc::new(self.clone()))
    }

    pub fn right(&self, a: Atom) -> Path {
        Path::Right(a, Arc::new(self.clone()))
    }

    pub fn extend(&self, a: Atom, value: bool) -> Path {
        if value {
            self.left(a)
        } else {
            self.right(a)
        }
    }

    /// Builds a path from root-first `(atom, value)` pairs.
    pub fn from_assignment<'a, I>(entries: I) -> Path
    where
        I: IntoIterator<Item = &'a (Atom, bool)>,
    {
        entries
            .into_iter()
            .fold(Path::Top, |p, (a, v)| p.extend(a.clone(), *v))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Path::Top)
    }

    /// Entries from the node end towards the root.
    pub fn iter(&self) -> PathIter<'_> {
        PathIter { cur: self }
    }

    /// Entries from the root down to the node.
    pub fn to_assignment(&self) -> Vec<(Atom, bool)> {
        let mut v: Vec<_> = self.iter().map(|(a, b)| (a.clone(), b)).collect();
        v.reverse();
        v
    }
}

pub struct PathIter<'a> {
    cur: &'a Path,
}

impl<'a> Iterator for PathIter<'a> {
    type Item = (&'a Atom, bool);

    fn next(&mut self) -> Option<Self::Item> {
        match self.cur {
            Path::Top => None,
            Path::Left(a, p) => {
                self.cur = p;
                Some((a, true))
            }
            Path::Right(a, p) => {
                self.cur = p;
                Some((a, false))
            }
        }
    }
}

/// Root-first rendering such as `[Crow(42)=T, Black(42)=F]`.
impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (a, v)) in self.to_assignment().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={}", if *v { "T" } else { "F" })?;
        }
        f.write_str("]")
    }
}

/// A finite binary tree whose inner nodes test atoms and whose leaves name
/// the axiom instance falsified along the branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HerbrandTree {
    Contrad(Index),
    /// The first subtree is the atom-true branch, the second the atom-false one.
    Exp(Atom, Box<HerbrandTree>, Box<HerbrandTree>),
}

impl HerbrandTree {
    pub fn exp(a: Atom, t: HerbrandTree, f: HerbrandTree) -> HerbrandTree {
        HerbrandTree::Exp(a, Box::new(t), Box::new(f))
    }

    pub fn leaves(&self) -> Vec<&Index> {
        let mut out = Vec::new();
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            match t {
                HerbrandTree::Contrad(i) => out.push(i),
                HerbrandTree::Exp(_, l, r) => {
                    todo.push(r);
                    todo.push(l);
                }
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().len()
    }

    pub fn inner_count(&self) -> usize {
        match self {
            HerbrandTree::Contrad(_) => 0,
            HerbrandTree::Exp(_, l, r) => 1 + l.inner_count() + r.inner_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            HerbrandTree::Contrad(_) => 0,
            HerbrandTree::Exp(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Distinct atoms labelling inner nodes, in pre-order of first appearance.
    pub fn atoms(&self) -> Vec<Atom> {
        fn go(t: &HerbrandTree, out: &mut Vec<Atom>) {
            if let HerbrandTree::Exp(a, l, r) = t {
                if !out.contains(a) {
                    out.push(a.clone());
                }
                go(l, out);
                go(r, out);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Follows the tree as a decision diagram and returns the leaf reached.
    pub fn descend<V: Valuation + ?Sized>(&self, val: &V) -> &Index {
        let mut t = self;
        loop {
            match t {
                HerbrandTree::Contrad(i) => return i,
                HerbrandTree::Exp(a, l, r) => t = if val.value(a) { l } else { r },
            }
        }
    }
}

/// A total truth assignment on atoms.
pub trait Valuation {
    fn value(&self, a: &Atom) -> bool;
}

impl<F: Fn(&Atom) -> bool> Valuation for F {
    fn value(&self, a: &Atom) -> bool {
        self(a)
    }
}

/// A finite explicit assignment with a default for every other atom.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    values: std::collections::HashMap<Atom, bool>,
    default: bool,
}

impl Assignment {
    pub fn new(default: bool) -> Assignment {
        Assignment {
            values: Default::default(),
            default,
        }
    }

    pub fn set(&mut self, a: Atom, v: bool) -> &mut Self {
        self.values.insert(a, v);
        self
    }

    pub fn with(mut self, a: Atom, v: bool) -> Self {
        self.values.insert(a, v);
        self
    }

    pub fn get(&self, a: &Atom) -> Option<bool> {
        self.values.get(a).copied()
    }
}

impl Valuation for Assignment {
    fn value(&self, a: &Atom) -> bool {
        self.values.get(a).copied().unwrap_or(self.default)
    }
}

/// A compiled theory: an enumeration of indices and the map `Th` from each
/// index to its compound.
///
/// Implementations must be deterministic: the same index always yields the
/// same compound, and `index_at` is a bijection between ranks and indices.
pub trait GroundTheory {
    /// The index of the given rank, or `None` past the end of a finite index set.
    fn index_at(&self, rank: u64) -> Option<Index>;

    /// Number of indices, or `None` when there are infinitely many.
    fn index_count(&self) -> Option<u64>;

    /// The compound `Th i`.
    fn compound(&self, index: &Index) -> Compound;

    /// Indices whose compound mentions `atom`. Variables left unconstrained by
    /// the atom are completed only up to the given total argument weight.
    fn relevant(&self, atom: &Atom, weight_bound: u64) -> Vec<Index>;

    /// Total weight of an index's arguments, used as the relevance frontier.
    fn weight(&self, _index: &Index) -> u64 {
        0
    }

    /// Looks up an index by axiom name and arguments.
    fn lookup(&self, axiom: &str, args: &[Term]) -> Option<Index>;

    /// The minimum index, when the theory has any.
    fn min_index(&self) -> Option<Index> {
        self.index_at(0)
    }

    /// The predecessor in rank order; the minimum is its own predecessor.
    fn pred_index(&self, index: &Index) -> Option<Index> {
        self.index_at(index.rank().saturating_sub(1))
    }
}

/// A theory given by an explicit finite list of named compounds.
///
/// Each entry is a parameterless axiom; ranks follow list order.
#[derive(Clone, Debug, Default)]
pub struct FiniteTheory {
    entries: Vec<(Index, Compound)>,
}

impl FiniteTheory {
    pub fn new<I, S>(axioms: I) -> FiniteTheory
    where
        I: IntoIterator<Item = (S, Compound)>,
        S: AsRef<str>,
    {
        let entries = axioms
            .into_iter()
            .enumerate()
            .map(|(k, (name, c))| (Index::new(k, name.as_ref(), Vec::new(), k as u64), c))
            .collect();
        FiniteTheory { entries }
    }

    pub fn indices(&self) -> impl Iterator<Item = &Index> {
        self.entries.iter().map(|(i, _)| i)
    }
}

impl GroundTheory for FiniteTheory {
    fn index_at(&self, rank: u64) -> Option<Index> {
        self.entries.get(rank as usize).map(|(i, _)| i.clone())
    }

    fn index_count(&self) -> Option<u64> {
        Some(self.entries.len() as u64)
    }

    fn compound(&self, index: &Index) -> Compound {
        self.entries[index.rank() as usize].1.clone()
    }

    fn relevant(&self, atom: &Atom, _weight_bound: u64) -> Vec<Index> {
        self.entries
            .iter()
            .filter(|(_, c)| atoms_of(c).contains(atom))
            .map(|(i, _)| i.clone())
            .collect()
    }

    fn lookup(&self, axiom: &str, args: &[Term]) -> Option<Index> {
        if !args.is_empty() {
            return None;
        }
        self.entries
            .iter()
            .find(|(i, _)| i.name() == axiom)
            .map(|(i, _)| i.clone())
    }
}
