//! Walking a Herbrand tree as a decision diagram to find the falsified
//! axiom instance under a given atom oracle.

use std::fmt;

use thiserror::Error;

use crate::logic::{
    htree_check, peval, Atom, GroundTheory, HerbrandTree, Index, Path, Truth, Valuation, Violation,
};

/// The leaf reached by a walk and the oracle answers on the way down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterExample {
    pub index: Index,
    /// Queried atoms, root first.
    pub assignment: Vec<(Atom, bool)>,
}

impl CounterExample {
    pub fn path(&self) -> Path {
        Path::from_assignment(&self.assignment)
    }
}

impl fmt::Display for CounterExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "falsified: {}", self.index)?;
        for (a, v) in &self.assignment {
            write!(f, "\n  {a}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DebugError<E: fmt::Debug + fmt::Display = std::convert::Infallible> {
    #[error("refusing to walk a tree that is not a Herbrand tree: {0}")]
    Rejected(Violation),
    #[error("{0} is not an index of this theory")]
    UnknownIndex(String),
    #[error("oracle failed on {atom}: {error}")]
    Oracle { atom: Atom, error: E },
}

/// Walks `t` without checking it first.
fn descend<E, F>(t: &HerbrandTree, mut oracle: F) -> Result<CounterExample, DebugError<E>>
where
    E: fmt::Debug + fmt::Display,
    F: FnMut(&Atom) -> Result<bool, E>,
{
    let mut assignment = Vec::new();
    let mut t = t;
    loop {
        match t {
            HerbrandTree::Contrad(index) => {
                return Ok(CounterExample {
                    index: index.clone(),
                    assignment,
                })
            }
            HerbrandTree::Exp(a, l, r) => {
                let v = oracle(a).map_err(|error| DebugError::Oracle {
                    atom: a.clone(),
                    error,
                })?;
                assignment.push((a.clone(), v));
                t = if v { l } else { r };
            }
        }
    }
}

/// Walks a checker-accepted tree, asking `oracle` once per node on the way.
pub fn walk<T, V>(th: &T, t: &HerbrandTree, oracle: &V) -> Result<CounterExample, DebugError>
where
    T: GroundTheory + ?Sized,
    V: Valuation + ?Sized,
{
    htree_check(th, t).map_err(DebugError::Rejected)?;
    descend(t, |a| Ok(oracle.value(a)))
}

/// Like [`walk`], with an oracle that may fail (a probe of a real component).
pub fn try_walk<T, E, F>(
    th: &T,
    t: &HerbrandTree,
    oracle: F,
) -> Result<CounterExample, DebugError<E>>
where
    T: GroundTheory + ?Sized,
    E: fmt::Debug + fmt::Display,
    F: FnMut(&Atom) -> Result<bool, E>,
{
    htree_check(th, t).map_err(DebugError::Rejected)?;
    descend(t, oracle)
}

/// Whether the recorded answers alone falsify the instance.
pub fn verify<T: GroundTheory + ?Sized>(th: &T, cex: &CounterExample) -> Result<bool, DebugError> {
    let i = &cex.index;
    match th.lookup(i.name(), i.args()) {
        Some(j) if j == *i => {}
        _ => return Err(DebugError::UnknownIndex(i.to_string())),
    }
    Ok(peval(&cex.path(), &th.compound(i)) == Truth::False)
}
