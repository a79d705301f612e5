//! The lexicographic order on pairs ⟨i, a⟩ with `a` an atom of `Th i`.

use std::fmt;

use thiserror::Error;

use super::{atoms_of, Atom, GroundTheory, Index};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("atom {atom} does not occur in the compound of {index}")]
    NotInCompound { index: String, atom: String },
}

/// An index paired with one of the atoms of its compound.
///
/// `position` is the atom's place in `atoms_of(Th i)`; pairs compare by
/// index rank, then position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomPair {
    index: Index,
    position: usize,
    atom: Atom,
}

impl AtomPair {
    /// Checks the side condition `atom ∈ atoms_of(Th index)`.
    pub fn new<T: GroundTheory + ?Sized>(
        th: &T,
        index: Index,
        atom: Atom,
    ) -> Result<AtomPair, OrderError> {
        let atoms = atoms_of(&th.compound(&index));
        match atoms.iter().position(|b| *b == atom) {
            Some(position) => Ok(AtomPair {
                index,
                position,
                atom,
            }),
            None => Err(OrderError::NotInCompound {
                index: index.to_string(),
                atom: atom.to_string(),
            }),
        }
    }

    pub fn index(&self) -> &Index {
        &self.index
    }

    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    pub fn position(&self) -> usize {
        self.position
    }
}

impl fmt::Display for AtomPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.index, self.atom)
    }
}

/// Predecessor of a pair. The global minimum is its own predecessor.
pub fn pair_pred<T: GroundTheory + ?Sized>(th: &T, q: &AtomPair) -> Result<AtomPair, OrderError> {
    let atoms = atoms_of(&th.compound(&q.index));
    // Re-derive the position so a pair built against another theory is caught.
    let pos = atoms
        .iter()
        .position(|b| *b == q.atom)
        .ok_or_else(|| OrderError::NotInCompound {
            index: q.index.to_string(),
            atom: q.atom.to_string(),
        })?;
    if pos > 0 {
        return Ok(AtomPair {
            index: q.index.clone(),
            position: pos - 1,
            atom: atoms[pos - 1].clone(),
        });
    }
    match th.pred_index(&q.index) {
        Some(prev) if prev != q.index => {
            let prev_atoms = atoms_of(&th.compound(&prev));
            let last = prev_atoms.len() - 1;
            Ok(AtomPair {
                index: prev,
                position: last,
                atom: prev_atoms[last].clone(),
            })
        }
        _ => Ok(q.clone()),
    }
}

/// All pairs whose index has rank `<= max_rank`, in increasing order.
pub fn pairs_up_to<T: GroundTheory + ?Sized>(th: &T, max_rank: u64) -> Vec<AtomPair> {
    let mut out = Vec::new();
    for rank in 0..=max_rank {
        let Some(index) = th.index_at(rank) else {
            break;
        };
        for (position, atom) in atoms_of(&th.compound(&index)).into_iter().enumerate() {
            out.push(AtomPair {
                index: index.clone(),
                position,
                atom,
            });
        }
    }
    out
}
