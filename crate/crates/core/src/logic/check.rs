use std::fmt;

use super::{find, peval, Atom, GroundTheory, HerbrandTree, Index, Path, Truth};

/// Which clause of the tree condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The leaf's compound is not falsified by its path.
    LeafNotFalsified { index: Index, value: Truth },
    /// An inner node tests an atom already assigned on its path.
    AtomReassigned { atom: Atom, value: bool },
}

/// The first violation found in a pre-order traversal, with the path to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: Path,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::LeafNotFalsified { index, value } => write!(
                f,
                "leaf {index} at {} is not falsified (evaluates to {value:?})",
                self.path
            ),
            ViolationKind::AtomReassigned { atom, value } => write!(
                f,
                "node {atom} at {} is already assigned {}",
                self.path,
                if *value { "true" } else { "false" }
            ),
        }
    }
}

impl std::error::Error for Violation {}

/// Decides whether `t` is a Herbrand tree for `th`.
pub fn htree_check<T: GroundTheory + ?Sized>(th: &T, t: &HerbrandTree) -> Result<(), Violation> {
    let mut todo = vec![(t, Path::Top)];
    while let Some((t, path)) = todo.pop() {
        match t {
            HerbrandTree::Contrad(i) => {
                let value = peval(&path, &th.compound(i));
                if value != Truth::False {
                    return Err(Violation {
                        path,
                        kind: ViolationKind::LeafNotFalsified {
                            index: i.clone(),
                            value,
                        },
                    });
                }
            }
            HerbrandTree::Exp(a, l, r) => {
                if let Some(value) = find(&path, a).known() {
                    return Err(Violation {
                        path,
                        kind: ViolationKind::AtomReassigned {
                            atom: a.clone(),
                            value,
                        },
                    });
                }
                todo.push((r, path.right(a.clone())));
                todo.push((l, path.left(a.clone())));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{eval, Assignment, Compound, FiniteTheory, Term};

    fn at(p: &str) -> Atom {
        Atom::new(p, vec![Term::Num(42)])
    }

    fn lit(p: &str) -> Compound {
        Compound::atom(at(p))
    }

    // White Crow instances at 42 only.
    fn crow() -> FiniteTheory {
        FiniteTheory::new([
            ("crow42", lit("Crow")),
            ("white42", lit("White")),
            (
                "crow_black",
                Compound::or(Compound::not(lit("Crow")), lit("Black")),
            ),
            (
                "not_bw",
                Compound::not(Compound::and(lit("Black"), lit("White"))),
            ),
        ])
    }

    fn leaf(th: &FiniteTheory, name: &str) -> HerbrandTree {
        HerbrandTree::Contrad(th.lookup(name, &[]).unwrap())
    }

    fn crow_tree(th: &FiniteTheory) -> HerbrandTree {
        HerbrandTree::exp(
            at("Crow"),
            HerbrandTree::exp(
                at("Black"),
                HerbrandTree::exp(at("White"), leaf(th, "not_bw"), leaf(th, "white42")),
                leaf(th, "crow_black"),
            ),
            leaf(th, "crow42"),
        )
    }

    #[test]
    fn bare_leaf_on_atom_is_rejected() {
        let th = FiniteTheory::new([("t", lit("P"))]);
        let err = htree_check(&th, &leaf(&th, "t")).unwrap_err();
        assert_eq!(err.path, Path::Top);
        assert!(matches!(
            err.kind,
            ViolationKind::LeafNotFalsified {
                value: Truth::Unknown,
                ..
            }
        ));
    }

    #[test]
    fn white_crow_tree_is_accepted() {
        let th = crow();
        let t = crow_tree(&th);
        htree_check(&th, &t).unwrap();
        // all-valuations oracle
        for bits in 0..8 {
            let v = Assignment::new(false)
                .with(at("Crow"), bits & 1 != 0)
                .with(at("Black"), bits & 2 != 0)
                .with(at("White"), bits & 4 != 0);
            let i = t.descend(&v);
            assert!(!eval(&v, &th.compound(i)));
        }
    }

    #[test]
    fn swapped_children_are_rejected_at_white_true_leaf() {
        let th = crow();
        let t = HerbrandTree::exp(
            at("Crow"),
            HerbrandTree::exp(
                at("Black"),
                HerbrandTree::exp(at("White"), leaf(&th, "white42"), leaf(&th, "not_bw")),
                leaf(&th, "crow_black"),
            ),
            leaf(&th, "crow42"),
        );
        let err = htree_check(&th, &t).unwrap_err();
        let expected = Path::Top
            .left(at("Crow"))
            .left(at("Black"))
            .left(at("White"));
        assert_eq!(err.path, expected);
        assert!(matches!(err.kind, ViolationKind::LeafNotFalsified { .. }));
    }

    #[test]
    fn repeated_atom_is_rejected() {
        let th = FiniteTheory::new([("t", lit("P")), ("nt", Compound::not(lit("P")))]);
        let inner = HerbrandTree::exp(at("P"), leaf(&th, "nt"), leaf(&th, "t"));
        let t = HerbrandTree::exp(at("P"), inner, leaf(&th, "t"));
        let err = htree_check(&th, &t).unwrap_err();
        assert!(matches!(
            err.kind,
            ViolationKind::AtomReassigned { value: true, .. }
        ));
    }
}
