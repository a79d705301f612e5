//! Property tests for three-valued evaluation, the tree checker and the
//! pair order.

use herbrand::builder::{build_tree, BuildConfig, Strategy as Search};
use herbrand::frontend::Theory;
use herbrand::logic::{
    atoms_of, eval, find, htree_check, pair_pred, pairs_up_to, peval, Assignment, Atom, Compound,
    FiniteTheory, GroundTheory, HerbrandTree, Path, Truth,
};
use proptest::prelude::*;

const ATOMS: [&str; 5] = ["A", "B", "C", "D", "E"];

fn atom(k: usize) -> Atom {
    Atom::prop(ATOMS[k])
}

fn compound(n_atoms: usize) -> impl Strategy<Value = Compound> {
    let leaf = (0..n_atoms).prop_map(|k| Compound::atom(atom(k)));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Compound::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Compound::and(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Compound::or(l, r)),
        ]
    })
}

/// A partial assignment: `None` leaves the atom off the path.
fn partial(n_atoms: usize) -> impl Strategy<Value = Vec<Option<bool>>> {
    prop::collection::vec(prop::option::of(any::<bool>()), n_atoms)
}

fn path_of(p: &[Option<bool>]) -> Path {
    p.iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| (atom(k), v)))
        .fold(Path::Top, |acc, (a, v)| acc.extend(a, v))
}

/// Straightforward three-valued evaluation, independent of `peval`.
fn kleene(p: &[Option<bool>], c: &Compound) -> Option<bool> {
    match c {
        Compound::Atomic(a) => p[ATOMS.iter().position(|n| *n == a.pred()).unwrap()],
        Compound::Not(c) => kleene(p, c).map(|v| !v),
        Compound::And(l, r) => match (kleene(p, l), kleene(p, r)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Compound::Or(l, r) => match (kleene(p, l), kleene(p, r)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
    }
}

proptest! {
    #[test]
    fn peval_agrees_with_kleene_tables(c in compound(5), p in partial(5)) {
        prop_assert_eq!(peval(&path_of(&p), &c).known(), kleene(&p, &c));
    }

    #[test]
    fn peval_is_monotone(c in compound(5), p in partial(5), ext in partial(5)) {
        let before = peval(&path_of(&p), &c);
        let wider: Vec<_> = p.iter().zip(&ext).map(|(a, b)| a.or(*b)).collect();
        if before != Truth::Unknown {
            prop_assert_eq!(peval(&path_of(&wider), &c), before);
        }
    }

    #[test]
    fn known_partial_values_agree_with_every_total_extension(c in compound(4), p in partial(4)) {
        let part = peval(&path_of(&p), &c);
        if let Some(v) = part.known() {
            for bits in 0u32..16 {
                let total = |a: &Atom| {
                    let k = ATOMS.iter().position(|n| *n == a.pred()).unwrap();
                    p[k].unwrap_or(bits >> k & 1 == 1)
                };
                prop_assert_eq!(eval(&total, &c), v);
            }
        }
    }

    #[test]
    fn peval_of_an_atom_is_find(k in 0usize..5, p in partial(5)) {
        let path = path_of(&p);
        prop_assert_eq!(peval(&path, &Compound::atom(atom(k))), find(&path, &atom(k)));
    }

    #[test]
    fn atoms_of_lists_each_atom_once_in_first_occurrence_order(c in compound(5)) {
        let atoms = atoms_of(&c);
        let mut seen = Vec::new();
        fn walk(c: &Compound, seen: &mut Vec<Atom>) {
            match c {
                Compound::Atomic(a) => if !seen.contains(a) { seen.push(a.clone()) },
                Compound::Not(c) => walk(c, seen),
                Compound::And(l, r) | Compound::Or(l, r) => { walk(l, seen); walk(r, seen) }
            }
        }
        walk(&c, &mut seen);
        prop_assert_eq!(atoms, seen);
    }

    /// Accepted trees send every total valuation to a leaf it falsifies.
    #[test]
    fn accepted_trees_are_sound(axioms in prop::collection::vec(compound(4), 1..6)) {
        let mut axioms = axioms;
        // refute every model of the random axioms with one more axiom
        let models: Vec<u32> = (0u32..16)
            .filter(|bits| {
                let val = |a: &Atom| bits >> ATOMS.iter().position(|n| *n == a.pred()).unwrap() & 1 == 1;
                axioms.iter().all(|c| eval(&val, c))
            })
            .collect();
        if !models.is_empty() {
            let excluded = models.iter().map(|bits| {
                (0..4).map(|k| {
                    let lit = Compound::atom(atom(k));
                    if bits >> k & 1 == 1 { Compound::not(lit) } else { lit }
                }).reduce(Compound::or).unwrap()
            }).reduce(Compound::and).unwrap();
            axioms.push(excluded);
        }
        let th = FiniteTheory::new(axioms.iter().enumerate().map(|(k, c)| (format!("ax{k}"), c.clone())));
        for strategy in [Search::RelevanceFirst, Search::Fair] {
            let t = build_tree(&th, BuildConfig::with_strategy(strategy)).unwrap();
            prop_assert!(htree_check(&th, &t).is_ok());
            let atoms = t.atoms();
            prop_assert!(atoms.len() <= 4);
            for bits in 0u32..1 << atoms.len() {
                let mut val = Assignment::new(false);
                for (k, a) in atoms.iter().enumerate() {
                    val.set(a.clone(), bits >> k & 1 == 1);
                }
                let i = t.descend(&val);
                prop_assert!(!eval(&val, &th.compound(i)));
            }
        }
    }
}

#[test]
fn checker_rejects_a_lone_atom_leaf() {
    let th = FiniteTheory::new([("a", Compound::atom(atom(0)))]);
    let i = th.index_at(0).unwrap();
    assert!(htree_check(&th, &HerbrandTree::Contrad(i)).is_err());
}

#[test]
fn checker_rejects_repeated_atoms() {
    let th = FiniteTheory::new([
        ("a", Compound::atom(atom(0))),
        ("na", Compound::not(Compound::atom(atom(0)))),
    ]);
    let a = th.index_at(0).unwrap();
    let na = th.index_at(1).unwrap();
    let good = HerbrandTree::exp(
        atom(0),
        HerbrandTree::Contrad(na.clone()),
        HerbrandTree::Contrad(a.clone()),
    );
    assert!(htree_check(&th, &good).is_ok());
    let repeated = HerbrandTree::exp(
        atom(0),
        HerbrandTree::exp(
            atom(0),
            HerbrandTree::Contrad(na.clone()),
            HerbrandTree::Contrad(na),
        ),
        HerbrandTree::Contrad(a),
    );
    assert!(htree_check(&th, &repeated).is_err());
}

fn example(name: &str) -> Theory {
    let src = match name {
        "whitecrow" => include_str!("../examples/whitecrow.thy"),
        _ => include_str!("../examples/pseudo.thy"),
    };
    Theory::from_source(src).unwrap()
}

/// Iterating the predecessor reaches the minimum in exactly `position` steps.
#[test]
fn pair_pred_walks_down_to_the_minimum() {
    for name in ["whitecrow", "pseudo"] {
        let th = example(name);
        let pairs = pairs_up_to(&th, 100);
        assert!(
            pairs.windows(2).all(|w| w[0] < w[1]),
            "{name}: pairs increase"
        );
        for (pos, q) in pairs.iter().enumerate().take(400) {
            let mut cur = q.clone();
            for step in (0..pos).rev() {
                let p = pair_pred(&th, &cur).unwrap();
                assert!(p < cur, "{name}: pred of {cur} is not smaller");
                assert_eq!(p, pairs[step]);
                cur = p;
            }
            assert_eq!(
                pair_pred(&th, &cur).unwrap(),
                cur,
                "{name}: minimum is fixed"
            );
        }
    }
}
