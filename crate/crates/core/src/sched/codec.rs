//! Translation between theory objects and numbered machine values.

use crate::frontend::Theory;
use crate::kam::{HAtom, HIndex, HTerm, HTree};
use crate::logic::{Atom, HerbrandTree, Index, Term};

pub fn term_to_host(th: &Theory, t: &Term) -> Option<HTerm> {
    Some(match t {
        Term::Num(n) => HTerm::Num(*n),
        Term::Fn(name, args) => HTerm::Fun(
            th.signature().fun_id(name)? as u64,
            args.iter()
                .map(|a| term_to_host(th, a))
                .collect::<Option<_>>()?,
        ),
    })
}

pub fn host_to_term(th: &Theory, t: &HTerm) -> Result<Term, String> {
    match t {
        HTerm::Num(n) if th.signature().numerals() => Ok(Term::Num(*n)),
        HTerm::Num(n) => Err(format!("numeral {n} in a theory without numerals")),
        HTerm::Fun(id, args) => {
            let f = usize::try_from(*id)
                .ok()
                .and_then(|i| th.signature().funs().get(i))
                .ok_or_else(|| format!("no function symbol #{id}"))?;
            if f.arity != args.len() {
                return Err(format!(
                    "`{}` expects {} argument(s), got {}",
                    f.name,
                    f.arity,
                    args.len()
                ));
            }
            Ok(Term::Fn(
                f.name.clone(),
                args.iter()
                    .map(|a| host_to_term(th, a))
                    .collect::<Result<_, _>>()?,
            ))
        }
    }
}

pub fn atom_to_host(th: &Theory, a: &Atom) -> Option<HAtom> {
    Some(HAtom {
        pred: th.signature().pred_id(a.pred())? as u64,
        args: a
            .args()
            .iter()
            .map(|t| term_to_host(th, t))
            .collect::<Option<_>>()?,
    })
}

pub fn host_to_atom(th: &Theory, a: &HAtom) -> Result<Atom, String> {
    let p = usize::try_from(a.pred)
        .ok()
        .and_then(|i| th.signature().preds().get(i))
        .ok_or_else(|| format!("no predicate symbol #{}", a.pred))?;
    if p.arity != a.args.len() {
        return Err(format!(
            "`{}` expects {} argument(s), got {}",
            p.name,
            p.arity,
            a.args.len()
        ));
    }
    let args = a
        .args
        .iter()
        .map(|t| host_to_term(th, t))
        .collect::<Result<_, _>>()?;
    Ok(Atom::new(&p.name, args))
}

pub fn index_to_host(th: &Theory, i: &Index) -> Option<HIndex> {
    Some(HIndex {
        axiom: i.axiom() as u64,
        args: i
            .args()
            .iter()
            .map(|t| term_to_host(th, t))
            .collect::<Option<_>>()?,
    })
}

pub fn host_to_index(th: &Theory, i: &HIndex) -> Result<Index, String> {
    let ax = usize::try_from(i.axiom)
        .ok()
        .filter(|&a| a < th.spec().axioms.len())
        .ok_or_else(|| format!("no axiom #{}", i.axiom))?;
    let args: Vec<Term> = i
        .args
        .iter()
        .map(|t| host_to_term(th, t))
        .collect::<Result<_, _>>()?;
    let shown = args.len();
    th.index_of(ax, args).ok_or_else(|| {
        format!(
            "axiom `{}` does not take {shown} argument(s)",
            th.spec().axioms[ax].name
        )
    })
}

pub fn tree_to_host(th: &Theory, t: &HerbrandTree) -> Option<HTree> {
    Some(match t {
        HerbrandTree::Contrad(i) => HTree::Contrad(index_to_host(th, i)?),
        HerbrandTree::Exp(a, l, r) => HTree::Exp(
            atom_to_host(th, a)?,
            Box::new(tree_to_host(th, l)?),
            Box::new(tree_to_host(th, r)?),
        ),
    })
}

pub fn host_to_tree(th: &Theory, t: &HTree) -> Result<HerbrandTree, String> {
    Ok(match t {
        HTree::Contrad(i) => HerbrandTree::Contrad(host_to_index(th, i)?),
        HTree::Exp(a, l, r) => HerbrandTree::exp(
            host_to_atom(th, a)?,
            host_to_tree(th, l)?,
            host_to_tree(th, r)?,
        ),
    })
}
