//! Axiom realizers built by recursion on the axiom body.
//!
//! `R(c)` takes a success continuation `s` and a refutation continuation `r`:
//! `R(a) = \s\r. test â s r`, `R(¬c) = \s\r. R(c) r s`,
//! `R(c ∧ d) = \s\r. R(c) (R(d) s r) r`, `R(c ∨ d) = \s\r. R(c) s (R(d) s r)`.

use crate::frontend::{Formula, PTerm, Theory};
use crate::kam::{encode_atom, encode_index, nat_term, Program, Term};
use crate::logic::{Compound, GroundTheory, Index};

use super::codec::{atom_to_host, index_to_host};

fn with_sr(body: Term) -> Term {
    Term::lams(["s", "r"], body)
}

fn s() -> Term {
    Term::var("s")
}

fn r() -> Term {
    Term::var("r")
}

fn not_r(inner: Term) -> Term {
    with_sr(Term::apply(inner, [r(), s()]))
}

fn and_r(l: Term, rt: Term) -> Term {
    with_sr(Term::apply(l, [Term::apply(rt, [s(), r()]), r()]))
}

fn or_r(l: Term, rt: Term) -> Term {
    with_sr(Term::apply(l, [s(), Term::apply(rt, [s(), r()])]))
}

fn atom_test(atom: Term) -> Term {
    with_sr(Term::apply(Term::instr("test"), [atom, s(), r()]))
}

/// `R(c)` for a ground compound.
pub fn compound_realizer(th: &Theory, c: &Compound) -> Term {
    match c {
        Compound::Atomic(a) => atom_test(encode_atom(
            &atom_to_host(th, a).expect("theory atoms encode"),
        )),
        Compound::Not(c) => not_r(compound_realizer(th, c)),
        Compound::And(l, r) => and_r(compound_realizer(th, l), compound_realizer(th, r)),
        Compound::Or(l, r) => or_r(compound_realizer(th, l), compound_realizer(th, r)),
    }
}

/// Realizer of one ground axiom instance: `\s. R(Th i) s (contradict î)`.
pub fn axiom_realizer(th: &Theory, i: &Index) -> Term {
    let c = th.compound(i);
    let refute = Term::app(
        Term::instr("contradict"),
        encode_index(&index_to_host(th, i).expect("theory indices encode")),
    );
    Term::lam("s", Term::apply(compound_realizer(th, &c), [s(), refute]))
}

fn var_name(v: usize) -> String {
    format!("x{}", v + 1)
}

fn list(items: Vec<Term>) -> Term {
    items
        .into_iter()
        .rev()
        .fold(Term::reference("List.nil"), |l, h| {
            Term::apply(Term::reference("List.cons"), [h, l])
        })
}

fn pterm(t: &PTerm) -> Term {
    match t {
        PTerm::Var(v) => Term::var(&var_name(*v)),
        PTerm::Num(n) => Term::app(Term::reference("Term.num"), nat_term(*n)),
        PTerm::Fn(id, args) => Term::apply(
            Term::reference("Term.fun"),
            [nat_term(*id as u64), list(args.iter().map(pterm).collect())],
        ),
    }
}

fn formula_realizer(f: &Formula) -> Term {
    match f {
        Formula::Atom(a) => atom_test(Term::apply(
            Term::reference("Atom.mk"),
            [
                nat_term(a.pred as u64),
                list(a.args.iter().map(pterm).collect()),
            ],
        )),
        Formula::Not(f) => not_r(formula_realizer(f)),
        Formula::And(l, r) => and_r(formula_realizer(l), formula_realizer(r)),
        Formula::Or(l, r) => or_r(formula_realizer(l), formula_realizer(r)),
    }
}

/// Schema realizer `Axiom.<name>`: takes the k terms, stores each with
/// `Mterm`, then behaves as the ground realizer of that instance.
pub fn schema_realizer(th: &Theory, axiom: usize) -> Term {
    let schema = &th.spec().axioms[axiom];
    let k = schema.vars.len();
    let xs: Vec<Term> = (0..k).map(|v| Term::var(&var_name(v))).collect();
    let refute = Term::app(
        Term::instr("contradict"),
        Term::apply(
            Term::reference("Index.mk"),
            [nat_term(axiom as u64), list(xs)],
        ),
    );
    let mut body = Term::lam(
        "s",
        Term::apply(formula_realizer(&schema.body), [s(), refute]),
    );
    for v in (0..k).rev() {
        body = Term::apply(
            Term::reference("Mterm"),
            [
                Term::lam(&var_name(v), body),
                Term::var(&format!("y{}", v + 1)),
            ],
        );
    }
    let ys: Vec<String> = (1..=k).map(|v| format!("y{v}")).collect();
    Term::lams(ys.iter().map(String::as_str), body)
}

/// `Axiom.<name>` for every axiom and `Sym.<f>` for every function symbol.
pub fn theory_program(th: &Theory) -> Program {
    let mut prog = Program::new();
    for (ax, schema) in th.spec().axioms.iter().enumerate() {
        prog.define(&format!("Axiom.{}", schema.name), schema_realizer(th, ax))
            .expect("axiom names are distinct");
    }
    for (id, f) in th.signature().funs().iter().enumerate() {
        let xs: Vec<String> = (1..=f.arity).map(|v| format!("x{v}")).collect();
        let body = Term::apply(
            Term::reference("Term.fun"),
            [
                nat_term(id as u64),
                list(xs.iter().map(|x| Term::var(x)).collect()),
            ],
        );
        prog.define(
            &format!("Sym.{}", f.name),
            Term::lams(xs.iter().map(String::as_str), body),
        )
        .expect("symbol names are distinct");
    }
    prog
}
