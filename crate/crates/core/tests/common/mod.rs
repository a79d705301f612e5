//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use herbrand::kam::{
    decode, encode, prelude, storage_operator, HAtom, HIndex, HTerm, HTree, Kind, Machine, Outcome,
    Process, StdInstructions, Term, Value,
};
use rand::rngs::StdRng;
use rand::Rng;

pub fn random_hterm(rng: &mut StdRng, size: usize) -> HTerm {
    if size <= 1 || rng.gen_bool(0.3) {
        return HTerm::Num(rng.gen_range(0..=3));
    }
    let arity = rng.gen_range(0..=2.min(size - 1));
    HTerm::Fun(rng.gen_range(0..3), random_args(rng, arity, size - 1))
}

fn random_args(rng: &mut StdRng, n: usize, budget: usize) -> Vec<HTerm> {
    if n == 0 {
        return Vec::new();
    }
    let each = (budget / n).max(1);
    (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=each);
            random_hterm(rng, size)
        })
        .collect()
}

pub fn random_hatom(rng: &mut StdRng, size: usize) -> HAtom {
    let n = rng.gen_range(0..=2.min(size.saturating_sub(1)));
    HAtom {
        pred: rng.gen_range(0..4),
        args: random_args(rng, n, size.saturating_sub(1)),
    }
}

pub fn random_hindex(rng: &mut StdRng, size: usize) -> HIndex {
    let n = rng.gen_range(0..=2.min(size.saturating_sub(1)));
    HIndex {
        axiom: rng.gen_range(0..4),
        args: random_args(rng, n, size.saturating_sub(1)),
    }
}

/// A tree with at most `size` nodes.
pub fn random_htree(rng: &mut StdRng, size: usize) -> HTree {
    if size < 3 || rng.gen_bool(0.35) {
        return HTree::Contrad(random_hindex(rng, 2));
    }
    let left = rng.gen_range(1..=size - 2);
    HTree::Exp(
        random_hatom(rng, 2),
        Box::new(random_htree(rng, left)),
        Box::new(random_htree(rng, size - 1 - left)),
    )
}

pub fn random_value(rng: &mut StdRng, kind: Kind) -> Value {
    let size = rng.gen_range(1..=6);
    match kind {
        Kind::Nat => Value::Nat(rng.gen_range(0..=6)),
        Kind::Term => Value::Term(random_hterm(rng, size)),
        Kind::Atom => Value::Atom(random_hatom(rng, size)),
        Kind::Index => Value::Index(random_hindex(rng, size)),
        Kind::Tree => Value::Tree(random_htree(rng, size)),
    }
}

/// Wraps `t` in a redex that reduces back to it.
fn wrap(rng: &mut StdRng, t: Term) -> Term {
    let junk = Term::TypeDummy;
    match rng.gen_range(0..6) {
        0 => t,
        1 => Term::app(Term::lam("x", Term::var("x")), t),
        2 => Term::apply(Term::lams(["x", "y"], Term::var("x")), [t, junk]),
        // callcc ⋆ (\k. t)·π → (\k. t) ⋆ k_π·π → t ⋆ π
        3 => Term::app(Term::Callcc, Term::lam("k", t)),
        // jumps through the saved continuation
        4 => Term::app(
            Term::Callcc,
            Term::lam(
                "k",
                Term::app(Term::lam("z", Term::var("z")), Term::app(Term::var("k"), t)),
            ),
        ),
        // projection out of a pair
        _ => Term::apply(
            Term::reference("Pair.mk"),
            [t, junk, Term::lams(["a", "b"], Term::var("a"))],
        ),
    }
}

/// Rebuilds a canonical value with every constructor argument (and the
/// value itself) hidden behind random redexes.
pub fn obfuscate(rng: &mut StdRng, t: &Term) -> Term {
    let (head, args) = t.spine();
    let args: Vec<Term> = args.into_iter().map(|a| obfuscate(rng, a)).collect();
    let rebuilt = Term::apply(head.clone(), args);
    wrap(rng, rebuilt)
}

/// Runs `M_kind stop t` and returns the value `stop` receives.
pub fn run_storage(kind: Kind, t: Term) -> Result<(Term, u64), String> {
    let main = Term::apply(storage_operator(kind), [Term::var("stop"), t]);
    let (head, env) = prelude()
        .link_term(&main, &|n| n == "stop")
        .map_err(|e| e.to_string())?;
    let r = Machine::new(&env, StdInstructions::new()).run(Process::on_nil(head), 1_000_000);
    match r.outcome {
        Outcome::Halted(v) => Ok((v, r.steps)),
        other => Err(format!("{other:?}")),
    }
}

/// Checks the storage-operator contract on one value; returns a failure
/// message if the delivered term is not the canonical encoding.
pub fn storage_case(rng: &mut StdRng, kind: Kind) -> Result<(), String> {
    let v = random_value(rng, kind);
    let canonical = encode(&v);
    let input = obfuscate(rng, &canonical);
    let (got, _) = run_storage(kind, input.clone())?;
    if got != canonical {
        return Err(format!("{kind}: {input} delivered {got}"));
    }
    match decode(kind, &got) {
        Ok(back) if back == v => Ok(()),
        other => Err(format!("{kind}: decode gave {other:?}, wanted {v:?}")),
    }
}

/// A propositional formula over atoms `0..n`, rendered in theory syntax.
#[derive(Clone, Debug)]
pub enum Form {
    Atom(usize),
    Not(Box<Form>),
    And(Box<Form>, Box<Form>),
    Or(Box<Form>, Box<Form>),
    Imp(Box<Form>, Box<Form>),
}

impl Form {
    pub fn eval(&self, bits: u32) -> bool {
        match self {
            Form::Atom(k) => bits >> k & 1 == 1,
            Form::Not(f) => !f.eval(bits),
            Form::And(l, r) => l.eval(bits) && r.eval(bits),
            Form::Or(l, r) => l.eval(bits) || r.eval(bits),
            Form::Imp(l, r) => !l.eval(bits) || r.eval(bits),
        }
    }

    /// `atom` renders one atom, e.g. `P0` or `P0(x)`.
    pub fn render(&self, atom: &dyn Fn(usize) -> String) -> String {
        match self {
            Form::Atom(k) => atom(*k),
            Form::Not(f) => format!("~{}", f.render(atom)),
            Form::And(l, r) => format!("({} /\\ {})", l.render(atom), r.render(atom)),
            Form::Or(l, r) => format!("({} \\/ {})", l.render(atom), r.render(atom)),
            Form::Imp(l, r) => format!("({} -> {})", l.render(atom), r.render(atom)),
        }
    }
}

pub fn random_form(rng: &mut StdRng, n_atoms: usize, depth: usize) -> Form {
    if depth == 0 || rng.gen_bool(0.3) {
        return Form::Atom(rng.gen_range(0..n_atoms));
    }
    let sub = |rng: &mut StdRng| Box::new(random_form(rng, n_atoms, depth - 1));
    match rng.gen_range(0..4) {
        0 => Form::Not(sub(rng)),
        1 => Form::And(sub(rng), sub(rng)),
        2 => Form::Or(sub(rng), sub(rng)),
        _ => Form::Imp(sub(rng), sub(rng)),
    }
}

/// Total valuations (as bit sets) satisfying every formula.
pub fn models(forms: &[Form], n_atoms: usize) -> Vec<u32> {
    (0u32..1 << n_atoms)
        .filter(|&b| forms.iter().all(|f| f.eval(b)))
        .collect()
}

/// A formula false exactly on the given valuations.
pub fn excluding(models: &[u32], n_atoms: usize) -> Form {
    models
        .iter()
        .map(|&b| {
            (0..n_atoms)
                .map(|k| {
                    let a = Form::Atom(k);
                    if b >> k & 1 == 1 {
                        Form::Not(Box::new(a))
                    } else {
                        a
                    }
                })
                .reduce(|l, r| Form::Or(Box::new(l), Box::new(r)))
                .unwrap()
        })
        .reduce(|l, r| Form::And(Box::new(l), Box::new(r)))
        .unwrap()
}

/// Theory text for the formulas; half the time the atoms are unary
/// predicates over a one-constant universe and the axioms are quantified.
pub fn theory_text(rng: &mut StdRng, forms: &[Form], n_atoms: usize) -> String {
    let preds: Vec<String> = (0..n_atoms).map(|k| format!("P{k}")).collect();
    let mut src = String::new();
    if rng.gen_bool(0.5) {
        src.push_str("const c;\n");
        src.push_str(&format!(
            "pred {};\n",
            preds
                .iter()
                .map(|p| format!("{p}/1"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        for (k, f) in forms.iter().enumerate() {
            let body = f.render(&|a| format!("P{a}(x)"));
            src.push_str(&format!("axiom ax{k}: forall x. {body};\n"));
        }
    } else {
        src.push_str(&format!(
            "pred {};\n",
            preds
                .iter()
                .map(|p| format!("{p}/0"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        for (k, f) in forms.iter().enumerate() {
            src.push_str(&format!(
                "axiom ax{k}: {};\n",
                f.render(&|a| format!("P{a}"))
            ));
        }
    }
    src
}

/// A contradictory theory with at most 4 atoms and 6 axioms: random axioms,
/// plus one axiom refuting all their models when some remain.
pub fn contradictory_theory(rng: &mut StdRng) -> String {
    let n = rng.gen_range(1..=4);
    let k = rng.gen_range(1..=5);
    let mut forms: Vec<Form> = (0..k).map(|_| random_form(rng, n, 3)).collect();
    let m = models(&forms, n);
    if !m.is_empty() {
        forms.push(excluding(&m, n));
    }
    debug_assert!(models(&forms, n).is_empty());
    theory_text(rng, &forms, n)
}

/// A satisfiable theory with at most 4 atoms and 6 axioms.
pub fn satisfiable_theory(rng: &mut StdRng) -> String {
    loop {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=6);
        let forms: Vec<Form> = (0..k).map(|_| random_form(rng, n, 3)).collect();
        if !models(&forms, n).is_empty() {
            return theory_text(rng, &forms, n);
        }
    }
}
