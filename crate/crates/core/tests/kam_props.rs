//! Machine-level properties: rule coverage, determinism, closedness,
//! constructor eliminators and the storage-operator contract.

mod common;

use herbrand::kam::{
    encode_constructor, parse_program, prelude, step, Env, Kind, Machine, NoInstructions, Outcome,
    Process, Rule, Stack, StdInstructions, Step, Term, DATATYPES,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A random closed term built from a few variables, callcc and `.type`.
fn random_term(rng: &mut StdRng, bound: &mut Vec<String>, depth: usize) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return match rng.gen_range(0..5) {
            0..=2 if !bound.is_empty() => Term::var(&bound[rng.gen_range(0..bound.len())]),
            3 => Term::Callcc,
            4 => Term::TypeDummy,
            _ => {
                let x = format!("v{}", bound.len());
                Term::lam(&x, Term::var(&x))
            }
        };
    }
    if rng.gen_bool(0.45) {
        let x = format!("v{}", bound.len());
        bound.push(x.clone());
        let body = random_term(rng, bound, depth - 1);
        bound.pop();
        Term::lam(&x, body)
    } else {
        Term::app(
            random_term(rng, bound, depth - 1),
            random_term(rng, bound, depth - 1),
        )
    }
}

fn random_process(rng: &mut StdRng) -> Process {
    let head = random_term(rng, &mut Vec::new(), 5);
    let n = rng.gen_range(0..4);
    let stack = Stack::from_terms((0..n).map(|_| random_term(rng, &mut Vec::new(), 3)));
    Process::new(head, stack)
}

/// The rule the head shape calls for, decided independently of `step`.
fn expected_rule(p: &Process) -> Option<Rule> {
    match (&p.head, p.stack.is_empty()) {
        (Term::App(..), _) => Some(Rule::Push),
        (Term::Lam(..), false) => Some(Rule::Grab),
        (Term::Callcc, false) => Some(Rule::Save),
        (Term::Cont(_), false) => Some(Rule::Restore),
        _ => None,
    }
}

#[test]
fn exactly_one_rule_applies_and_runs_are_deterministic() {
    let env = Env::default();
    let mut rng = StdRng::seed_from_u64(7);
    let mut fired = [0usize; 4];
    for _ in 0..500 {
        let p0 = random_process(&mut rng);
        let mut p = p0.clone();
        for _ in 0..200 {
            let s = step(&env, &mut NoInstructions, &p);
            assert_eq!(s, step(&env, &mut NoInstructions, &p), "step is a function");
            match (s, expected_rule(&p)) {
                (Step::Next(rule, next), Some(want)) => {
                    assert_eq!(rule, want, "at {p}");
                    fired[[Rule::Push, Rule::Grab, Rule::Save, Rule::Restore]
                        .iter()
                        .position(|r| *r == rule)
                        .unwrap()] += 1;
                    assert!(next.head.is_closed(), "closedness lost after {p}");
                    assert!(next.stack.iter().all(Term::is_closed));
                    p = next;
                }
                (Step::Stuck(_), None) => break,
                (s, want) => panic!("at {p}: got {s:?}, expected {want:?}"),
            }
        }
        let a = Machine::new(&env, NoInstructions)
            .with_trace(true)
            .run(p0.clone(), 300);
        let b = Machine::new(&env, NoInstructions)
            .with_trace(true)
            .run(p0, 300);
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.trace, b.trace);
    }
    assert!(
        fired.iter().all(|&n| n > 0),
        "every rule exercised: {fired:?}"
    );
}

#[test]
fn every_constructor_selects_its_eliminator() {
    let mut stop = StdInstructions::with_probes(["probe"]);
    for family in DATATYPES {
        let n = family.len();
        for (k, (name, params, args)) in family.iter().enumerate() {
            let c = encode_constructor(*params, *args, k + 1, n);
            // eliminator j records its own number, then its arguments
            let elims: Vec<Term> = (1..=n)
                .map(|j| {
                    let xs: Vec<String> = (1..=*args).map(|i| format!("x{i}")).collect();
                    let payload = xs.iter().fold(Term::instr(&format!("e{j}")), |t, x| {
                        Term::apply(Term::reference("Pair.mk"), [t, Term::var(x)])
                    });
                    Term::lams(
                        xs.iter().map(String::as_str),
                        Term::app(Term::instr("stop"), payload),
                    )
                })
                .collect();
            let actuals: Vec<Term> = (0..*args)
                .map(|i| Term::instr(&format!("arg{i}")))
                .collect();
            let t = Term::apply(
                c,
                std::iter::repeat_n(Term::TypeDummy, *params)
                    .chain(actuals.clone())
                    .chain(elims),
            );
            let (head, env) = prelude().link_term(&t, &|x| x == "stop").unwrap();
            let r = Machine::new(&env, &mut stop).run(Process::on_nil(head), 1000);
            let want = actuals
                .iter()
                .fold(Term::instr(&format!("e{}", k + 1)), |t, a| {
                    Term::apply(Term::reference("Pair.mk"), [t, a.clone()])
                });
            assert_eq!(r.outcome, Outcome::Halted(want), "{name}");
        }
    }
}

#[test]
fn storage_operators_deliver_canonical_values() {
    let mut rng = StdRng::seed_from_u64(2024);
    for kind in Kind::ALL {
        for _ in 0..200 {
            common::storage_case(&mut rng, kind).unwrap();
        }
    }
}

#[test]
fn storage_operator_on_a_non_value_does_not_deliver() {
    let r = common::run_storage(Kind::Nat, Term::TypeDummy);
    assert!(r.is_err());
    let prog = parse_program("Define loop = loop ;;").unwrap();
    let mut all = prelude();
    all.extend(prog).unwrap();
    let main = Term::apply(Term::var("Mnat"), [Term::var("stop"), Term::var("loop")]);
    let (head, env) = all.link_term(&main, &|n| n == "stop").unwrap();
    let r = Machine::new(&env, StdInstructions::new()).run(Process::on_nil(head), 1000);
    assert!(matches!(r.outcome, Outcome::FuelExhausted(_)));
}
