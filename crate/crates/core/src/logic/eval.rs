use super::{Atom, Compound, Path, Truth, Valuation};

/// Total evaluation of a compound under a valuation.
pub fn eval<V: Valuation + ?Sized>(val: &V, c: &Compound) -> bool {
    match c {
        Compound::Atomic(a) => val.value(a),
        Compound::And(l, r) => eval(val, l) && eval(val, r),
        Compound::Or(l, r) => eval(val, l) || eval(val, r),
        Compound::Not(c) => !eval(val, c),
    }
}

/// Looks an atom up in a partial interpretation. The entry nearest the node
/// end wins when a malformed path mentions an atom twice.
pub fn find(p: &Path, a: &Atom) -> Truth {
    p.iter()
        .find(|(b, _)| *b == a)
        .map_or(Truth::Unknown, |(_, v)| Truth::from_bool(v))
}

/// Kleene strong three-valued evaluation under a partial interpretation.
pub fn peval(p: &Path, c: &Compound) -> Truth {
    match c {
        Compound::Atomic(a) => find(p, a),
        Compound::And(l, r) => match peval(p, l) {
            Truth::False => Truth::False,
            lv => lv.and(peval(p, r)),
        },
        Compound::Or(l, r) => match peval(p, l) {
            Truth::True => Truth::True,
            lv => lv.or(peval(p, r)),
        },
        Compound::Not(c) => peval(p, c).negate(),
    }
}

/// Atoms of a compound in order of first occurrence, left to right.
pub fn atoms_of(c: &Compound) -> Vec<Atom> {
    let mut out = Vec::new();
    let mut todo = vec![c];
    while let Some(c) = todo.pop() {
        match c {
            Compound::Atomic(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Compound::And(l, r) | Compound::Or(l, r) => {
                todo.push(r);
                todo.push(l);
            }
            Compound::Not(c) => todo.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Assignment, Term};
    use std::collections::HashSet;

    fn at(p: &str, n: u64) -> Atom {
        Atom::new(p, vec![Term::Num(n)])
    }

    fn lit(a: &Atom) -> Compound {
        Compound::atom(a.clone())
    }

    // Truth-table oracle: a partial value is known iff all total extensions agree.
    fn oracle(p: &Path, c: &Compound) -> Truth {
        let assigned: Vec<_> = p.iter().map(|(a, _)| a.clone()).collect();
        let free: Vec<Atom> = atoms_of(c)
            .into_iter()
            .filter(|a| !assigned.contains(a))
            .collect();
        let mut seen = HashSet::new();
        for bits in 0u32..(1 << free.len()) {
            let mut v = Assignment::new(false);
            for (a, b) in p.iter() {
                v.set(a.clone(), b);
            }
            for (k, a) in free.iter().enumerate() {
                v.set(a.clone(), bits & (1 << k) != 0);
            }
            seen.insert(eval(&v, c));
        }
        match (seen.contains(&true), seen.contains(&false)) {
            (true, false) => Truth::True,
            (false, true) => Truth::False,
            _ => Truth::Unknown,
        }
    }

    #[test]
    fn eval_examples() {
        let c42 = at("Crow", 42);
        let b42 = at("Black", 42);
        let w42 = at("White", 42);
        let v = Assignment::new(false).with(c42.clone(), true);
        assert!(eval(&v, &lit(&c42)));
        for d in [true, false] {
            let v = Assignment::new(d);
            assert!(eval(&v, &Compound::or(lit(&c42), Compound::not(lit(&c42)))));
        }
        let v = Assignment::new(false)
            .with(b42.clone(), true)
            .with(w42.clone(), true);
        let nbw = Compound::not(Compound::and(lit(&b42), lit(&w42)));
        assert!(!eval(&v, &nbw));
        // exhaustive: false only when both are true
        for bits in 0..4 {
            let v = Assignment::new(false)
                .with(b42.clone(), bits & 1 != 0)
                .with(w42.clone(), bits & 2 != 0);
            assert_eq!(eval(&v, &nbw), bits != 3);
        }
    }

    #[test]
    fn find_examples() {
        let c42 = at("Crow", 42);
        let w42 = at("White", 42);
        assert_eq!(find(&Path::Top, &c42), Truth::Unknown);
        assert_eq!(find(&Path::Top.left(c42.clone()), &c42), Truth::True);
        let p = Path::Top.left(c42.clone()).right(w42.clone());
        assert_eq!(find(&p, &c42), Truth::True);
        assert_eq!(find(&p, &w42), Truth::False);
    }

    #[test]
    fn find_prefers_node_end_on_malformed_paths() {
        let a = at("P", 0);
        let p = Path::Top.left(a.clone()).right(a.clone());
        assert_eq!(find(&p, &a), Truth::False);
    }

    #[test]
    fn peval_examples() {
        let c42 = at("Crow", 42);
        let b42 = at("Black", 42);
        let w42 = at("White", 42);
        assert_eq!(peval(&Path::Top, &lit(&c42)), Truth::Unknown);
        assert_eq!(
            peval(&Path::Top.right(c42.clone()), &lit(&c42)),
            Truth::False
        );

        let cb = Compound::or(Compound::not(lit(&c42)), lit(&b42));
        let p = Path::Top.left(c42.clone());
        assert_eq!(peval(&p, &cb), Truth::Unknown);
        assert_eq!(oracle(&p, &cb), Truth::Unknown);

        let nbw = Compound::not(Compound::and(lit(&b42), lit(&w42)));
        let p = Path::Top.left(b42.clone()).left(w42.clone());
        assert_eq!(peval(&p, &nbw), Truth::False);
        assert_eq!(oracle(&p, &nbw), Truth::False);
    }

    #[test]
    fn atoms_of_examples() {
        let a = at("P", 0);
        let c42 = at("Crow", 42);
        let b42 = at("Black", 42);
        assert_eq!(atoms_of(&lit(&a)), vec![a.clone()]);
        let c = Compound::or(Compound::not(lit(&c42)), lit(&b42));
        let got = atoms_of(&c);
        assert_eq!(got, vec![c42.clone(), b42.clone()]);
        let set: HashSet<_> = got.into_iter().collect();
        assert_eq!(set, HashSet::from([c42, b42]));
        assert_eq!(atoms_of(&Compound::and(lit(&a), lit(&a))), vec![a]);
    }

    #[test]
    fn kleene_differs_from_truth_tables_only_on_tautologies() {
        // p ∨ ¬p is true on every extension but Kleene leaves it unknown.
        let a = at("P", 0);
        let c = Compound::or(lit(&a), Compound::not(lit(&a)));
        assert_eq!(peval(&Path::Top, &c), Truth::Unknown);
        assert_eq!(oracle(&Path::Top, &c), Truth::True);
    }
}
