use std::collections::BTreeMap;
use std::sync::Mutex;

use super::enumerate::TermEnumerator;
use super::parse::{parse_ground_atom, parse_ground_term};
use super::{Formula, PAtom, PTerm, ParseError, Signature, TheoryError, TheorySpec};
use crate::logic::{Atom, Compound, GroundTheory, Index, Term};

/// A compiled theory: the index enumeration, grounding and relevance matching
/// behind the [`GroundTheory`] interface.
#[derive(Debug)]
pub struct Theory {
    spec: TheorySpec,
    terms: TermEnumerator,
    /// `cumulative[s]`: number of indices of weight strictly below `s`.
    cumulative: Mutex<Vec<u128>>,
    max_weight: Option<u64>,
}

impl Theory {
    /// Compiles a parsed theory.
    pub fn compile(spec: TheorySpec) -> Result<Theory, TheoryError> {
        if spec.axioms.is_empty() {
            return Err(TheoryError::EmptyTheory);
        }
        let terms = TermEnumerator::new(&spec.signature);
        let max_vars = spec.axioms.iter().map(|a| a.vars.len()).max().unwrap_or(0);
        let max_weight = if max_vars == 0 || terms.is_empty() {
            Some(0)
        } else if terms.is_finite() {
            Some(max_vars as u64)
        } else {
            None
        };
        Ok(Theory {
            spec,
            terms,
            cumulative: Mutex::new(vec![0]),
            max_weight,
        })
    }

    /// Parses and compiles theory-file text.
    pub fn from_source(src: &str) -> Result<Theory, TheoryError> {
        Theory::compile(super::parse_theory(src)?)
    }

    pub fn spec(&self) -> &TheorySpec {
        &self.spec
    }

    pub fn signature(&self) -> &Signature {
        &self.spec.signature
    }

    pub fn terms(&self) -> &TermEnumerator {
        &self.terms
    }

    pub fn nth_term(&self, k: u64) -> Result<Term, TheoryError> {
        if self.terms.is_empty() {
            return Err(TheoryError::EmptyUniverse);
        }
        self.terms.nth_term(k).ok_or(TheoryError::OutOfRange(k))
    }

    pub fn term_rank(&self, t: &Term) -> Option<u64> {
        self.terms.term_rank(t)
    }

    fn vars(&self, axiom: usize) -> usize {
        self.spec.axioms[axiom].vars.len()
    }

    /// Indices of weight exactly `s`.
    fn weight_count(&self, s: u64) -> u128 {
        if self.max_weight.is_some_and(|m| s > m) {
            return 0;
        }
        (0..self.spec.axioms.len()).fold(0u128, |acc, ax| {
            acc.saturating_add(self.terms.tuple_count(self.vars(ax), s))
        })
    }

    fn below(&self, s: u64) -> u128 {
        let mut cum = self.cumulative.lock().unwrap();
        while cum.len() as u64 <= s {
            let w = cum.len() as u64 - 1;
            let next = cum[w as usize].saturating_add(self.weight_count(w));
            cum.push(next);
        }
        cum[s as usize]
    }

    /// The index of rank `k`.
    pub fn nth_index(&self, k: u64) -> Result<Index, TheoryError> {
        if let Some(n) = self.index_count() {
            if k >= n {
                return Err(TheoryError::OutOfRange(k));
            }
        }
        let target = k as u128;
        // exponential then binary search over weights
        let mut hi = 1u64;
        while self.below(hi) <= target {
            hi *= 2;
        }
        let mut lo = 0u64;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.below(mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = lo;
        let mut off = target - self.below(s);
        for (ax, schema) in self.spec.axioms.iter().enumerate() {
            let block = self.terms.tuple_count(schema.vars.len(), s);
            if off < block {
                let args = self.terms.unrank_tuple(schema.vars.len(), s, off);
                return Ok(Index::new(ax, &schema.name, args, k));
            }
            off -= block;
        }
        unreachable!("index weight block out of range")
    }

    /// Rank of an axiom instance, or `None` if the arguments do not fit.
    pub fn rank_of(&self, axiom: usize, args: &[Term]) -> Option<u64> {
        let schema = self.spec.axioms.get(axiom)?;
        if schema.vars.len() != args.len() {
            return None;
        }
        let s: u64 = args.iter().map(TermEnumerator::weight).sum();
        let mut r = self.below(s);
        for ax in 0..axiom {
            r = r.saturating_add(self.terms.tuple_count(self.vars(ax), s));
        }
        if !args.is_empty() {
            // every argument must belong to the universe
            if args.iter().any(|t| self.terms.term_rank(t).is_none()) {
                return None;
            }
            r = r.saturating_add(self.terms.rank_tuple(args)?);
        }
        u64::try_from(r).ok()
    }

    pub fn index_of(&self, axiom: usize, args: Vec<Term>) -> Option<Index> {
        let rank = self.rank_of(axiom, &args)?;
        Some(Index::new(axiom, &self.spec.axioms[axiom].name, args, rank))
    }

    /// `Th i`: the axiom body with the index's terms substituted.
    pub fn ground(&self, i: &Index) -> Result<Compound, TheoryError> {
        let schema = self
            .spec
            .axioms
            .get(i.axiom())
            .filter(|s| s.vars.len() == i.args().len() && *s.name == *i.name())
            .ok_or_else(|| TheoryError::InvalidIndex(i.to_string()))?;
        Ok(self.instantiate(&schema.body, i.args()))
    }

    fn instantiate(&self, f: &Formula, args: &[Term]) -> Compound {
        match f {
            Formula::Atom(a) => Compound::Atomic(self.ground_atom(a, args)),
            Formula::Not(f) => Compound::not(self.instantiate(f, args)),
            Formula::And(l, r) => {
                Compound::and(self.instantiate(l, args), self.instantiate(r, args))
            }
            Formula::Or(l, r) => Compound::or(self.instantiate(l, args), self.instantiate(r, args)),
        }
    }

    pub(crate) fn ground_atom(&self, a: &PAtom, args: &[Term]) -> Atom {
        let pred = &self.spec.signature.preds()[a.pred].name;
        Atom::new(
            pred,
            a.args.iter().map(|t| self.ground_term(t, args)).collect(),
        )
    }

    fn ground_term(&self, t: &PTerm, args: &[Term]) -> Term {
        match t {
            PTerm::Var(v) => args[*v].clone(),
            PTerm::Num(n) => Term::Num(*n),
            PTerm::Fn(id, ts) => Term::Fn(
                self.spec.signature.funs()[*id].name.clone(),
                ts.iter().map(|t| self.ground_term(t, args)).collect(),
            ),
        }
    }

    /// All indices whose compound mentions `atom`, by rank. Variables not
    /// fixed by matching are completed up to total argument weight `weight_bound`.
    pub fn relevant_indices(&self, atom: &Atom, weight_bound: u64) -> Vec<Index> {
        let mut found: BTreeMap<u64, Index> = BTreeMap::new();
        for (ax, schema) in self.spec.axioms.iter().enumerate() {
            for pattern in schema.body.atoms() {
                let pred = &self.spec.signature.preds()[pattern.pred];
                if *pred.name != *atom.pred() || pattern.args.len() != atom.args().len() {
                    continue;
                }
                let mut binding = vec![None; schema.vars.len()];
                let matched = pattern
                    .args
                    .iter()
                    .zip(atom.args())
                    .all(|(p, t)| self.match_term(p, t, &mut binding));
                if !matched {
                    continue;
                }
                for args in self.complete(&binding, weight_bound) {
                    if let Some(i) = self.index_of(ax, args) {
                        found.entry(i.rank()).or_insert(i);
                    }
                }
            }
        }
        found.into_values().collect()
    }

    fn match_term(&self, p: &PTerm, t: &Term, binding: &mut [Option<Term>]) -> bool {
        match (p, t) {
            (PTerm::Var(v), _) => match &binding[*v] {
                Some(bound) => bound == t,
                None => {
                    binding[*v] = Some(t.clone());
                    true
                }
            },
            (PTerm::Num(n), Term::Num(m)) => n == m,
            (PTerm::Fn(id, ps), Term::Fn(name, ts)) => {
                *self.spec.signature.funs()[*id].name == **name
                    && ps.len() == ts.len()
                    && ps
                        .iter()
                        .zip(ts)
                        .all(|(p, t)| self.match_term(p, t, binding))
            }
            _ => false,
        }
    }

    /// Fills unbound variables with every tuple keeping the total weight in bound.
    fn complete(&self, binding: &[Option<Term>], weight_bound: u64) -> Vec<Vec<Term>> {
        let fixed: u64 = binding.iter().flatten().map(TermEnumerator::weight).sum();
        let free = binding.iter().filter(|b| b.is_none()).count();
        if free == 0 {
            return vec![binding.iter().flatten().cloned().collect()];
        }
        let mut out = Vec::new();
        if self.terms.is_empty() || fixed + free as u64 > weight_bound {
            return out;
        }
        for s in free as u64..=weight_bound - fixed {
            let n = self.terms.tuple_count(free, s);
            let mut idx = 0u128;
            while idx < n {
                let mut fill = self.terms.unrank_tuple(free, s, idx).into_iter();
                out.push(
                    binding
                        .iter()
                        .map(|b| b.clone().unwrap_or_else(|| fill.next().unwrap()))
                        .collect(),
                );
                idx += 1;
            }
        }
        out
    }

    pub fn parse_atom(&self, src: &str) -> Result<Atom, ParseError> {
        parse_ground_atom(&self.spec.signature, src)
    }

    pub fn parse_term(&self, src: &str) -> Result<Term, ParseError> {
        parse_ground_term(&self.spec.signature, src)
    }
}

impl GroundTheory for Theory {
    fn index_at(&self, rank: u64) -> Option<Index> {
        self.nth_index(rank).ok()
    }

    fn index_count(&self) -> Option<u64> {
        let max = self.max_weight?;
        u64::try_from(self.below(max + 1)).ok()
    }

    fn compound(&self, index: &Index) -> Compound {
        self.ground(index)
            .unwrap_or_else(|e| panic!("compound of a foreign index: {e}"))
    }

    fn relevant(&self, atom: &Atom, weight_bound: u64) -> Vec<Index> {
        self.relevant_indices(atom, weight_bound)
    }

    fn weight(&self, index: &Index) -> u64 {
        index.args().iter().map(TermEnumerator::weight).sum()
    }

    fn lookup(&self, axiom: &str, args: &[Term]) -> Option<Index> {
        let (ax, _) = self.spec.axiom(axiom)?;
        self.index_of(ax, args.to_vec())
    }
}
