//! Bijective enumeration of the Herbrand universe and of argument tuples.
//!
//! Terms are ordered by weight (constants weigh 1, numeral `n` weighs
//! `n + 1`, an application weighs 1 plus its arguments), then by symbol
//! declaration order, then lexicographically by argument ranks. Tuples of a
//! fixed total weight are ordered lexicographically by component ranks.
//!
//! Counts are kept in saturating `u128` arithmetic: a saturated count only
//! ever stands for a block larger than any `u64` rank.

use std::sync::Mutex;

use super::Signature;
use crate::logic::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Fun(usize, usize),
    Numerals,
}

#[derive(Debug, Default)]
struct Tables {
    /// `terms[w]`: number of terms of weight `w`.
    terms: Vec<u128>,
    /// `tuples[k][s]`: number of `k`-tuples of total weight `s`.
    tuples: Vec<Vec<u128>>,
    /// `below[w]`: number of terms of weight strictly below `w`.
    below: Vec<u128>,
}

/// Enumerates ground terms and tuples of ground terms for one signature.
#[derive(Debug)]
pub struct TermEnumerator {
    slots: Vec<Slot>,
    names: Vec<crate::logic::Name>,
    consts: u128,
    numerals: bool,
    /// No function symbol of positive arity: counts have a closed form.
    flat: bool,
    max_arity: usize,
    tables: Mutex<Tables>,
}

impl TermEnumerator {
    pub fn new(sig: &Signature) -> TermEnumerator {
        let mut slots = Vec::new();
        for (id, f) in sig.funs().iter().enumerate() {
            if sig.numerals_slot() == Some(id) {
                slots.push(Slot::Numerals);
            }
            slots.push(Slot::Fun(id, f.arity));
        }
        if sig.numerals_slot() == Some(sig.funs().len()) {
            slots.push(Slot::Numerals);
        }
        let max_arity = sig.funs().iter().map(|f| f.arity).max().unwrap_or(0);
        TermEnumerator {
            slots,
            names: sig.funs().iter().map(|f| f.name.clone()).collect(),
            consts: sig.funs().iter().filter(|f| f.arity == 0).count() as u128,
            numerals: sig.numerals(),
            flat: max_arity == 0,
            max_arity,
            tables: Mutex::new(Tables::default()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.consts == 0 && !self.numerals
    }

    /// The universe is finite iff it consists of constants only.
    pub fn is_finite(&self) -> bool {
        self.flat && !self.numerals
    }

    pub fn weight(t: &Term) -> u64 {
        match t {
            Term::Num(n) => n.saturating_add(1),
            Term::Fn(_, args) => args
                .iter()
                .fold(1u64, |w, a| w.saturating_add(Self::weight(a))),
        }
    }

    fn flat_terms(&self, w: u64) -> u128 {
        match w {
            0 => 0,
            1 => self.consts + self.numerals as u128,
            _ => self.numerals as u128,
        }
    }

    /// Number of terms of weight exactly `w`.
    pub fn count(&self, w: u64) -> u128 {
        if self.flat {
            return self.flat_terms(w);
        }
        let mut tb = self.tables.lock().unwrap();
        self.grow(&mut tb, w as usize, self.max_arity);
        tb.terms[w as usize]
    }

    /// Number of `k`-tuples of total weight `s`.
    pub fn tuple_count(&self, k: usize, s: u64) -> u128 {
        match k {
            0 => (s == 0) as u128,
            1 => self.count(s),
            _ => {
                let mut tb = self.tables.lock().unwrap();
                self.grow(&mut tb, s as usize, k);
                tb.tuples[k][s as usize]
            }
        }
    }

    fn grow(&self, tb: &mut Tables, upto: usize, kmax: usize) {
        let kmax = kmax.max(self.max_arity);
        if tb.tuples.len() <= kmax {
            // Wider tuples needed: recompute every row from scratch.
            tb.tuples = vec![Vec::new(); kmax + 1];
            tb.terms.clear();
            tb.below.clear();
        }
        while tb.terms.len() <= upto {
            let w = tb.terms.len();
            let t = if self.flat {
                self.flat_terms(w as u64)
            } else if w == 0 {
                0
            } else {
                self.slots.iter().fold(0u128, |acc, s| {
                    acc.saturating_add(match *s {
                        Slot::Numerals => 1,
                        Slot::Fun(_, 0) => (w == 1) as u128,
                        Slot::Fun(_, k) => tb.tuples[k][w - 1],
                    })
                })
            };
            let under = match w {
                0 => 0,
                _ => tb.below[w - 1].saturating_add(tb.terms[w - 1]),
            };
            tb.below.push(under);
            tb.terms.push(t);
            let k_rows = tb.tuples.len();
            for k in 0..k_rows {
                let c = if k == 0 {
                    (w == 0) as u128
                } else {
                    let mut acc = 0u128;
                    for w1 in 1..=w {
                        let rest = tb.tuples[k - 1][w - w1];
                        if rest != 0 {
                            acc = acc.saturating_add(tb.terms[w1].saturating_mul(rest));
                        }
                    }
                    acc
                };
                tb.tuples[k].push(c);
            }
        }
    }

    /// Number of terms of weight strictly below `w`.
    fn below(&self, w: u64) -> u128 {
        if self.flat {
            return match w {
                0 | 1 => 0,
                _ => (self.consts + self.numerals as u128)
                    .saturating_add((w as u128 - 2) * self.numerals as u128),
            };
        }
        let mut tb = self.tables.lock().unwrap();
        self.grow(&mut tb, w as usize, self.max_arity);
        tb.below[w as usize]
    }

    /// The `k`-th ground term, or `None` past the end of a finite universe.
    pub fn nth_term(&self, k: u64) -> Option<Term> {
        if self.is_empty() {
            return None;
        }
        let k = k as u128;
        if self.flat {
            let first = self.flat_terms(1);
            if k < first {
                return Some(self.unrank_in_weight(1, k));
            }
            if !self.numerals {
                return None;
            }
            // weights >= 2 hold exactly one numeral each
            let w = (k - first) as u64 + 2;
            return Some(Term::Num(w - 1));
        }
        // the universe is infinite here: find the last weight with below(w) <= k
        let mut hi = 2u64;
        while self.below(hi) <= k {
            hi *= 2;
        }
        let mut lo = 1u64;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.below(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(self.unrank_in_weight(lo, k - self.below(lo)))
    }

    /// Inverse of [`nth_term`](Self::nth_term); `None` for terms outside the signature.
    pub fn term_rank(&self, t: &Term) -> Option<u64> {
        let w = Self::weight(t);
        let r = self.below(w).checked_add(self.rank_in_weight(t, w)?)?;
        u64::try_from(r).ok()
    }

    fn unrank_in_weight(&self, w: u64, mut j: u128) -> Term {
        for s in &self.slots {
            match *s {
                Slot::Numerals => {
                    if j == 0 {
                        return Term::Num(w - 1);
                    }
                    j -= 1;
                }
                Slot::Fun(id, 0) => {
                    if w == 1 {
                        if j == 0 {
                            return Term::Fn(self.names[id].clone(), Vec::new());
                        }
                        j -= 1;
                    }
                }
                Slot::Fun(id, k) => {
                    let block = self.tuple_count(k, w - 1);
                    if j < block {
                        return Term::Fn(self.names[id].clone(), self.unrank_tuple(k, w - 1, j));
                    }
                    j -= block;
                }
            }
        }
        unreachable!("rank within weight {w} out of range")
    }

    /// Rank of `t` among terms of its weight `w`.
    fn rank_in_weight(&self, t: &Term, w: u64) -> Option<u128> {
        let mut off = 0u128;
        for s in &self.slots {
            match (*s, t) {
                (Slot::Numerals, Term::Num(_)) => return Some(off),
                (Slot::Fun(id, k), Term::Fn(name, args)) if *self.names[id] == **name => {
                    if args.len() != k {
                        return None;
                    }
                    if k == 0 {
                        return Some(off);
                    }
                    return Some(off.saturating_add(self.rank_tuple_in(args, w - 1)?));
                }
                (Slot::Numerals, _) => off += 1,
                (Slot::Fun(_, 0), _) => off += (w == 1) as u128,
                (Slot::Fun(_, k), _) => {
                    off = off.saturating_add(self.tuple_count(k, w - 1));
                }
            }
        }
        None
    }

    /// The `idx`-th `k`-tuple of total weight `s`.
    pub fn unrank_tuple(&self, k: usize, s: u64, mut idx: u128) -> Vec<Term> {
        let mut out = Vec::with_capacity(k);
        let mut s = s;
        for left in (1..=k).rev() {
            if left == 1 {
                out.push(self.unrank_in_weight(s, idx));
                break;
            }
            let mut w1 = 1u64;
            loop {
                assert!(w1 <= s, "tuple rank out of range");
                let rest = self.tuple_count(left - 1, s - w1);
                let block = self.count(w1).saturating_mul(rest);
                if idx < block {
                    out.push(self.unrank_in_weight(w1, idx / rest));
                    idx %= rest;
                    s -= w1;
                    break;
                }
                idx -= block;
                w1 += 1;
            }
        }
        out
    }

    /// Rank of a tuple among tuples of the same length and total weight.
    pub fn rank_tuple(&self, args: &[Term]) -> Option<u128> {
        self.rank_tuple_in(args, args.iter().map(Self::weight).sum())
    }

    /// [`rank_tuple`](Self::rank_tuple) with the total weight `s` known, so
    /// the last component's weight is never recomputed.
    fn rank_tuple_in(&self, args: &[Term], mut s: u64) -> Option<u128> {
        let mut off = 0u128;
        for (pos, t) in args.iter().enumerate() {
            let left = args.len() - pos;
            if left == 1 {
                return Some(off.saturating_add(self.rank_in_weight(t, s)?));
            }
            let w1 = Self::weight(t);
            for v in 1..w1 {
                let rest = self.tuple_count(left - 1, s - v);
                off = off.saturating_add(self.count(v).saturating_mul(rest));
            }
            let rest = self.tuple_count(left - 1, s - w1);
            off = off.saturating_add(self.rank_in_weight(t, w1)?.saturating_mul(rest));
            s -= w1;
        }
        Some(off)
    }
}
