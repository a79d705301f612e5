//! Direct construction of Herbrand trees by index-order scanning.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::logic::{
    atoms_of, find, htree_check, peval, Atom, Compound, GroundTheory, HerbrandTree, Index, Path,
    Truth, Violation,
};

pub const DEFAULT_FUEL: u64 = 1_000_000;
pub const DEFAULT_MAX_DEPTH: usize = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Indices relevant to the assigned atoms first, then the fair scan.
    #[default]
    RelevanceFirst,
    /// Plain scan in index order.
    Fair,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "relevance" | "relevance-first" => Ok(Strategy::RelevanceFirst),
            "fair" => Ok(Strategy::Fair),
            _ => Err(format!(
                "unknown strategy `{s}` (expected relevance or fair)"
            )),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::RelevanceFirst => "relevance",
            Strategy::Fair => "fair",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    /// Total number of index inspections allowed for the whole build.
    pub fuel: u64,
    pub max_depth: usize,
    pub strategy: Strategy,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            fuel: DEFAULT_FUEL,
            max_depth: DEFAULT_MAX_DEPTH,
            strategy: Strategy::RelevanceFirst,
        }
    }
}

impl BuildConfig {
    pub fn with_strategy(strategy: Strategy) -> BuildConfig {
        BuildConfig {
            strategy,
            ..BuildConfig::default()
        }
    }

    pub fn fuel(mut self, fuel: u64) -> BuildConfig {
        self.fuel = fuel;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustReason {
    Fuel,
    /// Every index of a finite theory is true on the path.
    IndicesExhausted,
}

impl fmt::Display for ExhaustReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExhaustReason::Fuel => f.write_str("fuel exhausted"),
            ExhaustReason::IndicesExhausted => {
                f.write_str("every axiom instance holds on the path (the theory has a model)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeDecision {
    Leaf(Index),
    Branch(Atom),
    Exhausted(ExhaustReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildErrorKind {
    Exhausted(ExhaustReason),
    DepthExceeded(usize),
    /// The finished tree failed its own check; indicates a bug.
    SelfCheck(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct BuildError {
    pub kind: BuildErrorKind,
    /// The open path where construction stopped.
    pub path: Path,
    /// The longest path opened so far.
    pub deepest: Path,
    pub steps: u64,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            BuildErrorKind::Exhausted(r) => write!(f, "{r} after {} scan steps", self.steps)?,
            BuildErrorKind::DepthExceeded(d) => write!(f, "depth limit {d} exceeded")?,
            BuildErrorKind::SelfCheck(v) => return write!(f, "built tree failed its check: {v}"),
        }
        write!(
            f,
            "; open path {}; deepest path {}",
            self.path, self.deepest
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub scan_steps: u64,
    pub decisions: u64,
    /// Decisions settled by the relevance phase.
    pub relevance_hits: u64,
    pub fair_scans: u64,
    /// Largest index weight the fair scan has touched.
    pub frontier: u64,
}

/// A builder with its fuel, caches and statistics for one theory.
pub struct Builder<'a, T: GroundTheory + ?Sized> {
    th: &'a T,
    cfg: BuildConfig,
    stats: BuildStats,
    /// Indices in rank order with their compounds, filled lazily.
    scanned: Vec<(Index, Compound)>,
    compounds: HashMap<Index, Compound>,
    relevant: HashMap<(Atom, u64), Vec<Index>>,
    deepest: Path,
}

impl<'a, T: GroundTheory + ?Sized> Builder<'a, T> {
    pub fn new(th: &'a T, cfg: BuildConfig) -> Self {
        Builder {
            th,
            cfg,
            stats: BuildStats::default(),
            scanned: Vec::new(),
            compounds: HashMap::new(),
            relevant: HashMap::new(),
            deepest: Path::Top,
        }
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    fn tick(&mut self) -> bool {
        if self.stats.scan_steps >= self.cfg.fuel {
            return false;
        }
        self.stats.scan_steps += 1;
        true
    }

    fn compound(&mut self, i: &Index) -> Compound {
        if let Some(c) = self.scanned.get(i.rank() as usize).filter(|(j, _)| j == i) {
            return c.1.clone();
        }
        self.compounds
            .entry(i.clone())
            .or_insert_with(|| self.th.compound(i))
            .clone()
    }

    /// Leaf, branch, or nothing for one index.
    fn inspect(p: &Path, i: &Index, c: &Compound) -> Option<NodeDecision> {
        match peval(p, c) {
            Truth::False => Some(NodeDecision::Leaf(i.clone())),
            Truth::Unknown => {
                let a = atoms_of(c)
                    .into_iter()
                    .find(|a| find(p, a) == Truth::Unknown)
                    .expect("unknown compound without an unassigned atom");
                Some(NodeDecision::Branch(a))
            }
            Truth::True => None,
        }
    }

    /// Chooses what to put at the end of path `p`.
    pub fn decide(&mut self, p: &Path) -> NodeDecision {
        self.stats.decisions += 1;
        if self.cfg.strategy == Strategy::RelevanceFirst {
            let bound = self.stats.frontier;
            let mut candidates = BTreeSet::new();
            for (a, _) in p.iter() {
                let key = (a.clone(), bound);
                let th = self.th;
                let rel = self
                    .relevant
                    .entry(key)
                    .or_insert_with(|| th.relevant(a, bound));
                candidates.extend(rel.iter().cloned());
            }
            for i in candidates {
                if !self.tick() {
                    return NodeDecision::Exhausted(ExhaustReason::Fuel);
                }
                let c = self.compound(&i);
                if let Some(d) = Self::inspect(p, &i, &c) {
                    self.stats.relevance_hits += 1;
                    return d;
                }
            }
        }
        self.fair_scan(p)
    }

    fn fair_scan(&mut self, p: &Path) -> NodeDecision {
        self.stats.fair_scans += 1;
        let mut rank = 0u64;
        loop {
            if !self.tick() {
                return NodeDecision::Exhausted(ExhaustReason::Fuel);
            }
            if rank as usize == self.scanned.len() {
                match self.th.index_at(rank) {
                    Some(i) => {
                        let c = self.th.compound(&i);
                        self.scanned.push((i, c));
                    }
                    None => return NodeDecision::Exhausted(ExhaustReason::IndicesExhausted),
                }
            }
            let (i, c) = &self.scanned[rank as usize];
            let w = self.th.weight(i);
            self.stats.frontier = self.stats.frontier.max(w);
            if let Some(d) = Self::inspect(p, i, c) {
                return d;
            }
            rank += 1;
        }
    }

    /// Builds a tree depth first, true branch first, and checks it.
    pub fn build(&mut self) -> Result<HerbrandTree, BuildError> {
        let tree = self.build_at(&Path::Top)?;
        htree_check(self.th, &tree).map_err(|v| BuildError {
            path: v.path.clone(),
            kind: BuildErrorKind::SelfCheck(v),
            deepest: self.deepest.clone(),
            steps: self.stats.scan_steps,
        })?;
        Ok(tree)
    }

    fn fail(&self, kind: BuildErrorKind, p: &Path) -> BuildError {
        BuildError {
            kind,
            path: p.clone(),
            deepest: self.deepest.clone(),
            steps: self.stats.scan_steps,
        }
    }

    fn build_at(&mut self, p: &Path) -> Result<HerbrandTree, BuildError> {
        if p.len() > self.deepest.len() {
            self.deepest = p.clone();
        }
        match self.decide(p) {
            NodeDecision::Leaf(i) => Ok(HerbrandTree::Contrad(i)),
            NodeDecision::Branch(a) => {
                assert_eq!(find(p, &a), Truth::Unknown, "branching on an assigned atom");
                if p.len() >= self.cfg.max_depth {
                    return Err(self.fail(BuildErrorKind::DepthExceeded(self.cfg.max_depth), p));
                }
                let t = self.build_at(&p.left(a.clone()))?;
                let f = self.build_at(&p.right(a.clone()))?;
                Ok(HerbrandTree::exp(a, t, f))
            }
            NodeDecision::Exhausted(r) => Err(self.fail(BuildErrorKind::Exhausted(r), p)),
        }
    }
}

/// One decision with a fresh fuel budget.
pub fn decide<T: GroundTheory + ?Sized>(th: &T, p: &Path, cfg: BuildConfig) -> NodeDecision {
    Builder::new(th, cfg).decide(p)
}

pub fn build_tree<T: GroundTheory + ?Sized>(
    th: &T,
    cfg: BuildConfig,
) -> Result<HerbrandTree, BuildError> {
    Builder::new(th, cfg).build()
}
