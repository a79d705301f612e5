use std::fmt;

use crate::kam::Process;
use crate::logic::{Atom, HerbrandTree, Index, Path, Truth};

/// A partial Herbrand tree whose leaves may still be pending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PTree {
    Contrad(Index),
    Frozen(Process),
    Working,
    Node(Atom, Box<PTree>, Box<PTree>),
}

impl PTree {
    pub fn has_frozen(&self) -> bool {
        match self {
            PTree::Frozen(_) => true,
            PTree::Node(_, t, f) => t.has_frozen() || f.has_frozen(),
            _ => false,
        }
    }

    fn count(&self, pick: &dyn Fn(&PTree) -> bool) -> usize {
        let here = usize::from(pick(self));
        match self {
            PTree::Node(_, t, f) => here + t.count(pick) + f.count(pick),
            _ => here,
        }
    }

    pub fn frozen_count(&self) -> usize {
        self.count(&|t| matches!(t, PTree::Frozen(_)))
    }

    pub fn working_count(&self) -> usize {
        self.count(&|t| matches!(t, PTree::Working))
    }

    /// The plain tree, if nothing is pending.
    pub fn to_tree(&self) -> Option<HerbrandTree> {
        match self {
            PTree::Contrad(i) => Some(HerbrandTree::Contrad(i.clone())),
            PTree::Node(a, t, f) => Some(HerbrandTree::exp(a.clone(), t.to_tree()?, f.to_tree()?)),
            _ => None,
        }
    }
}

impl fmt::Display for PTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTree::Contrad(i) => write!(f, "Contrad({i})"),
            PTree::Frozen(_) => f.write_str("Frozen"),
            PTree::Working => f.write_str("Working"),
            PTree::Node(a, t, e) => write!(f, "Node({a}, {t}, {e})"),
        }
    }
}

#[derive(Clone, Debug)]
struct Frame {
    atom: Atom,
    /// Whether the focus lies in the true branch.
    on_true: bool,
    sibling: PTree,
}

/// The tree under construction, focused on the working node.
#[derive(Clone, Debug)]
pub struct Zipper {
    frames: Vec<Frame>,
    focus: PTree,
}

impl Default for Zipper {
    fn default() -> Self {
        Zipper::new()
    }
}

impl Zipper {
    pub fn new() -> Zipper {
        Zipper {
            frames: Vec::new(),
            focus: PTree::Working,
        }
    }

    /// Truth of `a` in the knowledge base (the path above the focus).
    pub fn find(&self, a: &Atom) -> Truth {
        self.frames
            .iter()
            .rev()
            .find(|fr| fr.atom == *a)
            .map_or(Truth::Unknown, |fr| Truth::from_bool(fr.on_true))
    }

    /// The knowledge base as a path.
    pub fn kb(&self) -> Path {
        self.frames
            .iter()
            .fold(Path::Top, |p, fr| p.extend(fr.atom.clone(), fr.on_true))
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    pub fn is_working(&self) -> bool {
        matches!(self.focus, PTree::Working)
    }

    /// Replaces the working node by `Node(a, Frozen(p), Working)`, focusing
    /// the new false branch.
    pub fn branch(&mut self, atom: Atom, frozen: Process) {
        assert!(self.is_working(), "branch away from the working node");
        self.frames.push(Frame {
            atom,
            on_true: false,
            sibling: PTree::Frozen(frozen),
        });
    }

    fn zip_up(&mut self) {
        while let Some(fr) = self.frames.pop() {
            let focus = std::mem::replace(&mut self.focus, PTree::Working);
            let (t, f) = if fr.on_true {
                (focus, fr.sibling)
            } else {
                (fr.sibling, focus)
            };
            self.focus = PTree::Node(fr.atom, Box::new(t), Box::new(f));
        }
    }

    /// Seals the working node with a contradiction and moves to the leftmost
    /// pending process, if any.
    pub fn seal(&mut self, index: Index) -> Option<Process> {
        assert!(self.is_working(), "seal away from the working node");
        self.focus = PTree::Contrad(index);
        self.zip_up();
        if !self.focus.has_frozen() {
            return None;
        }
        loop {
            match std::mem::replace(&mut self.focus, PTree::Working) {
                PTree::Frozen(p) => return Some(p),
                PTree::Node(a, t, f) => {
                    if t.has_frozen() {
                        self.frames.push(Frame {
                            atom: a,
                            on_true: true,
                            sibling: *f,
                        });
                        self.focus = *t;
                    } else {
                        self.frames.push(Frame {
                            atom: a,
                            on_true: false,
                            sibling: *t,
                        });
                        self.focus = *f;
                    }
                }
                other => unreachable!("no pending leaf below {other}"),
            }
        }
    }

    /// The whole tree, zipped up.
    pub fn root(&self) -> PTree {
        let mut z = self.clone();
        z.zip_up();
        z.focus
    }

    pub fn is_complete(&self) -> bool {
        self.frames.is_empty() && self.focus.to_tree().is_some()
    }
}

impl fmt::Display for Zipper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root())
    }
}
