//! Herbrand trees for contradictory finite universal theories.

pub mod builder;
pub mod builtin;
pub mod debugger;
pub mod frontend;
pub mod kam;
pub mod logic;
pub mod sched;
pub mod treeio;
