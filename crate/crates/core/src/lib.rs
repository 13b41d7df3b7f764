//! Round-limited causal structure discovery with ideal interventions.
//!
//! A hidden ground-truth DAG is explored through an intervention oracle. Starting
//! from its observational essential graph, the search strategies in [`search`]
//! choose batches of interventions, one batch per adaptivity round, until every
//! edge is oriented. The number of interventions is compared against the atomic
//! verification number computed in [`verify`].
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command line
//! and the benchmark harness live in the `adaptivity` companion crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chordal;
pub mod graph;
pub mod meek;
pub mod oracle;
pub mod partition;
pub mod search;
pub mod synth;
pub mod verify;

mod util;

#[cfg(test)]
mod testutil;

pub use chordal::{CliqueTree, Peo};
pub use graph::{ChainComponent, Edge, GraphError, MixedGraph, Vertex};
pub use meek::{meek_closure, OrientationDelta, RuleTag};
pub use oracle::{EssentialState, HiddenDag, InterventionSet, Orienter};
