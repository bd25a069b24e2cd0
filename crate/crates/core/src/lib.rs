//! Directed strongly regular graphs from antiflags of tactical configurations.
//!
//! The crate builds DSRGs in two ways: from grouped designs over a partitioned
//! point set (`construct1`, in general, `b = 1`, and `a = 1` forms) and from
//! per-point block families (`construct2`, variants `D1`/`D2` plus `m`-copy
//! blow-ups). Every constructed graph can be checked against the defining
//! adjacency identity with exact integer arithmetic (`graphs`), classified up
//! to isomorphism with automorphism groups (`classify`), and, when its
//! automorphism group is vertex-transitive, turned into an orbital association
//! scheme with fusion analysis (`schemes`). The `cli` module exposes all of it
//! as subcommands; `fixtures` carries the reference adjacency matrices used by
//! the regression catalog.

pub mod classify;
pub mod cli;
pub mod construct1;
pub mod construct2;
pub mod designs;
pub mod fixtures;
pub mod graphs;
pub mod io;
pub mod schemes;

pub use designs::{GroupedDesign, PointwiseFamily, TacticalConfig};
pub use graphs::{Digraph, DsrgParams, SrgParams, VertexLabel};

/// Errors shared by the construction and I/O layers.
///
/// Verification rejections are not errors: a graph failing the DSRG identity
/// is reported through [`graphs::DsrgRejection`] so callers can inspect the
/// witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
