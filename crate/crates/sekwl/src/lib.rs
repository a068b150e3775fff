//! Graph color refinement with substructure-enhanced K-hop hashing.
//!
//! The crate provides, bottom-up:
//!
//! - [`graph`] — immutable CSR graphs, edge-list and graph6 formats,
//!   deterministic generators (including the 4x4 rook's graph and the
//!   Shrikhande graph, the classic pair that degree- and hop-based
//!   refinement cannot tell apart);
//! - [`ego`] — K-hop neighborhoods, ego-networks with their internal
//!   edge sets, layer edge configurations, intersection arrays;
//! - [`walk`] — lazy random-walk landing probabilities and the
//!   per-node substructure encoding (self-return, root-to-hop, and
//!   within-hop landing statistics);
//! - [`refine`] — the refinement family: plain 1-WL, K-hop, subgraph
//!   (encoded and nested realizations), and substructure-enhanced
//!   K-hop (SEK), each producing stable-color fingerprints;
//! - [`forward`] — a parameter-free numeric K-hop message-passing
//!   layer over (state, encoding) tuples with jumping-knowledge
//!   readout;
//! - [`harness`] — discrimination reports, the random-regular
//!   walk-separation experiment, exact substructure counting by two
//!   independent routes, and corpus helpers.
//!
//! Everything is deterministic: fixed hash mixing, seeded generators,
//! and value-sorted floating-point accumulation make outputs identical
//! across runs, machines, and thread counts.

pub mod ego;
pub mod error;
pub mod forward;
pub mod graph;
pub mod harness;
pub mod mix;
pub mod refine;
pub mod walk;

pub use error::{Error, Result};

/// Version tag stamped into every exported report.
pub const FORMAT_VERSION: &str = "1";
