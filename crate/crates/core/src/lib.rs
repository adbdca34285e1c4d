//! Exact solvers for exhaustive border minimization on microarrays.
//!
//! A microarray is an `r x m` grid of cells, each holding one probe
//! sequence. Probes are synthesized by a deposition sequence: every step
//! applies a mask that exposes exactly the cells whose next character is the
//! one being deposited (the exhaustive rule). The border length counts,
//! summed over all masks, the neighboring cell pairs with one exposed and one
//! covered cell.
//!
//! The crate provides
//! - the embedding, mask and border-length semantics ([`embed`],
//!   [`derive_masks`], [`compute_bl`]);
//! - enumerators for good deposition sequences, primal sequences and column
//!   placements ([`enumeration`]);
//! - a bounded integer program solver ([`ilp`]);
//! - solvers for a fixed placement ([`pbmp`]) and for the full problem
//!   ([`bmp`]);
//! - instance generators built from the hardness reductions
//!   ([`reductions`]).
//!
//! With the default `parallel` feature the solvers spread independent
//! branches over rayon's thread pool. Results do not depend on the number of
//! threads.

pub mod alphabet;
pub mod bmp;
pub mod config;
pub mod cost;
pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod ilp;
pub mod instance;
pub mod mask;
mod par;
pub mod pbmp;
pub mod placement;
pub mod reductions;
pub mod solution;

pub use alphabet::{Alphabet, Symbol, GAP};
pub use config::{SearchStats, Solved, SolverConfig};
pub use cost::{compute_bl, idle_positions, is_good, strip_redundant, CostMethod};
pub use embedding::{border_pair, embed, DepositionSequence, Embedding};
pub use error::{Error, Result};
pub use instance::{Cell, Instance, Probe};
pub use mask::{derive_masks, Mask};
pub use placement::Placement;
pub use solution::Solution;
