//! Binary erasure codes with locality `r` and sequential recovery from four
//! and five erasures, built from `r`-regular bipartite graphs of girth at
//! least 6.
//!
//! * [`graph`] produces and validates base graphs.
//! * [`construction`] assembles parity-check matrices from a base graph.
//! * [`decoder`] repairs erasures one local check at a time.
//! * [`analysis`] computes rates and the rate bound, sweeps all erasure
//!   patterns of a given size, searches the minimum distance and audits the
//!   counting argument behind the bound.
//!
//! ```
//! use seqrec_core::{analysis, construction, graph};
//!
//! let g = graph::projective_plane_incidence(2).unwrap();
//! let code = construction::build_t4(&g).unwrap();
//! assert_eq!(analysis::rate(&code), analysis::rate_bound(3).unwrap());
//! ```

pub mod analysis;
pub mod combinatorics;
pub mod construction;
pub mod decoder;
pub mod error;
pub mod formats;
pub mod gf2;
pub mod graph;

pub use construction::{build_t4, build_t5, CodeInstance, Symbol, SymbolIndex};
pub use decoder::{ErasurePattern, PeelOutcome, RecoverySchedule, RecoveryStep};
pub use error::{Error, Result};
pub use gf2::BitMatrix;
pub use graph::{BipartiteGraph, Girth};
