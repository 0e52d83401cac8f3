//! Binary-independence term weighting and ranked retrieval.
//!
//! The crate derives term weights from the log-odds of a term appearing in
//! relevant versus non-relevant documents, with pluggable estimates for the
//! relevant-document side: a constant, a hyperbolic curve, or a lifted
//! document-frequency rate whose corpus-sized special case is the usual
//! IDF. On top of the weights sit a small inverted index, deterministic
//! ranked retrieval with TREC-style run output, side-by-side weight tables,
//! and a self-verification suite that recomputes every closed form from
//! the generic weight over exhaustive and randomized grids.
//!
//! ```
//! use rsjidf::index::{Document, InvertedIndex};
//! use rsjidf::retrieval::{rank, Query};
//! use rsjidf::scheme::WeightingScheme;
//!
//! let index = InvertedIndex::build(&[
//!     Document::new("d1", "a b"),
//!     Document::new("d2", "b c"),
//! ]).unwrap();
//! let scheme = WeightingScheme::parse("lift:L=100").unwrap();
//! let hits = rank(&index, &Query::new("q1", "a"), &scheme, 10).unwrap();
//! assert_eq!(hits.entries[0].doc_id, "d1");
//! ```

pub mod analysis;
pub mod index;
pub mod retrieval;
pub mod scheme;
pub mod weighting;

pub use index::{Document, IndexError, InvertedIndex};
pub use retrieval::{Query, RankedEntry, RankedList, ScoreError};
pub use scheme::{LiftFunction, SchemeParseError, WeightingScheme};
pub use weighting::{EstimatorParams, LogBase, Probability, TermStats, WeightError};
