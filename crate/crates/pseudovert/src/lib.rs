//! Ham-sandwich cuts and rank selection in pseudo-line arrangements, driven
//! exclusively by triple-orientation (sidedness) queries.
//!
//! The crate never inspects coordinates once an oracle is built: every
//! algorithm speaks to a [`chirotope::TripleOracle`], so realizable point
//! sets and abstract order types (e.g. wiring diagrams) run through the same
//! code paths. The main entry points are
//! [`pseudovertical::select_rank`] (rank selection along a pseudo-vertical)
//! and [`hamsandwich::ham_sandwich_cut`].

pub mod arrangement;
pub mod bench;
pub mod chirotope;
pub mod epsapprox;
pub mod hamsandwich;
pub mod io;
pub mod pseudovertical;
pub mod render;

pub use arrangement::{Arrangement, ArrangementView, Crossing, LineId, Rotated};
pub use hamsandwich::{BiChromatic, Cut};
pub use chirotope::{
    CountingOracle, Orientation, PointId, RealizedPointSet, TripleOracle, TripleTable,
    WiringDiagram,
};
pub use pseudovertical::{GammaOrder, RankQuery, Strategy};
