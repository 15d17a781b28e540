//! Straight-line drawings of graphs with spanning ratio close to 1, and
//! exact verification of drawings.
//!
//! Coordinates are arbitrary-precision rationals throughout construction.
//! Metric quantities that involve square roots come back as certified
//! intervals.

pub mod drawing;
pub mod error;
pub mod generators;
pub mod geom;
pub mod graph;
pub mod interval;
pub mod layout;
pub mod metrics;
pub mod planar;
pub mod verify;

pub use drawing::{Drawing, Epsilon};
pub use error::{DegreeTargetMissed, Error, Result, SpanningTreeError};
pub use geom::{Point, Rational};
pub use graph::{Graph, RootedTree, Toughness, VertexOrder};
pub use interval::{Ext, Interval};
pub use metrics::MetricReport;
