//! Entanglement measures for three-qubit states: bipartite, reduced and
//! pairwise concurrences, the three-tangle, the minimum pairwise concurrence
//! (MPC) and the rival measures GMC, concurrence fill and GBC, together with
//! the generalized Schmidt decomposition, closed-form mixed-state families,
//! a numerical convex roof of the tangle and a randomized property suite.
//!
//! Basis order is `|ijk⟩ ↦ 4i + 2j + k`, with qubit A the most significant.

pub mod error;
pub mod families;
pub mod fmt;
pub mod linalg;
pub mod measures;
pub mod props;
pub mod roof;
pub mod sampling;
pub mod schmidt;
pub mod states;

pub use error::{Error, Result};
pub use families::{Branch, GhzWPoint, GhzWWtPoint, Thresholds};
pub use linalg::{partial_trace, ComplexMatrix, DensityMatrix, Pair, PureState3, Qubit, C64};
pub use measures::{
    bipartite_concurrence, concurrence_fill, gbc, gmc, measure_report, mpc, pairwise_concurrence,
    three_tangle, wootters_concurrence, MeasureReport,
};
pub use props::{run_property_suite, SuiteReport};
pub use roof::{minimize_tangle, Decomposition, RoofEstimate};
pub use sampling::RngSpec;
pub use schmidt::{schmidt_decompose, LocalUnitaryTriple, SchmidtForm};
