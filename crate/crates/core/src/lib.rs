//! Exact rewriting and verification for the ZX-calculus with triangle
//! generators (ΔZX) and the ZW calculus extended with a `1/√2` scalar.
//!
//! - [`scalar`] exact arithmetic over `Z[e^{iπ/4}, 1/√2]`.
//! - [`diagram`] the open-graph data model and the two compositions.
//! - [`semantics`] standard interpretation by tensor contraction.
//! - [`rewrite`] rule templates, matching, application, soundness sweeps,
//!   derivation replay and greedy simplification.
//! - [`functors`], [`projector`], [`synth`], [`circuit`] translations between
//!   the calculi, the `P_r` projectors, matrix synthesis and circuit ingestion.
//! - [`lemmas`] derived equations with their statements and proof scripts.

pub mod angle;
pub mod circuit;
pub mod diagram;
pub mod error;
pub mod functors;
pub mod gadgets;
pub mod json;
pub mod lemmas;
pub mod projector;
pub mod rewrite;
pub mod scalar;
pub mod semantics;
pub mod synth;

pub use angle::{Angle, Binding, PiFrac};
pub use diagram::{Calculus, Diagram, End, NodeId, NodeKind};
pub use error::{Error, Result};
pub use scalar::{ApproxScalar, CycloScalar, Ring};
pub use semantics::{check_equal, interpret, Equality, Matrix, Mode};
