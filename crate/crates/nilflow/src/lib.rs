//! Invariant Hermitian geometry on 6-dimensional 2-step nilpotent Lie groups.
//!
//! The crate implements, over a fixed left-invariant coframe:
//!
//! * [`exterior`] — complex-coefficient exterior algebra with the
//!   Chevalley–Eilenberg differential and (p,q) decomposition,
//! * [`lie`] — the two-parameter-family of nilpotent Lie algebras, their
//!   structure constants and the group catalog,
//! * [`hermitian`] — invariant Hermitian metrics, adapted bases and the
//!   balanced / lcK / pluriclosed predicates,
//! * [`gauduchon`] — Gauduchon connections on the tangent bundle and on the
//!   holomorphic tangent bundle, their curvature and curvature traces, each
//!   computed both from first principles and from closed-form tables,
//! * [`flow`] — the Anomaly flow: conserved quantities, the scalar model
//!   problem and its qualitative classification, coupled metric/bundle
//!   evolution, stationary-point detection and Hull–Strominger–Ivanov
//!   residuals,
//! * [`verify`] — seeded random-draw equivalence suites pinning the
//!   closed-form tables to the first-principles computations.
//!
//! Everything is a pure function over immutable value types; parameter sweeps
//! are safe to parallelize from the outside.

pub mod error;
pub mod exterior;
pub mod flow;
pub mod gauduchon;
pub mod hermitian;
pub mod lie;
pub mod sample;
pub mod tol;
pub mod verify;

pub use error::GeometryError;
pub use exterior::{ComplexFrame, Differential, Form};
pub use flow::{ConservedConstants, FlowState, ModelConstants, QualitativeClass, SolutionKind};
pub use gauduchon::{ConnectionForms, CurvatureForms};
pub use hermitian::{AdaptedCoeffs, BundleMetricCoeffs, MetricCoeffs};
pub use lie::{GroupId, JParams, StructureConstants};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, GeometryError>;
