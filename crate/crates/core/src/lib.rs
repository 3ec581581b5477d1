//! Computational workbench for de Sitter spacetime in conformal coordinates.
//!
//! The crate is layered bottom-up:
//!
//! * [`clifford`]: Clifford algebra of a 4- or 5-dimensional quadratic space.
//! * [`chart`]: coordinate charts, metric derivatives, connection and curvature.
//! * [`forms`] and [`tensors`]: exterior calculus and mixed-tensor divergences.
//! * [`desitter`]: embedding, Killing fields, Killing determinant, teleparallel frame.
//! * [`dynamics`]: geodesic, hybrid and constrained curve integration.
//! * [`komar`]: Komar currents and energy quadratures.
//! * [`algebra`]: exact so(1,4) commutators and Casimirs.
//! * [`report`] and [`suites`]: named checks producing machine-readable reports.

pub mod algebra;
pub mod chart;
pub mod clifford;
pub mod desitter;
pub mod dynamics;
pub mod error;
pub mod forms;
pub mod komar;
pub mod report;
pub mod rng;
pub mod suites;
pub mod tensors;

pub use chart::{Chart, ChartParams, FdConfig, FdScheme, GeometryAtPoint, Mat4, Point};
pub use clifford::{Multivector, Signature};
pub use desitter::DeSitter;
pub use error::{Error, Result};
pub use forms::FormField;
pub use report::{CheckReport, Status};
pub use tensors::{MixedTensorField, VectorField};
