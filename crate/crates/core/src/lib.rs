//! Unsharp qubit observables and their joint measurability.
//!
//! - [`operator`]: effects, density operators, discrete POMs, the Born rule.
//! - [`jm`] and [`oracle`]: closed-form and constructive coexistence tests.
//! - [`sphere`]: the rotation-covariant spin POM on the unit sphere.
//! - [`sequential`]: Lüders instruments and measurement disturbance.
//! - [`classical`]: informationally complete embedding and the barycentric
//!   (Misra) reduction of classical states.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod jm;
pub mod json;
pub mod operator;
pub mod optimize;
pub mod oracle;
pub mod sampling;
pub mod sequential;
pub mod sphere;

pub use error::{Result, UnsharpError};
pub use jm::{JmReport, Verdict};
pub use operator::{ComplexMatrix, DensityOperator, DiscretePom, Effect, QubitEffect, Vec3};
