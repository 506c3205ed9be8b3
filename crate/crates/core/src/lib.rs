//! Special Liouville metrics satisfying the Ricci condition
//! `Delta log sqrt(-2b^2 - K) = 2K`.
//!
//! * [`elliptic`]: quarter period and Jacobi elliptic functions.
//! * [`metric`]: the closed-form family `lambda = sqrt(lambda_+) / cn(s u, k)`.
//! * [`verify`]: finite-difference certification of the Ricci condition,
//!   convergence orders and the affine-log normalization.
//! * [`revolution`]: surfaces of revolution realizing a metric, in both
//!   directions, with mesh export and discrete curvature checks.
//! * [`pmc`]: the one-parameter subfamily attached to parallel mean curvature
//!   surfaces in the complex hyperbolic plane.

pub mod conformal;
pub mod elliptic;
pub mod error;
pub mod export;
pub mod exec;
pub mod interp;
pub mod metric;
pub mod pmc;
pub mod quadrature;
pub mod revolution;
pub mod samples;
pub mod sweep;
pub mod verify;

pub use conformal::{ConformalFactor, Jet};
pub use error::{Error, Result};
pub use exec::Execution;
pub use metric::{derive_constants, DerivedConstants, LiouvilleMetric, MetricParams};
pub use samples::UniformSamples;
