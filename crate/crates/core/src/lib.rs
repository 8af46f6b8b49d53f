//! Minimal catenoids and helicoids in hyperbolic 3-space.
//!
//! The crate computes the generating catenaries of spherical catenoids, their
//! Jacobi fields and stability thresholds, least-area comparisons, the
//! catenoid/helicoid conjugacy dictionary, and surface meshes in the
//! hyperboloid, Poincaré ball and upper half space models.
//!
//! Every constant is recomputed from quadrature and root finding; nothing is
//! tabulated.

// `!(x > 0.0)` guards are intentional: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod catenary;
pub mod cli;
pub mod error;
pub mod helicoid;
pub mod jacobi;
pub mod leastarea;
pub mod lemmas;
pub mod models;
pub mod quad;
pub mod roots;
pub mod surface;

mod special;

pub use catenary::CatenoidParam;
pub use error::{HypError, Result};
pub use helicoid::HelicoidPitch;
pub use quad::{QuadResult, Tolerance};
