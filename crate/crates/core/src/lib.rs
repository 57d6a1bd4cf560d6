//! Degree of transversality (DOT) and curvature of transversality (COT) for
//! surfaces in three dimensional contact manifolds.
//!
//! The crate works with graphs `z = f(x, y)` in the Heisenberg group and
//! provides:
//!
//! * exact and finite-difference 2-jets, adapted frames and point
//!   classification ([`surface`]);
//! * DOT/COT fields and the residuals of the zero-COT and p-minimal graph
//!   equations ([`transversality`]);
//! * characteristic-curve tracing, the Riccati evolution of DOT, the
//!   comparison principle and singular-point verdicts ([`characteristics`]);
//! * exact solution families and their Burgers splittings ([`construct`]);
//! * the Heisenberg, SU(2) and SL(2) model spaces with exact structure
//!   constants ([`models`]).
//!
//! Batch workloads (grid sampling, tracing many characteristics, singular
//! set refinement) run on rayon when the `parallel` feature is enabled and
//! fall back to plain iterators otherwise; see [`par`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod characteristics;
pub mod construct;
pub mod error;
pub mod export;
pub mod grid;
pub mod models;
mod ode;
pub mod par;
pub mod profile;
pub mod surface;
pub mod transversality;
pub mod verify;

pub use error::{Error, Result};
pub use profile::ProfileFunction;
pub use surface::{Domain, Frame, Jet2, PointClass, SurfaceGraph, TransversalityData};

/// Default threshold on `sqrt(D)` below which a point is treated as singular.
pub const SINGULAR_EPS: f64 = 1e-8;
