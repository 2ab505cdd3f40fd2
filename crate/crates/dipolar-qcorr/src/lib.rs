//! Simulation of a pair of dipolar-coupled spins 1/2 subject to dephasing,
//! with entanglement (concurrence) and quantum discord computed from the
//! closed-form evolution and cross-validated against an independent
//! numerical integrator.
//!
//! The numerics are generic over the floating-point type via
//! [`scalar::Scalar`]; the `*64` aliases below are what the CLI and the
//! verification battery use.

pub mod dynamics;
pub mod error;
pub mod qcorrelations;
pub mod scalar;
pub mod search;
pub mod smatrix;
pub mod spinmodel;
pub mod sweeps;
pub mod verify;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;
pub type CMat64 = smatrix::CMat<f64>;
pub type CMat32 = smatrix::CMat<f32>;
pub type Spectrum64 = smatrix::Spectrum<f64>;
pub type SimParams64 = spinmodel::SimParams<f64>;
pub type XState64 = dynamics::XState<f64>;
pub type ConcurrenceResult64 = qcorrelations::ConcurrenceResult<f64>;
pub type DiscordResult64 = qcorrelations::DiscordResult<f64>;
