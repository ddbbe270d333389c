//! Optical response of a three-level atom driven by an incoherent pump and a
//! weak probe.
//!
//! The crate has three layers:
//!
//! * [`model`] evaluates the closed-form steady state: populations,
//!   probe coherences, susceptibility for the Λ and V schemes, the dispersion
//!   slope, the group index and the sub/superluminal regime.
//! * [`dynamics`] integrates the full density-matrix equations of motion and
//!   solves for their steady state directly. It never calls into the closed
//!   forms and serves as the independent reference for them.
//! * [`scan`] sweeps either layer over detuning, pump rate and level
//!   splitting, in parallel when the `parallel` feature is on.
//!
//! All rates and frequencies are expressed in units of a reference decay
//! rate γ, and susceptibilities in units of the scale α.

pub mod dynamics;
mod error;
pub mod exec;
pub mod model;
mod params;
pub mod scan;

pub use error::{Error, Result};
pub use params::{EffectiveRates, Scheme, SystemParams, DEFAULT_NU_P, DEFAULT_RABI, WEAK_PROBE_RATIO};
