//! Solvers for the propagation velocity of a premixed turbulent flame front
//! in a 2D channel, under the combined action of external turbulence and the
//! hydrodynamic (Darrieus-Landau) instability of the front itself.
//!
//! The crate provides three independent routes to the flame velocity:
//!
//! - [`stationary`]: the production path. The front splits into a stationary
//!   shape and a fast oscillation; the time-averaged Galerkin system for the
//!   stationary slope coefficients is relaxed in virtual time and the total
//!   velocity assembled from its solution plus the closed-form oscillating
//!   response.
//! - [`linear_response`]: the closed-form response of the front to each
//!   turbulent harmonic with no direct instability contribution.
//! - [`pde`]: direct time integration of the underlying front-evolution
//!   equation at reduced size, used to cross-check the split solver and the
//!   linear dispersion relation.
//!
//! [`thermo`] derives the flame's internal-structure parameters, [`spectrum`]
//! synthesizes the frozen turbulence field, [`baselines`] collects the
//! closed-form reference results, and [`parallel`] maps independent sweep
//! points over a thread pool.
//!
//! Working units throughout: velocities in units of the laminar flame speed,
//! lengths in units of the flame thickness; all velocity results are the
//! scaled increase `U_w / U_f - 1`.

pub mod baselines;
mod error;
pub mod linear_response;
pub mod parallel;
pub mod pde;
pub mod spectrum;
pub mod stationary;
pub mod thermo;

pub use error::{Error, Result};
