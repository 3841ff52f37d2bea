//! Thermo-chemical parameters of the flame front.
//!
//! Everything downstream needs only four numbers derived from the expansion
//! factor `theta = rho_fuel / rho_burnt`: the cut-off wavelength of the
//! hydrodynamic instability, the critical channel half-width, and the two
//! finite-thickness correction factors. The closure implemented here is the
//! unit-Lewis-number, constant-conduction case.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Internal-structure parameters of a premixed flame front.
///
/// Lengths are in units of the flame thickness, velocities in units of the
/// laminar flame speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlameParams {
    /// Expansion factor `rho_fuel / rho_burnt`.
    pub theta: f64,
    /// Flame thickness (1 in working units).
    pub l_f: f64,
    /// Cut-off wavelength of the instability; shorter waves are damped.
    pub lambda_c: f64,
    /// Critical channel width `lambda_c / 2` below which a planar front is stable.
    pub r_c: f64,
    /// Finite-thickness correction on the inertial term.
    pub c1: f64,
    /// Finite-thickness correction on the damping term.
    pub c2: f64,
}

/// Derives the flame parameters for unit Lewis number and constant thermal
/// conduction:
///
/// ```text
/// lambda_c = 2 pi l_f (1 + theta (theta + 1) / (theta - 1)^2 * ln theta)
/// c1 = 0,   c2 = theta ln theta / (theta - 1),   r_c = lambda_c / 2
/// ```
///
/// Rejects `theta <= 1` (the cut-off wavelength diverges there; the
/// zero-expansion limit is served by `FlameParams::custom`).
pub fn derive_flame_params(theta: f64, l_f: f64) -> Result<FlameParams> {
    if !theta.is_finite() || !l_f.is_finite() {
        return Err(Error::InvalidInput(format!(
            "flame parameters must be finite, got theta = {theta}, l_f = {l_f}"
        )));
    }
    if theta <= 1.0 {
        return Err(Error::InvalidInput(format!(
            "expansion factor must exceed 1, got {theta}"
        )));
    }
    if l_f <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "flame thickness must be positive, got {l_f}"
        )));
    }
    let log_theta = theta.ln();
    let lambda_c =
        2.0 * PI * l_f * (1.0 + theta * (theta + 1.0) / (theta - 1.0).powi(2) * log_theta);
    Ok(FlameParams {
        theta,
        l_f,
        lambda_c,
        r_c: lambda_c / 2.0,
        c1: 0.0,
        c2: theta * log_theta / (theta - 1.0),
    })
}

impl FlameParams {
    /// Builds parameters with user-supplied `lambda_c`, `c1`, `c2` instead of
    /// the derived closure, for sensitivity studies and analytic limit cases.
    /// `r_c` is still tied to `lambda_c / 2`. Accepts `theta >= 1` so the
    /// zero-expansion, zero-thickness limit (`theta = 1`, all corrections 0)
    /// is representable.
    pub fn custom(theta: f64, l_f: f64, lambda_c: f64, c1: f64, c2: f64) -> Result<Self> {
        for (name, v) in [
            ("theta", theta),
            ("l_f", l_f),
            ("lambda_c", lambda_c),
            ("c1", c1),
            ("c2", c2),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {v}")));
            }
        }
        if theta < 1.0 {
            return Err(Error::InvalidInput(format!(
                "expansion factor must be at least 1, got {theta}"
            )));
        }
        if l_f < 0.0 || lambda_c < 0.0 || c1 < 0.0 || c2 < 0.0 {
            return Err(Error::InvalidInput(
                "l_f, lambda_c, c1, c2 must be non-negative".into(),
            ));
        }
        Ok(FlameParams {
            theta,
            l_f,
            lambda_c,
            r_c: lambda_c / 2.0,
            c1,
            c2,
        })
    }

    /// The zero-expansion, zero-thickness limit used by the weak-turbulence
    /// closed forms.
    pub fn zero_expansion() -> Self {
        FlameParams {
            theta: 1.0,
            l_f: 0.0,
            lambda_c: 0.0,
            r_c: 0.0,
            c1: 0.0,
            c2: 0.0,
        }
    }
}
