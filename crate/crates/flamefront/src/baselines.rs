//! Closed-form reference results: curved stationary flames, single-harmonic
//! and wide-tube turbulent velocities, the zero-expansion law, the 3D
//! doubling rule, and the sub-grid scale conversion.

use crate::error::{Error, Result};
use crate::thermo::FlameParams;

/// Integral-scale quantities recovered from a sub-grid calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubgridScales {
    /// Integral turbulent length scale, cm.
    pub integral_length: f64,
    /// Integral turbulent intensity over the laminar flame speed.
    pub integral_velocity_ratio: f64,
    /// Kinematic viscosity, cm^2/s.
    pub viscosity: f64,
    /// Turbulent Reynolds number at the integral scale.
    pub reynolds: f64,
}

fn require_theta_above_one(theta: f64) -> Result<()> {
    if !(theta > 1.0) || !theta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "expansion factor must exceed 1, got {theta}"
        )));
    }
    Ok(())
}

/// Velocity amplitude prefactor shared by the curved-flame formulas.
fn curved_flame_coeff(theta: f64) -> f64 {
    2.0 * theta * (theta - 1.0).powi(2) / (theta.powi(3) + theta.powi(2) + 3.0 * theta - 1.0)
}

/// Velocity increase of the curved stationary flame in a channel of scaled
/// width `r_over_rc = R / R_c`:
///
/// ```text
/// coeff(theta) * x (1 - x),   x = M R_c / R
/// ```
///
/// with `M` the positive integer maximizing `x (1 - x)` (the number of humps
/// the front settles into; ties resolve toward the smaller `M`). Zero at and
/// below the bifurcation point `R = R_c`.
pub fn curved_flame_velocity(theta: f64, r_over_rc: f64) -> Result<f64> {
    require_theta_above_one(theta)?;
    if r_over_rc <= 1.0 {
        return Ok(0.0);
    }
    let y = 0.5 * r_over_rc;
    let hump = |m: f64| {
        let x = m / r_over_rc;
        x * (1.0 - x)
    };
    let lo = y.floor().max(1.0);
    let hi = y.ceil().max(1.0);
    // ties toward smaller M: strict inequality favors lo
    let best = if hump(hi) > hump(lo) { hump(hi) } else { hump(lo) };
    Ok(curved_flame_coeff(theta) * best)
}

/// Maximal velocity increase of a stationary wrinkled flame, attained when
/// the channel fits the humps at `x = 1/2` (for example `R = 2 R_c`).
pub fn curved_flame_limit(theta: f64) -> Result<f64> {
    require_theta_above_one(theta)?;
    Ok(curved_flame_coeff(theta) * 0.25)
}

/// Turbulent velocity increase for a single harmonic in a channel of scaled
/// width `r_over_rc`, evaluated verbatim:
///
/// ```text
/// theta * u_rms^2 / [ (1 + pi c2 l_f / R)^2
///   + ( (theta-1)/2 (1 - R_c/R) - (theta+1)/(2 theta) (1 + pi c1 l_f / R) )^2 ]
/// ```
pub fn single_harmonic_velocity(params: &FlameParams, r_over_rc: f64, u_rms: f64) -> f64 {
    let theta = params.theta;
    let r = r_over_rc * params.r_c;
    let (damping, bracket) = if params.r_c == 0.0 {
        // zero-expansion, zero-thickness limit: the channel width drops out
        (1.0, 0.5 * (theta - 1.0) - (theta + 1.0) / (2.0 * theta))
    } else {
        (
            1.0 + std::f64::consts::PI * params.c2 * params.l_f / r,
            0.5 * (theta - 1.0) * (1.0 - 1.0 / r_over_rc)
                - (theta + 1.0) / (2.0 * theta)
                    * (1.0 + std::f64::consts::PI * params.c1 * params.l_f / r),
        )
    };
    theta / (damping * damping + bracket * bracket) * u_rms * u_rms
}

/// Wide-tube limit of the single-harmonic velocity:
/// `4 theta^3 / (4 theta^2 + (theta^2 - 2 theta - 1)^2) * u_rms^2`.
pub fn wide_tube_limit(theta: f64, u_rms: f64) -> f64 {
    let q = theta * theta - 2.0 * theta - 1.0;
    4.0 * theta.powi(3) / (4.0 * theta * theta + q * q) * u_rms * u_rms
}

/// Zero-expansion weak-turbulence law `u_rms^2 / 2`.
pub fn clavin_williams(u_rms: f64) -> f64 {
    0.5 * u_rms * u_rms
}

/// Doubling rule relating a 2D velocity increase to its 3D counterpart.
pub fn three_d_estimate(two_d_velocity: f64) -> f64 {
    2.0 * two_d_velocity
}

/// Converts a sub-grid intensity at the short-wavelength band edge
/// `R = scale_ratio * l_f` into the integral-scale intensity and Reynolds
/// number via the Kolmogorov cascade:
///
/// ```text
/// U_T / U_f = (u_rms / U_f) * (l_t U_f / (scale_ratio * nu))^(1/3)
/// Re_T = (U_T / U_f) * U_f * l_t / nu
/// ```
pub fn subgrid_scaling(
    u_rms_over_uf: f64,
    l_t: f64,
    u_f: f64,
    nu: f64,
    scale_ratio: f64,
) -> Result<SubgridScales> {
    for (name, v) in [
        ("u_rms_over_uf", u_rms_over_uf),
        ("l_t", l_t),
        ("u_f", u_f),
        ("nu", nu),
        ("scale_ratio", scale_ratio),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let ratio = u_rms_over_uf * (l_t * u_f / (scale_ratio * nu)).cbrt();
    Ok(SubgridScales {
        integral_length: l_t,
        integral_velocity_ratio: ratio,
        viscosity: nu,
        reynolds: ratio * u_f * l_t / nu,
    })
}
