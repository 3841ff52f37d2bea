//! Closed-form oscillating response of the front to each turbulent harmonic.
//!
//! Mode `i`, forced at frequency `k_i` (working units), responds with
//! amplitude `sqrt(2) U_i / (D_i k_i)` and phase lag `gamma_i`:
//!
//! ```text
//! D_i^2 = [ (theta-1)/2 (1 - r_c k_i / pi)
//!           - (theta+1)/(2 theta) (1 + c1 l_f k_i) ]^2
//!         + (1 + c2 l_f k_i)^2
//! cos gamma_i =  bracket / D_i,   sin gamma_i = -(1 + c2 l_f k_i) / D_i
//! ```
//!
//! Only the particular (forced) solution is represented here; the growing
//! homogeneous solutions belong to the stationary problem, where the
//! instability saturates.

use crate::error::Result;
use crate::spectrum::TurbulenceSpectrum;
use crate::thermo::FlameParams;
use std::f64::consts::{FRAC_PI_4, SQRT_2};

/// Per-mode response factors, phase shifts, and oscillation amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResponse {
    /// Response denominators `D_i` (always positive).
    pub d: Vec<f64>,
    /// Phase shifts `gamma_i` in `(-pi, 0)`.
    pub gamma: Vec<f64>,
    /// Oscillation amplitude envelopes `sqrt(2) U_i / (D_i k_i)`.
    pub h_amp: Vec<f64>,
}

/// The instability/inertia bracket and damping factor of mode `k`.
fn bracket_and_damping(params: &FlameParams, k: f64) -> (f64, f64) {
    let theta = params.theta;
    let instability = 0.5 * (theta - 1.0) * (1.0 - params.r_c * k / std::f64::consts::PI);
    let inertia = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k);
    let damping = 1.0 + params.c2 * params.l_f * k;
    (instability - inertia, damping)
}

/// Computes `D_i`, `gamma_i` and the oscillation envelopes for every mode of
/// the spectrum. `gamma_i` is taken with a two-argument arctangent from the
/// (cos, sin) numerators, which keeps it in `(-pi, 0)` without quadrant
/// ambiguity.
pub fn response_factors(params: &FlameParams, spec: &TurbulenceSpectrum) -> ModeResponse {
    let n = spec.n_modes();
    let mut d = Vec::with_capacity(n);
    let mut gamma = Vec::with_capacity(n);
    let mut h_amp = Vec::with_capacity(n);
    for i in 0..n {
        let k = spec.k[i];
        let (bracket, damping) = bracket_and_damping(params, k);
        let di = bracket.hypot(damping);
        d.push(di);
        gamma.push(f64::atan2(-damping, bracket));
        h_amp.push(SQRT_2 * spec.amp[i] / (di * k));
    }
    ModeResponse { d, gamma, h_amp }
}

/// Oscillating front coefficients `H_i(t) = h_amp_i cos(k_i t + phi_i + pi/4 + gamma_i)`.
/// The full oscillating front is `H(x, t) = sum_i H_i(t) cos(pi i x / R)`.
pub fn oscillating_coefficients(
    resp: &ModeResponse,
    spec: &TurbulenceSpectrum,
    t: f64,
) -> Vec<f64> {
    (0..spec.n_modes())
        .map(|i| {
            let arg = spec.k[i] * t + spec.phase[i] + FRAC_PI_4 + resp.gamma[i];
            resp.h_amp[i] * arg.cos()
        })
        .collect()
}

/// Velocity increase of the front under turbulence alone, with no direct
/// instability contribution: `theta / 4 * sum (U_i / D_i)^2` in working
/// units. Independent of the spectrum phases.
pub fn turbulent_velocity_no_dl(params: &FlameParams, spec: &TurbulenceSpectrum) -> f64 {
    let resp = response_factors(params, spec);
    velocity_from_response(&resp, spec, params.theta)
}

/// The oscillating-part velocity term shared with the full solver.
pub(crate) fn velocity_from_response(
    resp: &ModeResponse,
    spec: &TurbulenceSpectrum,
    theta: f64,
) -> f64 {
    let sum: f64 = spec
        .amp
        .iter()
        .zip(&resp.d)
        .map(|(&u, &d)| {
            let q = u / d;
            q * q
        })
        .sum();
    0.25 * theta * sum
}

/// Residual of the forced per-mode oscillator when the closed-form response
/// is substituted back, evaluated at time `t`:
///
/// ```text
/// (theta+1)/(2 theta) (1 + c1 l_f k) / k * H''
///   + (1 + c2 l_f k) H'
///   + (theta-1)/2 (1 - r_c k / pi) k * H
///   - sqrt(2) U_i cos(k t + phi_i + pi/4)
/// ```
///
/// Vanishes identically for the exact response; used as the normative check
/// on the sign conventions of `D_i` and `gamma_i`.
pub fn response_residual(
    params: &FlameParams,
    spec: &TurbulenceSpectrum,
    resp: &ModeResponse,
    mode: usize,
    t: f64,
) -> Result<f64> {
    let k = spec.k[mode];
    let theta = params.theta;
    let a = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k) / k;
    let b = 1.0 + params.c2 * params.l_f * k;
    let c = 0.5 * (theta - 1.0) * (1.0 - params.r_c * k / std::f64::consts::PI) * k;
    let omega = k;
    let arg = omega * t + spec.phase[mode] + FRAC_PI_4 + resp.gamma[mode];
    let h = resp.h_amp[mode] * arg.cos();
    let h_dot = -resp.h_amp[mode] * omega * arg.sin();
    let h_ddot = -resp.h_amp[mode] * omega * omega * arg.cos();
    let forcing = SQRT_2 * spec.amp[mode] * (omega * t + spec.phase[mode] + FRAC_PI_4).cos();
    Ok(a * h_ddot + b * h_dot + c * h - forcing)
}
