//! Stationary front component under the combined action of the instability
//! and the time-averaged turbulent forcing.
//!
//! The front splits into a stationary shape `G(x)` and an oscillating part;
//! averaging over the fast oscillations leaves an algebraic system for the
//! slope coefficients `G_i` of
//!
//! ```text
//! G(x) = sum_i (R / (pi i)) G_i cos(pi i x / R)
//! ```
//!
//! which is solved by relaxation in a virtual time: the system's right-hand
//! side is integrated with the stiff diagonal linear term handled exactly
//! and the quadratic couplings treated explicitly, until the right-hand side
//! vanishes to tolerance. The planar state `G = 0` is a root but is unstable
//! for channels wider than the critical width, so a small random initial
//! state flows to the saturated front.

use crate::error::{Error, Result};
use crate::linear_response::{velocity_from_response, ModeResponse};
use crate::spectrum::TurbulenceSpectrum;
use crate::thermo::FlameParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Channel geometry and Galerkin truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Channel width in units of the flame thickness.
    pub width: f64,
    /// Number of retained cosine harmonics.
    pub n_modes: usize,
}

/// Virtual-time relaxation controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Virtual-time increment.
    pub step: f64,
    /// Convergence tolerance on the max-norm of the right-hand side.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: u64,
    /// Amplitude of the random initial slope coefficients.
    pub init_amplitude: f64,
    /// Seed of the random initial state.
    pub init_seed: u64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            step: 0.01,
            tol: 1e-10,
            max_iter: 1_000_000,
            init_amplitude: 1e-3,
            init_seed: 0,
        }
    }
}

/// Converged (or not) stationary slope coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryState {
    /// Slope coefficients `G_i`, `i = 1..=n_modes`.
    pub g: Vec<f64>,
    /// Max-norm of the algebraic residual at the returned state.
    pub residual_norm: f64,
    /// Virtual-time iterations taken.
    pub iterations: u64,
    /// Whether `residual_norm <= tol` was reached.
    pub converged: bool,
}

/// Sum-index convolution `A_m = sum_{i=1}^{m-1} G_i G_{m-i}` for
/// `m = 0..=2N` (`A_0 = A_1 = 0`; indices beyond `N` contribute nothing).
pub fn convolve_a(g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let mut a = vec![0.0; 2 * n + 1];
    for (m, am) in a.iter_mut().enumerate().take(2 * n + 1).skip(2) {
        let j_lo = m.saturating_sub(n).max(1);
        let j_hi = (m - 1).min(n);
        let mut acc = 0.0;
        for j in j_lo..=j_hi {
            acc += g[j - 1] * g[m - j - 1];
        }
        *am = acc;
    }
    a
}

/// Difference-index correlation `B_l = sum_{i=1}^{N-l} G_i G_{i+l}` for
/// `l = 0..=N` (`B_0 = sum G_i^2`, `B_N = 0`).
pub fn convolve_b(g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let mut b = vec![0.0; n + 1];
    for (l, bl) in b.iter_mut().enumerate().take(n + 1) {
        let mut acc = 0.0;
        for i in 0..n.saturating_sub(l) {
            acc += g[i] * g[i + l];
        }
        *bl = acc;
    }
    b
}

/// Time-averaged turbulent forcing on the stationary modes: even modes
/// `i = 2j` receive `(U_j / D_j)^2`, everything else zero. Returned with
/// index `i - 1` for mode `i`, length `n`.
pub fn turbulent_forcing(spec: &TurbulenceSpectrum, resp: &ModeResponse, n: usize) -> Vec<f64> {
    let mut a_turb = vec![0.0; n];
    for i in 1..=n {
        if i % 2 == 0 && i / 2 <= spec.n_modes() {
            let j = i / 2 - 1;
            let q = spec.amp[j] / resp.d[j];
            a_turb[i - 1] = q * q;
        }
    }
    a_turb
}

/// Nonlinear coefficient of the averaged system,
/// `(1/2) (theta/(theta-1) + (theta-1)^2/(4 theta))`.
fn nonlinear_coeff(theta: f64) -> f64 {
    0.5 * (theta / (theta - 1.0) + (theta - 1.0).powi(2) / (4.0 * theta))
}

/// Right-hand side of the relaxation flow, split into the diagonal linear
/// part (returned by the caller via `lin`) and the quadratic couplings
/// written into `out` (index `i - 1` for mode `i`).
fn quadratic_rhs(g: &[f64], b_coef: f64, c_nl: f64, a_turb: &[f64], out: &mut [f64]) {
    let n = g.len();
    for i in 1..=n {
        let mut b = 0.0;
        for j in 0..n - i {
            b += g[j] * g[j + i];
        }
        let mut a = 0.0;
        for j in 1..i {
            a += g[j - 1] * g[i - j - 1];
        }
        out[i - 1] = -b_coef * b + c_nl * (a + a_turb[i - 1]);
    }
}

/// Residual of the averaged algebraic system at `g`, per mode:
///
/// ```text
/// G_i (1 - i R_c / R) - theta B_i / (theta - 1)
///   + (1/2) (theta/(theta-1) + (theta-1)^2/(4 theta)) (A_i + A_i_turb)
/// ```
///
/// The planar state is always a root; `theta = 1` is rejected because the
/// `theta / (theta - 1)` factor is singular there.
pub fn residual(
    g: &[f64],
    params: &FlameParams,
    channel: &ChannelSpec,
    a_turb: &[f64],
) -> Result<Vec<f64>> {
    if !(params.theta > 1.0) {
        return Err(Error::InvalidInput(format!(
            "stationary system requires theta > 1, got {}",
            params.theta
        )));
    }
    let n = g.len();
    if a_turb.len() != n {
        return Err(Error::InvalidInput(format!(
            "forcing length {} does not match mode count {n}",
            a_turb.len()
        )));
    }
    let theta = params.theta;
    let mut out = vec![0.0; n];
    quadratic_rhs(
        g,
        theta / (theta - 1.0),
        nonlinear_coeff(theta),
        a_turb,
        &mut out,
    );
    for i in 1..=n {
        let lin = 1.0 - i as f64 * params.r_c / channel.width;
        out[i - 1] += lin * g[i - 1];
    }
    Ok(out)
}

/// Max-norm of the flow right-hand side at `g`, with `quad` already filled.
fn flow_norm(g: &[f64], quad: &[f64], r_c_over_width: f64) -> f64 {
    let mut res_norm = 0.0f64;
    for i in 0..g.len() {
        let lambda = 1.0 - (i + 1) as f64 * r_c_over_width;
        res_norm = res_norm.max((lambda * g[i] + quad[i]).abs());
    }
    res_norm
}

/// Jacobian of the algebraic system at `g`, row-major `n x n`.
fn assemble_jacobian(
    g: &[f64],
    b_coef: f64,
    c_nl: f64,
    r_c_over_width: f64,
    jac: &mut [f64],
) {
    let n = g.len();
    jac.fill(0.0);
    for i in 1..=n {
        let row = (i - 1) * n;
        jac[row + i - 1] = 1.0 - i as f64 * r_c_over_width;
        for k in 1..=n {
            let mut db = 0.0;
            if k + i <= n {
                db += g[k + i - 1];
            }
            if k > i {
                db += g[k - i - 1];
            }
            let da = if i > k { 2.0 * g[i - k - 1] } else { 0.0 };
            jac[row + k - 1] += -b_coef * db + c_nl * da;
        }
    }
}

/// In-place LU solve of `a x = b` with partial pivoting (`a` row-major,
/// overwritten). Returns false on a vanishing pivot.
fn lu_solve(a: &mut [f64], b: &mut [f64]) -> bool {
    let n = b.len();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val < 1e-300 {
            return false;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            b.swap(col, pivot_row);
        }
        let inv = 1.0 / a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == 0.0 {
                continue;
            }
            a[row * n + col] = 0.0;
            for j in col + 1..n {
                a[row * n + j] -= factor * a[col * n + j];
            }
            b[row] -= factor * b[col];
        }
    }
    for row in (0..n).rev() {
        let mut acc = b[row];
        for j in row + 1..n {
            acc -= a[row * n + j] * b[j];
        }
        b[row] = acc / a[row * n + row];
    }
    true
}

/// Relaxes the averaged system to a stationary state.
///
/// The virtual-time flow is integrated with the stiff diagonal linear term
/// advanced exactly and the quadratic couplings explicit, until the residual
/// is small enough that the iterate sits in the attraction basin of a root;
/// Newton steps with backtracking then drive the residual to a target two
/// orders below the requested tolerance, so the certified root has margin.
/// The polish matters near degenerate channel widths, where two hump counts
/// give the same velocity and the flow has an almost-marginal direction that
/// plain relaxation crosses only after millions of steps.
///
/// Non-convergence is reported through the `converged` flag with the final
/// residual; non-finite iterates abort with an error.
pub fn relax(
    params: &FlameParams,
    channel: &ChannelSpec,
    a_turb: &[f64],
    settings: &SolverSettings,
) -> Result<StationaryState> {
    if !(params.theta > 1.0) {
        return Err(Error::InvalidInput(format!(
            "stationary system requires theta > 1, got {}",
            params.theta
        )));
    }
    if !(settings.step > 0.0) || !(settings.tol > 0.0) || settings.init_amplitude < 0.0 {
        return Err(Error::InvalidInput(
            "relaxation step and tolerance must be positive, init amplitude non-negative".into(),
        ));
    }
    let n = channel.n_modes;
    if n == 0 {
        return Err(Error::InvalidInput("need at least one mode".into()));
    }
    if a_turb.len() != n {
        return Err(Error::InvalidInput(format!(
            "forcing length {} does not match mode count {n}",
            a_turb.len()
        )));
    }

    let theta = params.theta;
    let b_coef = theta / (theta - 1.0);
    let c_nl = nonlinear_coeff(theta);
    let dt = settings.step;
    let rcw = params.r_c / channel.width;

    // exact propagator of the diagonal part over one step
    let mut growth = Vec::with_capacity(n);
    let mut weight = Vec::with_capacity(n);
    for i in 1..=n {
        let lambda = 1.0 - i as f64 * rcw;
        let z = lambda * dt;
        growth.push(z.exp());
        weight.push(if z.abs() < 1e-8 {
            dt * (1.0 + 0.5 * z)
        } else {
            (z.exp() - 1.0) / lambda
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(settings.init_seed);
    let amp = settings.init_amplitude;
    let mut g: Vec<f64> = (0..n)
        .map(|_| {
            if amp > 0.0 {
                rng.random_range(-amp..amp)
            } else {
                0.0
            }
        })
        .collect();

    let target = (settings.tol * 1e-2).max(1e-13);
    let mut quad = vec![0.0; n];
    let mut iterations = 0u64;
    let mut res_norm;
    let mut res_peak = 0.0f64;
    let mut polish_entry = 1e-3f64;
    'outer: loop {
        // Virtual-time flow toward the attractor. The polish may only engage
        // once the residual has fallen well below its running peak: from a
        // small random start the unstable modes first grow, and a Newton
        // step taken too early would land on the planar saddle instead of
        // the saturated front.
        res_norm = loop {
            quadratic_rhs(&g, b_coef, c_nl, a_turb, &mut quad);
            let res = flow_norm(&g, &quad, rcw);
            if !res.is_finite() {
                return Err(Error::Diverged(format!(
                    "non-finite residual after {iterations} iterations"
                )));
            }
            res_peak = res_peak.max(res);
            let engage = target.max(polish_entry.min(0.01 * res_peak));
            if res <= engage || iterations >= settings.max_iter {
                break res;
            }
            let mut max_g = 0.0f64;
            for i in 0..n {
                g[i] = growth[i] * g[i] + weight[i] * quad[i];
                max_g = max_g.max(g[i].abs());
            }
            if !max_g.is_finite() || max_g > 1e8 {
                return Err(Error::Diverged(format!(
                    "slope coefficients left the trusted range (max |G| = {max_g}) after {iterations} iterations"
                )));
            }
            iterations += 1;
        };
        if res_norm <= target || iterations >= settings.max_iter {
            break;
        }

        // Newton polish with backtracking, confined to the neighborhood the
        // flow delivered: a polished state that wanders a long way belongs
        // to a different root, so it is rejected and the flow resumes.
        let g_entry = g.clone();
        let scale_entry = g_entry.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let res_entry = res_norm;
        let mut jac = vec![0.0; n * n];
        let mut delta = vec![0.0; n];
        let mut polished = true;
        for _ in 0..40 {
            quadratic_rhs(&g, b_coef, c_nl, a_turb, &mut quad);
            res_norm = flow_norm(&g, &quad, rcw);
            if res_norm <= target {
                break;
            }
            assemble_jacobian(&g, b_coef, c_nl, rcw, &mut jac);
            for i in 0..n {
                let lambda = 1.0 - (i + 1) as f64 * rcw;
                delta[i] = -(lambda * g[i] + quad[i]);
            }
            if !lu_solve(&mut jac, &mut delta) {
                polished = false;
                break;
            }
            let mut scale = 1.0f64;
            let mut accepted = false;
            for _ in 0..10 {
                let trial: Vec<f64> = (0..n).map(|i| g[i] + scale * delta[i]).collect();
                quadratic_rhs(&trial, b_coef, c_nl, a_turb, &mut quad);
                let trial_res = flow_norm(&trial, &quad, rcw);
                if trial_res.is_finite() && trial_res < res_norm {
                    g = trial;
                    res_norm = trial_res;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            iterations += 1;
            if !accepted {
                polished = false;
                break;
            }
        }
        let moved = g
            .iter()
            .zip(&g_entry)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if moved > 0.25 * scale_entry + 1e3 * target {
            g = g_entry;
            res_norm = res_entry;
            polished = false;
        }
        if (polished && res_norm <= target) || iterations >= settings.max_iter {
            break;
        }
        // polish stagnated or was rejected: push the flow further first
        polish_entry = if polish_entry * 1e-2 > target {
            polish_entry * 1e-2
        } else {
            // flow down to the target itself as the last resort
            0.0
        };
    }

    // report the residual of the returned state
    quadratic_rhs(&g, b_coef, c_nl, a_turb, &mut quad);
    res_norm = flow_norm(&g, &quad, rcw);

    Ok(StationaryState {
        g,
        residual_norm: res_norm,
        iterations,
        converged: res_norm <= settings.tol,
    })
}

/// Total turbulent flame velocity of a stationary state:
/// `theta/4 * (B_0 + sum (U_i / D_i)^2)`. The second term is the same
/// oscillating contribution as the no-instability velocity.
pub fn flame_velocity(
    state: &StationaryState,
    params: &FlameParams,
    spec: &TurbulenceSpectrum,
    resp: &ModeResponse,
) -> f64 {
    let b0: f64 = state.g.iter().map(|gi| gi * gi).sum();
    0.25 * params.theta * b0 + velocity_from_response(resp, spec, params.theta)
}

/// Full pipeline: response factors, averaged forcing, relaxation, velocity.
pub fn solve(
    params: &FlameParams,
    channel: &ChannelSpec,
    spec: &TurbulenceSpectrum,
    settings: &SolverSettings,
) -> Result<(StationaryState, f64)> {
    let resp = crate::linear_response::response_factors(params, spec);
    let a_turb = turbulent_forcing(spec, &resp, channel.n_modes);
    let state = relax(params, channel, &a_turb, settings)?;
    let velocity = flame_velocity(&state, params, spec, &resp);
    Ok((state, velocity))
}

/// Re-runs `solve` for each initial seed and returns the velocities, for
/// checking that the relaxed state does not depend on the starting point.
pub fn seed_velocities(
    params: &FlameParams,
    channel: &ChannelSpec,
    spec: &TurbulenceSpectrum,
    settings: &SolverSettings,
    seeds: &[u64],
) -> Result<Vec<f64>> {
    let runs = crate::parallel::map_points(seeds, |&seed| {
        let s = SolverSettings {
            init_seed: seed,
            ..*settings
        };
        solve(params, channel, spec, &s).map(|(_, v)| v)
    });
    runs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_response::response_factors;
    use crate::spectrum::synthesize;
    use crate::thermo::derive_flame_params;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn convolutions_by_hand() {
        let a = convolve_a(&[1.0, 1.0]);
        assert_eq!(a, vec![0.0, 0.0, 1.0, 2.0, 1.0]);
        let b = convolve_b(&[1.0, 1.0]);
        assert_eq!(b, vec![2.0, 1.0, 0.0]);
        assert_eq!(convolve_a(&[0.0; 4]), vec![0.0; 9]);
        let single = convolve_b(&[3.0, 0.0, 0.0]);
        assert_eq!(single, vec![9.0, 0.0, 0.0, 0.0]);
    }

    /// Pointwise products of the slope series on a grid, the independent
    /// route against the convolution identities.
    fn grid_check(g: &[f64], width: f64, points: usize) -> (f64, f64) {
        let n = g.len();
        let a = convolve_a(g);
        let b = convolve_b(g);
        let mut worst_a = 0.0f64;
        let mut worst_b = 0.0f64;
        for q in 0..points {
            let x = (q as f64 + 0.5) * width / points as f64;
            let mut gprime = 0.0;
            let mut phig = 0.0;
            for i in 1..=n {
                let arg = PI * i as f64 * x / width;
                gprime -= g[i - 1] * arg.sin();
                phig += g[i - 1] * arg.cos();
            }
            let mut a_series = 0.0;
            for (m, am) in a.iter().enumerate() {
                a_series += am * (PI * m as f64 * x / width).cos();
            }
            let mut b_series = 0.5 * b[0];
            for (l, bl) in b.iter().enumerate().skip(1) {
                b_series += bl * (PI * l as f64 * x / width).cos();
            }
            // (dG/dx)^2 - (phi G)^2 == -sum A_m cos
            worst_a = worst_a.max((gprime * gprime - phig * phig + a_series).abs());
            // (phi G)^2 == A-series/2 + B-series
            worst_b = worst_b.max((phig * phig - 0.5 * a_series - b_series).abs());
        }
        (worst_a, worst_b)
    }

    #[test]
    fn convolution_grid_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (ea, eb) = grid_check(&g, 17.0, 1024);
        assert!(ea < 1e-12, "A-identity error {ea}");
        assert!(eb < 1e-12, "B-identity error {eb}");
    }

    #[test]
    fn forcing_pattern() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let mut spec = synthesize(10.0, 1, 0.5, 0).unwrap();
        spec.amp[0] = 1.0;
        let mut resp = response_factors(&params, &spec);
        resp.d[0] = 2.0;
        let a_turb = turbulent_forcing(&spec, &resp, 6);
        assert_eq!(a_turb, vec![0.0, 0.25, 0.0, 0.0, 0.0, 0.0]);

        let zero = synthesize(10.0, 150, 0.0, 0).unwrap();
        let resp0 = response_factors(&params, &zero);
        let a0 = turbulent_forcing(&zero, &resp0, 310);
        assert!(a0.iter().all(|&v| v == 0.0));
        // modes beyond twice the harmonic count receive nothing
        let spec150 = synthesize(10.0, 150, 0.5, 0).unwrap();
        let resp150 = response_factors(&params, &spec150);
        let a150 = turbulent_forcing(&spec150, &resp150, 310);
        assert_eq!(a150[301], 0.0); // mode 302
        assert!(a150[299] > 0.0); // mode 300 = 2 * 150
    }

    #[test]
    fn planar_state_is_a_root() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let channel = ChannelSpec {
            width: 3.0 * params.r_c,
            n_modes: 16,
        };
        let res = residual(&[0.0; 16], &params, &channel, &[0.0; 16]).unwrap();
        assert!(res.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn rejects_unit_expansion() {
        let params = FlameParams::zero_expansion();
        let channel = ChannelSpec {
            width: 10.0,
            n_modes: 4,
        };
        assert!(residual(&[0.0; 4], &params, &channel, &[0.0; 4]).is_err());
        assert!(relax(&params, &channel, &[0.0; 4], &SolverSettings::default()).is_err());
    }

    #[test]
    fn narrow_channel_relaxes_to_planar() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let channel = ChannelSpec {
            width: 0.8 * params.r_c,
            n_modes: 32,
        };
        let state = relax(
            &params,
            &channel,
            &vec![0.0; 32],
            &SolverSettings::default(),
        )
        .unwrap();
        assert!(state.converged);
        assert!(state.g.iter().all(|&gi| gi.abs() < 1e-10));
        let spec = synthesize(channel.width, 0, 0.0, 0).unwrap();
        let resp = response_factors(&params, &spec);
        let v = flame_velocity(&state, &params, &spec, &resp);
        assert!(v.abs() < 1e-18);
    }

    #[test]
    fn zero_turbulence_matches_curved_flame_formula() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let settings = SolverSettings::default();
        let channel = ChannelSpec {
            width: 2.0 * params.r_c,
            n_modes: 96,
        };
        let state = relax(&params, &channel, &vec![0.0; 96], &settings).unwrap();
        assert!(state.converged, "residual {}", state.residual_norm);
        let b0: f64 = state.g.iter().map(|x| x * x).sum();
        let v = 0.25 * params.theta * b0;
        let exact = crate::baselines::curved_flame_velocity(7.0, 2.0).unwrap();
        assert!(
            (v - exact).abs() <= 1e-6 + 10.0 * settings.tol,
            "relaxed {v} vs analytic {exact}"
        );
    }

    #[test]
    fn converged_state_satisfies_residual_bound() {
        let params = derive_flame_params(5.0, 1.0).unwrap();
        let spec = synthesize(3.0 * params.r_c, 8, 0.3, 0).unwrap();
        let channel = ChannelSpec {
            width: 3.0 * params.r_c,
            n_modes: 48,
        };
        let settings = SolverSettings::default();
        let (state, _) = solve(&params, &channel, &spec, &settings).unwrap();
        assert!(state.converged);
        let resp = response_factors(&params, &spec);
        let a_turb = turbulent_forcing(&spec, &resp, channel.n_modes);
        let res = residual(&state.g, &params, &channel, &a_turb).unwrap();
        let norm = res.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        assert!(norm <= settings.tol);
        assert!((norm - state.residual_norm).abs() <= 1e-15);
    }

    #[test]
    fn relaxed_state_is_seed_independent() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let spec = synthesize(2.5 * params.r_c, 12, 0.4, 0).unwrap();
        let channel = ChannelSpec {
            width: 2.5 * params.r_c,
            n_modes: 64,
        };
        let settings = SolverSettings::default();
        let v = seed_velocities(&params, &channel, &spec, &settings, &[0, 1, 2]).unwrap();
        let spread = v.iter().cloned().fold(f64::MIN, f64::max)
            - v.iter().cloned().fold(f64::MAX, f64::min);
        assert!(
            spread <= 10.0 * settings.tol,
            "velocities {v:?} spread {spread}"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn grid_identity_for_random_slopes(
            g in proptest::collection::vec(-1.0f64..1.0, 1..10),
            width in 2.0f64..50.0,
        ) {
            let (ea, eb) = grid_check(&g, width, 64);
            prop_assert!(ea < 1e-12);
            prop_assert!(eb < 1e-12);
        }
    }
}
