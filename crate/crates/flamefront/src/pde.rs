//! Direct pseudo-spectral time integration of the front evolution equation.
//!
//! The front is advanced as a second-order-in-time system for the cosine
//! coefficients `(F_i, dF_i/dt)`. Quadratic terms are evaluated by
//! collocation on an oversampled midpoint grid and projected back onto the
//! retained modes, which dealiases the products exactly. The zero-mode
//! balance of the equation defines the instantaneous propagation velocity.
//!
//! This integrator exists as a verification oracle for the split stationary
//! solver and for the linear dispersion relation; it runs at reduced size,
//! so clarity wins over speed.

use crate::error::{Error, Result};
use crate::spectrum::TurbulenceSpectrum;
use crate::stationary::ChannelSpec;
use crate::thermo::FlameParams;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

/// Front shape and velocity state at one instant: cosine coefficients of
/// `F(x, t)` (mode `i >= 1`; the mean position is absorbed into the moving
/// frame) and their time derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontField {
    pub coeffs: Vec<f64>,
    pub coeffs_dot: Vec<f64>,
    pub time: f64,
}

impl FrontField {
    pub fn zero(n: usize) -> Self {
        FrontField {
            coeffs: vec![0.0; n],
            coeffs_dot: vec![0.0; n],
            time: 0.0,
        }
    }

    /// Small random perturbation of every mode, for seeding the instability.
    pub fn seeded(n: usize, amplitude: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        FrontField {
            coeffs: (0..n).map(|_| rng.random_range(-amplitude..amplitude)).collect(),
            coeffs_dot: vec![0.0; n],
            time: 0.0,
        }
    }

    /// A single perturbed mode (1-based index), at rest.
    pub fn single_mode(n: usize, mode: usize, amplitude: f64) -> Self {
        let mut f = FrontField::zero(n);
        f.coeffs[mode - 1] = amplitude;
        f
    }
}

/// Precomputed coefficients and collocation tables for one channel,
/// parameter set, and turbulence realization.
pub struct PdeSystem {
    n: usize,
    k: Vec<f64>,
    inv_inertia: Vec<f64>,
    damping: Vec<f64>,
    linear: Vec<f64>,
    half_theta: f64,
    vortex_coeff: f64,
    forcing_amp: Vec<f64>,
    forcing_phase: Vec<f64>,
    grid_q: usize,
    cos_table: Vec<f64>,
    sin_table: Vec<f64>,
}

impl PdeSystem {
    /// Builds the per-mode coefficients of the evolution equation and the
    /// collocation tables. Turbulent harmonics beyond the mode truncation
    /// are dropped (they cannot be represented on the retained basis).
    pub fn new(
        params: &FlameParams,
        channel: &ChannelSpec,
        spec: &TurbulenceSpectrum,
    ) -> Result<Self> {
        let n = channel.n_modes;
        if n == 0 {
            return Err(Error::InvalidInput("need at least one mode".into()));
        }
        if (spec.channel_width - channel.width).abs() > 1e-9 * channel.width {
            return Err(Error::InvalidInput(format!(
                "spectrum width {} does not match channel width {}",
                spec.channel_width, channel.width
            )));
        }
        let theta = params.theta;
        let r = channel.width;
        let k: Vec<f64> = (1..=n).map(|i| PI * i as f64 / r).collect();
        let inv_inertia: Vec<f64> = k
            .iter()
            .map(|&ki| ki / ((theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * ki)))
            .collect();
        let damping: Vec<f64> = k.iter().map(|&ki| 1.0 + params.c2 * params.l_f * ki).collect();
        let linear: Vec<f64> = k
            .iter()
            .map(|&ki| -0.5 * (theta - 1.0) * (1.0 - params.r_c * ki / PI) * ki)
            .collect();
        let mut forcing_amp = vec![0.0; n];
        let mut forcing_phase = vec![FRAC_PI_4; n];
        for (i, (&u, &p)) in spec.amp.iter().zip(&spec.phase).enumerate().take(n) {
            forcing_amp[i] = SQRT_2 * u;
            forcing_phase[i] = p + FRAC_PI_4;
        }
        // midpoint collocation grid with 2x oversampling: products of two
        // degree-n cosine series project back exactly onto modes 0..=n
        let grid_q = 2 * n + 2;
        let mut cos_table = vec![0.0; n * grid_q];
        let mut sin_table = vec![0.0; n * grid_q];
        for i in 0..n {
            for q in 0..grid_q {
                let x = (q as f64 + 0.5) * r / grid_q as f64;
                cos_table[i * grid_q + q] = (k[i] * x).cos();
                sin_table[i * grid_q + q] = (k[i] * x).sin();
            }
        }
        Ok(PdeSystem {
            n,
            k,
            inv_inertia,
            damping,
            linear,
            half_theta: 0.5 * theta,
            vortex_coeff: (theta - 1.0).powi(3) / (16.0 * theta),
            forcing_amp,
            forcing_phase,
            grid_q,
            cos_table,
            sin_table,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    /// Cosine modes `0..=n` of the quadratic terms
    /// `theta/2 (dF/dx)^2 + (theta-1)^3/(16 theta) [(dF/dx)^2 - (phi F)^2]`
    /// by collocation and projection.
    fn nonlinear_modes(&self, coeffs: &[f64], out: &mut [f64]) {
        let q_count = self.grid_q;
        let mut nl = vec![0.0; q_count];
        for q in 0..q_count {
            let mut slope = 0.0;
            let mut phif = 0.0;
            for i in 0..self.n {
                let a = self.k[i] * coeffs[i];
                slope -= a * self.sin_table[i * q_count + q];
                phif += a * self.cos_table[i * q_count + q];
            }
            let s2 = slope * slope;
            nl[q] = self.half_theta * s2 + self.vortex_coeff * (s2 - phif * phif);
        }
        out[0] = nl.iter().sum::<f64>() / q_count as f64;
        for i in 0..self.n {
            let mut acc = 0.0;
            for q in 0..q_count {
                acc += nl[q] * self.cos_table[i * q_count + q];
            }
            out[i + 1] = 2.0 * acc / q_count as f64;
        }
    }

    /// Channel average of `(dF/dx)^2 - (phi F)^2` on the collocation grid;
    /// exactly zero for any cosine series, so its size measures the
    /// dealiasing error.
    pub fn parseval_defect(&self, coeffs: &[f64]) -> f64 {
        let q_count = self.grid_q;
        let mut acc = 0.0;
        for q in 0..q_count {
            let mut slope = 0.0;
            let mut phif = 0.0;
            for i in 0..self.n {
                let a = self.k[i] * coeffs[i];
                slope -= a * self.sin_table[i * q_count + q];
                phif += a * self.cos_table[i * q_count + q];
            }
            acc += slope * slope - phif * phif;
        }
        acc / q_count as f64
    }

    fn accel(&self, coeffs: &[f64], dots: &[f64], t: f64, nl: &mut [f64], out: &mut [f64]) {
        self.nonlinear_modes(coeffs, nl);
        for i in 0..self.n {
            let forcing = self.forcing_amp[i] * (self.k[i] * t + self.forcing_phase[i]).cos();
            out[i] = (forcing - nl[i + 1] - self.damping[i] * dots[i] - self.linear[i] * coeffs[i])
                * self.inv_inertia[i];
        }
    }

    /// Advances one classical Runge-Kutta step of size `dt`.
    pub fn step(&self, field: &FrontField, dt: f64) -> Result<FrontField> {
        let n = self.n;
        if field.coeffs.len() != n {
            return Err(Error::InvalidInput(format!(
                "field has {} modes, system expects {n}",
                field.coeffs.len()
            )));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidInput(format!("time step must be positive, got {dt}")));
        }
        let t = field.time;
        let mut nl = vec![0.0; n + 1];
        let mut stage_c = vec![0.0; n];
        let mut stage_d = vec![0.0; n];

        let mut k1_d = vec![0.0; n];
        self.accel(&field.coeffs, &field.coeffs_dot, t, &mut nl, &mut k1_d);
        let k1_c = &field.coeffs_dot;

        for i in 0..n {
            stage_c[i] = field.coeffs[i] + 0.5 * dt * k1_c[i];
            stage_d[i] = field.coeffs_dot[i] + 0.5 * dt * k1_d[i];
        }
        let mut k2_d = vec![0.0; n];
        self.accel(&stage_c, &stage_d, t + 0.5 * dt, &mut nl, &mut k2_d);
        let k2_c = stage_d.clone();

        for i in 0..n {
            stage_c[i] = field.coeffs[i] + 0.5 * dt * k2_c[i];
            stage_d[i] = field.coeffs_dot[i] + 0.5 * dt * k2_d[i];
        }
        let mut k3_d = vec![0.0; n];
        self.accel(&stage_c, &stage_d, t + 0.5 * dt, &mut nl, &mut k3_d);
        let k3_c = stage_d.clone();

        for i in 0..n {
            stage_c[i] = field.coeffs[i] + dt * k3_c[i];
            stage_d[i] = field.coeffs_dot[i] + dt * k3_d[i];
        }
        let mut k4_d = vec![0.0; n];
        self.accel(&stage_c, &stage_d, t + dt, &mut nl, &mut k4_d);
        let k4_c = stage_d;

        let mut coeffs = vec![0.0; n];
        let mut dots = vec![0.0; n];
        for i in 0..n {
            coeffs[i] =
                field.coeffs[i] + dt / 6.0 * (k1_c[i] + 2.0 * k2_c[i] + 2.0 * k3_c[i] + k4_c[i]);
            dots[i] =
                field.coeffs_dot[i] + dt / 6.0 * (k1_d[i] + 2.0 * k2_d[i] + 2.0 * k3_d[i] + k4_d[i]);
            if !coeffs[i].is_finite() || !dots[i].is_finite() {
                return Err(Error::Diverged(format!(
                    "non-finite front coefficient in mode {} at t = {}",
                    i + 1,
                    t + dt
                )));
            }
        }
        Ok(FrontField {
            coeffs,
            coeffs_dot: dots,
            time: t + dt,
        })
    }

    /// Integrates from `init` to `t_end`, recording every `sample_every`-th
    /// state (plus the initial one).
    pub fn run(
        &self,
        init: FrontField,
        dt: f64,
        t_end: f64,
        sample_every: usize,
    ) -> Result<Vec<FrontField>> {
        let stride = sample_every.max(1);
        let mut trajectory = Vec::new();
        let mut field = init;
        trajectory.push(field.clone());
        let mut step_index = 0usize;
        while field.time < t_end - 0.5 * dt {
            field = self.step(&field, dt)?;
            step_index += 1;
            if step_index % stride == 0 {
                trajectory.push(field.clone());
            }
        }
        Ok(trajectory)
    }

    /// Instantaneous scaled propagation velocity from the zero-mode balance
    /// of the evolution equation.
    pub fn instantaneous_velocity(&self, field: &FrontField) -> f64 {
        let mut nl = vec![0.0; self.n + 1];
        self.nonlinear_modes(&field.coeffs, &mut nl);
        nl[0]
    }

    /// Time average of the instantaneous velocity over `[t_start, t_end]`
    /// (trapezoid over the recorded samples). The averaging window must
    /// exclude the initial transient.
    pub fn measure_velocity(&self, trajectory: &[FrontField], t_start: f64, t_end: f64) -> f64 {
        let samples: Vec<(f64, f64)> = trajectory
            .iter()
            .filter(|f| f.time >= t_start && f.time <= t_end)
            .map(|f| (f.time, self.instantaneous_velocity(f)))
            .collect();
        match samples.len() {
            0 => 0.0,
            1 => samples[0].1,
            _ => {
                let mut acc = 0.0;
                for w in samples.windows(2) {
                    acc += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
                }
                acc / (samples.last().unwrap().0 - samples[0].0)
            }
        }
    }

    /// Largest characteristic rate over all retained modes (free response
    /// roots and forcing frequency); explicit steps should stay below its
    /// inverse.
    pub fn stable_dt(&self) -> f64 {
        let mut fastest = 0.0f64;
        for i in 0..self.n {
            let a = 1.0 / self.inv_inertia[i];
            let b = self.damping[i];
            let c = self.linear[i];
            let disc = b * b - 4.0 * a * c;
            let rate = if disc >= 0.0 {
                let s = disc.sqrt();
                ((-b + s) / (2.0 * a)).abs().max(((-b - s) / (2.0 * a)).abs())
            } else {
                Complex64::new(-b / (2.0 * a), (-disc).sqrt() / (2.0 * a)).norm()
            };
            fastest = fastest.max(rate).max(self.k[i]);
        }
        1.0 / fastest
    }
}

/// Largest-real-part root of the linear dispersion quadratic
///
/// ```text
/// (theta+1)/(2 theta) (1 + c1 l_f k) sigma^2
///   + (1 + c2 l_f k) k sigma
///   - (theta-1)/2 (1 - lambda_c k / (2 pi)) k^2  =  0
/// ```
///
/// in working units. Perturbations with `k` below the cut-off grow; the
/// cut-off mode is marginal; shorter waves decay or oscillate.
pub fn dispersion_growth(params: &FlameParams, k: f64) -> Complex64 {
    let theta = params.theta;
    let a = (theta + 1.0) / (2.0 * theta) * (1.0 + params.c1 * params.l_f * k);
    let b = (1.0 + params.c2 * params.l_f * k) * k;
    let c = -0.5 * (theta - 1.0) * (1.0 - params.lambda_c * k / (2.0 * PI)) * k * k;
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let r1 = (-b + s) / (2.0 * a);
        let r2 = (-b - s) / (2.0 * a);
        Complex64::new(r1.max(r2), 0.0)
    } else {
        Complex64::new(-b / (2.0 * a), (-disc).sqrt() / (2.0 * a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::synthesize;
    use crate::thermo::derive_flame_params;

    fn quiet_channel(params: &FlameParams, r_over_rc: f64, n: usize) -> (ChannelSpec, TurbulenceSpectrum) {
        let width = r_over_rc * params.r_c;
        let channel = ChannelSpec { width, n_modes: n };
        let spec = synthesize(width, 0, 0.0, 0).unwrap();
        (channel, spec)
    }

    #[test]
    fn planar_front_stays_planar() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let (channel, spec) = quiet_channel(&params, 2.0, 16);
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let mut field = FrontField::zero(16);
        for _ in 0..100 {
            field = system.step(&field, 0.05).unwrap();
        }
        assert!(field.coeffs.iter().all(|&c| c == 0.0));
        assert_eq!(system.instantaneous_velocity(&field), 0.0);
    }

    #[test]
    fn marginal_mode_is_stationary_in_linear_regime() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let sigma = dispersion_growth(&params, 2.0 * PI / params.lambda_c);
        assert!(sigma.norm() < 1e-12);
    }

    #[test]
    fn long_wave_growth_rate_limit() {
        // sigma / k -> theta/(theta+1) (sqrt(1 + (theta^2-1)/theta) - 1)
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let k = 1e-7;
        let sigma = dispersion_growth(&params, k);
        assert!(sigma.im == 0.0);
        assert!((sigma.re / k - 1.5776771087935728).abs() < 1e-4);
    }

    #[test]
    fn no_growth_without_expansion() {
        let params = FlameParams::zero_expansion();
        for k in [0.01, 0.1, 1.0, 10.0] {
            let sigma = dispersion_growth(&params, k);
            assert!(sigma.re <= 0.0, "sigma = {sigma} at k = {k}");
        }
    }

    #[test]
    fn single_mode_growth_matches_dispersion() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        // channel fitting the cut-off at mode 10; perturb mode 5
        let width = 10.0 * params.r_c;
        let channel = ChannelSpec { width, n_modes: 16 };
        let spec = synthesize(width, 0, 0.0, 0).unwrap();
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let mode = 5usize;
        let k = PI * mode as f64 / width;
        let expected = dispersion_growth(&params, k).re;

        let init = FrontField::single_mode(16, mode, 1e-6);
        let dt = 0.25 * system.stable_dt();
        let trajectory = system.run(init, dt, 120.0, 8).unwrap();
        let fitted = fit_growth_rate(&trajectory, mode, 60.0, 120.0);
        assert!(
            (fitted - expected).abs() <= 0.02 * expected.abs(),
            "fitted {fitted} vs dispersion {expected}"
        );
    }

    #[test]
    fn short_wave_perturbation_decays() {
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let width = 10.0 * params.r_c; // cut-off at mode 10
        let channel = ChannelSpec { width, n_modes: 16 };
        let spec = synthesize(width, 0, 0.0, 0).unwrap();
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let init = FrontField::single_mode(16, 14, 1e-4);
        let dt = 0.25 * system.stable_dt();
        let trajectory = system.run(init, dt, 60.0, 10).unwrap();
        let early: f64 = trajectory[1].coeffs[13].abs();
        let late: f64 = trajectory.last().unwrap().coeffs[13].abs();
        assert!(late < 1e-3 * early, "early {early}, late {late}");
    }

    #[test]
    fn dealiasing_keeps_parseval_identity() {
        use rand::{Rng, SeedableRng};
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let (channel, spec) = quiet_channel(&params, 3.0, 24);
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let coeffs: Vec<f64> = (0..24).map(|_| rng.random_range(-0.5..0.5)).collect();
            let defect = system.parseval_defect(&coeffs);
            assert!(defect.abs() < 1e-10, "defect {defect}");
        }
    }

    #[test]
    fn flat_trajectory_measures_zero() {
        let params = derive_flame_params(5.0, 1.0).unwrap();
        let (channel, spec) = quiet_channel(&params, 2.0, 8);
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let trajectory = vec![FrontField::zero(8)];
        assert_eq!(system.measure_velocity(&trajectory, 0.0, 1.0), 0.0);
    }

    #[test]
    fn saturated_state_reaches_curved_flame_velocity() {
        // zero turbulence: the saturated front of the time integration and
        // the closed-form curved-flame velocity must agree
        let params = derive_flame_params(7.0, 1.0).unwrap();
        let (channel, spec) = quiet_channel(&params, 2.0, 32);
        let system = PdeSystem::new(&params, &channel, &spec).unwrap();
        let init = FrontField::seeded(32, 1e-3, 1);
        let dt = 0.25 * system.stable_dt();
        let trajectory = system.run(init, dt, 260.0, 16).unwrap();
        let v = system.measure_velocity(&trajectory, 220.0, 260.0);
        let exact = crate::baselines::curved_flame_velocity(7.0, 2.0).unwrap();
        assert!((v - exact).abs() < 5e-3, "pde {v} vs analytic {exact}");
    }

    /// Least-squares slope of `ln |F_mode|` over samples in `[t0, t1]`.
    pub(super) fn fit_growth_rate(
        trajectory: &[FrontField],
        mode: usize,
        t0: f64,
        t1: f64,
    ) -> f64 {
        let pts: Vec<(f64, f64)> = trajectory
            .iter()
            .filter(|f| f.time >= t0 && f.time <= t1 && f.coeffs[mode - 1].abs() > 0.0)
            .map(|f| (f.time, f.coeffs[mode - 1].abs().ln()))
            .collect();
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    }
}
