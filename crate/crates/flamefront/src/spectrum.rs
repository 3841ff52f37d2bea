//! Synthetic 2D incompressible turbulence for a channel with slip walls.
//!
//! The field is a finite sum of cosine harmonics with wavenumbers set by the
//! channel width, amplitudes on a Kolmogorov power law normalized to a
//! prescribed one-direction rms velocity, and random phases along the
//! propagation direction. The field is frozen in time (Taylor hypothesis);
//! the front samples it at its own position `z = t` in working units.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};

/// A frozen multi-harmonic turbulence field.
///
/// Mode `i` (1-based) has wavenumber `k[i-1] = pi * i / channel_width`,
/// amplitude `amp[i-1]` and phase `phase[i-1]`. Amplitudes satisfy
/// `sum(amp^2) / 4 == u_rms^2` and `amp_i / amp_1 == i^(-5/6)`; only the
/// phases depend on the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct TurbulenceSpectrum {
    pub channel_width: f64,
    pub u_rms: f64,
    pub seed: u64,
    pub k: Vec<f64>,
    pub amp: Vec<f64>,
    pub phase: Vec<f64>,
}

/// Builds an `n_t`-harmonic spectrum. Phases are drawn from a ChaCha8 stream
/// seeded by `seed`, so spectra are reproducible across runs for a fixed
/// seed. `n_t = 0` or `u_rms = 0` yields an empty or zero spectrum.
pub fn synthesize(
    channel_width: f64,
    n_t: usize,
    u_rms: f64,
    seed: u64,
) -> Result<TurbulenceSpectrum> {
    if !(channel_width > 0.0) || !channel_width.is_finite() {
        return Err(Error::InvalidInput(format!(
            "channel width must be positive and finite, got {channel_width}"
        )));
    }
    if !(u_rms >= 0.0) || !u_rms.is_finite() {
        return Err(Error::InvalidInput(format!(
            "rms velocity must be non-negative and finite, got {u_rms}"
        )));
    }
    let k: Vec<f64> = (1..=n_t).map(|i| PI * i as f64 / channel_width).collect();
    // Kolmogorov shape i^(-5/6); the overall prefactor is fixed entirely by
    // the rms normalization, so the reference wavenumber drops out.
    let shape: Vec<f64> = (1..=n_t).map(|i| (i as f64).powf(-5.0 / 6.0)).collect();
    let shape_norm: f64 = shape.iter().map(|w| w * w).sum::<f64>().sqrt();
    let scale = if n_t == 0 { 0.0 } else { 2.0 * u_rms / shape_norm };
    let amp: Vec<f64> = shape.iter().map(|w| scale * w).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phase: Vec<f64> = (0..n_t).map(|_| rng.random_range(0.0..TAU)).collect();
    Ok(TurbulenceSpectrum {
        channel_width,
        u_rms,
        seed,
        k,
        amp,
        phase,
    })
}

impl TurbulenceSpectrum {
    pub fn n_modes(&self) -> usize {
        self.k.len()
    }

    /// Longitudinal and transverse turbulent velocity at position `x` along
    /// the front, with the field sampled at the front location `z = t`.
    pub fn velocity_at(&self, x: f64, t: f64) -> (f64, f64) {
        let z = t; // U_f = 1 in working units
        let mut u_z = 0.0;
        let mut u_x = 0.0;
        for i in 0..self.k.len() {
            let arg = self.k[i] * z + self.phase[i];
            u_z += self.amp[i] * arg.cos() * (self.k[i] * x).cos();
            u_x += self.amp[i] * arg.sin() * (self.k[i] * x).sin();
        }
        (u_z, u_x)
    }

    /// Per-mode amplitude and phase offset of the combined forcing seen by
    /// the front: mode `i` forces with `sqrt(2) amp_i cos(k_i t + phase_i + pi/4)`.
    pub fn forcing_amplitudes(&self) -> Vec<(f64, f64)> {
        self.amp
            .iter()
            .zip(&self.phase)
            .map(|(&a, &p)| (SQRT_2 * a, p + FRAC_PI_4))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_mode_amplitude_is_twice_rms() {
        let s = synthesize(10.0, 1, 0.5, 42).unwrap();
        assert_eq!(s.amp, vec![1.0]);
        assert!((s.k[0] - PI / 10.0).abs() < 1e-15);
    }

    #[test]
    fn two_mode_amplitudes() {
        // U_2 = 2^(-5/6) U_1 and (U_1^2 + U_2^2)/4 = 0.25, frozen values:
        let s = synthesize(10.0, 2, 0.5, 0).unwrap();
        assert!((s.amp[0] - 0.8720479849317685).abs() < 1e-12);
        assert!((s.amp[1] - 0.48942038369528706).abs() < 1e-12);
    }

    #[test]
    fn determinism_per_seed() {
        let a = synthesize(10.0, 150, 0.5, 7).unwrap();
        let b = synthesize(10.0, 150, 0.5, 7).unwrap();
        assert_eq!(a, b);
        let c = synthesize(10.0, 150, 0.5, 8).unwrap();
        assert_ne!(a.phase, c.phase);
        // amplitudes and wavenumbers never depend on the seed
        assert_eq!(a.amp, c.amp);
        assert_eq!(a.k, c.k);
    }

    #[test]
    fn empty_and_zero_spectra() {
        let s = synthesize(10.0, 0, 0.5, 0).unwrap();
        assert_eq!(s.velocity_at(1.0, 2.0), (0.0, 0.0));
        let z = synthesize(10.0, 4, 0.0, 0).unwrap();
        assert!(z.amp.iter().all(|&a| a == 0.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(synthesize(0.0, 4, 0.5, 0).is_err());
        assert!(synthesize(-1.0, 4, 0.5, 0).is_err());
        assert!(synthesize(10.0, 4, -0.5, 0).is_err());
        assert!(synthesize(f64::NAN, 4, 0.5, 0).is_err());
    }

    #[test]
    fn velocity_at_origin_of_single_zero_phase_mode() {
        let mut s = synthesize(10.0, 1, 0.5, 0).unwrap();
        s.phase[0] = 0.0;
        let (u_z, u_x) = s.velocity_at(0.0, 0.0);
        assert_eq!(u_z, s.amp[0]);
        assert_eq!(u_x, 0.0);
    }

    #[test]
    fn field_is_divergence_free() {
        // d(u_x)/dx + d(u_z)/dz by central differences; z enters through t.
        let s = synthesize(13.0, 6, 0.4, 3).unwrap();
        let h = 1e-5;
        for &(x, t) in &[(0.3, 0.0), (1.7, 2.5), (9.9, 11.0), (12.0, 0.7)] {
            let dux_dx = (s.velocity_at(x + h, t).1 - s.velocity_at(x - h, t).1) / (2.0 * h);
            let duz_dz = (s.velocity_at(x, t + h).0 - s.velocity_at(x, t - h).0) / (2.0 * h);
            assert!(
                (dux_dx + duz_dz).abs() < 1e-7,
                "divergence {} at ({x}, {t})",
                dux_dx + duz_dz
            );
        }
    }

    #[test]
    fn forcing_amplitude_identity() {
        // cos(w) - sin(w) == sqrt(2) cos(w + pi/4), checked at t = 0.3, k = 1
        let t: f64 = 0.3;
        let direct = t.cos() - t.sin();
        let folded = SQRT_2 * (t + FRAC_PI_4).cos();
        assert!((direct - folded).abs() < 1e-14);

        let mut s = synthesize(PI, 1, 0.5, 0).unwrap();
        s.amp[0] = 1.0;
        s.phase[0] = 0.0;
        let f = s.forcing_amplitudes();
        assert!((f[0].0 - SQRT_2).abs() < 1e-15);
        assert!((f[0].1 - FRAC_PI_4).abs() < 1e-15);

        let z = synthesize(PI, 1, 0.0, 0).unwrap();
        assert_eq!(z.forcing_amplitudes()[0].0, 0.0);
    }

    #[test]
    fn space_time_average_of_uz_squared_matches_rms() {
        // Each mode contributes amp^2 * (1/2) * (1/2) over one period in t
        // and one channel width in x.
        let s = synthesize(7.0, 12, 0.6, 5).unwrap();
        let (nx, nt) = (256, 256);
        let period = 2.0 * s.channel_width; // all modes complete whole cycles
        let mut acc = 0.0;
        for qt in 0..nt {
            let t = (qt as f64 + 0.5) * period / nt as f64;
            for qx in 0..nx {
                let x = (qx as f64 + 0.5) * s.channel_width / nx as f64;
                let (u_z, _) = s.velocity_at(x, t);
                acc += u_z * u_z;
            }
        }
        let mean = acc / (nx * nt) as f64;
        assert!(
            (mean - s.u_rms * s.u_rms).abs() < 1e-8,
            "mean u_z^2 = {mean}"
        );
    }

    proptest! {
        #[test]
        fn normalization_and_scaling_hold(
            width in 0.5f64..200.0,
            n_t in 1usize..200,
            u_rms in 1e-6f64..3.0,
            seed in any::<u64>(),
        ) {
            let s = synthesize(width, n_t, u_rms, seed).unwrap();
            let sum_sq: f64 = s.amp.iter().map(|a| a * a).sum();
            let err = (sum_sq / 4.0 - u_rms * u_rms).abs();
            prop_assert!(err <= 1e-12 * u_rms * u_rms);
            for (i, (a, k)) in s.amp.iter().zip(&s.k).enumerate() {
                let idx = (i + 1) as f64;
                prop_assert!((k - PI * idx / width).abs() <= 1e-15 * k.abs());
                let ratio = a / s.amp[0];
                prop_assert!((ratio - idx.powf(-5.0 / 6.0)).abs() <= 1e-12);
                prop_assert!(s.phase[i] >= 0.0 && s.phase[i] < TAU);
            }
        }
    }
}
