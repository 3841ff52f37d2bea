use flamefront::linear_response::{response_factors, turbulent_velocity_no_dl};
use flamefront::pde::{FrontField, PdeSystem};
use flamefront::spectrum::synthesize;
use flamefront::stationary::{seed_velocities, solve, ChannelSpec, SolverSettings};
use flamefront::thermo::derive_flame_params;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let what = args.get(1).map(String::as_str).unwrap_or("headline");

    match what {
        "headline" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 150, 0.5, 0).unwrap();
            let no_dl = turbulent_velocity_no_dl(&params, &spec);
            println!("no_dl = {no_dl}");
            for n in [30usize, 150, 300] {
                let t0 = Instant::now();
                let channel = ChannelSpec { width, n_modes: n };
                let (state, v) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
                println!(
                    "N={n}: v={v:.6} iters={} res={:.2e} converged={} G1/G100={:.3e} time={:?}",
                    state.iterations,
                    state.residual_norm,
                    state.converged,
                    state.g[0].abs() / state.g.get(99).map(|x| x.abs()).unwrap_or(f64::NAN),
                    t0.elapsed()
                );
            }
        }
        "small" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 150, 0.01, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            let t0 = Instant::now();
            let (state, v) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
            println!(
                "u=0.01: v={v:.6} iters={} conv={} time={:?}",
                state.iterations, state.converged, t0.elapsed()
            );
        }
        "seeds" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 150, 0.5, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            let v = seed_velocities(&params, &channel, &spec, &SolverSettings::default(), &[0, 1, 2]).unwrap();
            println!("seed velocities: {v:?}");
            println!("spread: {:.3e}", v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min));
        }
        "zero" => {
            // criterion-2 style sweep
            for theta in [5.0, 7.0, 9.0] {
                let params = derive_flame_params(theta, 1.0).unwrap();
                for r in [1.5, 2.0, 3.0, 4.0, 5.0] {
                    let width = r * params.r_c;
                    let spec = synthesize(width, 0, 0.0, 0).unwrap();
                    let channel = ChannelSpec { width, n_modes: 150 };
                    let t0 = Instant::now();
                    let (state, v) =
                        solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
                    let exact =
                        flamefront::baselines::curved_flame_velocity(theta, r).unwrap();
                    println!(
                        "theta={theta} r={r}: v={v:.9} exact={exact:.9} err={:.2e} iters={} conv={} time={:?}",
                        (v - exact).abs(),
                        state.iterations,
                        state.converged,
                        t0.elapsed()
                    );
                }
            }
        }
        "cross" => {
            // criterion 8: split vs pde at reduced size
            let params = derive_flame_params(5.0, 1.0).unwrap();
            let width = 3.0 * params.r_c;
            let n = 32usize;
            let spec = synthesize(width, 8, 0.3, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: n };
            let (_, v_split) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
            let _resp = response_factors(&params, &spec);
            let osc = turbulent_velocity_no_dl(&params, &spec);
            println!("split total = {v_split}, oscillating part = {osc}, g part = {}", v_split - osc);

            let system = PdeSystem::new(&params, &channel, &spec).unwrap();
            let dt = 0.25 * system.stable_dt();
            println!("stable_dt = {}, dt = {dt}", system.stable_dt());
            let t0 = Instant::now();
            let init = FrontField::seeded(n, 1e-3, 1);
            let trajectory = system.run(init, dt, 900.0, 8).unwrap();
            for (a, b) in [(150.0, 400.0), (300.0, 900.0), (150.0, 900.0), (400.0, 900.0)] {
                let v = system.measure_velocity(&trajectory, a, b);
                println!("pde avg over [{a},{b}] = {v:.5}  (split {v_split:.5}, ratio {:.3})", v / v_split);
            }
            println!("pde run time: {:?}", t0.elapsed());
        }
        "spectrumdump" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 150, 0.5, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            let (state, v) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
            println!("v = {v}");
            for i in [0usize, 1, 2, 3, 4, 5, 9, 19, 49, 98, 99, 100, 149] {
                println!("G[{}] = {:e}", i + 1, state.g[i]);
            }
            let (imax, gmax) = state.g.iter().enumerate().max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap()).unwrap();
            println!("max |G| at mode {} = {:e}", imax + 1, gmax);
        }
        "attractor" => {
            // probe multi-stability at the headline parameters with different
            // init amplitudes and seeds; also dump zero-turb r=5 structure
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 150, 0.5, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            for amp in [1e-3, 0.05, 0.3] {
                for seed in [0u64, 1, 2] {
                    let settings = SolverSettings { init_amplitude: amp, init_seed: seed, max_iter: 3_000_000, ..SolverSettings::default() };
                    let (state, v) = solve(&params, &channel, &spec, &settings).unwrap();
                    let odd_norm: f64 = state.g.iter().step_by(2).map(|x| x * x).sum::<f64>().sqrt();
                    let even_norm: f64 = state.g.iter().skip(1).step_by(2).map(|x| x * x).sum::<f64>().sqrt();
                    println!("amp={amp} seed={seed}: v={v:.7} iters={} conv={} |G_odd|={odd_norm:.3e} |G_even|={even_norm:.3e} G1={:.3e} G2={:.3e} G3={:.3e}",
                        state.iterations, state.converged, state.g[0], state.g[1], state.g[2]);
                }
            }
        }
        "zerofive" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 5.0 * params.r_c;
            let spec = synthesize(width, 0, 0.0, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            for (step, mi) in [(0.01f64, 1_000_000u64), (0.05, 1_000_000), (0.05, 5_000_000), (0.1, 5_000_000)] {
                let settings = SolverSettings { step, max_iter: mi, ..SolverSettings::default() };
                let t0 = Instant::now();
                let (state, v) = solve(&params, &channel, &spec, &settings).unwrap();
                let exact = flamefront::baselines::curved_flame_velocity(7.0, 5.0).unwrap();
                let g = &state.g;
                println!("step={step} max_iter={mi}: v={v:.9} err={:.2e} iters={} conv={} res={:.2e} G1={:.2e} G2={:.2e} G3={:.2e} G4={:.2e} G5={:.2e} G6={:.2e} time={:?}",
                    (v - exact).abs(), state.iterations, state.converged, state.residual_norm, g[0], g[1], g[2], g[3], g[4], g[5], t0.elapsed());
            }
        }
        "zerosmallinit" => {
            for theta in [5.0, 7.0, 9.0] {
                let params = derive_flame_params(theta, 1.0).unwrap();
                for r in [1.5, 2.0, 3.0, 4.0, 5.0] {
                    let width = r * params.r_c;
                    let spec = synthesize(width, 0, 0.0, 0).unwrap();
                    let channel = ChannelSpec { width, n_modes: 150 };
                    let settings = SolverSettings { init_amplitude: 1e-4, ..SolverSettings::default() };
                    let (state, v) = solve(&params, &channel, &spec, &settings).unwrap();
                    let exact = flamefront::baselines::curved_flame_velocity(theta, r).unwrap();
                    println!("theta={theta} r={r}: err={:.2e} conv={}", (v - exact).abs(), state.converged);
                }
            }
        }
        "tieroot" => {
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 3.0 * params.r_c;
            let spec = synthesize(width, 0, 0.0, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            for (amp, seed) in [(1e-3, 0u64), (1e-3, 1), (1e-3, 2), (1e-4, 0), (1e-6, 0), (1e-8, 0)] {
                let settings = SolverSettings { init_amplitude: amp, init_seed: seed, ..SolverSettings::default() };
                let (state, v) = solve(&params, &channel, &spec, &settings).unwrap();
                let exact = flamefront::baselines::curved_flame_velocity(7.0, 3.0).unwrap();
                let g = &state.g;
                let odd: f64 = g.iter().step_by(2).map(|x| x*x).sum::<f64>().sqrt();
                let even: f64 = g.iter().skip(1).step_by(2).map(|x| x*x).sum::<f64>().sqrt();
                println!("amp={amp:.0e} seed={seed}: err={:+.3e} res={:.1e} |odd|={odd:.3e} |even|={even:.3e} G1={:+.3e} G2={:+.3e} G3={:+.3e} G4={:+.3e}",
                    v - exact, state.residual_norm, g[0], g[1], g[2], g[3]);
            }
        }
        "tiebign" => {
            for n in [150usize, 220, 300] {
                for theta in [5.0, 7.0, 9.0] {
                    let params = derive_flame_params(theta, 1.0).unwrap();
                    for r in [1.5, 2.0, 3.0, 4.0, 5.0] {
                        let width = r * params.r_c;
                        let spec = synthesize(width, 0, 0.0, 0).unwrap();
                        let channel = ChannelSpec { width, n_modes: n };
                        let (state, v) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
                        let exact = flamefront::baselines::curved_flame_velocity(theta, r).unwrap();
                        let err = (v - exact).abs();
                        if err > 1e-8 || !state.converged {
                            println!("N={n} theta={theta} r={r}: err={err:.2e} conv={}", state.converged);
                        }
                    }
                }
                println!("N={n}: done (only points with err>1e-8 shown)");
            }
        }
        "saddletest" => {
            use flamefront::stationary::{relax, residual, turbulent_forcing, flame_velocity};
            use flamefront::linear_response::response_factors;
            let params = derive_flame_params(7.0, 1.0).unwrap();
            let width = 3.0 * params.r_c;
            let spec = synthesize(width, 0, 0.0, 0).unwrap();
            let channel = ChannelSpec { width, n_modes: 150 };
            let (state, v0) = solve(&params, &channel, &spec, &SolverSettings::default()).unwrap();
            let exact = flamefront::baselines::curved_flame_velocity(7.0, 3.0).unwrap();
            println!("polished mixed root: err={:+.3e}", v0 - exact);
            // hand-rolled ETD flow from the perturbed root, no polish
            let n = 150usize;
            let theta = 7.0;
            let b_coef = theta / (theta - 1.0);
            let c_nl = 0.5 * (theta / (theta - 1.0) + (theta - 1.0f64).powi(2) / (4.0 * theta));
            let dt = 0.05;
            let rcw = params.r_c / width;
            let growth: Vec<f64> = (1..=n).map(|i| ((1.0 - i as f64 * rcw) * dt).exp()).collect();
            let weight: Vec<f64> = (1..=n).map(|i| {
                let l = 1.0 - i as f64 * rcw;
                if l.abs() < 1e-8 { dt * (1.0 + 0.5 * l * dt) } else { ((l * dt).exp() - 1.0) / l }
            }).collect();
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
            let mut g: Vec<f64> = state.g.iter().map(|x| x + rng.random_range(-1e-6..1e-6)).collect();
            let a_turb = vec![0.0; n];
            let mut quad = vec![0.0; n];
            for step_i in 0..=4_000_000u64 {
                // quadratic rhs inline
                for i in 1..=n {
                    let mut b = 0.0;
                    for j in 0..n - i { b += g[j] * g[j + i]; }
                    let mut a = 0.0;
                    for j in 1..i { a += g[j - 1] * g[i - j - 1]; }
                    quad[i - 1] = -b_coef * b + c_nl * (a + a_turb[i - 1]);
                }
                if step_i % 500_000 == 0 {
                    let b0: f64 = g.iter().map(|x| x * x).sum();
                    let v = 0.25 * theta * b0;
                    let odd: f64 = g.iter().step_by(2).map(|x| x * x).sum::<f64>().sqrt();
                    let res = g.iter().enumerate().fold(0.0f64, |m, (i, gi)| {
                        m.max(((1.0 - (i + 1) as f64 * rcw) * gi + quad[i]).abs())
                    });
                    let dist: f64 = g.iter().zip(&state.g).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                    println!("xi={:8.0}: err={:+.3e} |odd|={odd:.3e} res={res:.2e} dist-from-root={dist:.3e}", step_i as f64 * dt, v - exact);
                }
                for i in 0..n {
                    g[i] = growth[i] * g[i] + weight[i] * quad[i];
                }
            }
        }
        _ => eprintln!("unknown experiment"),
    }
}
// temporary inspection helper appended during development
