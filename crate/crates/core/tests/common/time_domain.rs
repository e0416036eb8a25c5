//! Time-domain reference for the driven nonlinear junction.
//!
//! With the semi-infinite lines eliminated by d'Alembert decomposition, the flux jump
//! `u = δφ/Φ_0` across a lossless junction obeys (τ = ω_p t)
//!
//! ```text
//! u'' + u' / (2z) + sin(2πu) / (2π) = -ψ'(τ) / z,     ψ = Ā cos(ωτ)
//! ```
//!
//! where the line contributes radiative damping and the incident wave `ψ` a source. The
//! reflected harmonics follow from `u = Ā Re[Σ (-2 r_n) e^{-inωτ}]`.

use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct SteadyState {
    pub r: [Complex64; 5],
    pub periods: usize,
}

const STEPS_PER_PERIOD: usize = 2048;
const DRIFT_TOL: f64 = 1e-6;
const STABLE_PERIODS: usize = 5;
const MAX_PERIODS: usize = 4000;

fn accel(z: f64, omega: f64, amp: f64, tau: f64, u: f64, v: f64) -> f64 {
    amp * omega / z * (omega * tau).sin() - v / (2.0 * z) - (2.0 * PI * u).sin() / (2.0 * PI)
}

/// Integrates from rest with RK4 until the per-period harmonic content changes by less
/// than 1e-6 over five consecutive periods, then returns `r_1..r_5`.
pub fn steady_state(z: f64, omega: f64, amp: f64) -> SteadyState {
    let period = 2.0 * PI / omega;
    let h = period / STEPS_PER_PERIOD as f64;
    let (mut u, mut v) = (0.0f64, 0.0f64);
    let mut tau = 0.0f64;
    let mut prev: Option<[Complex64; 5]> = None;
    let mut stable = 0;

    for p in 0..MAX_PERIODS {
        let mut proj = [Complex64::new(0.0, 0.0); 5];
        for step in 0..STEPS_PER_PERIOD {
            let theta = 2.0 * PI * step as f64 / STEPS_PER_PERIOD as f64;
            for (n, acc) in proj.iter_mut().enumerate() {
                *acc += u * Complex64::from_polar(1.0, (n + 1) as f64 * theta);
            }
            let f = |t: f64, u: f64, v: f64| (v, accel(z, omega, amp, t, u, v));
            let (k1u, k1v) = f(tau, u, v);
            let (k2u, k2v) = f(tau + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
            let (k3u, k3v) = f(tau + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
            let (k4u, k4v) = f(tau + h, u + h * k3u, v + h * k3v);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            tau = (p * STEPS_PER_PERIOD + step + 1) as f64 * h;
        }
        // U_n = (2/N) Σ u e^{inθ};  r_n = -U_n / (2Ā)
        let r: [Complex64; 5] = std::array::from_fn(|n| {
            -(2.0 / STEPS_PER_PERIOD as f64) * proj[n] / (2.0 * amp)
        });
        if let Some(old) = prev {
            let drift = r
                .iter()
                .zip(old.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if drift < DRIFT_TOL {
                stable += 1;
                if stable >= STABLE_PERIODS {
                    return SteadyState { r, periods: p + 1 };
                }
            } else {
                stable = 0;
            }
        }
        prev = Some(r);
    }
    panic!("time-domain reference did not settle at omega={omega}, amp={amp}");
}
