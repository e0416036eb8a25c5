//! Weakly nonlinear scattering off a single lossless junction: third and fifth harmonic
//! generation, the amplitude-dependent resonance shift, and photon-number estimates.

mod balance;
pub mod series;

pub use balance::{
    harmonic_balance, harmonic_map, solve_harmonics, DrivePoint, HarmonicResponse, HarmonicSet,
    MapCell, AMPLITUDE_VALIDITY, MAX_NEWTON_ITERATIONS, RESIDUAL_TOLERANCE,
};

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{elliptic_k, integrate};
use crate::scattering::FLUX_QUANTUM;

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817_646_156_5e-34;

fn pendulum_modulus(amplitude: f64) -> Result<f64> {
    let k = 2.0 * PI * amplitude;
    if !(amplitude.is_finite() && amplitude >= 0.0) || k >= 1.0 {
        return Err(Error::invalid(
            "amp",
            format!("pendulum period needs 0 <= 2*pi*amp < 1, got amp = {amplitude}"),
        ));
    }
    Ok(k)
}

/// Pendulum period `T = 4 ∫_0^{π/2} dθ / sqrt(1 - (2πĀ)² sin²θ) = 4 K(2πĀ)` in units of
/// `1/ω_J`, evaluated through the arithmetic-geometric mean.
pub fn pendulum_period(amplitude: f64) -> Result<f64> {
    let k = pendulum_modulus(amplitude)?;
    Ok(4.0 * elliptic_k(k))
}

/// The same period by adaptive Gauss-Kronrod quadrature of the integral.
pub fn pendulum_period_quadrature(amplitude: f64) -> Result<f64> {
    let k = pendulum_modulus(amplitude)?;
    let k2 = k * k;
    Ok(4.0 * integrate(|t| 1.0 / (1.0 - k2 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-15))
}

/// Predicted resonance frequency `2π / T(Ā)` (units of ω_p).
pub fn resonance_shift(amplitude: f64) -> Result<f64> {
    Ok(2.0 * PI / pendulum_period(amplitude)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonEstimate {
    pub photons: f64,
    /// Set when `2n + 1 = Ā² Φ_0² / ħZ` gave a negative count, which is clamped to zero.
    pub sub_single_photon: bool,
}

/// Photon number behind a cavity field of amplitude `Ā` (units of Φ_0) in a line of
/// impedance `impedance` (Ω): `n = (Ā² Φ_0² / ħZ - 1) / 2`, scaled by `N²` when the flux
/// jump is spread over `N` junctions.
pub fn photon_number_estimate(amplitude: f64, impedance: f64, n_junctions: u32) -> Result<PhotonEstimate> {
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::invalid("amp", format!("amplitude must be >= 0, got {amplitude}")));
    }
    if !(impedance.is_finite() && impedance > 0.0) {
        return Err(Error::invalid("impedance", format!("must be > 0, got {impedance}")));
    }
    if n_junctions == 0 {
        return Err(Error::invalid("n", "at least one junction is required"));
    }
    let ratio = amplitude * amplitude * FLUX_QUANTUM * FLUX_QUANTUM / (HBAR * impedance);
    let single = 0.5 * (ratio - 1.0);
    let n2 = f64::from(n_junctions).powi(2);
    Ok(if single < 0.0 {
        PhotonEstimate {
            photons: 0.0,
            sub_single_photon: true,
        }
    } else {
        PhotonEstimate {
            photons: single * n2,
            sub_single_photon: false,
        }
    })
}
