//! Linear scattering of a microwave photon off a Josephson junction (or a stack of
//! `N` identical junctions) interrupting an open transmission line.
//!
//! Frequencies are dimensionless, `omega = ω / ω_p`, with `ω_p = 1/sqrt(L_J C_J)` the
//! junction plasma frequency. The junction enters through `z = Z_0 / Z_J` and the RCSJ
//! loss rate `gamma = Z_J / R`. A stack of `N` junctions with negligible spacing acts as a
//! single scatterer with `z_eff = z / N`.
//!
//! Time dependence is `exp(-i ω t)`; with this convention
//!
//! ```text
//! r = 1 / (1 - i (2 z_eff / ω) (ω² + i γ ω - 1)),   t = 1 - r
//! ```
//!
//! and the absorbed fraction obeys `1 - |r|² - |t|² = 4 z_eff γ |r|²`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;

/// Magnetic flux quantum h / 2e in webers.
pub const FLUX_QUANTUM: f64 = 2.067_833_848_461_929e-15;

/// Below this value of |cos(π Φ_ext/Φ_0)| the SQUID inductance is treated as divergent.
pub const SQUID_COS_TOLERANCE: f64 = 1e-6;

/// Dimensionless parameters of one mirror element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionSpec {
    z: f64,
    gamma: f64,
    n_junctions: u32,
}

impl JunctionSpec {
    pub fn new(z: f64, gamma: f64, n_junctions: u32) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::invalid("z", format!("impedance ratio must be > 0, got {z}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::invalid("gamma", format!("loss rate must be >= 0, got {gamma}")));
        }
        if n_junctions == 0 {
            return Err(Error::invalid("n", "at least one junction is required"));
        }
        Ok(Self {
            z,
            gamma,
            n_junctions,
        })
    }

    /// A single junction.
    pub fn single(z: f64, gamma: f64) -> Result<Self> {
        Self::new(z, gamma, 1)
    }

    pub fn lossless(z: f64) -> Result<Self> {
        Self::new(z, 0.0, 1)
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n_junctions(&self) -> u32 {
        self.n_junctions
    }

    /// Series parameter seen by the line: `z / N`.
    pub fn z_eff(&self) -> f64 {
        self.z / f64::from(self.n_junctions)
    }

    /// The same element with `N` folded into `z`.
    pub fn collapsed(&self) -> Self {
        Self {
            z: self.z_eff(),
            gamma: self.gamma,
            n_junctions: 1,
        }
    }
}

/// Reflection and transmission amplitudes at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionTransmission {
    pub r: Complex64,
    pub t: Complex64,
}

impl ReflectionTransmission {
    pub fn reflectance(&self) -> f64 {
        self.r.norm_sqr()
    }

    pub fn transmittance(&self) -> f64 {
        self.t.norm_sqr()
    }

    /// Fraction of the incident power that is neither reflected nor transmitted.
    pub fn leakage(&self) -> f64 {
        1.0 - self.reflectance() - self.transmittance()
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("omega", format!("frequency must be > 0, got {omega}")))
    }
}

/// Scattering amplitudes of `spec` at dimensionless frequency `omega`.
pub fn scatter(spec: &JunctionSpec, omega: f64) -> Result<ReflectionTransmission> {
    check_omega(omega)?;
    Ok(scatter_unchecked(spec, omega))
}

pub(crate) fn scatter_unchecked(spec: &JunctionSpec, omega: f64) -> ReflectionTransmission {
    let i = Complex64::i();
    let bracket = Complex64::new(omega * omega - 1.0, spec.gamma * omega);
    let denom = 1.0 - i * (2.0 * spec.z_eff() / omega) * bracket;
    let r = denom.inv();
    ReflectionTransmission { r, t: 1.0 - r }
}

/// Closed form of `|r|²`: `1 / [(1 + 2 z_eff γ)² + (2 z_eff / ω)² (ω² - 1)²]`.
pub fn reflectance_closed_form(spec: &JunctionSpec, omega: f64) -> f64 {
    let ze = spec.z_eff();
    let a = 1.0 + 2.0 * ze * spec.gamma;
    let b = 2.0 * ze / omega * (omega * omega - 1.0);
    1.0 / (a * a + b * b)
}

/// Absorbed fraction `1 - |r|² - |t|²`.
pub fn leakage_fraction(spec: &JunctionSpec, omega: f64) -> Result<f64> {
    Ok(scatter(spec, omega)?.leakage())
}

/// Cycle-averaged dissipated power
/// `P = (A² ω² / 2 Z_0) (1 - |r|² - |t|²)`, with `ω` the dimensionless frequency and
/// the dimensionful scale carried by the caller's `amplitude` and `line_impedance`.
pub fn average_power(
    spec: &JunctionSpec,
    omega: f64,
    amplitude: f64,
    line_impedance: f64,
) -> Result<f64> {
    check_power_inputs(amplitude, line_impedance)?;
    let leak = leakage_fraction(spec, omega)?;
    Ok(amplitude * amplitude * omega * omega / (2.0 * line_impedance) * leak)
}

/// The same power written through the reflected intensity,
/// `P = 2 A² ω² z_eff γ |r|² / Z_0`.
pub fn average_power_from_reflection(
    spec: &JunctionSpec,
    omega: f64,
    amplitude: f64,
    line_impedance: f64,
) -> Result<f64> {
    check_power_inputs(amplitude, line_impedance)?;
    let r2 = scatter(spec, omega)?.reflectance();
    Ok(2.0 * amplitude * amplitude * omega * omega * spec.z_eff() * spec.gamma * r2
        / line_impedance)
}

fn check_power_inputs(amplitude: f64, line_impedance: f64) -> Result<()> {
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::invalid("amp", format!("amplitude must be >= 0, got {amplitude}")));
    }
    if !(line_impedance.is_finite() && line_impedance > 0.0) {
        return Err(Error::invalid(
            "z0",
            format!("line impedance must be > 0, got {line_impedance}"),
        ));
    }
    Ok(())
}

/// Physical description of a dc SQUID embedded in a line. SI units throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidCircuit {
    /// Critical current of each of the two junctions (A).
    pub critical_current: f64,
    /// Total SQUID capacitance (F).
    pub capacitance: f64,
    /// Line inductance per unit length (H/m).
    pub line_l0: f64,
    /// Line capacitance per unit length (F/m).
    pub line_c0: f64,
    /// RCSJ shunt resistance (Ω).
    pub resistance: f64,
}

/// Effective junction of a flux-biased SQUID.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidTuning {
    pub spec: JunctionSpec,
    /// Josephson inductance L_J (H).
    pub inductance: f64,
    /// Plasma frequency 1/sqrt(L_J C_J) (rad/s).
    pub plasma_frequency: f64,
}

/// Tunes the junction parameters of a dc SQUID with the external flux
/// `flux_ratio = Φ_ext / Φ_0`, using `L_J = Φ_0 / (4π I_C |cos(π Φ_ext/Φ_0)|)`.
pub fn squid_spec(circuit: &SquidCircuit, flux_ratio: f64) -> Result<SquidTuning> {
    let positive = |name: &'static str, v: f64| {
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(name, format!("must be > 0, got {v}")))
        }
    };
    positive("ic", circuit.critical_current)?;
    positive("cj", circuit.capacitance)?;
    positive("l0", circuit.line_l0)?;
    positive("c0", circuit.line_c0)?;
    positive("resistance", circuit.resistance)?;
    if !flux_ratio.is_finite() {
        return Err(Error::invalid("flux-ratio", "must be finite"));
    }

    let cos_value = (std::f64::consts::PI * flux_ratio).cos().abs();
    if cos_value < SQUID_COS_TOLERANCE {
        return Err(Error::TuningSingularity {
            cos_value,
            tolerance: SQUID_COS_TOLERANCE,
        });
    }
    let inductance =
        FLUX_QUANTUM / (4.0 * std::f64::consts::PI * circuit.critical_current * cos_value);
    let junction_impedance = (inductance / circuit.capacitance).sqrt();
    let line_impedance = (circuit.line_l0 / circuit.line_c0).sqrt();
    let spec = JunctionSpec::new(
        line_impedance / junction_impedance,
        junction_impedance / circuit.resistance,
        1,
    )?;
    Ok(SquidTuning {
        spec,
        inductance,
        plasma_frequency: 1.0 / (inductance * circuit.capacitance).sqrt(),
    })
}

/// Scattering amplitudes sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub omega: Vec<f64>,
    pub values: Vec<ReflectionTransmission>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn reflectance(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.reflectance()).collect()
    }

    pub fn transmittance(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.transmittance()).collect()
    }

    /// Index and value of the largest sampled `|r|²`.
    pub fn peak_reflectance(&self) -> Option<(usize, f64)> {
        self.values
            .iter()
            .map(|v| v.reflectance())
            .enumerate()
            .fold(None, |best, (i, v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((i, v)),
            })
    }

    /// Width in ω of the contiguous region around the reflectance peak where
    /// `|r|² >= threshold`, with crossings located by linear interpolation between samples.
    /// `None` when the region touches either end of the grid.
    pub fn width_above(&self, threshold: f64) -> Option<f64> {
        let r2 = self.reflectance();
        let (peak, value) = self.peak_reflectance()?;
        if value < threshold {
            return Some(0.0);
        }
        let crossing = |i: usize, j: usize| {
            let (w0, w1, y0, y1) = (self.omega[i], self.omega[j], r2[i], r2[j]);
            w0 + (threshold - y0) * (w1 - w0) / (y1 - y0)
        };
        let left = (1..=peak).rev().find(|&i| r2[i - 1] < threshold)?;
        let right = (peak..self.len() - 1).find(|&i| r2[i + 1] < threshold)?;
        Some(crossing(right, right + 1) - crossing(left - 1, left))
    }
}

/// Pointwise [`scatter`] over a grid.
pub fn scatter_spectrum(spec: &JunctionSpec, grid: &FrequencyGrid) -> Spectrum {
    let values = grid
        .points()
        .par_iter()
        .map(|&w| scatter_unchecked(spec, w))
        .collect();
    Spectrum {
        omega: grid.points().to_vec(),
        values,
    }
}
