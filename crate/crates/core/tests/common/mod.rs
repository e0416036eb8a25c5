//! Independent reference computations used only by the test suites.

#![allow(dead_code)]

pub mod time_domain;

use num_complex::Complex64;

/// Reflection from the series-impedance picture of a parallel RLC junction in a line,
/// in SI units and the `exp(-iωt)` convention (capacitor admittance `-iωC`):
/// `r = Z_s / (Z_s + 2 Z_0)`.
pub fn series_impedance_reflection(z: f64, gamma: f64, n: u32, omega_bar: f64) -> Complex64 {
    // Arbitrary physical scale; only the ratios z, gamma matter.
    let line_impedance = 50.0;
    let junction_impedance = line_impedance / z;
    let capacitance = 2.0e-13;
    let inductance = junction_impedance * junction_impedance * capacitance;
    let resistance = junction_impedance / gamma;
    let plasma = 1.0 / (inductance * capacitance).sqrt();
    let w = omega_bar * plasma;
    let i = Complex64::i();
    let admittance = -i * w * capacitance + 1.0 / (-i * w * inductance) + 1.0 / resistance;
    let series = f64::from(n) / admittance;
    series / (series + 2.0 * line_impedance)
}

/// Two-port scattering data `(r from the left, r' from the right, t)` of a reciprocal element.
#[derive(Debug, Clone, Copy)]
pub struct TwoPort {
    pub r: Complex64,
    pub r_back: Complex64,
    pub t: Complex64,
}

/// Multiple-reflection (Fabry-Perot) composition of `a`, a free gap of length `d` and `b`.
pub fn compose(a: TwoPort, d: f64, b: TwoPort, omega: f64) -> TwoPort {
    let phase = Complex64::from_polar(1.0, omega * d);
    let round_trip = 1.0 / (1.0 - a.r_back * b.r * phase * phase);
    TwoPort {
        r: a.r + a.t * a.t * b.r * phase * phase * round_trip,
        r_back: b.r_back + b.t * b.t * a.r_back * phase * phase * round_trip,
        t: a.t * b.t * phase * round_trip,
    }
}

/// Symmetric junction two-port from the series-impedance circuit.
pub fn junction_port(z: f64, gamma: f64, omega: f64) -> TwoPort {
    let r = series_impedance_reflection(z, gamma, 1, omega);
    TwoPort { r, r_back: r, t: 1.0 - r }
}

/// Junctions `zs[i]` separated by gaps `gaps[i]` (one fewer gap than junctions).
pub fn chain_oracle(zs: &[f64], gaps: &[f64], gamma: f64, omega: f64) -> TwoPort {
    assert_eq!(zs.len(), gaps.len() + 1);
    let mut acc = junction_port(zs[0], gamma, omega);
    for (z, d) in zs[1..].iter().zip(gaps) {
        acc = compose(acc, *d, junction_port(*z, gamma, omega), omega);
    }
    acc
}
