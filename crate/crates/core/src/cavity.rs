//! Pseudo-cavities formed by junction mirrors: lossless resonance condition, quality
//! factor, and the doublet splitting of two cavities coupled through a middle junction.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{brent, golden_max, linspace};
use crate::transfer::{chain_scattering, ChainSpec};
use crate::scattering::JunctionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    Frequency,
    Length,
}

/// Sorted resonance positions along one scan axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceSet {
    pub roots: Vec<f64>,
    pub axis: ScanAxis,
}

/// Residual of `tan(dω) = (2z/ω)(1 - ω²)`.
pub fn resonance_residual(z: f64, d: f64, omega: f64) -> f64 {
    (d * omega).tan() - 2.0 * z / omega * (1.0 - omega * omega)
}

// `ω cos(dω)` times the residual; continuous, and sign-equivalent to it on each tangent branch.
fn resonance_numerator(z: f64, d: f64, omega: f64) -> f64 {
    2.0 * z * (omega * omega - 1.0) * (d * omega).cos() + omega * (d * omega).sin()
}

fn check_window(name: &'static str, lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 {
        return Err(Error::invalid(name, format!("window [{lo}, {hi}] must lie in [0, inf)")));
    }
    Ok(())
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be > 0, got {v}")))
    }
}

/// Lossless cavity resonances (reflection zeros) with frequency in `[lo, hi]`.
///
/// `tan(dω)` runs monotonically from -∞ to +∞ between its poles at `dω = (m + ½)π`, while
/// `(2z/ω)(1 - ω²)` decreases monotonically, so each branch holds exactly one root.
/// When `d = mπ` the list includes ω = 1, where both sides vanish; the mirrors reflect
/// totally there, so that root is not a transmission resonance.
pub fn cavity_resonances_in_frequency(z: f64, d: f64, lo: f64, hi: f64) -> Result<ResonanceSet> {
    positive("z", z)?;
    positive("d", d)?;
    check_window("omega", lo, hi)?;
    let mut roots = Vec::new();
    let lo = lo.max(f64::MIN_POSITIVE);
    if hi > lo {
        // Branch boundaries (tangent poles) inside the window.
        let first = ((lo * d - FRAC_PI_2) / PI).ceil() as i64;
        let last = ((hi * d - FRAC_PI_2) / PI).floor() as i64;
        let mut edges = vec![lo];
        edges.extend((first..=last).map(|m| (m as f64 * PI + FRAC_PI_2) / d));
        edges.push(hi);
        edges.dedup();

        let f = |w: f64| resonance_numerator(z, d, w);
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if b <= a {
                continue;
            }
            let (fa, fb) = (f(a), f(b));
            if fa == 0.0 && a == lo {
                roots.push(a);
            } else if fb == 0.0 && b == hi {
                roots.push(b);
            } else if fa.signum() != fb.signum() && fa != 0.0 && fb != 0.0 {
                roots.push(brent(f, a, b, 1e-15)?);
            }
        }
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(ResonanceSet {
        roots,
        axis: ScanAxis::Frequency,
    })
}

/// Lossless cavity resonances as a function of mirror separation at fixed frequency:
/// `d_m = [arctan((2z/ω)(1 - ω²)) + mπ] / ω` for every `d_m` in `[lo, hi]`.
/// At ω = 1 this gives `d_m = mπ`, again with totally reflecting mirrors.
pub fn cavity_resonances_in_length(z: f64, omega: f64, lo: f64, hi: f64) -> Result<ResonanceSet> {
    positive("z", z)?;
    positive("omega", omega)?;
    check_window("d", lo, hi)?;
    let base = (2.0 * z / omega * (1.0 - omega * omega)).atan();
    let first = ((lo * omega - base) / PI).ceil() as i64;
    let last = ((hi * omega - base) / PI).floor() as i64;
    let roots = (first..=last)
        .map(|m| (base + m as f64 * PI) / omega)
        .filter(|d| *d >= lo && *d <= hi)
        .collect();
    Ok(ResonanceSet {
        roots,
        axis: ScanAxis::Length,
    })
}

/// Quality factor of a cavity of length `d` with broadband mirrors of reflection
/// `r_mirror`: `Q = ω d / (2 v_g (1 - |r|²))` with `v_g = 1`.
pub fn quality_factor(omega: f64, d: f64, r_mirror: Complex64) -> Result<f64> {
    positive("omega", omega)?;
    positive("d", d)?;
    let r2 = r_mirror.norm_sqr();
    if r2 >= 1.0 {
        return Err(Error::InfiniteQuality {
            abs_r: r_mirror.norm(),
        });
    }
    Ok(omega * d / (2.0 * (1.0 - r2)))
}

/// Doublet extracted from the transmission of two coupled cavities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult {
    pub omega_minus: f64,
    pub omega_plus: f64,
    /// Splitting `ω₊ - ω₋`.
    pub g: f64,
    /// Midpoint `(ω₊ + ω₋) / 2`.
    pub omega0: f64,
}

/// Parameters of the three-junction coupled-cavity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledCavity {
    /// Outer junction impedance ratio.
    pub z: f64,
    /// Middle (coupling) junction impedance ratio.
    pub z_in: f64,
    /// Length of each cavity.
    pub d: f64,
    pub gamma: f64,
}

impl CoupledCavity {
    pub fn chain(&self) -> Result<ChainSpec> {
        ChainSpec::coupled_cavities(
            JunctionSpec::single(self.z, self.gamma)?,
            JunctionSpec::single(self.z_in, self.gamma)?,
            self.d,
        )
    }

    pub fn transmittance(&self, omega: f64) -> Result<f64> {
        Ok(chain_scattering(&self.chain()?, omega)?.transmittance())
    }
}

/// Minimum topographic prominence (in `|t|²`) of an accepted transmission peak.
pub const MIN_PEAK_PROMINENCE: f64 = 1e-3;
/// Minimum number of grid points for the doublet scan.
pub const MIN_COUPLING_GRID: usize = 4096;

/// Local maxima of `values` with their prominence.
pub(crate) fn peaks_with_prominence(values: &[f64]) -> Vec<(usize, f64)> {
    let n = values.len();
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let v = values[i];
        if !(v > values[i - 1] && v >= values[i + 1]) {
            continue;
        }
        let mut left_min = v;
        let mut j = i;
        while j > 0 {
            j -= 1;
            if values[j] > v {
                break;
            }
            left_min = left_min.min(values[j]);
        }
        let mut right_min = v;
        let mut j = i;
        while j + 1 < n {
            j += 1;
            if values[j] > v {
                break;
            }
            right_min = right_min.min(values[j]);
        }
        out.push((i, v - left_min.max(right_min)));
    }
    out
}

/// Locates the transmission doublet of two coupled cavities inside `[lo, hi]`.
///
/// `|t|²` is sampled on `points` uniform frequencies (at least [`MIN_COUPLING_GRID`]); the
/// two highest local maxima with prominence above [`MIN_PEAK_PROMINENCE`] are refined by
/// golden-section search to 1e-10 in ω.
pub fn coupled_cavity_coupling(
    system: &CoupledCavity,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<CouplingResult> {
    positive("z", system.z)?;
    positive("z-in", system.z_in)?;
    positive("d", system.d)?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("omega", format!("window [{lo}, {hi}] must satisfy 0 < lo < hi")));
    }
    let chain = system.chain()?;
    let points = points.max(MIN_COUPLING_GRID);
    let grid = linspace(lo, hi, points);
    let t2: Vec<f64> = grid
        .par_iter()
        .map(|&w| chain_scattering(&chain, w).map(|s| s.transmittance()))
        .collect::<Result<_>>()?;

    let mut peaks: Vec<(usize, f64)> = peaks_with_prominence(&t2)
        .into_iter()
        .filter(|&(_, prom)| prom >= MIN_PEAK_PROMINENCE)
        .collect();
    if peaks.len() < 2 {
        return Err(Error::UnresolvedDoublet {
            found: peaks.len(),
            lo,
            hi,
        });
    }
    peaks.sort_by(|a, b| t2[b.0].total_cmp(&t2[a.0]).then(a.0.cmp(&b.0)));

    let refine = |i: usize| -> f64 {
        let f = |w: f64| {
            chain_scattering(&chain, w)
                .map(|s| s.transmittance())
                .unwrap_or(f64::NEG_INFINITY)
        };
        golden_max(f, grid[i - 1], grid[i + 1], 1e-10).0
    };
    let a = refine(peaks[0].0);
    let b = refine(peaks[1].0);
    let (omega_minus, omega_plus) = if a < b { (a, b) } else { (b, a) };
    Ok(CouplingResult {
        omega_minus,
        omega_plus,
        g: omega_plus - omega_minus,
        omega0: 0.5 * (omega_plus + omega_minus),
    })
}
