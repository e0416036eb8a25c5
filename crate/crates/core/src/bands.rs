//! Bloch bands of an infinite lossless array of identical junctions with period `d`.
//!
//! Allowed frequencies satisfy `cos k = cos(dω) + ω sin(dω) / (2z(ω² - 1))`, which equals
//! half the trace of one period's transfer matrix. Only `k ∈ [0, π]` is reported; the
//! spectrum is even in `k`, so `-k` carries the same frequencies.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{brent, linspace};

/// Below this distance from ω = 1 the junction term is replaced by its limit or a sentinel.
pub const PLASMA_GUARD: f64 = 1e-8;
/// Default number of scan points for band segmentation.
pub const DEFAULT_RESOLUTION: usize = 8192;
/// Smallest accepted scan resolution.
pub const MIN_RESOLUTION: usize = 1024;

fn period_is_multiple_of_pi(d: f64) -> bool {
    d.sin().abs() < 1e-12 * d.max(1.0)
}

/// Right-hand side of the lossless dispersion relation.
///
/// Within [`PLASMA_GUARD`] of ω = 1 the junction term diverges unless `d` is a multiple of
/// π. The divergence is returned as a signed infinity (always outside `[-1, 1]`, i.e. a
/// gap); for `d = mπ` the finite limit `cos(d) + d (-1)^m / (4z)` is returned.
pub fn bloch_rhs(z: f64, d: f64, omega: f64) -> f64 {
    let delta = omega - 1.0;
    if delta.abs() < PLASMA_GUARD {
        if period_is_multiple_of_pi(d) {
            let m = (d / PI).round();
            let parity = if m as i64 % 2 == 0 { 1.0 } else { -1.0 };
            return d.cos() + d * parity / (4.0 * z);
        }
        let side = if delta < 0.0 { -1.0 } else { 1.0 };
        return f64::INFINITY * d.sin().signum() * side;
    }
    let phase = d * omega;
    phase.cos() + omega * phase.sin() / (2.0 * z * (omega * omega - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub k: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    /// Position of the band in the scanned window, counting from 0 at the lowest frequency.
    pub index: usize,
    pub omega_min: f64,
    pub omega_max: f64,
    /// True when the band continues below the scan window.
    pub truncated_below: bool,
    /// True when the band continues above the scan window.
    pub truncated_above: bool,
    /// Samples ordered by frequency.
    pub samples: Vec<BandPoint>,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.omega_max - self.omega_min
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandDiagram {
    pub z: f64,
    pub d: f64,
    pub window: (f64, f64),
    pub bands: Vec<Band>,
    /// Forbidden frequency intervals inside the window.
    pub gaps: Vec<(f64, f64)>,
}

fn refine_edge(z: f64, d: f64, inside: f64, outside: f64, outside_value: f64) -> Result<f64> {
    let target = outside_value.signum();
    let f = |w: f64| bloch_rhs(z, d, w) - target;
    let (lo, hi) = if inside < outside {
        (inside, outside)
    } else {
        (outside, inside)
    };
    if f(inside) == 0.0 {
        return Ok(inside);
    }
    brent(f, lo, hi, 1e-13)
}

/// Segments `[lo, hi]` into allowed bands and gaps by scanning `|bloch_rhs| <= 1` on
/// `resolution` points and refining every interior band edge by root finding.
pub fn allowed_bands(z: f64, d: f64, lo: f64, hi: f64, resolution: usize) -> Result<BandDiagram> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::invalid("z", format!("must be > 0, got {z}")));
    }
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::invalid("d", format!("must be > 0, got {d}")));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::invalid("omega", format!("window [{lo}, {hi}] must satisfy 0 < lo < hi")));
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::invalid(
            "omega",
            format!("scan resolution {resolution} is below {MIN_RESOLUTION}"),
        ));
    }

    let mut grid = linspace(lo, hi, resolution);
    // ω = 1 always lies in a gap, which can be far narrower than the grid spacing when d is
    // close to a multiple of π. Two samples inside the guard carry the divergence (or the
    // out-of-band limit) so the scan always splits there.
    if lo < 1.0 - PLASMA_GUARD && hi > 1.0 + PLASMA_GUARD {
        let at = grid.partition_point(|&w| w < 1.0);
        grid.splice(at..at, [1.0 - 0.5 * PLASMA_GUARD, 1.0 + 0.5 * PLASMA_GUARD]);
    }
    let rhs: Vec<f64> = grid.iter().map(|&w| bloch_rhs(z, d, w)).collect();
    let allowed: Vec<bool> = rhs.iter().map(|v| v.abs() <= 1.0).collect();

    let mut runs = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if allowed[i] {
            let start = i;
            while i + 1 < grid.len() && allowed[i + 1] {
                i += 1;
            }
            runs.push((start, i));
        }
        i += 1;
    }

    let mut bands = Vec::with_capacity(runs.len());
    for (index, &(start, end)) in runs.iter().enumerate() {
        let truncated_below = start == 0;
        let truncated_above = end == grid.len() - 1;
        let omega_min = if truncated_below {
            lo
        } else {
            refine_edge(z, d, grid[start], grid[start - 1], rhs[start - 1])?
        };
        let omega_max = if truncated_above {
            hi
        } else {
            refine_edge(z, d, grid[end], grid[end + 1], rhs[end + 1])?
        };
        let mut omegas = vec![omega_min];
        omegas.extend(grid[start..=end].iter().copied().filter(|&w| w > omega_min && w < omega_max));
        if omega_max > omega_min {
            omegas.push(omega_max);
        }
        let samples = omegas
            .into_iter()
            .map(|w| BandPoint {
                k: bloch_rhs(z, d, w).clamp(-1.0, 1.0).acos(),
                omega: w,
            })
            .collect();
        bands.push(Band {
            index,
            omega_min,
            omega_max,
            truncated_below,
            truncated_above,
            samples,
        });
    }

    let mut gaps = Vec::new();
    let mut cursor = lo;
    for band in &bands {
        if band.omega_min > cursor {
            gaps.push((cursor, band.omega_min));
        }
        cursor = band.omega_max;
    }
    if cursor < hi {
        gaps.push((cursor, hi));
    }

    Ok(BandDiagram {
        z,
        d,
        window: (lo, hi),
        bands,
        gaps,
    })
}

/// Frequency of band `band_index` at quasimomentum `k ∈ [0, π]`.
pub fn dispersion_at(diagram: &BandDiagram, k: f64, band_index: usize) -> Result<f64> {
    if !(0.0..=PI).contains(&k) {
        return Err(Error::invalid("k", format!("quasimomentum {k} outside [0, pi]")));
    }
    let band = diagram.bands.get(band_index).ok_or_else(|| Error::BandNotFound {
        index: band_index,
        reason: format!("only {} band(s) in the scanned window", diagram.bands.len()),
    })?;
    let (z, d) = (diagram.z, diagram.d);
    let target = k.cos();
    let f = |w: f64| bloch_rhs(z, d, w) - target;
    let (fa, fb) = (f(band.omega_min), f(band.omega_max));
    const EDGE_TOL: f64 = 1e-12;
    if fa.abs() < EDGE_TOL {
        return Ok(band.omega_min);
    }
    if fb.abs() < EDGE_TOL {
        return Ok(band.omega_max);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::BandNotFound {
            index: band_index,
            reason: format!("k = {k} is not reached inside the scanned part of the band"),
        });
    }
    brent(f, band.omega_min, band.omega_max, 1e-14)
}

/// Tight-binding hopping `g = Δω / 2` of one band.
pub fn tight_binding_coupling(diagram: &BandDiagram, band_index: usize) -> Result<f64> {
    diagram
        .bands
        .get(band_index)
        .map(|b| 0.5 * b.width())
        .ok_or_else(|| Error::BandNotFound {
            index: band_index,
            reason: format!("only {} band(s) in the scanned window", diagram.bands.len()),
        })
}
