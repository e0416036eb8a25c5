//! Harmonic balance for a lossless junction driven through the line.
//!
//! With `u = δφ / Φ_0`, `τ = ω_p t`, the current balance at the junction reads
//!
//! ```text
//! i_line(τ) = u'' + u - (2π)²/3! u³ + (2π)⁴/5! u⁵
//! ```
//!
//! The fields are expanded as `Re[Σ_n r_n e^{-inωτ}]` on each side (time convention
//! `exp(-iωτ)` as in the linear theory). Current continuity across the junction fixes
//! `t_n = δ_{n1} - r_n`, so the flux jump is `u = Ā Re[Σ_n (-2 r_n) e^{-inωτ}]` and the line
//! current harmonic is `(i n ω / z) Ā (δ_{n1} - r_n)`. Projecting the polynomial onto each
//! retained harmonic gives a small real system in `(Re r_n, Im r_n)` that is solved by
//! damped Newton iteration with an exact Jacobian.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::series::TwoSided;
use crate::error::{Error, Result};
use crate::scattering::{scatter_unchecked, JunctionSpec};

/// Amplitudes above this value leave the regime where the quintic expansion of the
/// Josephson current is trustworthy.
pub const AMPLITUDE_VALIDITY: f64 = 0.1;
pub const MAX_NEWTON_ITERATIONS: usize = 100;
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

const CUBIC: f64 = (2.0 * PI) * (2.0 * PI) / 6.0;
const QUINTIC: f64 = (2.0 * PI) * (2.0 * PI) * (2.0 * PI) * (2.0 * PI) / 120.0;

/// Drive of the nonlinear scattering problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivePoint {
    pub omega: f64,
    /// Incident flux amplitude in units of Φ_0.
    pub amplitude: f64,
    pub z: f64,
}

impl DrivePoint {
    pub fn new(omega: f64, amplitude: f64, z: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::invalid("omega", format!("frequency must be > 0, got {omega}")));
        }
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::invalid("amp", format!("amplitude must be >= 0, got {amplitude}")));
        }
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::invalid("z", format!("impedance ratio must be > 0, got {z}")));
        }
        Ok(Self { omega, amplitude, z })
    }

    pub fn beyond_validity(&self) -> bool {
        self.amplitude > AMPLITUDE_VALIDITY
    }
}

/// Which harmonics enter the balance as unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicSet {
    /// n = 1, 3, 5 (the sine nonlinearity keeps odd parity).
    Odd,
    /// n = 1..=5, for checking that even harmonics stay at zero.
    All,
}

impl HarmonicSet {
    fn harmonics(self) -> &'static [usize] {
        match self {
            HarmonicSet::Odd => &[1, 3, 5],
            HarmonicSet::All => &[1, 2, 3, 4, 5],
        }
    }
}

const MAX_HARMONIC: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicResponse {
    pub r1: Complex64,
    pub r3: Complex64,
    pub r5: Complex64,
    pub t1: Complex64,
    pub t3: Complex64,
    pub t5: Complex64,
    /// `(r_2, r_4)` when even harmonics were solved for.
    pub even: Option<(Complex64, Complex64)>,
    pub converged: bool,
    /// Max-norm of the projected current balance at the returned solution.
    pub residual: f64,
    pub iterations: usize,
    /// Set when the amplitude exceeds [`AMPLITUDE_VALIDITY`].
    pub amplitude_warning: bool,
}

impl HarmonicResponse {
    /// Reflected amplitude of harmonic `n` (zero for harmonics that were not solved).
    pub fn r(&self, n: usize) -> Complex64 {
        match (n, self.even) {
            (1, _) => self.r1,
            (3, _) => self.r3,
            (5, _) => self.r5,
            (2, Some((r2, _))) => r2,
            (4, Some((_, r4))) => r4,
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn t(&self, n: usize) -> Complex64 {
        let delta = if n == 1 { 1.0 } else { 0.0 };
        delta - self.r(n)
    }

    /// Flux-jump coefficient `c_n = t_n - r_n - δ_{n1}` (in units of Ā).
    pub fn flux_jump(&self, n: usize) -> Complex64 {
        let delta = if n == 1 { 1.0 } else { 0.0 };
        self.t(n) - self.r(n) - delta
    }

    /// Line current of harmonic `n` on the left and right of the junction, in units of
    /// `Ā Φ_0 / L_J`.
    pub fn line_currents(&self, point: &DrivePoint, n: usize) -> (Complex64, Complex64) {
        let k = Complex64::new(0.0, n as f64 * point.omega / point.z);
        let delta = if n == 1 { 1.0 } else { 0.0 };
        (k * (delta - self.r(n)), k * self.t(n))
    }
}

struct System<'a> {
    point: DrivePoint,
    harmonics: &'a [usize],
}

impl System<'_> {
    fn amplitudes(&self, x: &DVector<f64>) -> [Complex64; MAX_HARMONIC] {
        let mut r = [Complex64::new(0.0, 0.0); MAX_HARMONIC];
        for (j, &n) in self.harmonics.iter().enumerate() {
            r[n - 1] = Complex64::new(x[2 * j], x[2 * j + 1]);
        }
        r
    }

    fn linear_coefficient(&self, n: usize) -> Complex64 {
        let nw = n as f64 * self.point.omega;
        Complex64::new(2.0 * (1.0 - nw * nw), -nw / self.point.z)
    }

    /// Flux jump `u / Ā` as a two-sided series.
    fn flux_series(r: &[Complex64; MAX_HARMONIC]) -> TwoSided {
        let jump: Vec<Complex64> = r.iter().map(|rn| -2.0 * rn).collect();
        TwoSided::from_real_amplitudes(&jump)
    }

    fn residual_and_jacobian(&self, x: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let r = self.amplitudes(x);
        let a2 = self.point.amplitude * self.point.amplitude;
        let (c3, c5) = (CUBIC * a2, QUINTIC * a2 * a2);
        let v = Self::flux_series(&r);
        let v2 = v.convolve(&v);
        let v3 = v2.convolve(&v);
        let v4 = v2.convolve(&v2);
        let v5 = v4.convolve(&v);

        let size = 2 * self.harmonics.len();
        let mut res = DVector::zeros(size);
        for (j, &n) in self.harmonics.iter().enumerate() {
            let drive = if n == 1 {
                Complex64::new(0.0, self.point.omega / self.point.z)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let value = drive + self.linear_coefficient(n) * r[n - 1]
                + c3 * v3.real_amplitude(n)
                - c5 * v5.real_amplitude(n);
            res[2 * j] = value.re;
            res[2 * j + 1] = value.im;
        }

        let mut jac = DMatrix::zeros(size, size);
        for (col_j, &m) in self.harmonics.iter().enumerate() {
            for (part, dr) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
                .into_iter()
                .enumerate()
            {
                let mut dr_all = [Complex64::new(0.0, 0.0); MAX_HARMONIC];
                dr_all[m - 1] = dr;
                let dv = Self::flux_series(&dr_all);
                let dv3 = v2.convolve(&dv);
                let dv5 = v4.convolve(&dv);
                let col = 2 * col_j + part;
                for (row_j, &n) in self.harmonics.iter().enumerate() {
                    let mut value =
                        3.0 * c3 * dv3.real_amplitude(n) - 5.0 * c5 * dv5.real_amplitude(n);
                    if n == m {
                        value += self.linear_coefficient(n) * dr;
                    }
                    jac[(2 * row_j, col)] = value.re;
                    jac[(2 * row_j + 1, col)] = value.im;
                }
            }
        }
        (res, jac)
    }

    fn residual_norm(&self, x: &DVector<f64>) -> f64 {
        self.residual_and_jacobian(x).0.amax()
    }

    /// Damped Newton from `x`. Returns the final iterate, residual and iteration count.
    fn newton(&self, mut x: DVector<f64>) -> (DVector<f64>, f64, usize, bool) {
        let (mut res, mut jac) = self.residual_and_jacobian(&x);
        let mut norm = res.amax();
        for iter in 0..MAX_NEWTON_ITERATIONS {
            if norm < RESIDUAL_TOLERANCE {
                return (x, norm, iter, true);
            }
            let Some(step) = jac.clone().lu().solve(&(-&res)) else {
                return (x, norm, iter, false);
            };
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let trial = &x + scale * &step;
                let (trial_res, trial_jac) = self.residual_and_jacobian(&trial);
                let trial_norm = trial_res.amax();
                if trial_norm < norm || trial_norm < RESIDUAL_TOLERANCE {
                    x = trial;
                    res = trial_res;
                    jac = trial_jac;
                    norm = trial_norm;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            if !accepted {
                return (x, norm, iter + 1, norm < RESIDUAL_TOLERANCE);
            }
        }
        let ok = norm < RESIDUAL_TOLERANCE;
        (x, norm, MAX_NEWTON_ITERATIONS, ok)
    }
}

fn linear_seed(point: &DrivePoint, harmonics: &[usize]) -> DVector<f64> {
    let lin = scatter_unchecked(
        &JunctionSpec::lossless(point.z).expect("validated drive"),
        point.omega,
    )
    .r;
    let mut x = DVector::zeros(2 * harmonics.len());
    x[0] = lin.re;
    x[1] = lin.im;
    x
}

/// Solves the balance for the requested harmonic set without failing on non-convergence.
pub fn solve_harmonics(point: &DrivePoint, set: HarmonicSet) -> HarmonicResponse {
    let harmonics = set.harmonics();
    let system = System {
        point: *point,
        harmonics,
    };
    let mut seed = linear_seed(point, harmonics);
    if set == HarmonicSet::All {
        // Start the even harmonics away from zero so the diagnostic is meaningful.
        seed[2] = 1e-3;
        seed[3] = -1e-3;
        seed[6] = 1e-4;
        seed[7] = 1e-4;
    }
    let (mut x, mut residual, mut iterations, mut converged) = system.newton(seed.clone());

    if !converged && point.amplitude > 0.0 {
        // Amplitude continuation from the linear solution.
        const STEPS: usize = 20;
        let mut guess = seed;
        let mut total = 0;
        let mut ok = true;
        for s in 1..=STEPS {
            let stage = System {
                point: DrivePoint {
                    amplitude: point.amplitude * s as f64 / STEPS as f64,
                    ..*point
                },
                harmonics,
            };
            let (xs, _, it, conv) = stage.newton(guess);
            total += it;
            guess = xs;
            ok = conv;
            if !conv {
                break;
            }
        }
        if ok || system.residual_norm(&guess) < residual {
            residual = system.residual_norm(&guess);
            x = guess;
            converged = ok;
            iterations += total;
        }
    }

    let r = system.amplitudes(&x);
    let even = (set == HarmonicSet::All).then_some((r[1], r[3]));
    HarmonicResponse {
        r1: r[0],
        r3: r[2],
        r5: r[4],
        t1: 1.0 - r[0],
        t3: -r[2],
        t5: -r[4],
        even,
        converged,
        residual,
        iterations,
        amplitude_warning: point.beyond_validity(),
    }
}

/// Odd-harmonic (n = 1, 3, 5) balance at one drive point.
pub fn harmonic_balance(point: &DrivePoint) -> Result<HarmonicResponse> {
    let response = solve_harmonics(point, HarmonicSet::Odd);
    if response.converged {
        Ok(response)
    } else {
        Err(Error::NoConvergence {
            iterations: response.iterations,
            residual: response.residual,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapCell {
    pub omega: f64,
    pub amplitude: f64,
    pub r1_sq: f64,
    pub r3_sq: f64,
    pub r5_sq: f64,
    pub converged: bool,
}

/// `|r_1|², |r_3|², |r_5|²` over an amplitude x frequency grid, amplitude-major order.
/// Points that fail to converge are kept with `converged = false`.
pub fn harmonic_map(z: f64, omegas: &[f64], amplitudes: &[f64]) -> Result<Vec<MapCell>> {
    let points: Vec<DrivePoint> = amplitudes
        .iter()
        .flat_map(|&a| omegas.iter().map(move |&w| (w, a)))
        .map(|(w, a)| DrivePoint::new(w, a, z))
        .collect::<Result<_>>()?;
    Ok(points
        .par_iter()
        .map(|p| {
            let resp = solve_harmonics(p, HarmonicSet::Odd);
            MapCell {
                omega: p.omega,
                amplitude: p.amplitude,
                r1_sq: resp.r1.norm_sqr(),
                r3_sq: resp.r3.norm_sqr(),
                r5_sq: resp.r5.norm_sqr(),
                converged: resp.converged,
            }
        })
        .collect())
}
