//! Python bindings for `jjscatter`.
//!
//! Frequencies are in units of the plasma frequency, lengths in units of `v / ω_p`.
//! Invalid parameters raise `ValueError`; numerical failures raise `ArithmeticError`.

use jjscatter::{bands, cavity, nonlinear, scattering, transfer};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: jjscatter::Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for jjscatter::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A junction, or `n` identical junctions stacked at one point.
#[pyclass(frozen, from_py_object, module = "jjscatter_py")]
#[derive(Clone, Copy)]
struct Junction(scattering::JunctionSpec);

#[pymethods]
impl Junction {
    #[new]
    #[pyo3(signature = (z, gamma = 0.0, n = 1))]
    fn new(z: f64, gamma: f64, n: u32) -> PyResult<Self> {
        scattering::JunctionSpec::new(z, gamma, n).map(Self).or_raise()
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n_junctions()
    }

    #[getter]
    fn z_eff(&self) -> f64 {
        self.0.z_eff()
    }

    /// `(r, t)` at frequency `omega`.
    fn scatter(&self, omega: f64) -> PyResult<(Complex64, Complex64)> {
        let s = scattering::scatter(&self.0, omega).or_raise()?;
        Ok((s.r, s.t))
    }

    /// `(|r|², |t|², leak)` at frequency `omega`.
    fn powers(&self, omega: f64) -> PyResult<(f64, f64, f64)> {
        let s = scattering::scatter(&self.0, omega).or_raise()?;
        Ok((s.reflectance(), s.transmittance(), s.leakage()))
    }

    /// Time-averaged power dissipated in the shunt (W) for drive amplitude `amp` (A)
    /// in a line of impedance `z0` (Ω).
    fn average_power(&self, omega: f64, amp: f64, z0: f64) -> PyResult<f64> {
        scattering::average_power(&self.0, omega, amp, z0).or_raise()
    }

    /// Single-junction transfer matrix as nested lists.
    fn matrix(&self, omega: f64) -> PyResult<[[Complex64; 2]; 2]> {
        Ok(rows(&transfer::junction_matrix(&self.0, omega).or_raise()?))
    }

    fn __repr__(&self) -> String {
        format!("Junction(z={}, gamma={}, n={})", self.0.z(), self.0.gamma(), self.0.n_junctions())
    }
}

fn rows(m: &transfer::TransferMatrix) -> [[Complex64; 2]; 2] {
    [[m.m00, m.m01], [m.m10, m.m11]]
}

#[derive(FromPyObject)]
enum Element {
    Junction(Junction),
    Gap(f64),
}

/// Spatially ordered chain of junctions and line segments. Build it from a list whose
/// items are `Junction`s or floats (gap lengths).
#[pyclass(frozen, module = "jjscatter_py")]
struct Chain(transfer::ChainSpec);

#[pymethods]
impl Chain {
    #[new]
    fn new(elements: Vec<Element>) -> PyResult<Self> {
        let els = elements
            .into_iter()
            .map(|e| match e {
                Element::Junction(j) => transfer::ChainElement::Junction(j.0),
                Element::Gap(d) => transfer::ChainElement::Gap(d),
            })
            .collect();
        transfer::ChainSpec::new(els).map(Self).or_raise()
    }

    /// Two identical mirrors a distance `d` apart.
    #[staticmethod]
    fn cavity(mirror: Junction, d: f64) -> PyResult<Self> {
        transfer::ChainSpec::cavity(mirror.0, d).map(Self).or_raise()
    }

    /// Outer mirror, gap, inner junction, gap, outer mirror.
    #[staticmethod]
    fn coupled_cavities(outer: Junction, inner: Junction, d: f64) -> PyResult<Self> {
        transfer::ChainSpec::coupled_cavities(outer.0, inner.0, d).map(Self).or_raise()
    }

    fn reversed(&self) -> Self {
        Self(self.0.reversed())
    }

    fn __len__(&self) -> usize {
        self.0.elements().len()
    }

    fn matrix(&self, omega: f64) -> PyResult<[[Complex64; 2]; 2]> {
        Ok(rows(&transfer::chain_matrix(&self.0, omega).or_raise()?))
    }

    /// `(r, t)` for a wave incident from the left.
    fn scatter(&self, omega: f64) -> PyResult<(Complex64, Complex64)> {
        let s = transfer::chain_scattering(&self.0, omega).or_raise()?;
        Ok((s.r, s.t))
    }
}

/// Sorted resonance frequencies of a two-mirror cavity of length `d` in `[lo, hi]`.
#[pyfunction]
fn cavity_resonances_in_frequency(z: f64, d: f64, lo: f64, hi: f64) -> PyResult<Vec<f64>> {
    Ok(cavity::cavity_resonances_in_frequency(z, d, lo, hi).or_raise()?.roots)
}

/// Sorted resonant cavity lengths in `[lo, hi]` at fixed frequency `omega`.
#[pyfunction]
fn cavity_resonances_in_length(z: f64, omega: f64, lo: f64, hi: f64) -> PyResult<Vec<f64>> {
    Ok(cavity::cavity_resonances_in_length(z, omega, lo, hi).or_raise()?.roots)
}

#[pyfunction]
fn quality_factor(omega: f64, d: f64, r_mirror: Complex64) -> PyResult<f64> {
    cavity::quality_factor(omega, d, r_mirror).or_raise()
}

/// Peak splitting of two coupled cavities.
/// Returns `(omega_minus, omega_plus, g, omega0)`.
#[pyfunction]
#[pyo3(signature = (z, z_in, d, gamma, lo = 1.08, hi = 1.28, resolution = 4096))]
fn coupled_cavity_coupling(
    z: f64,
    z_in: f64,
    d: f64,
    gamma: f64,
    lo: f64,
    hi: f64,
    resolution: usize,
) -> PyResult<(f64, f64, f64, f64)> {
    let sys = cavity::CoupledCavity { z, z_in, d, gamma };
    let c = cavity::coupled_cavity_coupling(&sys, lo, hi, resolution).or_raise()?;
    Ok((c.omega_minus, c.omega_plus, c.g, c.omega0))
}

/// Right-hand side of the Bloch condition `cos k = bloch_rhs(z, d, omega)`.
#[pyfunction]
fn bloch_rhs(z: f64, d: f64, omega: f64) -> f64 {
    bands::bloch_rhs(z, d, omega)
}

#[pyclass(frozen, get_all, module = "jjscatter_py")]
struct Band {
    index: usize,
    omega_min: f64,
    omega_max: f64,
    truncated_below: bool,
    truncated_above: bool,
    k: Vec<f64>,
    omega: Vec<f64>,
}

#[pymethods]
impl Band {
    #[getter]
    fn width(&self) -> f64 {
        self.omega_max - self.omega_min
    }
}

/// Allowed bands and gaps of an infinite array in a frequency window.
#[pyclass(frozen, module = "jjscatter_py")]
struct BandDiagram(bands::BandDiagram);

#[pymethods]
impl BandDiagram {
    #[new]
    #[pyo3(signature = (z, d, lo, hi, resolution = bands::DEFAULT_RESOLUTION))]
    fn new(z: f64, d: f64, lo: f64, hi: f64, resolution: usize) -> PyResult<Self> {
        bands::allowed_bands(z, d, lo, hi, resolution).map(Self).or_raise()
    }

    #[getter]
    fn bands(&self) -> Vec<Band> {
        self.0
            .bands
            .iter()
            .map(|b| Band {
                index: b.index,
                omega_min: b.omega_min,
                omega_max: b.omega_max,
                truncated_below: b.truncated_below,
                truncated_above: b.truncated_above,
                k: b.samples.iter().map(|p| p.k).collect(),
                omega: b.samples.iter().map(|p| p.omega).collect(),
            })
            .collect()
    }

    #[getter]
    fn gaps(&self) -> Vec<(f64, f64)> {
        self.0.gaps.clone()
    }

    /// Frequency of band `index` at quasimomentum `k` in `[0, π]`.
    fn dispersion(&self, k: f64, index: usize) -> PyResult<f64> {
        bands::dispersion_at(&self.0, k, index).or_raise()
    }

    /// Half the width of band `index`.
    fn coupling(&self, index: usize) -> PyResult<f64> {
        bands::tight_binding_coupling(&self.0, index).or_raise()
    }
}

#[pyclass(frozen, get_all, module = "jjscatter_py")]
struct Harmonics {
    r1: Complex64,
    r3: Complex64,
    r5: Complex64,
    t1: Complex64,
    t3: Complex64,
    t5: Complex64,
    converged: bool,
    residual: f64,
    iterations: usize,
    amplitude_warning: bool,
}

/// Odd-harmonic response of a lossless junction driven at `omega` with flux amplitude
/// `amplitude` (units of Φ_0).
#[pyfunction]
fn harmonic_balance(omega: f64, amplitude: f64, z: f64) -> PyResult<Harmonics> {
    let point = nonlinear::DrivePoint::new(omega, amplitude, z).or_raise()?;
    let h = nonlinear::harmonic_balance(&point).or_raise()?;
    Ok(Harmonics {
        r1: h.r1,
        r3: h.r3,
        r5: h.r5,
        t1: h.t1,
        t3: h.t3,
        t5: h.t5,
        converged: h.converged,
        residual: h.residual,
        iterations: h.iterations,
        amplitude_warning: h.amplitude_warning,
    })
}

/// Rows `(amplitude, omega, |r1|², |r3|², |r5|², converged)`, amplitude-major.
type MapRow = (f64, f64, f64, f64, f64, bool);

#[pyfunction]
fn harmonic_map(
    py: Python<'_>,
    z: f64,
    omegas: Vec<f64>,
    amplitudes: Vec<f64>,
) -> PyResult<Vec<MapRow>> {
    let cells = py
        .detach(|| nonlinear::harmonic_map(z, &omegas, &amplitudes))
        .or_raise()?;
    Ok(cells
        .into_iter()
        .map(|c| (c.amplitude, c.omega, c.r1_sq, c.r3_sq, c.r5_sq, c.converged))
        .collect())
}

#[pyfunction]
fn pendulum_period(amplitude: f64) -> PyResult<f64> {
    nonlinear::pendulum_period(amplitude).or_raise()
}

#[pyfunction]
fn resonance_shift(amplitude: f64) -> PyResult<f64> {
    nonlinear::resonance_shift(amplitude).or_raise()
}

/// `(photons, clamped)` for a field of amplitude `amplitude` (units of Φ_0) in a line of
/// impedance `impedance` (Ω), spread over `n` junctions.
#[pyfunction]
#[pyo3(signature = (amplitude, impedance, n = 1))]
fn photon_number_estimate(amplitude: f64, impedance: f64, n: u32) -> PyResult<(f64, bool)> {
    let p = nonlinear::photon_number_estimate(amplitude, impedance, n).or_raise()?;
    Ok((p.photons, p.sub_single_photon))
}

/// Effective junction of a flux-biased dc SQUID (SI inputs).
/// Returns `(junction, inductance_H, plasma_frequency_rad_s)`.
#[pyfunction]
#[pyo3(signature = (flux_ratio, critical_current, capacitance, line_l0, line_c0, resistance))]
fn squid(
    flux_ratio: f64,
    critical_current: f64,
    capacitance: f64,
    line_l0: f64,
    line_c0: f64,
    resistance: f64,
) -> PyResult<(Junction, f64, f64)> {
    let circuit = scattering::SquidCircuit {
        critical_current,
        capacitance,
        line_l0,
        line_c0,
        resistance,
    };
    let t = scattering::squid_spec(&circuit, flux_ratio).or_raise()?;
    Ok((Junction(t.spec), t.inductance, t.plasma_frequency))
}

#[pymodule]
fn jjscatter_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Junction>()?;
    m.add_class::<Chain>()?;
    m.add_class::<Band>()?;
    m.add_class::<BandDiagram>()?;
    m.add_class::<Harmonics>()?;
    m.add_function(wrap_pyfunction!(cavity_resonances_in_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(cavity_resonances_in_length, m)?)?;
    m.add_function(wrap_pyfunction!(quality_factor, m)?)?;
    m.add_function(wrap_pyfunction!(coupled_cavity_coupling, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_balance, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_map, m)?)?;
    m.add_function(wrap_pyfunction!(pendulum_period, m)?)?;
    m.add_function(wrap_pyfunction!(resonance_shift, m)?)?;
    m.add_function(wrap_pyfunction!(photon_number_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(squid, m)?)?;
    m.add("FLUX_QUANTUM", scattering::FLUX_QUANTUM)?;
    m.add("HBAR", nonlinear::HBAR)?;
    Ok(())
}
