//! Executes one analysis and writes its CSV. Rows are always produced in grid order.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};

use crate::bands::allowed_bands;
use crate::cavity::{
    cavity_resonances_in_frequency, cavity_resonances_in_length, coupled_cavity_coupling,
    CoupledCavity,
};
use crate::error::Error;
use crate::grid::{FrequencyGrid, Range};
use crate::nonlinear::{harmonic_map, AMPLITUDE_VALIDITY};
use crate::scattering::{average_power, scatter_spectrum, squid_spec, JunctionSpec, SquidCircuit};
use crate::transfer::{chain_scattering, ChainSpec};

use super::config::{Params, RunConfig, Subcommand};

pub const DEFAULT_PRECISION: usize = 17;

#[derive(Debug)]
pub enum RunError {
    /// Bad user input. Exit status 2.
    Validation(String),
    /// The computation itself failed. Exit status 3.
    Numerical(Error),
    Io(io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) | RunError::Io(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Validation(m) => write!(f, "invalid input: {m}"),
            RunError::Numerical(e) => write!(f, "numerical failure: {e}"),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            RunError::Numerical(e)
        } else {
            RunError::Validation(e.to_string())
        }
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

fn invalid<T>(msg: impl Into<String>) -> RunResult<T> {
    Err(RunError::Validation(msg.into()))
}

/// Parameters after per-subcommand defaults have been applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub z: f64,
    pub gamma: f64,
    pub n: Vec<u32>,
    pub d: f64,
    pub z_in: f64,
    pub omega: Range,
    pub amp: Range,
    pub length: Option<Range>,
    pub flux_ratio: Range,
    pub z0: f64,
    pub circuit: SquidCircuit,
    pub resonances: bool,
    pub precision: usize,
}

fn range(min: f64, max: f64, steps: usize) -> Range {
    Range { min, max, steps }
}

/// Applies the documented defaults of `sub` to unset parameters.
pub fn resolve(sub: Subcommand, p: &Params) -> RunResult<Resolved> {
    use Subcommand::*;
    let (z, gamma, d, omega) = match sub {
        Single | Mirror | Leakage => (1.25, 0.01, PI, range(0.5, 2.0, 600)),
        Cavity => (0.2, 1e-6, PI, range(0.5, 3.0, 2000)),
        Coupled => (0.1, 1e-4, 2.6, range(1.08, 1.28, 4096)),
        Bands => (0.1, 0.0, PI, range(0.1, 4.0, 8192)),
        Nonlinear => (1.25, 0.0, PI, range(0.8, 1.1, 61)),
        Squid => (1.25, 0.0, PI, range(1.0, 1.0, 1)),
    };
    let n_default = if sub == Mirror { vec![1, 2, 4, 8] } else { vec![1] };
    let resolved = Resolved {
        z: p.z.unwrap_or(z),
        gamma: p.gamma.unwrap_or(gamma),
        n: p.n.clone().unwrap_or(n_default),
        d: p.d.unwrap_or(d),
        z_in: p.z_in.unwrap_or(0.1),
        omega: p.omega.unwrap_or(omega),
        amp: p
            .amp
            .unwrap_or(if sub == Nonlinear { range(0.005, 0.1, 20) } else { range(1.0, 1.0, 1) }),
        length: p.length,
        flux_ratio: p.flux_ratio.unwrap_or(range(0.0, 0.45, 46)),
        z0: p.z0.unwrap_or(50.0),
        circuit: SquidCircuit {
            critical_current: p.ic.unwrap_or(1e-6),
            capacitance: p.cj.unwrap_or(1e-13),
            line_l0: p.l0.unwrap_or(4e-7),
            line_c0: p.c0.unwrap_or(1.6e-10),
            resistance: p.resistance.unwrap_or(5e3),
        },
        resonances: p.resonances.unwrap_or(false),
        precision: p.precision.unwrap_or(DEFAULT_PRECISION),
    };
    validate(sub, p, &resolved)?;
    Ok(resolved)
}

fn validate(sub: Subcommand, p: &Params, r: &Resolved) -> RunResult<()> {
    use Subcommand::*;
    if !(1..=17).contains(&r.precision) {
        return invalid(format!("precision must be between 1 and 17, got {}", r.precision));
    }
    if r.n.is_empty() || r.n.contains(&0) {
        return invalid("n must list junction counts >= 1");
    }
    if sub != Mirror && r.n.len() != 1 {
        return invalid(format!("{sub} takes a single junction count"));
    }
    if matches!(sub, Bands | Nonlinear) && p.gamma.is_some_and(|g| g != 0.0) {
        return invalid(format!("{sub} models lossless junctions; gamma must be 0"));
    }
    if matches!(sub, Cavity | Coupled | Bands | Nonlinear) && r.n != [1] {
        return invalid(format!("{sub} uses single junctions; n must be 1"));
    }
    if sub == Leakage && r.amp.steps != 1 {
        return invalid("leakage takes a single amplitude");
    }
    if sub == Cavity && r.length.is_some() && r.omega.steps != 1 {
        return invalid("a length scan needs a single --omega value");
    }
    if sub == Cavity && r.length.is_some_and(|l| l.min < 0.0) {
        return invalid("cavity lengths must be >= 0");
    }
    // Constructors carry the module-level preconditions; run them before any sweep.
    JunctionSpec::new(r.z, r.gamma, r.n[0])?;
    if sub == Coupled {
        JunctionSpec::single(r.z_in, r.gamma)?;
    }
    if matches!(sub, Cavity | Coupled | Bands) && !(r.d.is_finite() && r.d > 0.0) {
        return invalid(format!("d must be > 0, got {}", r.d));
    }
    if sub != Squid {
        FrequencyGrid::from_range(r.omega)?;
    }
    if sub == Nonlinear && r.amp.min < 0.0 {
        return invalid("amplitudes must be >= 0");
    }
    if sub == Leakage && !(r.z0.is_finite() && r.z0 > 0.0) {
        return invalid(format!("z0 must be > 0, got {}", r.z0));
    }
    if sub == Squid {
        let c = r.circuit;
        for (name, v) in [
            ("ic", c.critical_current),
            ("cj", c.capacitance),
            ("l0", c.line_l0),
            ("c0", c.line_c0),
            ("resistance", c.resistance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return invalid(format!("{name} must be > 0, got {v}"));
            }
        }
    }
    Ok(())
}

struct Csv<'a> {
    out: &'a mut dyn Write,
    digits: usize,
}

impl Csv<'_> {
    fn header(&mut self, cols: &str) -> io::Result<()> {
        writeln!(self.out, "{cols}")
    }

    fn num(&self, x: f64) -> String {
        format!("{:.*e}", self.digits - 1, x)
    }

    fn row(&mut self, fields: &[String]) -> io::Result<()> {
        writeln!(self.out, "{}", fields.join(","))
    }
}

/// Runs `config` and writes the CSV to `out`. Warnings go to `diag`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> RunResult<()> {
    let sub = config.subcommand;
    let r = resolve(sub, &config.params)?;
    let mut buf: Vec<u8> = Vec::new();
    {
        let mut csv = Csv {
            out: &mut buf,
            digits: r.precision,
        };
        match sub {
            Subcommand::Single => single(&r, &mut csv)?,
            Subcommand::Mirror => mirror(&r, &mut csv)?,
            Subcommand::Leakage => leakage(&r, &mut csv)?,
            Subcommand::Cavity => cavity(&r, &mut csv)?,
            Subcommand::Coupled => coupled(&r, &mut csv)?,
            Subcommand::Bands => bands(&r, &mut csv)?,
            Subcommand::Nonlinear => nonlinear(&r, &mut csv, diag)?,
            Subcommand::Squid => squid(&r, &mut csv)?,
        }
    }
    // Nothing reaches the output unless the whole run succeeded.
    out.write_all(&buf)?;
    out.flush()?;
    Ok(())
}

fn single(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let spec = JunctionSpec::new(r.z, r.gamma, r.n[0])?;
    let spectrum = scatter_spectrum(&spec, &FrequencyGrid::from_range(r.omega)?);
    csv.header("omega,re_r,im_r,re_t,im_t,abs_r2,abs_t2,arg_r,arg_t,leak")?;
    for (w, s) in spectrum.omega.iter().zip(&spectrum.values) {
        let row = [
            *w,
            s.r.re,
            s.r.im,
            s.t.re,
            s.t.im,
            s.reflectance(),
            s.transmittance(),
            s.r.arg(),
            s.t.arg(),
            s.leakage(),
        ];
        csv.row(&row.map(|x| csv.num(x)))?;
    }
    Ok(())
}

fn mirror(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let grid = FrequencyGrid::from_range(r.omega)?;
    csv.header("n,omega,abs_r2,abs_t2,leak")?;
    for &n in &r.n {
        let spectrum = scatter_spectrum(&JunctionSpec::new(r.z, r.gamma, n)?, &grid);
        for (w, s) in spectrum.omega.iter().zip(&spectrum.values) {
            csv.row(&[
                n.to_string(),
                csv.num(*w),
                csv.num(s.reflectance()),
                csv.num(s.transmittance()),
                csv.num(s.leakage()),
            ])?;
        }
    }
    Ok(())
}

fn leakage(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let spec = JunctionSpec::new(r.z, r.gamma, r.n[0])?;
    let spectrum = scatter_spectrum(&spec, &FrequencyGrid::from_range(r.omega)?);
    csv.header("omega,abs_r2,abs_t2,leak,power")?;
    for (w, s) in spectrum.omega.iter().zip(&spectrum.values) {
        let power = average_power(&spec, *w, r.amp.min, r.z0)?;
        let row = [*w, s.reflectance(), s.transmittance(), s.leakage(), power];
        csv.row(&row.map(|x| csv.num(x)))?;
    }
    Ok(())
}

fn cavity(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let mirror = JunctionSpec::single(r.z, r.gamma)?;
    if r.resonances {
        csv.header("m,d,omega")?;
        let rows: Vec<(f64, f64)> = match r.length {
            Some(l) => {
                let w = r.omega.min;
                cavity_resonances_in_length(r.z, w, l.min, l.max)?
                    .roots
                    .into_iter()
                    .map(|d| (d, w))
                    .collect()
            }
            None => cavity_resonances_in_frequency(r.z, r.d, r.omega.min, r.omega.max)?
                .roots
                .into_iter()
                .map(|w| (r.d, w))
                .collect(),
        };
        for (m, (d, w)) in rows.into_iter().enumerate() {
            csv.row(&[m.to_string(), csv.num(d), csv.num(w)])?;
        }
        return Ok(());
    }
    csv.header("d,omega,abs_r2,abs_t2")?;
    let points: Vec<(f64, f64)> = match r.length {
        Some(l) => l.points().into_iter().map(|d| (d, r.omega.min)).collect(),
        None => r.omega.points().into_iter().map(|w| (r.d, w)).collect(),
    };
    for (d, w) in points {
        let s = chain_scattering(&ChainSpec::cavity(mirror, d)?, w)?;
        let row = [d, w, s.reflectance(), s.transmittance()];
        csv.row(&row.map(|x| csv.num(x)))?;
    }
    Ok(())
}

fn coupled(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let system = CoupledCavity {
        z: r.z,
        z_in: r.z_in,
        d: r.d,
        gamma: r.gamma,
    };
    let c = coupled_cavity_coupling(&system, r.omega.min, r.omega.max, r.omega.steps)?;
    csv.header("omega_minus,omega_plus,g,omega0")?;
    let row = [c.omega_minus, c.omega_plus, c.g, c.omega0];
    csv.row(&row.map(|x| csv.num(x)))?;
    Ok(())
}

fn bands(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    let diagram = allowed_bands(r.z, r.d, r.omega.min, r.omega.max, r.omega.steps)?;
    csv.header("band_index,k,omega")?;
    for band in &diagram.bands {
        for p in &band.samples {
            csv.row(&[band.index.to_string(), csv.num(p.k), csv.num(p.omega)])?;
        }
    }
    Ok(())
}

fn nonlinear(r: &Resolved, csv: &mut Csv, diag: &mut dyn Write) -> RunResult<()> {
    if r.amp.max > AMPLITUDE_VALIDITY {
        writeln!(
            diag,
            "warning: amplitudes above {AMPLITUDE_VALIDITY} are outside the fifth-order expansion's range of validity"
        )?;
    }
    let cells = harmonic_map(r.z, &r.omega.points(), &r.amp.points())?;
    csv.header("amplitude,omega,abs_r1_2,abs_r3_2,abs_r5_2,converged")?;
    let mut failed = 0usize;
    for c in &cells {
        failed += usize::from(!c.converged);
        csv.row(&[
            csv.num(c.amplitude),
            csv.num(c.omega),
            csv.num(c.r1_sq),
            csv.num(c.r3_sq),
            csv.num(c.r5_sq),
            u8::from(c.converged).to_string(),
        ])?;
    }
    if failed > 0 {
        writeln!(diag, "warning: {failed} grid point(s) did not converge")?;
    }
    Ok(())
}

fn squid(r: &Resolved, csv: &mut Csv) -> RunResult<()> {
    csv.header("flux_ratio,inductance,plasma_frequency,z,gamma")?;
    for f in r.flux_ratio.points() {
        let t = squid_spec(&r.circuit, f)?;
        let row = [f, t.inductance, t.plasma_frequency, t.spec.z(), t.spec.gamma()];
        csv.row(&row.map(|x| csv.num(x)))?;
    }
    Ok(())
}
