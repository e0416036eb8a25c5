//! Command-line front end. Every subcommand writes one CSV table with a single header row.
//!
//! All physical inputs are dimensionless unless stated: `z = Z_0/Z_J`, `gamma = Z_J/R`,
//! frequencies in units of the plasma frequency ω_p, lengths in units of v/ω_p, and
//! nonlinear drive amplitudes in units of the flux quantum Φ_0.

pub mod config;
pub mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser};

pub use config::{load_config, parse_config, ConfigError, Params, RunConfig, Subcommand};
pub use run::{resolve, run, Resolved, RunError, DEFAULT_PRECISION};

use crate::grid::Range;

#[derive(Debug, Parser)]
#[command(name = "jjscatter", version, about = "Microwave scattering off Josephson junctions in a transmission line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Reflection and transmission of one junction (or N identical junctions at one point).
    /// Columns: omega,re_r,im_r,re_t,im_t,abs_r2,abs_t2,arg_r,arg_t,leak.
    Single(CommonArgs),
    /// |r|², |t|² and leakage for several junction counts N (--n 1,2,4,8).
    /// Columns: n,omega,abs_r2,abs_t2,leak.
    Mirror(CommonArgs),
    /// Leaked fraction and cycle-averaged dissipated power.
    /// Columns: omega,abs_r2,abs_t2,leak,power.
    Leakage(CommonArgs),
    /// Two-junction cavity: spectrum over --omega at fixed --d, over --length at a single
    /// --omega, or the lossless resonances with --resonances.
    /// Columns: d,omega,abs_r2,abs_t2 (scan) or m,d,omega (--resonances).
    Cavity(CommonArgs),
    /// Transmission doublet of two coupled cavities (outer --z, middle --z-in, length --d).
    /// Columns: omega_minus,omega_plus,g,omega0.
    Coupled(CommonArgs),
    /// Allowed bands of an infinite lossless junction array with period --d.
    /// Columns: band_index,k,omega.
    Bands(CommonArgs),
    /// Fifth-order harmonic balance over an amplitude x frequency grid, amplitude-major.
    /// Columns: amplitude,omega,abs_r1_2,abs_r3_2,abs_r5_2,converged.
    Nonlinear(CommonArgs),
    /// Flux tuning of a dc SQUID junction (SI circuit inputs).
    /// Columns: flux_ratio,inductance,plasma_frequency,z,gamma.
    Squid(CommonArgs),
}

impl Command {
    fn split(self) -> (Subcommand, CommonArgs) {
        match self {
            Command::Single(a) => (Subcommand::Single, a),
            Command::Mirror(a) => (Subcommand::Mirror, a),
            Command::Leakage(a) => (Subcommand::Leakage, a),
            Command::Cavity(a) => (Subcommand::Cavity, a),
            Command::Coupled(a) => (Subcommand::Coupled, a),
            Command::Bands(a) => (Subcommand::Bands, a),
            Command::Nonlinear(a) => (Subcommand::Nonlinear, a),
            Command::Squid(a) => (Subcommand::Squid, a),
        }
    }
}

/// Parameters shared by every subcommand. Ranges are `min:max:steps` with inclusive
/// endpoints and `steps` the number of points; a bare number is a single point.
/// Parameters a subcommand does not use are ignored.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Impedance ratio z = Z_0/Z_J of each (outer) junction. Dimensionless, > 0.
    #[arg(long, value_parser = config::parse_f64)]
    pub z: Option<f64>,
    /// Loss ratio gamma = Z_J/R. Dimensionless, >= 0.
    #[arg(long, value_parser = config::parse_f64)]
    pub gamma: Option<f64>,
    /// Junctions stacked at one point, or a comma list for `mirror`. Count, >= 1.
    #[arg(long, value_parser = config::parse_counts)]
    pub n: Option<Counts>,
    /// Cavity length or array period. Dimensionless, in units of v/ω_p.
    #[arg(long, value_parser = config::parse_f64)]
    pub d: Option<f64>,
    /// Impedance ratio of the middle junction of the coupled cavities. Dimensionless, > 0.
    #[arg(long = "z-in", value_parser = config::parse_f64)]
    pub z_in: Option<f64>,
    /// Frequency range min:max:steps. Dimensionless, ω in units of ω_p.
    #[arg(long, value_parser = config::parse_range)]
    pub omega: Option<Range>,
    /// Drive amplitude. For `nonlinear` a range min:max:steps of Ā in units of Φ_0
    /// (the expansion is trusted up to 0.1); for `leakage` the incident amplitude A in
    /// caller units (power comes out in A²/Ω).
    #[arg(long, value_parser = config::parse_range)]
    pub amp: Option<Range>,
    /// Cavity length range min:max:steps for `cavity`. Dimensionless, in units of v/ω_p.
    #[arg(long, value_parser = config::parse_range)]
    pub length: Option<Range>,
    /// External flux range min:max:steps as Φ_ext/Φ_0. Dimensionless.
    #[arg(long = "flux-ratio", value_parser = config::parse_range)]
    pub flux_ratio: Option<Range>,
    /// Line impedance Z_0 for `leakage` power. Ohm.
    #[arg(long, value_parser = config::parse_f64)]
    pub z0: Option<f64>,
    /// SQUID junction critical current I_C. Ampere.
    #[arg(long, value_parser = config::parse_f64)]
    pub ic: Option<f64>,
    /// SQUID capacitance C_J. Farad.
    #[arg(long, value_parser = config::parse_f64)]
    pub cj: Option<f64>,
    /// Line inductance per unit length l_0. Henry per metre.
    #[arg(long, value_parser = config::parse_f64)]
    pub l0: Option<f64>,
    /// Line capacitance per unit length c_0. Farad per metre.
    #[arg(long, value_parser = config::parse_f64)]
    pub c0: Option<f64>,
    /// SQUID shunt resistance R. Ohm.
    #[arg(long, value_parser = config::parse_f64)]
    pub resistance: Option<f64>,
    /// For `cavity`: list lossless resonances instead of a spectrum.
    #[arg(long)]
    pub resonances: bool,
    /// Significant digits of every floating-point field (1 to 17, default 17).
    #[arg(long)]
    pub precision: Option<usize>,
    /// Flat `key = value` config file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads for grid sweeps. Output does not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print the effective configuration in config-file format and exit.
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

// An alias keeps clap from treating the list as a repeated flag.
type Counts = Vec<u32>;

impl CommonArgs {
    pub fn params(&self) -> Params {
        Params {
            z: self.z,
            gamma: self.gamma,
            n: self.n.clone(),
            d: self.d,
            z_in: self.z_in,
            omega: self.omega,
            amp: self.amp,
            length: self.length,
            flux_ratio: self.flux_ratio,
            z0: self.z0,
            ic: self.ic,
            cj: self.cj,
            l0: self.l0,
            c0: self.c0,
            resistance: self.resistance,
            resonances: self.resonances.then_some(true),
            precision: self.precision,
        }
    }
}

fn execute(
    sub: Subcommand,
    args: CommonArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), RunError> {
    let file = match &args.config {
        Some(path) => load_config(path).map_err(|e| RunError::Validation(format!("config: {e}")))?,
        None => Params::default(),
    };
    let params = file.merged_with(&args.params());
    if args.dump_config {
        // Validate first so a dumped config is always runnable.
        resolve(sub, &params)?;
        stdout.write_all(params.dump().as_bytes())?;
        return Ok(());
    }
    let config = RunConfig {
        subcommand: sub,
        params,
        output: args.output.clone(),
    };
    // Sweeps run inside the pool; their output is collected and written afterwards.
    let go = || -> (Result<Vec<u8>, RunError>, Vec<u8>) {
        let (mut out, mut diag) = (Vec::new(), Vec::new());
        let res = run(&config, &mut out, &mut diag).map(|()| out);
        (res, diag)
    };
    let (result, diag) = match args.threads {
        Some(0) => return Err(RunError::Validation("threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Validation(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    };
    stderr.write_all(&diag)?;
    let csv = result?;
    match &config.output {
        Some(path) => std::fs::write(path, csv)?,
        None => {
            stdout.write_all(&csv)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `argv`, runs, and returns the process exit status (0, 2 or 3).
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let (sub, args) = cli.command.split();
    match execute(sub, args, stdout, stderr) {
        Ok(()) => 0,
        // The reader went away (e.g. `| head`); not our failure.
        Err(RunError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "jjscatter {sub}: {e}");
            e.exit_code()
        }
    }
}
