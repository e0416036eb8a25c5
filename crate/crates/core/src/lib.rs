//! Scattering of microwave photons by Josephson junctions embedded in a superconducting
//! transmission line.
//!
//! - [`scattering`]: single junctions and junction stacks as lossy, flux-tunable mirrors
//! - [`transfer`]: transfer matrices for arbitrary chains of junctions and line segments
//! - [`cavity`]: pseudo-cavity resonances, quality factors and coupled-cavity splitting
//! - [`bands`]: Bloch bands of infinite periodic junction arrays
//! - [`nonlinear`]: harmonic generation and resonance shift beyond the linear regime
//! - [`cli`]: the `jjscatter` command-line front end (CSV output)
//!
//! All frequencies are in units of the junction plasma frequency and all lengths in units
//! of `v / ω_p`, so free propagation over `d` adds the phase `ω d`.

pub mod bands;
pub mod cavity;
pub mod cli;
pub mod error;
pub mod grid;
pub mod nonlinear;
pub mod numerics;
pub mod scattering;
pub mod transfer;

pub use error::{Error, Result};
pub use grid::{FrequencyGrid, Range};
pub use scattering::{JunctionSpec, ReflectionTransmission, Spectrum};
pub use transfer::{ChainElement, ChainSpec, TransferMatrix};
