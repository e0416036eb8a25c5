//! Run configuration: flat `key = value` files merged with command-line flags.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::grid::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Single,
    Mirror,
    Leakage,
    Cavity,
    Coupled,
    Bands,
    Nonlinear,
    Squid,
}

impl Subcommand {
    pub const ALL: [Subcommand; 8] = [
        Subcommand::Single,
        Subcommand::Mirror,
        Subcommand::Leakage,
        Subcommand::Cavity,
        Subcommand::Coupled,
        Subcommand::Bands,
        Subcommand::Nonlinear,
        Subcommand::Squid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Single => "single",
            Subcommand::Mirror => "mirror",
            Subcommand::Leakage => "leakage",
            Subcommand::Cavity => "cavity",
            Subcommand::Coupled => "coupled",
            Subcommand::Bands => "bands",
            Subcommand::Nonlinear => "nonlinear",
            Subcommand::Squid => "squid",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subcommand `{s}`"))
    }
}

/// Every tunable parameter. `None` means "not set here"; defaults are applied per
/// subcommand when the run starts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub z: Option<f64>,
    pub gamma: Option<f64>,
    pub n: Option<Vec<u32>>,
    pub d: Option<f64>,
    pub z_in: Option<f64>,
    pub omega: Option<Range>,
    pub amp: Option<Range>,
    pub length: Option<Range>,
    pub flux_ratio: Option<Range>,
    pub z0: Option<f64>,
    pub ic: Option<f64>,
    pub cj: Option<f64>,
    pub l0: Option<f64>,
    pub c0: Option<f64>,
    pub resistance: Option<f64>,
    pub resonances: Option<bool>,
    pub precision: Option<usize>,
}

macro_rules! merge_fields {
    ($base:expr, $over:expr; $($field:ident),*) => {
        Params { $($field: $over.$field.clone().or_else(|| $base.$field.clone())),* }
    };
}

impl Params {
    /// Values set in `overrides` win over values in `self`.
    pub fn merged_with(&self, overrides: &Params) -> Params {
        merge_fields!(self, overrides; z, gamma, n, d, z_in, omega, amp, length, flux_ratio,
            z0, ic, cj, l0, c0, resistance, resonances, precision)
    }

    /// Serialises the set values in the config-file format, one key per line in a fixed order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                let _ = writeln!(out, "{key} = {v}");
            }
        };
        let num = |v: Option<f64>| v.map(|x| format!("{x:?}"));
        line("z", num(self.z));
        line("gamma", num(self.gamma));
        line(
            "n",
            self.n.as_ref().map(|v| {
                v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            }),
        );
        line("d", num(self.d));
        line("z-in", num(self.z_in));
        line("omega", self.omega.map(|r| r.to_string()));
        line("amp", self.amp.map(|r| r.to_string()));
        line("length", self.length.map(|r| r.to_string()));
        line("flux-ratio", self.flux_ratio.map(|r| r.to_string()));
        line("z0", num(self.z0));
        line("ic", num(self.ic));
        line("cj", num(self.cj));
        line("l0", num(self.l0));
        line("c0", num(self.c0));
        line("resistance", num(self.resistance));
        line("resonances", self.resonances.map(|b| b.to_string()));
        line("precision", self.precision.map(|p| p.to_string()));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.field) {
            (Some(l), Some(k)) => write!(f, "line {l}, field `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "field `{k}`: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

pub fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("`{s}` is not a finite number"))
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    s.parse::<Range>().map_err(|e| e.to_string())
}

pub fn parse_counts(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{p}` is not a junction count"))
        })
        .collect()
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

/// Parses the flat config format: `key = value` per line, `#` starts a comment, blank
/// lines ignored. Range-valued keys also accept the split form `<key>-min`, `<key>-max`,
/// `<key>-steps`.
pub fn parse_config(text: &str) -> Result<Params, ConfigError> {
    let mut params = Params::default();
    let mut split: BTreeMap<(&'static str, &'static str), (usize, String)> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError {
                line: Some(lineno),
                field: None,
                message: format!("expected `key = value`, found `{content}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        let err = |message: String| ConfigError {
            line: Some(lineno),
            field: Some(key.to_string()),
            message,
        };
        match key {
            "z" => params.z = Some(parse_f64(value).map_err(err)?),
            "gamma" => params.gamma = Some(parse_f64(value).map_err(err)?),
            "n" => params.n = Some(parse_counts(value).map_err(err)?),
            "d" => params.d = Some(parse_f64(value).map_err(err)?),
            "z-in" => params.z_in = Some(parse_f64(value).map_err(err)?),
            "omega" => params.omega = Some(parse_range(value).map_err(err)?),
            "amp" => params.amp = Some(parse_range(value).map_err(err)?),
            "length" => params.length = Some(parse_range(value).map_err(err)?),
            "flux-ratio" => params.flux_ratio = Some(parse_range(value).map_err(err)?),
            "z0" => params.z0 = Some(parse_f64(value).map_err(err)?),
            "ic" => params.ic = Some(parse_f64(value).map_err(err)?),
            "cj" => params.cj = Some(parse_f64(value).map_err(err)?),
            "l0" => params.l0 = Some(parse_f64(value).map_err(err)?),
            "c0" => params.c0 = Some(parse_f64(value).map_err(err)?),
            "resistance" => params.resistance = Some(parse_f64(value).map_err(err)?),
            "resonances" => params.resonances = Some(parse_bool(value).map_err(err)?),
            "precision" => params.precision = Some(parse_usize(value).map_err(err)?),
            _ => {
                let part = ["min", "max", "steps"]
                    .into_iter()
                    .find_map(|p| key.strip_suffix(p).and_then(|b| b.strip_suffix('-')).map(|b| (b, p)));
                let base = part.and_then(|(b, p)| {
                    ["omega", "amp", "length", "flux-ratio"]
                        .into_iter()
                        .find(|k| *k == b)
                        .map(|k| (k, p))
                });
                match base {
                    Some((b, p)) => {
                        let p = match p {
                            "min" => "min",
                            "max" => "max",
                            _ => "steps",
                        };
                        split.insert((b, p), (lineno, value.to_string()));
                    }
                    None => return Err(err("unknown key".to_string())),
                }
            }
        }
    }

    for base in ["omega", "amp", "length", "flux-ratio"] {
        let parts: Vec<Option<&(usize, String)>> = ["min", "max", "steps"]
            .iter()
            .map(|p| split.get(&(base, *p)))
            .collect();
        if parts.iter().all(Option::is_none) {
            continue;
        }
        let line = parts.iter().flatten().map(|(l, _)| *l).max();
        let [Some(lo), Some(hi), Some(n)] = parts[..] else {
            return Err(ConfigError {
                line,
                field: Some(base.to_string()),
                message: format!("{base}-min, {base}-max and {base}-steps must be given together"),
            });
        };
        let range = parse_range(&format!("{}:{}:{}", lo.1, hi.1, n.1)).map_err(|message| {
            ConfigError {
                line,
                field: Some(base.to_string()),
                message,
            }
        })?;
        let slot = match base {
            "omega" => &mut params.omega,
            "amp" => &mut params.amp,
            "length" => &mut params.length,
            _ => &mut params.flux_ratio,
        };
        if slot.is_some() {
            return Err(ConfigError {
                line,
                field: Some(base.to_string()),
                message: format!("{base} given both as a range and as split keys"),
            });
        }
        *slot = Some(range);
    }
    Ok(params)
}

pub fn load_config(path: &Path) -> Result<Params, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        line: None,
        field: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_config(&text)
}

/// Everything a run needs: which analysis, its parameters and where the CSV goes.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub params: Params,
    pub output: Option<PathBuf>,
}
