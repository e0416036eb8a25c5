use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::linspace;

/// Inclusive sampling range written `min:max:steps`, where `steps` is the point count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::invalid("range", "bounds must be finite"));
        }
        if steps == 0 {
            return Err(Error::invalid("range", "steps must be at least 1"));
        }
        if steps > 1 && max <= min {
            return Err(Error::invalid("range", format!("max {max} must exceed min {min}")));
        }
        if steps == 1 && max != min {
            return Err(Error::invalid("range", "a single-point range needs min == max"));
        }
        Ok(Self { min, max, steps })
    }

    pub fn single(value: f64) -> Result<Self> {
        Self::new(value, value, 1)
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.steps)
    }
}

impl FromStr for Range {
    type Err = Error;

    /// Accepts `min:max:steps` or a bare number (single point).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid("range", format!("`{p}` is not a number")))
        };
        match parts.as_slice() {
            [v] => Self::single(num(v)?),
            [lo, hi, n] => {
                let steps = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid("range", format!("`{n}` is not a point count")))?;
                Self::new(num(lo)?, num(hi)?, steps)
            }
            _ => Err(Error::invalid(
                "range",
                format!("`{s}` is not of the form min:max:steps"),
            )),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 {
            write!(f, "{:?}", self.min)
        } else {
            write!(f, "{:?}:{:?}:{}", self.min, self.max, self.steps)
        }
    }
}

/// Strictly increasing grid of positive dimensionless frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid(Vec<f64>);

impl FrequencyGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("grid", "frequency grid is empty"));
        }
        if points.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::invalid("grid", "frequencies must be finite and positive"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("grid", "frequencies must be strictly increasing"));
        }
        Ok(Self(points))
    }

    pub fn from_range(range: Range) -> Result<Self> {
        Self::new(range.points())
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
