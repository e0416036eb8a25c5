//! 2x2 wave-transfer matrices for chains of junctions and free line segments.
//!
//! Convention: `(a_L, b_L)ᵀ = T (a_R, b_R)ᵀ`, where `a` is the left-moving and `b` the
//! right-moving amplitude on each side of the element. A wave incident from the left has
//! `b_L = 1, a_R = 0`, so `t = 1/m11` and `r = m01/m11`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scattering::{scatter, JunctionSpec, ReflectionTransmission};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m00: Complex64,
    pub m01: Complex64,
    pub m10: Complex64,
    pub m11: Complex64,
}

impl TransferMatrix {
    pub fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn det(&self) -> Complex64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn trace(&self) -> Complex64 {
        self.m00 + self.m11
    }

    /// Reflection amplitude for a wave incident from the right, `-m10/m11`.
    pub fn reflection_from_right(&self) -> Result<Complex64> {
        if self.m11 == Complex64::new(0.0, 0.0) {
            return Err(Error::TotalReflection);
        }
        Ok(-self.m10 / self.m11)
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        TransferMatrix {
            m00: self.m00 * rhs.m00 + self.m01 * rhs.m10,
            m01: self.m00 * rhs.m01 + self.m01 * rhs.m11,
            m10: self.m10 * rhs.m00 + self.m11 * rhs.m10,
            m11: self.m10 * rhs.m01 + self.m11 * rhs.m11,
        }
    }
}

/// Transfer matrix of a junction (or junction stack) at frequency `omega`:
///
/// ```text
/// [ 1 - r/t   r/t ]
/// [  -r/t     1/t ]
/// ```
pub fn junction_matrix(spec: &JunctionSpec, omega: f64) -> Result<TransferMatrix> {
    let ReflectionTransmission { r, t } = scatter(spec, omega)?;
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::SingularMatrix { omega });
    }
    let rho = r / t;
    Ok(TransferMatrix::new(1.0 - rho, rho, -rho, t.inv()))
}

/// Free propagation over length `d` (units of v/ω_p): `diag(e^{iωd}, e^{-iωd})`.
pub fn propagation_matrix(d: f64, omega: f64) -> Result<TransferMatrix> {
    if !(d.is_finite() && d >= 0.0) {
        return Err(Error::invalid("d", format!("length must be >= 0, got {d}")));
    }
    let phase = Complex64::from_polar(1.0, omega * d);
    let zero = Complex64::new(0.0, 0.0);
    Ok(TransferMatrix::new(phase, zero, zero, phase.conj()))
}

/// Ordered product of matrices listed in spatial order, leftmost element first.
pub fn cascade(matrices: &[TransferMatrix]) -> Result<TransferMatrix> {
    let (first, rest) = matrices
        .split_first()
        .ok_or_else(|| Error::invalid("chain", "cannot cascade an empty list"))?;
    Ok(rest.iter().fold(*first, |acc, m| acc * *m))
}

/// Total `(r, t)` for incidence from the left.
pub fn scattering_from_matrix(matrix: &TransferMatrix) -> Result<ReflectionTransmission> {
    if matrix.m11 == Complex64::new(0.0, 0.0) {
        return Err(Error::TotalReflection);
    }
    Ok(ReflectionTransmission {
        r: matrix.m01 / matrix.m11,
        t: matrix.m11.inv(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainElement {
    Junction(JunctionSpec),
    Gap(f64),
}

/// Non-empty spatially ordered list of junctions and line segments.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec(Vec<ChainElement>);

impl ChainSpec {
    pub fn new(elements: Vec<ChainElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("chain", "a chain needs at least one element"));
        }
        for el in &elements {
            if let ChainElement::Gap(d) = el {
                if !(d.is_finite() && *d >= 0.0) {
                    return Err(Error::invalid("d", format!("gap length must be >= 0, got {d}")));
                }
            }
        }
        Ok(Self(elements))
    }

    /// Two identical mirrors a distance `d` apart.
    pub fn cavity(mirror: JunctionSpec, d: f64) -> Result<Self> {
        Self::new(vec![
            ChainElement::Junction(mirror),
            ChainElement::Gap(d),
            ChainElement::Junction(mirror),
        ])
    }

    /// Two cavities of length `d` sharing a middle junction: `J(outer) d J(inner) d J(outer)`.
    pub fn coupled_cavities(outer: JunctionSpec, inner: JunctionSpec, d: f64) -> Result<Self> {
        Self::new(vec![
            ChainElement::Junction(outer),
            ChainElement::Gap(d),
            ChainElement::Junction(inner),
            ChainElement::Gap(d),
            ChainElement::Junction(outer),
        ])
    }

    pub fn elements(&self) -> &[ChainElement] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

pub fn chain_matrix(chain: &ChainSpec, omega: f64) -> Result<TransferMatrix> {
    chain
        .elements()
        .iter()
        .try_fold(TransferMatrix::identity(), |acc, el| {
            let m = match el {
                ChainElement::Junction(spec) => junction_matrix(spec, omega)?,
                ChainElement::Gap(d) => propagation_matrix(*d, omega)?,
            };
            Ok(acc * m)
        })
}

/// Convenience: total scattering amplitudes of a chain at one frequency.
pub fn chain_scattering(chain: &ChainSpec, omega: f64) -> Result<ReflectionTransmission> {
    scattering_from_matrix(&chain_matrix(chain, omega)?)
}
