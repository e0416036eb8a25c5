//! Two-sided Fourier coefficients of real periodic signals and their exact products.
//!
//! A real signal `v(θ) = Σ_m c_m e^{-imθ}` with `c_{-m} = conj(c_m)` is stored as the
//! coefficients for `m ∈ [-order, order]`. Products are discrete convolutions, so powers of
//! a truncated series are computed exactly with no aliasing.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoSided {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl TwoSided {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * order + 1],
        }
    }

    /// Real signal `Re[Σ_n amplitudes[n-1] e^{-inθ}]`, i.e. `c_n = a_n / 2`, `c_{-n} = conj(a_n) / 2`.
    pub fn from_real_amplitudes(amplitudes: &[Complex64]) -> Self {
        let mut s = Self::zeros(amplitudes.len());
        for (i, a) in amplitudes.iter().enumerate() {
            s.set(i as i64 + 1, 0.5 * a);
            s.set(-(i as i64 + 1), 0.5 * a.conj());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.order {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(m + self.order as i64) as usize]
        }
    }

    pub fn set(&mut self, m: i64, value: Complex64) {
        let idx = (m + self.order as i64) as usize;
        self.coeffs[idx] = value;
    }

    /// Amplitude `a_n = 2 c_n` of harmonic `n ≥ 1` in the `Re[a_n e^{-inθ}]` form.
    pub fn real_amplitude(&self, n: usize) -> Complex64 {
        2.0 * self.get(n as i64)
    }

    pub fn convolve(&self, other: &TwoSided) -> TwoSided {
        let (p, q) = (self.order as i64, other.order as i64);
        let mut out = TwoSided::zeros((p + q) as usize);
        for i in -p..=p {
            let a = self.get(i);
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in -q..=q {
                let idx = (i + j + p + q) as usize;
                out.coeffs[idx] += a * other.get(j);
            }
        }
        out
    }

    /// Evaluates the signal at phase `theta`.
    pub fn eval(&self, theta: f64) -> f64 {
        let o = self.order as i64;
        (-o..=o)
            .map(|m| (self.get(m) * Complex64::from_polar(1.0, -(m as f64) * theta)).re)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cube_of_cosine() {
        // cos³θ = (3 cosθ + cos 3θ) / 4
        let c = TwoSided::from_real_amplitudes(&[Complex64::new(1.0, 0.0)]);
        let cube = c.convolve(&c).convolve(&c);
        assert!((cube.real_amplitude(1) - Complex64::new(0.75, 0.0)).norm() < 1e-15);
        assert!((cube.real_amplitude(3) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!(cube.real_amplitude(2).norm() < 1e-15);
    }

    #[test]
    fn product_matches_pointwise_evaluation() {
        let a = TwoSided::from_real_amplitudes(&[
            Complex64::new(0.3, -0.2),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.05, 0.11),
        ]);
        let b = TwoSided::from_real_amplitudes(&[Complex64::new(-0.7, 0.4)]);
        let ab = a.convolve(&b);
        for k in 0..17 {
            let theta = 2.0 * PI * k as f64 / 17.0;
            assert!((ab.eval(theta) - a.eval(theta) * b.eval(theta)).abs() < 1e-14);
        }
    }
}
