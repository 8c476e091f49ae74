use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::FourierCoeffs;
use crate::error::{Error, Result};

/// Largest node count handled by the explicit matrices in [`interpolate`].
const MATRIX_PATH_MAX: usize = 256;

fn check_nodes(n: usize) -> Result<()> {
    if n < 6 || n % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "interpolation needs an even node count >= 6, got {n}"
        )));
    }
    Ok(())
}

/// Equidistant nodes `x_ℓ = 2πℓ/n`, `ℓ = 0..n`.
pub fn interpolation_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|l| TAU * l as f64 / n as f64).collect()
}

/// Coefficient matrices of trigonometric interpolation on `n` nodes:
/// `C_ij = (2/n) cos((j-1) x_{i-1})` of size `n × (n/2 + 1)` and
/// `S_ij = (2/n) sin(j x_{i-1})` of size `n × (n/2 - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpMatrices {
    n: usize,
    c: DMatrix<f64>,
    s: DMatrix<f64>,
}

impl InterpMatrices {
    pub fn new(n: usize) -> Result<Self> {
        check_nodes(n)?;
        let h = n / 2;
        let scale = 2.0 / n as f64;
        let x = interpolation_nodes(n);
        let c = DMatrix::from_fn(n, h + 1, |i, j| scale * (j as f64 * x[i]).cos());
        let s = DMatrix::from_fn(n, h - 1, |i, j| scale * ((j + 1) as f64 * x[i]).sin());
        Ok(Self { n, c, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &DMatrix<f64> {
        &self.c
    }

    pub fn s(&self) -> &DMatrix<f64> {
        &self.s
    }

    /// `a_{j-1} = (wᵀC)_j`, `b_j = (wᵀS)_j`; the last cosine entry is the
    /// Nyquist coefficient.
    pub fn coefficients(&self, samples: &[f64]) -> Result<FourierCoeffs> {
        if samples.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "expected {} samples, got {}",
                self.n,
                samples.len()
            )));
        }
        let w = DVector::from_column_slice(samples);
        let a = self.c.tr_mul(&w);
        let b = self.s.tr_mul(&w);
        let h = self.n / 2;
        FourierCoeffs::new(
            a[0],
            a.as_slice()[1..h].to_vec(),
            b.as_slice().to_vec(),
            Some(a[h]),
        )
    }
}

/// Interpolation coefficients by a complex FFT of the samples.
pub fn interpolate_fft(samples: &[f64]) -> Result<FourierCoeffs> {
    let n = samples.len();
    check_nodes(n)?;
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 2.0 / n as f64;
    let h = n / 2;
    FourierCoeffs::new(
        scale * buf[0].re,
        buf[1..h].iter().map(|z| scale * z.re).collect(),
        buf[1..h].iter().map(|z| -scale * z.im).collect(),
        Some(scale * buf[h].re),
    )
}

/// Trigonometric interpolant in `Ũ_N` (`N = n/2 - 1`) of samples at
/// [`interpolation_nodes`]; explicit matrices up to 256 nodes, FFT above.
pub fn interpolate(samples: &[f64]) -> Result<FourierCoeffs> {
    check_nodes(samples.len())?;
    if samples.len() <= MATRIX_PATH_MAX {
        InterpMatrices::new(samples.len())?.coefficients(samples)
    } else {
        interpolate_fft(samples)
    }
}
