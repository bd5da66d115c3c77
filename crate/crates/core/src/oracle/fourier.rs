use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{CcsError, Result};
use crate::oracle::QuadratureConfig;
use crate::states::Wavefunction;

const NORMALIZATION_SLACK: f64 = 1e-6;
const MIN_SIGMAS: f64 = 6.0;

/// A wavefunction sampled on a uniform grid symmetric about zero.
///
/// The same type holds coordinate- and momentum-space samples; `points` is
/// the grid variable of whichever representation it is in.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    points: Vec<f64>,
    amplitudes: Vec<Complex64>,
    spacing: f64,
    hbar: f64,
}

impl GridWavefunction {
    pub fn new(points: Vec<f64>, amplitudes: Vec<Complex64>, hbar: f64) -> Result<Self> {
        let grid = Self::unchecked(points, amplitudes, hbar)?;
        let norm = grid.norm();
        if (norm - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(CcsError::InvalidGrid(format!("discrete norm {norm} is not 1 within 1e-6")));
        }
        Ok(grid)
    }

    fn unchecked(points: Vec<f64>, amplitudes: Vec<Complex64>, hbar: f64) -> Result<Self> {
        let n = points.len();
        if n < 3 || amplitudes.len() != n {
            return Err(CcsError::InvalidGrid(format!(
                "need at least 3 points and matching amplitudes, got {n} and {}",
                amplitudes.len()
            )));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(CcsError::InvalidGrid(format!("hbar must be positive, got {hbar}")));
        }
        let spacing = (points[n - 1] - points[0]) / (n - 1) as f64;
        if !(spacing > 0.0) {
            return Err(CcsError::InvalidGrid("grid must be increasing".into()));
        }
        let tol = 1e-9 * spacing;
        for (i, &x) in points.iter().enumerate() {
            let expected = points[0] + i as f64 * spacing;
            if (x - expected).abs() > tol || (x + points[n - 1 - i]).abs() > tol {
                return Err(CcsError::InvalidGrid(format!("point {i} breaks uniform symmetric spacing")));
            }
        }
        Ok(Self { points, amplitudes, spacing, hbar })
    }

    /// Samples `wf` on `cfg.initial_points` points over `+-half_width_sigmas` spreads.
    pub fn sample<W: Wavefunction + ?Sized>(wf: &W, cfg: &QuadratureConfig) -> Result<Self> {
        let n = cfg.initial_points();
        let half = cfg.half_width_sigmas() * wf.spread();
        let spacing = 2.0 * half / (n - 1) as f64;
        let points: Vec<f64> = (0..n).map(|i| (i as f64 - 0.5 * (n - 1) as f64) * spacing).collect();
        let amplitudes = points.iter().map(|&q| wf.amplitude(q)).collect();
        Self::new(points, amplitudes, wf.hbar())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum |psi|^2 * spacing`.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.spacing
    }

    /// `sum x |psi|^2 * spacing`.
    pub fn mean(&self) -> f64 {
        self.points
            .iter()
            .zip(&self.amplitudes)
            .map(|(x, a)| x * a.norm_sqr())
            .sum::<f64>()
            * self.spacing
    }

    /// Variance of the grid variable under `|psi|^2`, normalized by the discrete norm.
    pub fn variance(&self) -> f64 {
        let second = self
            .points
            .iter()
            .zip(&self.amplitudes)
            .map(|(x, a)| x * x * a.norm_sqr())
            .sum::<f64>()
            * self.spacing;
        let norm = self.norm();
        let mean = self.mean() / norm;
        second / norm - mean * mean
    }
}

/// Discrete Fourier transform onto the conjugate grid with spacing
/// `2 pi hbar / (N dq)`:
/// `phi(p_k) = dq / sqrt(2 pi hbar) * sum_j psi(q_j) exp(-i p_k q_j / hbar)`.
pub fn momentum_distribution(grid: &GridWavefunction) -> Result<GridWavefunction> {
    let n = grid.len();
    let hbar = grid.hbar;
    let centre = 0.5 * (n - 1) as f64;
    let dp = 2.0 * PI * hbar / (n as f64 * grid.spacing);

    // With q_j = (j - c) dq and p_k = (k - c) dp the kernel factors as
    // exp(-2 pi i jk / N) * exp(2 pi i c j / N) * exp(2 pi i c (k - c) / N).
    let turn = 2.0 * PI / n as f64;
    let mut buffer: Vec<Complex64> = grid
        .amplitudes
        .iter()
        .enumerate()
        .map(|(j, a)| a * Complex64::cis(turn * centre * j as f64))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);

    let scale = grid.spacing / (2.0 * PI * hbar).sqrt();
    let points: Vec<f64> = (0..n).map(|k| (k as f64 - centre) * dp).collect();
    let amplitudes = buffer
        .into_iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::cis(turn * centre * (k as f64 - centre)) * scale)
        .collect();
    let momentum = GridWavefunction::unchecked(points, amplitudes, hbar)?;

    let half_width = momentum.points[n - 1];
    let sigma_p = momentum.variance().sqrt();
    if half_width < MIN_SIGMAS * sigma_p {
        return Err(CcsError::GridTooCoarse { half_width, sigma_p });
    }
    Ok(momentum)
}
