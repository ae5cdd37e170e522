//! Discrete frequency distributions of `ρ₂₂(T)`, `Re ρ₁₂(T)` and `Im ρ₁₂(T)`.
//!
//! `ψ(ω_k) = (1/N) Σ_n x_n e^{+iω_k T_n}` with `ω_k = 2πk / (N ΔT)`, so a
//! component `a e^{−iω₀T}` on the grid reads back as `|ψ(ω₀)| = a`. Bins are
//! ordered from the most negative frequency upward, DC included.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{MixerError, Result};
use crate::lindblad::Trajectory;

const UNIFORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    #[default]
    Rectangular,
    /// Periodic Hann, coherent gain 1/2.
    Hann,
}

impl Window {
    pub fn weights(self, n: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; n],
            Window::Hann => (0..n)
                .map(|k| {
                    let x = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    0.5 * (1.0 - x.cos())
                })
                .collect(),
        }
    }

    pub fn coherent_gain(self) -> f64 {
        match self {
            Window::Rectangular => 1.0,
            Window::Hann => 0.5,
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Window::Rectangular => "rectangular",
            Window::Hann => "hann",
        })
    }
}

impl FromStr for Window {
    type Err = MixerError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rectangular" | "rect" | "none" => Ok(Window::Rectangular),
            "hann" | "hanning" => Ok(Window::Hann),
            other => Err(MixerError::Config(format!("unknown window '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// Frequencies in units of `|Ω₁₂₀|`.
    pub omega_grid: Vec<f64>,
    pub psi22: Vec<Complex64>,
    #[serde(rename = "psiR12")]
    pub psi_r12: Vec<Complex64>,
    #[serde(rename = "psiI12")]
    pub psi_i12: Vec<Complex64>,
    pub resolution: f64,
    pub window: Window,
    pub warnings: Vec<String>,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.omega_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega_grid.is_empty()
    }

    /// Index of the bin at ω = 0.
    pub fn dc_index(&self) -> usize {
        self.len() / 2
    }

    /// Largest `|ψ₂₂|` with `lo < ω ≤ hi`; the DC bin never qualifies.
    pub fn dominant_peak(&self, lo: f64, hi: f64) -> Option<Peak> {
        dominant_peak(&self.omega_grid, &self.psi22, lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub index: usize,
    pub omega: f64,
    pub amplitude: f64,
}

pub fn dominant_peak(omega: &[f64], psi: &[Complex64], lo: f64, hi: f64) -> Option<Peak> {
    let dc = omega.len() / 2;
    omega
        .iter()
        .zip(psi)
        .enumerate()
        .filter(|&(i, (&w, _))| i != dc && w > lo && w <= hi)
        .map(|(i, (&w, p))| Peak {
            index: i,
            omega: w,
            amplitude: p.norm(),
        })
        .max_by(|a, b| a.amplitude.total_cmp(&b.amplitude))
}

/// Transform of one uniformly sampled real or complex series.
///
/// Returns the shifted frequency grid, the amplitudes and the bin width.
pub fn dft(dt: f64, samples: &[Complex64]) -> (Vec<f64>, Vec<Complex64>, f64) {
    let n = samples.len();
    let mut buffer = samples.to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buffer);
    let scale = 1.0 / n as f64;
    let resolution = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let half = n / 2;
    let mut omega = Vec::with_capacity(n);
    let mut psi = Vec::with_capacity(n);
    for j in 0..n {
        let signed = j as isize - half as isize;
        omega.push(signed as f64 * resolution);
        psi.push(buffer[signed.rem_euclid(n as isize) as usize] * scale);
    }
    (omega, psi, resolution)
}

/// Checks that `times` is uniform and returns its step.
pub fn uniform_step(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Err(MixerError::Domain(
            "spectrum needs at least two samples".into(),
        ));
    }
    let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(MixerError::Domain("sample times must increase".into()));
    }
    for (k, w) in times.windows(2).enumerate() {
        if ((w[1] - w[0]) - dt).abs() > UNIFORM_TOLERANCE * dt {
            return Err(MixerError::Domain(format!(
                "non-uniform sampling at index {}: step {} vs mean {dt}",
                k + 1,
                w[1] - w[0]
            )));
        }
    }
    Ok(dt)
}

fn windowed(series: &[f64], weights: &[f64], gain: f64) -> Vec<Complex64> {
    series
        .iter()
        .zip(weights)
        .map(|(x, w)| Complex64::from(x * w / gain))
        .collect()
}

/// Spectrum of arbitrary real series sampled at dimensionless times `times`.
pub fn spectrum_of_series(
    times: &[f64],
    rho22: &[f64],
    re12: &[f64],
    im12: &[f64],
    window: Window,
) -> Result<SpectrumResult> {
    let dt = uniform_step(times)?;
    let n = times.len();
    if rho22.len() != n || re12.len() != n || im12.len() != n {
        return Err(MixerError::Domain(
            "series and time grid differ in length".into(),
        ));
    }
    let weights = window.weights(n);
    let gain = window.coherent_gain();
    let (omega_grid, psi22, resolution) = dft(dt, &windowed(rho22, &weights, gain));
    let (_, psi_r12, _) = dft(dt, &windowed(re12, &weights, gain));
    let (_, psi_i12, _) = dft(dt, &windowed(im12, &weights, gain));
    Ok(SpectrumResult {
        omega_grid,
        psi22,
        psi_r12,
        psi_i12,
        resolution,
        window,
        warnings: Vec::new(),
    })
}

/// Fastest component expected in the trajectory, in units of `|Ω₁₂₀|`.
pub fn expected_max_frequency(traj: &Trajectory) -> f64 {
    let c = &traj.config;
    let rabi = c.rabi.abs();
    let modulation: f64 = c.stark.iter().map(|s| s.omega()).fold(0.0, f64::max);
    let fast = c.detuning.abs().max(modulation) + 2.0 * rabi;
    fast / rabi
}

pub fn spectrum(traj: &Trajectory) -> Result<SpectrumResult> {
    windowed_spectrum(traj, Window::Rectangular)
}

pub fn windowed_spectrum(traj: &Trajectory, window: Window) -> Result<SpectrumResult> {
    if traj.config.rabi == 0.0 {
        return Err(MixerError::Domain(
            "spectrum uses T = |Ω₁₂₀| t and is undefined without a THz coupling".into(),
        ));
    }
    let times = traj.dimensionless_times();
    let mut result = spectrum_of_series(
        &times,
        &traj.rho22(),
        &traj.rho12_re(),
        &traj.rho12_im(),
        window,
    )?;
    let nyquist = std::f64::consts::PI / uniform_step(&times)?;
    let expected = expected_max_frequency(traj);
    if expected > nyquist {
        let msg = format!(
            "sampling Nyquist frequency {nyquist:.3} is below the expected component at {expected:.3} (units of Ω₁₂₀); spectrum is aliased"
        );
        log::warn!("{msg}");
        result.warnings.push(msg);
    }
    Ok(result)
}

/// Dominant `|ψ₂₂|` peak in both DC conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakSummary {
    pub window: Window,
    pub bin_width: f64,
    pub search_band: (f64, f64),
    pub dc_amplitude: f64,
    /// Transform of `ρ₂₂(T)` as sampled.
    pub with_offset: Option<Peak>,
    /// Transform of `ρ₂₂(T) − mean`.
    pub offset_removed: Option<Peak>,
}

pub fn peak_summary(traj: &Trajectory, window: Window, band: (f64, f64)) -> Result<PeakSummary> {
    let raw = windowed_spectrum(traj, window)?;
    let rho22 = traj.rho22();
    let mean = rho22.iter().sum::<f64>() / rho22.len() as f64;
    let centred: Vec<f64> = rho22.iter().map(|x| x - mean).collect();
    let times = traj.dimensionless_times();
    let weights = window.weights(times.len());
    let (omega, psi, _) = dft(
        uniform_step(&times)?,
        &windowed(&centred, &weights, window.coherent_gain()),
    );
    Ok(PeakSummary {
        window,
        bin_width: raw.resolution,
        search_band: band,
        dc_amplitude: raw.psi22[raw.dc_index()].norm(),
        with_offset: raw.dominant_peak(band.0, band.1),
        offset_removed: dominant_peak(&omega, &psi, band.0, band.1),
    })
}
