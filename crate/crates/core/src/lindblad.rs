//! Two-level Lindblad master equation with spontaneous decay and pure dephasing.
//!
//! `dρ/dt = −i[H, ρ] + Γ₂₁ D[σ₁₂]ρ + γ₁ D[σ₁₁]ρ + γ₂ D[σ₂₂]ρ`, with
//! `D[L]ρ = LρL† − ½{L†L, ρ}` and `H` given in rad/s.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::drive_mixing::{Frame, FrameHamiltonian, MixingConfig};
use crate::error::{MixerError, Result};
use crate::integrator::IntegratorStats;

/// Tolerance on trace, population bounds and positivity.
pub const STATE_TOLERANCE: f64 = 1e-9;

/// Two-level density matrix; `ρ₂₁ = conj(ρ₁₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    pub rho11: f64,
    pub rho22: f64,
    pub rho12: Complex64,
}

impl DensityMatrix {
    pub fn ground() -> Self {
        Self {
            rho11: 1.0,
            rho22: 0.0,
            rho12: Complex64::new(0.0, 0.0),
        }
    }

    pub fn excited() -> Self {
        Self {
            rho11: 0.0,
            rho22: 1.0,
            rho12: Complex64::new(0.0, 0.0),
        }
    }

    /// State with the given excited population and coherence, trace fixed to one.
    pub fn new(rho22: f64, rho12: Complex64) -> Result<Self> {
        let rho = Self {
            rho11: 1.0 - rho22,
            rho22,
            rho12,
        };
        rho.check(STATE_TOLERANCE).map(|_| rho)
    }

    pub fn rho21(&self) -> Complex64 {
        self.rho12.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22
    }

    /// Verifies trace, population bounds and positivity at tolerance `tol`.
    pub fn check(&self, tol: f64) -> Result<()> {
        let finite = self.rho11.is_finite()
            && self.rho22.is_finite()
            && self.rho12.re.is_finite()
            && self.rho12.im.is_finite();
        if !finite {
            return Err(MixerError::Domain(format!(
                "non-finite density matrix {self:?}"
            )));
        }
        if (self.trace() - 1.0).abs() > tol {
            return Err(MixerError::Domain(format!(
                "trace {} differs from 1",
                self.trace()
            )));
        }
        for (name, p) in [("rho11", self.rho11), ("rho22", self.rho22)] {
            if p < -tol || p > 1.0 + tol {
                return Err(MixerError::Domain(format!("{name} = {p} outside [0, 1]")));
            }
        }
        let excess = self.rho12.norm_sqr() - self.rho11 * self.rho22;
        if excess > tol {
            return Err(MixerError::Domain(format!(
                "|rho12|^2 exceeds rho11*rho22 by {excess:e}"
            )));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(
            Complex64::from(self.rho11),
            self.rho12,
            self.rho21(),
            Complex64::from(self.rho22),
        )
    }
}

/// Rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DecoherenceRates {
    /// Spontaneous decay `Γ₂₁` of |2⟩ → |1⟩.
    pub gamma_decay: f64,
    /// Dephasing `γ₁` attached to σ₁₁.
    pub dephasing1: f64,
    /// Dephasing `γ₂` attached to σ₂₂.
    pub dephasing2: f64,
}

impl DecoherenceRates {
    pub fn new(gamma_decay: f64, dephasing1: f64, dephasing2: f64) -> Result<Self> {
        let rates = Self {
            gamma_decay,
            dephasing1,
            dephasing2,
        };
        rates.validate().map(|_| rates)
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("gamma_decay", self.gamma_decay),
            ("dephasing1", self.dephasing1),
            ("dephasing2", self.dephasing2),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(MixerError::Domain(format!("{name} must be >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Coherence decay rate `(Γ₂₁ + γ₁ + γ₂)/2`.
    pub fn coherence_decay(&self) -> f64 {
        0.5 * (self.gamma_decay + self.dephasing1 + self.dephasing2)
    }

    pub fn total(&self) -> f64 {
        self.gamma_decay + self.dephasing1 + self.dephasing2
    }
}

/// Componentwise `dρ/dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityDerivative {
    pub d_rho11: f64,
    pub d_rho22: f64,
    pub d_rho12: Complex64,
}

impl DensityDerivative {
    pub fn trace(&self) -> f64 {
        self.d_rho11 + self.d_rho22
    }
}

fn projector(i: usize, j: usize) -> Matrix2<Complex64> {
    let mut m = Matrix2::zeros();
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

fn dissipator(jump: &Matrix2<Complex64>, rho: &Matrix2<Complex64>) -> Matrix2<Complex64> {
    let jd = jump.adjoint();
    let jdj = jd * jump;
    jump * rho * jd - (jdj * rho + rho * jdj) * Complex64::new(0.5, 0.0)
}

/// Right-hand side of the master equation at time `t`.
pub fn lindblad_rhs(
    t: f64,
    rho: &DensityMatrix,
    h: &FrameHamiltonian,
    rates: &DecoherenceRates,
) -> DensityDerivative {
    let r = rho.to_matrix();
    let hm = h.evaluate(t);
    let minus_i = Complex64::new(0.0, -1.0);
    let mut d = (hm * r - r * hm) * minus_i;
    if rates.gamma_decay != 0.0 {
        d += dissipator(&projector(0, 1), &r) * Complex64::from(rates.gamma_decay);
    }
    if rates.dephasing1 != 0.0 {
        d += dissipator(&projector(0, 0), &r) * Complex64::from(rates.dephasing1);
    }
    if rates.dephasing2 != 0.0 {
        d += dissipator(&projector(1, 1), &r) * Complex64::from(rates.dephasing2);
    }
    DensityDerivative {
        d_rho11: d[(0, 0)].re,
        d_rho22: d[(1, 1)].re,
        d_rho12: d[(0, 1)],
    }
}

/// Reduced real state `(ρ₂₂, Re ρ₁₂, Im ρ₁₂)`; `ρ₁₁` follows from the trace.
pub(crate) fn to_reduced(rho: &DensityMatrix) -> [f64; 3] {
    [rho.rho22, rho.rho12.re, rho.rho12.im]
}

pub(crate) fn from_reduced(y: &[f64; 3]) -> DensityMatrix {
    DensityMatrix {
        rho11: 1.0 - y[0],
        rho22: y[0],
        rho12: Complex64::new(y[1], y[2]),
    }
}

pub(crate) fn reduced_rhs(
    t: f64,
    y: &[f64; 3],
    h: &FrameHamiltonian,
    rates: &DecoherenceRates,
) -> [f64; 3] {
    let d = lindblad_rhs(t, &from_reduced(y), h, rates);
    [d.d_rho22, d.d_rho12.re, d.d_rho12.im]
}

/// Stationary state of a time-independent Hamiltonian.
///
/// The reduced equations are affine, `dy/dt = A y + b`, so the stationary point
/// solves `A y = −b`. A singular `A` (e.g. no decoherence) has no unique answer.
pub fn steady_state(h: &FrameHamiltonian, rates: &DecoherenceRates) -> Result<DensityMatrix> {
    rates.validate()?;
    if !h.is_time_independent() {
        return Err(MixerError::Config(
            "steady state requires a time-independent Hamiltonian".into(),
        ));
    }
    let b = Vector3::from(reduced_rhs(0.0, &[0.0; 3], h, rates));
    let mut a = Matrix3::zeros();
    for col in 0..3 {
        let mut e = [0.0; 3];
        e[col] = 1.0;
        let f = Vector3::from(reduced_rhs(0.0, &e, h, rates));
        a.set_column(col, &(f - b));
    }
    let scale = a.amax();
    if scale == 0.0 || a.determinant().abs() <= 1e-12 * scale.powi(3) {
        return Err(MixerError::NoSteadyState(
            "stationarity system is singular; decoherence is needed to select a unique state"
                .into(),
        ));
    }
    let y = a
        .lu()
        .solve(&(-b))
        .ok_or_else(|| MixerError::NoSteadyState("singular stationarity system".into()))?;
    Ok(from_reduced(&[y[0], y[1], y[2]]))
}

/// Closed-form excitation probability for decoherence-free detuned driving:
/// `P_e = [Ω²/(2Δ_Ω²)][1 − cos(2Δ_Ω t)]` with `Δ_Ω = √(Δ²/4 + Ω²)`.
pub fn analytic_detuned_rabi(t: f64, rabi: f64, detuning: f64) -> f64 {
    let gen_sq = detuning * detuning / 4.0 + rabi * rabi;
    if gen_sq == 0.0 {
        return 0.0;
    }
    let generalized = gen_sq.sqrt();
    rabi * rabi / (2.0 * gen_sq) * (1.0 - (2.0 * generalized * t).cos())
}

/// Sampled solution of the master equation in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub frame: Frame,
    /// Seconds, strictly increasing.
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub config: MixingConfig,
    pub rates: DecoherenceRates,
    pub stats: IntegratorStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Dimensionless time `T = |Ω₁₂₀| t`.
    pub fn dimensionless_times(&self) -> Vec<f64> {
        let scale = self.config.rabi.abs();
        self.times.iter().map(|t| scale * t).collect()
    }

    pub fn rho22(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.rho22).collect()
    }

    pub fn rho12_re(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.rho12.re).collect()
    }

    pub fn rho12_im(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.rho12.im).collect()
    }

    /// Checks ordering and every state against `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.times.len() != self.states.len() {
            return Err(MixerError::Domain(
                "times and states differ in length".into(),
            ));
        }
        if self.times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MixerError::Domain(
                "trajectory times are not increasing".into(),
            ));
        }
        for (t, s) in self.times.iter().zip(&self.states) {
            s.check(tol).map_err(|e| MixerError::Integration {
                time: *t,
                reason: e.to_string(),
            })?;
        }
        Ok(())
    }
}
