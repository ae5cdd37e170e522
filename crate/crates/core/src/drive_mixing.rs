//! Classical drive tones and the two-level Hamiltonians they generate.
//!
//! A THz tone near the 1 ↔ 2 transition couples the levels through `z₁₂`,
//! while one or two GHz tones only modulate the level energies through the
//! permanent dipoles `z₁₁ ≠ z₂₂`. Three frames are supported:
//!
//! * [`Frame::Interaction`]: diagonal Stark modulation kept explicitly,
//!   off-diagonal `Ω₁₂₀ e^{i(Δt + θ_T)}`.
//! * [`Frame::StarkRotated`]: the diagonal modulation is absorbed into the
//!   phase `φ(t) = θ_T + Δt + Σ ξ_k sin(ω_k t + θ_k)` of the off-diagonal.
//! * [`Frame::Rwa`]: only the first lower sideband of the Jacobi–Anger series
//!   is kept, giving the slow coupling `Ω_eff = −Ω₁₂₀ ξ / 2`.
//!
//! All Hamiltonians are returned divided by ħ, i.e. in rad/s.

use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bessel;
use crate::error::{MixerError, Result};
use crate::surface_state::SurfaceStateModel;

/// Thresholds beyond which the rotating-wave reduction is flagged as borderline.
pub const RWA_XI_LIMIT: f64 = 0.7;
pub const RWA_RABI_RATIO_LIMIT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToneRole {
    ThzTransition,
    GhzStark,
}

/// One classical field component polarized along `z`.
///
/// `amplitude` is the signed field component (V/m); a negative value is the
/// same tone with its phase advanced by π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveTone {
    pub amplitude: f64,
    /// rad/s
    pub angular_frequency: f64,
    /// rad
    pub phase: f64,
    pub role: ToneRole,
}

impl DriveTone {
    /// THz tone whose Rabi frequency is `rabi` at detuning `Δ = ω_T − ω₁₂`.
    pub fn thz_for_rabi(model: &SurfaceStateModel, rabi: f64, detuning: f64, phase: f64) -> Self {
        let u12 = model.constants.electron_charge * model.z(1, 2);
        Self {
            amplitude: 2.0 * model.constants.hbar * rabi / u12,
            angular_frequency: model.omega12() + detuning,
            phase,
            role: ToneRole::ThzTransition,
        }
    }

    /// GHz tone producing modulation depth `ξ` at angular frequency `omega`.
    pub fn stark_for_xi(model: &SurfaceStateModel, xi: f64, omega: f64, phase: f64) -> Self {
        let du = model.constants.electron_charge * (model.z(1, 1) - model.z(2, 2));
        Self {
            amplitude: xi * model.constants.hbar * omega / du,
            angular_frequency: omega,
            phase,
            role: ToneRole::GhzStark,
        }
    }
}

/// Couplings produced by one GHz tone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarkTerm {
    pub tone: DriveTone,
    /// `Ω₁₁₀ = u₁₁ E_G / 2ħ` (rad/s)
    pub stark11: f64,
    /// `Ω₂₂₀ = u₂₂ E_G / 2ħ` (rad/s)
    pub stark22: f64,
    /// `ξ = 2(Ω₁₁₀ − Ω₂₂₀)/ω_G`
    pub xi: f64,
}

impl StarkTerm {
    pub fn omega(&self) -> f64 {
        self.tone.angular_frequency
    }

    pub fn phase(&self) -> f64 {
        self.tone.phase
    }

    fn modulation(&self, t: f64) -> f64 {
        (self.omega() * t + self.phase()).sin()
    }
}

/// Drive configuration with every derived coupling filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingConfig {
    pub thz: DriveTone,
    /// One (two-wave) or two (three-wave) GHz tones.
    pub stark: Vec<StarkTerm>,
    /// `ω₁₂` (rad/s)
    pub omega12: f64,
    /// `Ω₁₂₀ = u₁₂ E_T / 2ħ` (rad/s)
    pub rabi: f64,
    /// `Δ = ω_T − ω₁₂` (rad/s)
    pub detuning: f64,
    /// `δ = Δ − ω_G` for the first GHz tone (rad/s)
    pub small_detuning: Option<f64>,
    /// `Ω_eff = Ω₁₂₀(Ω₂₂₀ − Ω₁₁₀)/ω_G` for the first GHz tone (rad/s)
    pub omega_eff: f64,
}

/// Derives all couplings from the model and the tone list.
pub fn build_config(model: &SurfaceStateModel, tones: &[DriveTone]) -> Result<MixingConfig> {
    let thz: Vec<_> = tones
        .iter()
        .filter(|t| t.role == ToneRole::ThzTransition)
        .collect();
    if thz.len() != 1 {
        return Err(MixerError::Config(format!(
            "exactly one THz transition tone is required, found {}",
            thz.len()
        )));
    }
    let thz = *thz[0];
    let stark_tones: Vec<_> = tones
        .iter()
        .filter(|t| t.role == ToneRole::GhzStark)
        .copied()
        .collect();
    if stark_tones.is_empty() || stark_tones.len() > 2 {
        return Err(MixerError::Config(format!(
            "one or two GHz Stark tones are required, found {}",
            stark_tones.len()
        )));
    }
    for tone in tones {
        if !(tone.amplitude.is_finite() && tone.phase.is_finite()) {
            return Err(MixerError::Config(format!(
                "tone amplitude and phase must be finite: {tone:?}"
            )));
        }
        if tone.angular_frequency == 0.0 {
            return Err(MixerError::Config(format!(
                "{:?} tone has zero frequency; ξ = 2(Ω₁₁₀ − Ω₂₂₀)/ω_G is undefined",
                tone.role
            )));
        }
        if !(tone.angular_frequency.is_finite() && tone.angular_frequency > 0.0) {
            return Err(MixerError::Config(format!(
                "tone frequency must be positive, got {}",
                tone.angular_frequency
            )));
        }
    }

    let hbar = model.constants.hbar;
    let charge = model.constants.electron_charge;
    let stark: Vec<StarkTerm> = stark_tones
        .into_iter()
        .map(|tone| {
            let stark11 = charge * model.z(1, 1) * tone.amplitude / (2.0 * hbar);
            let stark22 = charge * model.z(2, 2) * tone.amplitude / (2.0 * hbar);
            StarkTerm {
                tone,
                stark11,
                stark22,
                xi: 2.0 * (stark11 - stark22) / tone.angular_frequency,
            }
        })
        .collect();

    let omega12 = model.omega12();
    let rabi = charge * model.z(1, 2) * thz.amplitude / (2.0 * hbar);
    let detuning = thz.angular_frequency - omega12;
    let first = &stark[0];
    Ok(MixingConfig {
        thz,
        omega12,
        rabi,
        detuning,
        small_detuning: Some(detuning - first.omega()),
        omega_eff: rabi * (first.stark22 - first.stark11) / first.omega(),
        stark,
    })
}

impl MixingConfig {
    pub fn xi(&self) -> f64 {
        self.stark[0].xi
    }

    pub fn xi2(&self) -> Option<f64> {
        self.stark.get(1).map(|s| s.xi)
    }

    pub fn stark11(&self) -> f64 {
        self.stark[0].stark11
    }

    pub fn stark22(&self) -> f64 {
        self.stark[0].stark22
    }

    /// `ω_G` of the first GHz tone.
    pub fn omega_g(&self) -> f64 {
        self.stark[0].omega()
    }

    pub fn is_three_wave(&self) -> bool {
        self.stark.len() == 2
    }

    /// `−Ω₁₂₀ ξ_k / 2` for each GHz tone.
    pub fn sideband_couplings(&self) -> Vec<f64> {
        self.stark.iter().map(|s| -self.rabi * s.xi / 2.0).collect()
    }

    /// Human-readable flags for parameters where the rotating-wave reduction is shaky.
    pub fn rwa_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, s) in self.stark.iter().enumerate() {
            if s.xi.abs() > RWA_XI_LIMIT {
                out.push(format!(
                    "GHz tone {}: |ξ| = {:.3} exceeds {RWA_XI_LIMIT}; small-ξ sideband truncation is inaccurate",
                    k + 1,
                    s.xi.abs()
                ));
            }
            if self.rabi.abs() > RWA_RABI_RATIO_LIMIT * s.omega() {
                out.push(format!(
                    "GHz tone {}: |Ω₁₂₀|/ω_G = {:.3} exceeds {RWA_RABI_RATIO_LIMIT}; sidebands are not well separated",
                    k + 1,
                    self.rabi.abs() / s.omega()
                ));
            }
        }
        out
    }
}

/// `e^{iφ(t)} = e^{iθ_T} e^{iΔt} Π_k e^{iξ_k sin(ω_k t + θ_k)}`.
pub fn phase_factor(t: f64, config: &MixingConfig) -> Complex64 {
    let modulation: f64 = config.stark.iter().map(|s| s.xi * s.modulation(t)).sum();
    Complex64::cis(config.thz.phase + config.detuning * t + modulation)
}

/// `θ₁₁(t), θ₂₂(t)`: accumulated diagonal phases of the Stark-frame rotation.
///
/// Uses the closed-form antiderivative `(2Ω_ii0/ω_G) sin(ω_G t + θ_G)`, whose
/// integration constant differs from the definite integral from 0 when θ_G ≠ 0.
pub fn stark_frame_angles(t: f64, config: &MixingConfig) -> (f64, f64) {
    config.stark.iter().fold((0.0, 0.0), |(a11, a22), s| {
        let m = s.modulation(t) / s.omega();
        (a11 + 2.0 * s.stark11 * m, a22 + 2.0 * s.stark22 * m)
    })
}

/// Bessel coefficients `J_n(ξ)` for `|n| ≤ n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiAngerSeries {
    pub xi: f64,
    n_max: u32,
    coefficients: Vec<f64>,
}

impl JacobiAngerSeries {
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// `J_n(ξ)`, zero outside the retained range.
    pub fn coefficient(&self, n: i32) -> f64 {
        if n.unsigned_abs() > self.n_max {
            return 0.0;
        }
        self.coefficients[(n + self.n_max as i32) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        let lo = -(self.n_max as i32);
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(k, &c)| (lo + k as i32, c))
    }

    /// Truncated `Σ J_n(ξ) e^{inu}`.
    pub fn sum(&self, u: f64) -> Complex64 {
        self.iter()
            .map(|(n, c)| c * Complex64::cis(f64::from(n) * u))
            .sum()
    }
}

/// `J_n(ξ)` for `n ∈ [−n_max, n_max]`.
pub fn jacobi_anger_coefficients(xi: f64, n_max: u32) -> JacobiAngerSeries {
    let positive = bessel::bessel_j_upto(n_max, xi);
    let mut coefficients = Vec::with_capacity(2 * n_max as usize + 1);
    for n in (1..=n_max).rev() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        coefficients.push(sign * positive[n as usize]);
    }
    coefficients.extend_from_slice(&positive);
    JacobiAngerSeries {
        xi,
        n_max,
        coefficients,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    Interaction,
    StarkRotated,
    Rwa,
}

impl Frame {
    pub const ALL: [Frame; 3] = [Frame::Interaction, Frame::StarkRotated, Frame::Rwa];

    pub fn tag(self) -> &'static str {
        match self {
            Frame::Interaction => "interaction",
            Frame::StarkRotated => "stark_rotated",
            Frame::Rwa => "rwa",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Frame {
    type Err = MixerError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interaction" => Ok(Frame::Interaction),
            "stark_rotated" | "stark" => Ok(Frame::StarkRotated),
            "rwa" => Ok(Frame::Rwa),
            other => Err(MixerError::Config(format!("unknown frame `{other}`"))),
        }
    }
}

/// Which effective Hamiltonian the rotating-wave frame uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RwaForm {
    /// `Ω_eff e^{i(θ_T − θ_G)}`, time independent.
    Resonant,
    /// Adds the slow rotation `e^{iδt}` with `δ = Δ − ω_G`.
    Detuned,
    /// Sum of the lower sidebands of both GHz tones.
    ThreeWave,
    /// Keeps the carrier `Ω₁₂₀ e^{i(θ_T + Δt)}` instead of a sideband; used
    /// when `|Δ| < ω_G/2`, so the unmodulated line is the nearest resonance.
    Carrier,
}

impl RwaForm {
    /// Picks the form matching the tone count and `δ`.
    pub fn for_config(config: &MixingConfig) -> Self {
        if config.is_three_wave() {
            return RwaForm::ThreeWave;
        }
        if config.detuning.abs() < 0.5 * config.omega_g() {
            return RwaForm::Carrier;
        }
        let delta = config.small_detuning.unwrap_or(0.0);
        let scale = config.detuning.abs().max(config.omega_g());
        if delta.abs() <= 1e-9 * scale {
            RwaForm::Resonant
        } else {
            RwaForm::Detuned
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Interaction,
    Stark,
    Rwa(RwaForm),
}

/// Time-dependent 2×2 Hamiltonian `H(t)/ħ` in a declared frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameHamiltonian {
    frame: Frame,
    kind: Kind,
    config: MixingConfig,
    diagnostics: Vec<String>,
}

impl FrameHamiltonian {
    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn config(&self) -> &MixingConfig {
        &self.config
    }

    pub fn rwa_form(&self) -> Option<RwaForm> {
        match self.kind {
            Kind::Rwa(form) => Some(form),
            _ => None,
        }
    }

    /// Warnings attached at construction time.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// `(H₁₁, H₂₂)/ħ`.
    pub fn diagonal(&self, t: f64) -> (f64, f64) {
        match self.kind {
            Kind::Interaction => self.config.stark.iter().fold((0.0, 0.0), |(d1, d2), s| {
                let c = (s.omega() * t + s.phase()).cos();
                (d1 + 2.0 * s.stark11 * c, d2 + 2.0 * s.stark22 * c)
            }),
            Kind::Stark | Kind::Rwa(_) => (0.0, 0.0),
        }
    }

    /// `H₁₂/ħ`; `H₂₁` is its conjugate.
    pub fn off_diagonal(&self, t: f64) -> Complex64 {
        let c = &self.config;
        match self.kind {
            Kind::Interaction => c.rabi * Complex64::cis(c.detuning * t + c.thz.phase),
            Kind::Stark => c.rabi * phase_factor(t, c),
            Kind::Rwa(RwaForm::Resonant) => {
                c.omega_eff * Complex64::cis(c.thz.phase - c.stark[0].phase())
            }
            Kind::Rwa(RwaForm::Detuned) => {
                let s = &c.stark[0];
                c.omega_eff * Complex64::cis(c.thz.phase - s.phase() + (c.detuning - s.omega()) * t)
            }
            Kind::Rwa(RwaForm::Carrier) => c.rabi * Complex64::cis(c.thz.phase + c.detuning * t),
            Kind::Rwa(RwaForm::ThreeWave) => c
                .stark
                .iter()
                .map(|s| {
                    let coupling = -c.rabi * s.xi / 2.0;
                    coupling
                        * Complex64::cis(c.thz.phase - s.phase() + (c.detuning - s.omega()) * t)
                })
                .sum(),
        }
    }

    pub fn evaluate(&self, t: f64) -> Matrix2<Complex64> {
        let (d1, d2) = self.diagonal(t);
        let h12 = self.off_diagonal(t);
        Matrix2::new(Complex64::from(d1), h12, h12.conj(), Complex64::from(d2))
    }

    pub fn is_time_independent(&self) -> bool {
        match self.kind {
            Kind::Rwa(RwaForm::Resonant) => true,
            Kind::Rwa(RwaForm::Carrier) => self.config.rabi == 0.0 || self.config.detuning == 0.0,
            Kind::Interaction => {
                let static_diagonal = self
                    .config
                    .stark
                    .iter()
                    .all(|s| s.stark11 == 0.0 && s.stark22 == 0.0);
                static_diagonal && (self.config.rabi == 0.0 || self.config.detuning == 0.0)
            }
            Kind::Stark => {
                self.config.rabi == 0.0
                    || (self.config.detuning == 0.0
                        && self.config.stark.iter().all(|s| s.xi == 0.0))
            }
            Kind::Rwa(_) => {
                self.config.rabi == 0.0 || self.config.stark.iter().all(|s| s.xi == 0.0)
            }
        }
    }

    /// Upper bound on the angular frequencies present in `H(t)` and in the
    /// resulting dynamics; used to cap the integrator step.
    pub fn max_frequency(&self) -> f64 {
        let c = &self.config;
        let modulation: f64 = c.stark.iter().map(|s| (1.0 + s.xi.abs()) * s.omega()).sum();
        match self.kind {
            Kind::Interaction => {
                let diag: f64 = c
                    .stark
                    .iter()
                    .map(|s| 2.0 * (s.stark11.abs() + s.stark22.abs()) + s.omega())
                    .sum();
                c.detuning.abs() + diag + 2.0 * c.rabi.abs()
            }
            Kind::Stark => c.detuning.abs() + modulation + 2.0 * c.rabi.abs(),
            Kind::Rwa(form) => {
                if form == RwaForm::Carrier {
                    return c.detuning.abs() + 2.0 * c.rabi.abs();
                }
                let slow = match form {
                    RwaForm::Resonant => 0.0,
                    _ => c
                        .stark
                        .iter()
                        .map(|s| (c.detuning - s.omega()).abs())
                        .fold(0.0, f64::max),
                };
                let couplings: f64 = c.sideband_couplings().iter().map(|v| v.abs()).sum();
                slow + 2.0 * couplings
            }
        }
    }
}

/// Full interaction-picture Hamiltonian with explicit diagonal Stark terms.
pub fn hamiltonian_interaction_frame(config: &MixingConfig) -> FrameHamiltonian {
    FrameHamiltonian {
        frame: Frame::Interaction,
        kind: Kind::Interaction,
        config: config.clone(),
        diagnostics: Vec::new(),
    }
}

/// `Ω₁₂₀[e^{iφ(t)} σ₁₂ + e^{−iφ(t)} σ₂₁]`, exact in the Stark-rotated frame.
pub fn hamiltonian_stark_frame(config: &MixingConfig) -> FrameHamiltonian {
    FrameHamiltonian {
        frame: Frame::StarkRotated,
        kind: Kind::Stark,
        config: config.clone(),
        diagnostics: Vec::new(),
    }
}

/// Rotating-wave effective Hamiltonian of the requested form.
pub fn hamiltonian_rwa(config: &MixingConfig, form: RwaForm) -> Result<FrameHamiltonian> {
    if form == RwaForm::ThreeWave && !config.is_three_wave() {
        return Err(MixerError::Config(
            "three-wave rotating-wave Hamiltonian needs two GHz tones".into(),
        ));
    }
    let diagnostics = config.rwa_warnings();
    for d in &diagnostics {
        log::warn!("{d}");
    }
    Ok(FrameHamiltonian {
        frame: Frame::Rwa,
        kind: Kind::Rwa(form),
        config: config.clone(),
        diagnostics,
    })
}

/// Builds the Hamiltonian for `frame`, choosing the RWA form automatically.
pub fn hamiltonian_for_frame(
    config: &MixingConfig,
    frame: Frame,
    rwa_form: Option<RwaForm>,
) -> Result<FrameHamiltonian> {
    match frame {
        Frame::Interaction => Ok(hamiltonian_interaction_frame(config)),
        Frame::StarkRotated => Ok(hamiltonian_stark_frame(config)),
        Frame::Rwa => hamiltonian_rwa(
            config,
            rwa_form.unwrap_or_else(|| RwaForm::for_config(config)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature;
    use crate::surface_state::PhysicalConstants;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    const OMEGA_G: f64 = 1e9;

    fn model() -> SurfaceStateModel {
        SurfaceStateModel::new(PhysicalConstants::default()).unwrap()
    }

    fn two_wave(xi: f64, rabi: f64, detuning: f64, theta_t: f64, theta_g: f64) -> MixingConfig {
        let m = model();
        build_config(
            &m,
            &[
                DriveTone::thz_for_rabi(&m, rabi, detuning, theta_t),
                DriveTone::stark_for_xi(&m, xi, OMEGA_G, theta_g),
            ],
        )
        .unwrap()
    }

    fn hermitian_gap(h: &Matrix2<Complex64>) -> f64 {
        (h - h.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn fig1_couplings() {
        let c = two_wave(0.5, 0.1 * OMEGA_G, OMEGA_G, 0.0, 0.0);
        assert_relative_eq!(c.xi(), 0.5, max_relative = 1e-12);
        assert_relative_eq!(c.rabi, 0.1 * OMEGA_G, max_relative = 1e-12);
        assert_relative_eq!(c.detuning, OMEGA_G, max_relative = 1e-9);
        assert_relative_eq!(c.omega_eff.abs(), 0.025 * OMEGA_G, max_relative = 1e-12);
        assert_relative_eq!(c.omega_eff, -c.rabi * c.xi() / 2.0, max_relative = 1e-12);
        assert_relative_eq!(
            c.xi(),
            2.0 * (c.stark11() - c.stark22()) / c.omega_g(),
            max_relative = 1e-15
        );
        assert!(c.small_detuning.unwrap().abs() < 1e-9 * OMEGA_G);
        assert!(c.xi2().is_none());
    }

    #[test]
    fn stark_field_for_target_xi() {
        let m = model();
        let tone = DriveTone::stark_for_xi(&m, 0.5, OMEGA_G, 0.0);
        let hbar = m.constants.hbar;
        let e = m.constants.electron_charge;
        let expected = 0.5 * OMEGA_G * hbar / (e * 4.5 * m.bohr_radius);
        assert_relative_eq!(tone.amplitude.abs(), expected, max_relative = 1e-3);
        // z₁₁ < z₂₂, so a positive ξ needs the field pointing into the liquid
        assert!(tone.amplitude < 0.0);
        // between 0.01 and 10 V/cm, around the experimental 1 V/cm
        assert!(tone.amplitude.abs() > 1.0 && tone.amplitude.abs() < 1e3);
    }

    #[test]
    fn equal_stark_couplings_give_zero_xi() {
        let m = model();
        let tone = DriveTone {
            amplitude: 0.0,
            angular_frequency: OMEGA_G,
            phase: 0.0,
            role: ToneRole::GhzStark,
        };
        let c = build_config(&m, &[DriveTone::thz_for_rabi(&m, 1e8, 1e9, 0.0), tone]).unwrap();
        assert_eq!(c.stark11(), c.stark22());
        assert_eq!(c.xi(), 0.0);
    }

    #[test]
    fn rejects_bad_tone_lists() {
        let m = model();
        let thz = DriveTone::thz_for_rabi(&m, 1e8, 1e9, 0.0);
        let g = DriveTone::stark_for_xi(&m, 0.5, OMEGA_G, 0.0);
        assert!(matches!(
            build_config(&m, &[thz]),
            Err(MixerError::Config(_))
        ));
        assert!(build_config(&m, &[thz, g, g, g]).is_err());
        assert!(build_config(&m, &[g]).is_err());
        assert!(build_config(&m, &[thz, thz, g]).is_err());
        let zero = DriveTone {
            angular_frequency: 0.0,
            ..g
        };
        let err = build_config(&m, &[thz, zero]).unwrap_err();
        assert!(err.to_string().contains("zero frequency"));
    }

    #[test]
    fn phase_factor_limits() {
        let c = two_wave(0.0, 1e8, 7e8, 0.0, 0.0);
        assert_eq!(phase_factor(0.0, &c), Complex64::new(1.0, 0.0));
        let c = two_wave(0.0, 1e8, 7e8, 0.4, 1.1);
        for k in 0..50 {
            let t = k as f64 * 1.3e-10;
            let expected = Complex64::cis(c.detuning * t + 0.4);
            assert_abs_diff_eq!(
                (phase_factor(t, &c) - expected).norm(),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn phase_factor_is_unimodular() {
        let c = two_wave(1.7, 1e8, 1e9, 0.3, -2.0);
        for k in 0..1000 {
            let z = phase_factor(k as f64 * 3.7e-11, &c);
            assert_abs_diff_eq!(z.norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn phase_factor_time_average_selects_lower_sideband() {
        let (theta_t, theta_g) = (0.4, -0.9);
        let c = two_wave(0.5, 1e8, OMEGA_G, theta_t, theta_g);
        // integrate over 20 GHz periods with the exact detuning Δ = ω_G
        let c = MixingConfig {
            detuning: OMEGA_G,
            ..c
        };
        let period = 2.0 * PI / OMEGA_G;
        let span = 20.0 * period;
        let re = quadrature::integrate(|t| phase_factor(t, &c).re, 0.0, span, 1e-14).unwrap();
        let im = quadrature::integrate(|t| phase_factor(t, &c).im, 0.0, span, 1e-14).unwrap();
        let mean = Complex64::new(re.value, im.value) / span;
        let expected = bessel::bessel_j(-1, 0.5) * Complex64::cis(theta_t - theta_g);
        assert_abs_diff_eq!((mean - expected).norm(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(mean.norm(), 0.242_268_457_674_873_9, epsilon = 1e-9);
    }

    #[test]
    fn jacobi_anger_basics() {
        let s = jacobi_anger_coefficients(0.0, 5);
        assert_eq!(s.coefficient(0), 1.0);
        assert!(s.iter().filter(|(n, _)| *n != 0).all(|(_, c)| c == 0.0));

        let s = jacobi_anger_coefficients(0.5, 20);
        assert_abs_diff_eq!(s.coefficient(-1), -0.242_27, epsilon = 5e-6);
        for n in -20..=20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(s.coefficient(n), sign * s.coefficient(-n));
        }
        let sum_sq: f64 = s.iter().map(|(_, c)| c * c).sum();
        assert_abs_diff_eq!(sum_sq, 1.0, epsilon = 1e-10);
        assert_eq!(s.coefficient(21), 0.0);
    }

    #[test]
    fn jacobi_anger_identity() {
        for &xi in &[0.1, 0.5, 1.0, 2.0, -1.3] {
            let s = jacobi_anger_coefficients(xi, 20);
            for k in 0..256 {
                let u = 2.0 * PI * k as f64 / 256.0;
                let exact = Complex64::cis(xi * u.sin());
                assert!((exact - s.sum(u)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn small_xi_sideband_bound() {
        for k in 1..=50 {
            let xi = 0.01 * k as f64;
            let j = bessel::bessel_j(-1, xi);
            assert!((j + xi / 2.0).abs() < xi.powi(3) / 16.0 + 1e-12);
        }
    }

    #[test]
    fn stark_frame_evaluations() {
        let c = two_wave(0.5, 1e8, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_stark_frame(&c);
        let h0 = h.evaluate(0.0);
        assert_eq!(h0[(0, 0)], Complex64::from(0.0));
        assert_relative_eq!(h0[(0, 1)].re, c.rabi, max_relative = 1e-15);
        assert_abs_diff_eq!(h0[(0, 1)].im, 0.0, epsilon = 1e-6);
        for k in 0..200 {
            let m = h.evaluate(k as f64 * 1.7e-11);
            assert!(hermitian_gap(&m) < 1e-12);
            assert_relative_eq!(m[(0, 1)].norm(), c.rabi.abs(), max_relative = 1e-14);
        }

        let off = two_wave(0.5, 0.0, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_stark_frame(&off);
        assert_eq!(h.evaluate(1e-9), Matrix2::zeros());
    }

    #[test]
    fn interaction_frame_diagonal_and_zero_drive() {
        let c = two_wave(0.5, 1e8, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_interaction_frame(&c);
        for k in 0..100 {
            let t = k as f64 * 1.3e-10;
            let m = h.evaluate(t);
            let cos = (OMEGA_G * t).cos();
            assert_relative_eq!(
                m[(0, 0)].re,
                2.0 * c.stark11() * cos,
                max_relative = 1e-12,
                epsilon = 1e-3
            );
            assert_relative_eq!(
                m[(1, 1)].re,
                2.0 * c.stark22() * cos,
                max_relative = 1e-12,
                epsilon = 1e-3
            );
            assert!(hermitian_gap(&m) < 1e-12 * OMEGA_G);
        }

        let quiet = two_wave(0.0, 0.0, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_interaction_frame(&quiet);
        assert_eq!(h.evaluate(3e-9), Matrix2::zeros());
        assert!(h.is_time_independent());
    }

    #[test]
    fn stark_angles_difference_and_integral() {
        let c = two_wave(0.5, 1e8, OMEGA_G, 0.0, 0.7);
        for k in 0..40 {
            let t = k as f64 * 2.1e-10;
            let (a11, a22) = stark_frame_angles(t, &c);
            let expected = c.xi() * (OMEGA_G * t + 0.7).sin();
            assert_abs_diff_eq!(a11 - a22, expected, epsilon = 1e-12);
        }

        let h = hamiltonian_interaction_frame(&c);
        let t_end = 3.3e-9;
        let numeric = quadrature::integrate(|t| h.diagonal(t).0, 0.0, t_end, 1e-12).unwrap();
        let closed = stark_frame_angles(t_end, &c).0 - stark_frame_angles(0.0, &c).0;
        assert_abs_diff_eq!(numeric.value, closed, epsilon = 1e-9);

        // with θ_G = 0 the angles vanish wherever sin(ω_G t) does
        let c0 = two_wave(0.5, 1e8, OMEGA_G, 0.0, 0.0);
        let (a11, a22) = stark_frame_angles(PI / OMEGA_G, &c0);
        assert_abs_diff_eq!(a11, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a22, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn rwa_forms() {
        let none = two_wave(0.0, 1e8, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_rwa(&none, RwaForm::Resonant).unwrap();
        assert_eq!(none.omega_eff, 0.0);
        assert_eq!(h.evaluate(1e-8), Matrix2::zeros());

        let c = two_wave(0.5, 0.1 * OMEGA_G, OMEGA_G, 0.3, 0.1);
        let h = hamiltonian_rwa(&c, RwaForm::Resonant).unwrap();
        assert!(h.is_time_independent());
        let m = h.evaluate(0.0);
        assert_relative_eq!(m[(0, 1)].norm(), 0.025 * OMEGA_G, max_relative = 1e-12);
        // Ω_eff = −Ω₁₂₀ξ/2 < 0 adds π to θ_T − θ_G
        assert!(c.omega_eff < 0.0);
        assert_abs_diff_eq!(m[(0, 1)].arg(), 0.3 - 0.1 - PI, epsilon = 1e-12);
        assert_eq!(h.evaluate(5e-7), m);
        assert!(hamiltonian_rwa(&c, RwaForm::ThreeWave).is_err());
        assert_eq!(RwaForm::for_config(&c), RwaForm::Resonant);
    }

    #[test]
    fn carrier_form_near_zero_detuning() {
        let c = two_wave(0.0, 1e8, 0.0, 0.2, 0.0);
        assert_eq!(RwaForm::for_config(&c), RwaForm::Carrier);
        let rwa = hamiltonian_rwa(&c, RwaForm::Carrier).unwrap();
        let stark = hamiltonian_stark_frame(&c);
        assert!(rwa.is_time_independent());
        for t in [0.0, 1e-9, 3.7e-8] {
            assert_eq!(rwa.evaluate(t), stark.evaluate(t));
        }
    }

    #[test]
    fn three_wave_rwa_collapses_when_sidebands_coincide() {
        let m = model();
        let tones = [
            DriveTone::thz_for_rabi(&m, 1e8, OMEGA_G, 0.2),
            DriveTone::stark_for_xi(&m, 0.5, OMEGA_G, 0.6),
            DriveTone::stark_for_xi(&m, 0.5, OMEGA_G, 0.6),
        ];
        let c = build_config(&m, &tones).unwrap();
        let c = MixingConfig {
            detuning: OMEGA_G,
            ..c
        };
        let h = hamiltonian_rwa(&c, RwaForm::ThreeWave).unwrap();
        let expected = 2.0 * c.omega_eff * Complex64::cis(0.2 - 0.6);
        for k in 0..10 {
            let off = h.off_diagonal(k as f64 * 1e-8);
            assert_abs_diff_eq!((off - expected).norm(), 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn rwa_warnings_flag_large_parameters() {
        let mild = two_wave(0.5, 0.1 * OMEGA_G, OMEGA_G, 0.0, 0.0);
        assert!(hamiltonian_rwa(&mild, RwaForm::Resonant)
            .unwrap()
            .diagnostics()
            .is_empty());
        let strong = two_wave(0.9, 0.4 * OMEGA_G, OMEGA_G, 0.0, 0.0);
        let h = hamiltonian_rwa(&strong, RwaForm::Resonant).unwrap();
        assert_eq!(h.diagnostics().len(), 2);
    }

    #[test]
    fn theta_t_shift_rotates_off_diagonals() {
        let alpha = 0.83;
        let a = two_wave(0.5, 1e8, OMEGA_G, 0.1, 0.2);
        let b = two_wave(0.5, 1e8, OMEGA_G, 0.1 + alpha, 0.2);
        let b = MixingConfig {
            detuning: a.detuning,
            ..b
        };
        for frame in Frame::ALL {
            let ha = hamiltonian_for_frame(&a, frame, None).unwrap();
            let hb = hamiltonian_for_frame(&b, frame, None).unwrap();
            for k in 0..20 {
                let t = k as f64 * 3.1e-10;
                let rotated = ha.off_diagonal(t) * Complex64::cis(alpha);
                assert_abs_diff_eq!((hb.off_diagonal(t) - rotated).norm(), 0.0, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn frame_tags_round_trip() {
        for f in Frame::ALL {
            assert_eq!(f.tag().parse::<Frame>().unwrap(), f);
        }
        assert!("lab".parse::<Frame>().is_err());
    }
}
