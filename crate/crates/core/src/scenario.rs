//! Scenario files: TOML with explicit unit suffixes on every physical input.
//!
//! Frequencies marked `angular = true` (the default) are angular frequencies,
//! so `frequency_ghz = 1.0` means 10⁹ rad/s; with `angular = false` the value
//! is an ordinary frequency and is multiplied by 2π. Decoherence rates are
//! always rates in s⁻¹ (`gamma_decay_mhz = 10` is 10⁷ s⁻¹).

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::drive_mixing::{build_config, DriveTone, Frame, MixingConfig, RwaForm, ToneRole};
use crate::error::{MixerError, Result};
use crate::integrator::{uniform_grid, IntegrationOptions, StepMode};
use crate::lindblad::{DecoherenceRates, DensityMatrix};
use crate::observables::ImageChargeGeometry;
use crate::spectrum::Window;
use crate::surface_state::{PhysicalConstants, SurfaceStateModel, ANGSTROM, HELIUM_EPSILON};

const GHZ: f64 = 1e9;
const THZ: f64 = 1e12;
const MHZ: f64 = 1e6;
const NS: f64 = 1e-9;
const PS: f64 = 1e-12;

/// Samples per period of the fastest drive frequency on the default grid.
pub const SAMPLES_PER_FAST_PERIOD: f64 = 40.0;

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub model: ModelSection,
    pub thz: ThzSection,
    #[serde(default)]
    pub stark: Vec<StarkSection>,
    #[serde(default)]
    pub decoherence: DecoherenceSection,
    #[serde(default)]
    pub initial: InitialSection,
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Reserved; every computation is deterministic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bohr_radius_angstrom: Option<f64>,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            epsilon: HELIUM_EPSILON,
            lambda: None,
            bohr_radius_angstrom: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThzSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rabi_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude_v_per_m: Option<f64>,
    /// `Δ = ω_T − ω₁₂`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detuning_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency_thz: Option<f64>,
    #[serde(default)]
    pub phase_rad: f64,
    #[serde(default = "yes")]
    pub angular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarkSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude_v_per_m: Option<f64>,
    pub frequency_ghz: f64,
    #[serde(default)]
    pub phase_rad: f64,
    #[serde(default = "yes")]
    pub angular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoherenceSection {
    #[serde(default)]
    pub gamma_decay_mhz: f64,
    #[serde(default)]
    pub dephasing1_mhz: f64,
    #[serde(default)]
    pub dephasing2_mhz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    #[serde(default)]
    pub rho22: f64,
    #[serde(default)]
    pub rho12_re: f64,
    #[serde(default)]
    pub rho12_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub frames: Vec<Frame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rwa_form: Option<RwaForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end_ns: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default)]
    pub fixed_step: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_step_ps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rtol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atol: Option<f64>,
}

impl Default for SimulationSection {
    fn default() -> Self {
        Self {
            frames: Frame::ALL.to_vec(),
            rwa_form: None,
            t_end_ns: None,
            samples: None,
            fixed_step: false,
            fixed_step_ps: None,
            rtol: None,
            atol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSection {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default)]
    pub window: Window,
    /// Peak search band `(lo, hi]` in units of `|Ω₁₂₀|`.
    #[serde(default = "default_band")]
    pub band: [f64; 2],
}

fn default_band() -> [f64; 2] {
    [0.0, 2.0]
}

impl Default for SpectrumSection {
    fn default() -> Self {
        Self {
            enabled: true,
            window: Window::Rectangular,
            band: default_band(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub electron_count: f64,
    pub plate_separation_mm: f64,
}

impl Default for GeometrySection {
    fn default() -> Self {
        let g = ImageChargeGeometry::default();
        Self {
            electron_count: g.electron_count,
            plate_separation_mm: g.plate_separation * 1e3,
        }
    }
}

fn angular(value: f64, unit: f64, is_angular: bool) -> f64 {
    let w = value * unit;
    if is_angular {
        w
    } else {
        2.0 * PI * w
    }
}

fn positive(errors: &mut Vec<String>, field: &str, value: f64) {
    if !(value.is_finite() && value > 0.0) {
        errors.push(format!("{field}: must be positive, got {value}"));
    }
}

fn non_negative(errors: &mut Vec<String>, field: &str, value: f64) {
    if !(value.is_finite() && value >= 0.0) {
        errors.push(format!("{field}: must be non-negative, got {value}"));
    }
}

fn finite(errors: &mut Vec<String>, field: &str, value: Option<f64>) {
    if let Some(v) = value {
        if !v.is_finite() {
            errors.push(format!("{field}: must be finite, got {v}"));
        }
    }
}

/// Everything needed to run a scenario, in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedScenario {
    pub name: String,
    pub model: SurfaceStateModel,
    pub config: MixingConfig,
    pub rates: DecoherenceRates,
    pub initial: DensityMatrix,
    pub frames: Vec<Frame>,
    pub rwa_form: Option<RwaForm>,
    pub t_end: f64,
    pub grid: Vec<f64>,
    pub options: IntegrationOptions,
    pub spectrum: SpectrumSection,
    pub geometry: ImageChargeGeometry,
    /// `(parameter, value, reason)` for each default the scenario did not set.
    pub defaults: Vec<(String, String, String)>,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str, origin: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| MixerError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text, &path.display().to_string())
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario configs always serialize")
    }

    /// SHA-256 of the canonical JSON form; keys are sorted, so the hash does
    /// not depend on field order in the source file.
    pub fn config_hash(&self) -> String {
        let value = serde_json::to_value(self).expect("scenario configs always serialize");
        let canonical = serde_json::to_string(&value).expect("JSON values always serialize");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    /// Field-level problems; empty when the file is usable.
    pub fn validate(&self) -> Vec<String> {
        let mut errors = Vec::new();
        if self.name.trim().is_empty() {
            errors.push("name: must not be empty".into());
        }

        positive(&mut errors, "model.epsilon", self.model.epsilon);
        if self.model.epsilon.is_finite() && self.model.epsilon <= 1.0 {
            errors.push(format!(
                "model.epsilon: must exceed 1, got {}",
                self.model.epsilon
            ));
        }
        if let Some(l) = self.model.lambda {
            positive(&mut errors, "model.lambda", l);
        }
        if let Some(r) = self.model.bohr_radius_angstrom {
            positive(&mut errors, "model.bohr_radius_angstrom", r);
        }

        let t = &self.thz;
        match (t.rabi_ghz, t.amplitude_v_per_m) {
            (Some(_), Some(_)) => errors.push(
                "thz: specify exactly one of rabi_ghz and amplitude_v_per_m, not both".into(),
            ),
            (None, None) => {
                errors.push("thz: one of rabi_ghz or amplitude_v_per_m is required".into())
            }
            _ => {}
        }
        finite(&mut errors, "thz.rabi_ghz", t.rabi_ghz);
        finite(&mut errors, "thz.amplitude_v_per_m", t.amplitude_v_per_m);
        match (t.detuning_ghz, t.frequency_thz) {
            (Some(_), Some(_)) => errors.push(
                "thz: specify exactly one of detuning_ghz and frequency_thz, not both".into(),
            ),
            (None, None) => {
                errors.push("thz: one of detuning_ghz or frequency_thz is required".into())
            }
            _ => {}
        }
        finite(&mut errors, "thz.detuning_ghz", t.detuning_ghz);
        if let Some(f) = t.frequency_thz {
            positive(&mut errors, "thz.frequency_thz", f);
        }
        finite(&mut errors, "thz.phase_rad", Some(t.phase_rad));

        if self.stark.is_empty() || self.stark.len() > 2 {
            errors.push(format!(
                "stark: one or two GHz tones are required, found {}",
                self.stark.len()
            ));
        }
        for (k, s) in self.stark.iter().enumerate() {
            match (s.xi, s.amplitude_v_per_m) {
                (Some(_), Some(_)) => errors.push(format!(
                    "stark[{k}]: specify exactly one of xi and amplitude_v_per_m, not both"
                )),
                (None, None) => errors.push(format!(
                    "stark[{k}]: one of xi or amplitude_v_per_m is required"
                )),
                _ => {}
            }
            finite(&mut errors, &format!("stark[{k}].xi"), s.xi);
            finite(
                &mut errors,
                &format!("stark[{k}].amplitude_v_per_m"),
                s.amplitude_v_per_m,
            );
            if s.frequency_ghz == 0.0 {
                errors.push(format!(
                    "stark[{k}].frequency_ghz: zero frequency makes ξ = 2(Ω₁₁₀ − Ω₂₂₀)/ω_G undefined"
                ));
            } else {
                positive(
                    &mut errors,
                    &format!("stark[{k}].frequency_ghz"),
                    s.frequency_ghz,
                );
            }
            finite(
                &mut errors,
                &format!("stark[{k}].phase_rad"),
                Some(s.phase_rad),
            );
        }

        let d = &self.decoherence;
        non_negative(
            &mut errors,
            "decoherence.gamma_decay_mhz",
            d.gamma_decay_mhz,
        );
        non_negative(&mut errors, "decoherence.dephasing1_mhz", d.dephasing1_mhz);
        non_negative(&mut errors, "decoherence.dephasing2_mhz", d.dephasing2_mhz);

        let i = &self.initial;
        let rho12 = Complex64::new(i.rho12_re, i.rho12_im);
        if let Err(e) = DensityMatrix::new(i.rho22, rho12) {
            errors.push(format!("initial: {e}"));
        }

        let sim = &self.simulation;
        if sim.frames.is_empty() {
            errors.push("simulation.frames: at least one frame is required".into());
        }
        let mut seen = sim.frames.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != sim.frames.len() {
            errors.push("simulation.frames: frames must not repeat".into());
        }
        if sim.rwa_form == Some(RwaForm::ThreeWave) && self.stark.len() != 2 {
            errors.push("simulation.rwa_form: three_wave needs two stark tones".into());
        }
        if let Some(t) = sim.t_end_ns {
            positive(&mut errors, "simulation.t_end_ns", t);
        }
        if let Some(n) = sim.samples {
            if n < 2 {
                errors.push(format!("simulation.samples: need at least 2, got {n}"));
            }
        }
        if let Some(h) = sim.fixed_step_ps {
            positive(&mut errors, "simulation.fixed_step_ps", h);
            if !sim.fixed_step {
                errors.push(
                    "simulation.fixed_step_ps: set only together with fixed_step = true".into(),
                );
            }
        }
        if let Some(r) = sim.rtol {
            positive(&mut errors, "simulation.rtol", r);
        }
        if let Some(a) = sim.atol {
            positive(&mut errors, "simulation.atol", a);
        }

        let [lo, hi] = self.spectrum.band;
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            errors.push(format!("spectrum.band: need lo < hi, got [{lo}, {hi}]"));
        }
        positive(
            &mut errors,
            "geometry.electron_count",
            self.geometry.electron_count,
        );
        positive(
            &mut errors,
            "geometry.plate_separation_mm",
            self.geometry.plate_separation_mm,
        );
        errors
    }

    /// Validates and converts to SI inputs, filling in documented defaults.
    pub fn resolve(&self) -> Result<ResolvedScenario> {
        let errors = self.validate();
        if !errors.is_empty() {
            return Err(MixerError::Validation(errors));
        }
        let constants = PhysicalConstants::with_epsilon(self.model.epsilon);
        let model = SurfaceStateModel::with_overrides(
            constants,
            self.model.lambda,
            self.model.bohr_radius_angstrom.map(|r| r * ANGSTROM),
        )?;

        let t = &self.thz;
        let frequency = match (t.detuning_ghz, t.frequency_thz) {
            (Some(d), _) => model.omega12() + angular(d, GHZ, t.angular),
            (_, Some(f)) => angular(f, THZ, t.angular),
            _ => unreachable!("validated"),
        };
        let thz = match (t.rabi_ghz, t.amplitude_v_per_m) {
            (Some(r), _) => {
                let rabi = angular(r, GHZ, t.angular);
                let mut tone = DriveTone::thz_for_rabi(&model, rabi, 0.0, t.phase_rad);
                tone.angular_frequency = frequency;
                tone
            }
            (_, Some(a)) => DriveTone {
                amplitude: a,
                angular_frequency: frequency,
                phase: t.phase_rad,
                role: ToneRole::ThzTransition,
            },
            _ => unreachable!("validated"),
        };
        let mut tones = vec![thz];
        for s in &self.stark {
            let omega = angular(s.frequency_ghz, GHZ, s.angular);
            tones.push(match (s.xi, s.amplitude_v_per_m) {
                (Some(xi), _) => DriveTone::stark_for_xi(&model, xi, omega, s.phase_rad),
                (_, Some(a)) => DriveTone {
                    amplitude: a,
                    angular_frequency: omega,
                    phase: s.phase_rad,
                    role: ToneRole::GhzStark,
                },
                _ => unreachable!("validated"),
            });
        }
        let config = build_config(&model, &tones)?;

        let d = &self.decoherence;
        let rates = DecoherenceRates::new(
            d.gamma_decay_mhz * MHZ,
            d.dephasing1_mhz * MHZ,
            d.dephasing2_mhz * MHZ,
        )?;
        let i = &self.initial;
        let initial = DensityMatrix::new(i.rho22, Complex64::new(i.rho12_re, i.rho12_im))?;

        let mut defaults = Vec::new();
        let sim = &self.simulation;
        let t_end = match sim.t_end_ns {
            Some(t) => t * NS,
            None => {
                let t = default_t_end(&config, &rates);
                defaults.push((
                    "t_end_s".into(),
                    format!("{t:e}"),
                    "max(5 effective Rabi periods 5π/|Ω_eff|, 5 decay times 5/Γ₂₁)".into(),
                ));
                t
            }
        };
        let samples = match sim.samples {
            Some(n) => n,
            None => {
                let n = default_samples(&config, t_end);
                defaults.push((
                    "samples".into(),
                    n.to_string(),
                    format!("{SAMPLES_PER_FAST_PERIOD} samples per period of the fastest drive frequency"),
                ));
                n
            }
        };
        let mut options = IntegrationOptions::default();
        if let Some(r) = sim.rtol {
            options.rtol = r;
        }
        if let Some(a) = sim.atol {
            options.atol = a;
        }
        if sim.fixed_step {
            options.mode = StepMode::Fixed;
            options.fixed_step = sim.fixed_step_ps.map(|h| h * PS);
        }
        if self.seed.is_some() {
            log::info!("seed is reserved and has no effect; all runs are deterministic");
        }

        Ok(ResolvedScenario {
            name: self.name.clone(),
            model,
            config,
            rates,
            initial,
            frames: sim.frames.clone(),
            rwa_form: sim.rwa_form,
            t_end,
            grid: uniform_grid(t_end, samples),
            options,
            spectrum: self.spectrum,
            geometry: ImageChargeGeometry::new(
                self.geometry.electron_count,
                self.geometry.plate_separation_mm * 1e-3,
            )?,
            defaults,
        })
    }
}

/// `max(5π/|Ω_eff|, 5/Γ₂₁)`, falling back to 100 periods of the fastest
/// drive frequency when neither scale exists.
pub fn default_t_end(config: &MixingConfig, rates: &DecoherenceRates) -> f64 {
    let rabi_span = if config.omega_eff != 0.0 {
        5.0 * PI / config.omega_eff.abs()
    } else {
        0.0
    };
    let decay_span = if rates.gamma_decay > 0.0 {
        5.0 / rates.gamma_decay
    } else {
        0.0
    };
    let t = rabi_span.max(decay_span);
    if t > 0.0 {
        t
    } else {
        100.0 * 2.0 * PI / fastest_frequency(config)
    }
}

fn fastest_frequency(config: &MixingConfig) -> f64 {
    config
        .stark
        .iter()
        .map(|s| s.omega())
        .fold(config.detuning.abs(), f64::max)
        .max(2.0 * config.rabi.abs())
}

pub fn default_samples(config: &MixingConfig, t_end: f64) -> usize {
    let periods = t_end * fastest_frequency(config) / (2.0 * PI);
    (periods * SAMPLES_PER_FAST_PERIOD).ceil() as usize + 1
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 8] = [
    "fig1",
    "fig2",
    "fig2-ghz-only",
    "fig2-thz-only",
    "fig2-two-wave",
    "fig3",
    "rwa-vs-exact",
    "steady-state",
];

fn stark_tone(xi: f64, frequency_ghz: f64) -> StarkSection {
    StarkSection {
        xi: Some(xi),
        amplitude_v_per_m: None,
        frequency_ghz,
        phase_rad: 0.0,
        angular: true,
    }
}

fn thz_tone(rabi_ghz: f64, detuning_ghz: f64) -> ThzSection {
    ThzSection {
        rabi_ghz: Some(rabi_ghz),
        detuning_ghz: Some(detuning_ghz),
        angular: true,
        ..ThzSection::default()
    }
}

fn with_frames(frames: &[Frame]) -> SimulationSection {
    SimulationSection {
        frames: frames.to_vec(),
        ..SimulationSection::default()
    }
}

// Γ₂₁ = 10 MHz, γ₁ = γ₂ = Γ₂₁/2.
const FIGURE_DECOHERENCE: DecoherenceSection = DecoherenceSection {
    gamma_decay_mhz: 10.0,
    dephasing1_mhz: 5.0,
    dephasing2_mhz: 5.0,
};

fn base(
    name: &str,
    description: &str,
    thz: ThzSection,
    stark: Vec<StarkSection>,
) -> ScenarioConfig {
    ScenarioConfig {
        name: name.into(),
        description: description.into(),
        model: ModelSection::default(),
        thz,
        stark,
        decoherence: FIGURE_DECOHERENCE,
        initial: InitialSection::default(),
        simulation: SimulationSection::default(),
        spectrum: SpectrumSection::default(),
        geometry: GeometrySection::default(),
        output_dir: None,
        seed: None,
    }
}

/// Built-in scenario by name.
pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    let two_wave = || base("", "", thz_tone(0.1, 1.0), vec![stark_tone(0.5, 1.0)]);
    let cfg = match name {
        "fig1" => ScenarioConfig {
            name: "fig1".into(),
            description: "Frequency distributions: ξ = 0.5, Ω₁₂₀ = 0.1ω_G, Δ = ω_G = 1 GHz".into(),
            ..two_wave()
        },
        "fig2" | "fig2-two-wave" => ScenarioConfig {
            name: name.into(),
            description: "Cooperative THz + GHz excitation: ξ = 0.5, Ω₁₂₀ = 0.1ω_G, Δ = ω_G = 1 GHz".into(),
            spectrum: SpectrumSection {
                enabled: false,
                ..SpectrumSection::default()
            },
            ..two_wave()
        },
        "fig2-ghz-only" => ScenarioConfig {
            simulation: with_frames(&[Frame::Interaction, Frame::StarkRotated]),
            spectrum: SpectrumSection {
                enabled: false,
                ..SpectrumSection::default()
            },
            ..base(
                name,
                "GHz drive only: ξ = 0.5, ω_G = 1 GHz, Ω₁₂₀ = 0",
                thz_tone(0.0, 1.0),
                vec![stark_tone(0.5, 1.0)],
            )
        },
        "fig2-thz-only" => ScenarioConfig {
            simulation: with_frames(&[Frame::Interaction, Frame::StarkRotated]),
            spectrum: SpectrumSection {
                enabled: false,
                ..SpectrumSection::default()
            },
            ..base(
                name,
                "THz drive only: ξ = 0, Ω₁₂₀ = 0.1ω_G, Δ = ω_G = 1 GHz",
                thz_tone(0.1, 1.0),
                vec![stark_tone(0.0, 1.0)],
            )
        },
        "fig3" => ScenarioConfig {
            simulation: with_frames(&[Frame::StarkRotated, Frame::Rwa]),
            ..base(
                name,
                "Three-wave mixing: Δ = 1 GHz, ω_G = 0.9 GHz, ω_G2 = 1.1 GHz, ξ = ξ₂ = 0.5, Ω₁₂₀ = 0.1Δ",
                thz_tone(0.1, 1.0),
                vec![stark_tone(0.5, 0.9), stark_tone(0.5, 1.1)],
            )
        },
        "rwa-vs-exact" => ScenarioConfig {
            name: name.into(),
            description: "Two-wave drive integrated with and without the rotating-wave approximation".into(),
            simulation: with_frames(&[Frame::StarkRotated, Frame::Rwa]),
            ..two_wave()
        },
        "steady-state" => ScenarioConfig {
            name: name.into(),
            description: "Rotating-wave two-wave drive relaxing to its stationary state".into(),
            simulation: SimulationSection {
                t_end_ns: Some(1000.0),
                samples: Some(4001),
                ..with_frames(&[Frame::Rwa])
            },
            spectrum: SpectrumSection {
                enabled: false,
                ..SpectrumSection::default()
            },
            ..two_wave()
        },
        other => return Err(MixerError::UnknownScenario(other.into())),
    };
    Ok(cfg)
}

/// A built-in name or a path to a TOML file.
pub fn load(identifier: &str) -> Result<ScenarioConfig> {
    if BUILTIN_NAMES.contains(&identifier) {
        return builtin(identifier);
    }
    let path = Path::new(identifier);
    if path.exists() {
        return ScenarioConfig::from_file(path);
    }
    Err(MixerError::UnknownScenario(identifier.into()))
}
