//! Runs scenarios and writes their artifacts.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::drive_mixing::{
    hamiltonian_for_frame, stark_frame_angles, Frame, MixingConfig, RwaForm,
};
use crate::error::Result;
use crate::integrator::{integrate, step_cap, IntegratorStats, StepMode};
use crate::lindblad::{steady_state, DensityMatrix, Trajectory};
use crate::observables::{expectation_z, image_charge};
use crate::parallel::Execution;
use crate::scenario::{ResolvedScenario, ScenarioConfig};
use crate::spectrum::{dominant_peak, peak_summary, windowed_spectrum, Peak, PeakSummary, Window};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Overrides `simulation.fixed_step` when set.
    pub fixed_step: Option<bool>,
    /// Overrides `spectrum.window` when set.
    pub window: Option<Window>,
    pub execution: Execution,
}

impl RunOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            fixed_step: None,
            window: None,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefaultEntry {
    pub parameter: String,
    pub value: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub scenario: String,
    pub config_hash: String,
    pub version: String,
    pub wall_clock_seconds: f64,
    pub step_mode: StepMode,
    pub integrator: BTreeMap<String, IntegratorStats>,
    /// Paths relative to the output directory, manifest included.
    pub files: Vec<String>,
    pub defaults: Vec<DefaultEntry>,
    pub warnings: Vec<String>,
}

/// Derived quantities of a scenario, computed without integrating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub scenario: String,
    pub config_hash: String,
    pub omega12_rad_per_s: f64,
    pub transition_frequency_thz: f64,
    pub bohr_radius_angstrom: f64,
    pub rabi_rad_per_s: f64,
    pub xi: Vec<f64>,
    pub omega_g_rad_per_s: Vec<f64>,
    pub detuning_rad_per_s: f64,
    pub detuning_over_omega_g: f64,
    pub small_detuning_rad_per_s: Option<f64>,
    /// Signed; the sign carries the phase of the effective coupling.
    pub omega_eff_rad_per_s: f64,
    pub omega_eff_over_omega_g: f64,
    pub rwa_form: RwaForm,
    pub t_end_s: f64,
    pub samples: usize,
    pub max_step_s: f64,
    pub warnings: Vec<String>,
}

pub fn validate_config(cfg: &ScenarioConfig) -> Result<ValidationReport> {
    let r = cfg.resolve()?;
    Ok(report(cfg, &r))
}

fn report(cfg: &ScenarioConfig, r: &ResolvedScenario) -> ValidationReport {
    let c = &r.config;
    let form = r.rwa_form.unwrap_or_else(|| RwaForm::for_config(c));
    let cap = r
        .frames
        .iter()
        .filter_map(|f| hamiltonian_for_frame(c, *f, Some(form)).ok())
        .map(|h| step_cap(&h, &r.rates, r.t_end))
        .fold(f64::INFINITY, f64::min);
    let mut warnings = c.rwa_warnings();
    if cfg.seed.is_some() {
        warnings.push("seed is reserved and ignored".into());
    }
    if r.frames.contains(&Frame::Rwa) && c.rabi != 0.0 && form != RwaForm::Carrier && c.xi() == 0.0
    {
        warnings.push("ξ = 0: the rotating-wave sideband coupling vanishes".into());
    }
    ValidationReport {
        scenario: r.name.clone(),
        config_hash: cfg.config_hash(),
        omega12_rad_per_s: c.omega12,
        transition_frequency_thz: r.model.transition_frequency().ordinary / 1e12,
        bohr_radius_angstrom: r.model.bohr_radius / 1e-10,
        rabi_rad_per_s: c.rabi,
        xi: c.stark.iter().map(|s| s.xi).collect(),
        omega_g_rad_per_s: c.stark.iter().map(|s| s.omega()).collect(),
        detuning_rad_per_s: c.detuning,
        detuning_over_omega_g: c.detuning / c.omega_g(),
        small_detuning_rad_per_s: c.small_detuning,
        omega_eff_rad_per_s: c.omega_eff,
        omega_eff_over_omega_g: c.omega_eff.abs() / c.omega_g(),
        rwa_form: form,
        t_end_s: r.t_end,
        samples: r.grid.len(),
        max_step_s: cap,
        warnings,
    }
}

/// Moves a Stark-frame state into `frame`; only the interaction frame differs.
pub fn state_in_frame(
    rho: &DensityMatrix,
    frame: Frame,
    t: f64,
    config: &MixingConfig,
) -> DensityMatrix {
    match frame {
        Frame::Interaction => {
            let (a11, a22) = stark_frame_angles(t, config);
            DensityMatrix {
                rho12: rho.rho12 * Complex64::cis(-(a11 - a22)),
                ..*rho
            }
        }
        _ => *rho,
    }
}

/// Inverse of [`state_in_frame`].
pub fn state_to_stark(
    rho: &DensityMatrix,
    frame: Frame,
    t: f64,
    config: &MixingConfig,
) -> DensityMatrix {
    match frame {
        Frame::Interaction => {
            let (a11, a22) = stark_frame_angles(t, config);
            DensityMatrix {
                rho12: rho.rho12 * Complex64::cis(a11 - a22),
                ..*rho
            }
        }
        _ => *rho,
    }
}

/// Integrates `frames` of a resolved scenario; the initial state is read as
/// a Stark-frame state and converted per frame.
pub fn simulate(
    r: &ResolvedScenario,
    frames: &[Frame],
    execution: Execution,
) -> Result<Vec<Trajectory>> {
    execution
        .map(frames, |&frame| {
            let h = hamiltonian_for_frame(&r.config, frame, r.rwa_form)?;
            let rho0 = state_in_frame(&r.initial, frame, 0.0, &r.config);
            integrate(&rho0, &h, &r.rates, r.t_end, &r.grid, &r.options)
        })
        .into_iter()
        .collect()
}

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,T,rho22,Re_rho12,Im_rho12,frame\n");
    let scale = traj.config.rabi.abs();
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt(*t),
            fmt(scale * t),
            fmt(s.rho22),
            fmt(s.rho12.re),
            fmt(s.rho12.im),
            traj.frame.tag()
        );
    }
    out
}

pub fn observables_csv(traj: &Trajectory, r: &ResolvedScenario) -> Result<String> {
    let mut out = String::from("t,z_m,Q_image_C\n");
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let stark = state_to_stark(s, traj.frame, *t, &traj.config);
        let z = expectation_z(&stark, Frame::StarkRotated, *t, &traj.config, &r.model)?;
        let q = image_charge(s.rho22, &r.geometry, &r.model);
        let _ = writeln!(out, "{},{},{}", fmt(*t), fmt(z), fmt(q));
    }
    Ok(out)
}

pub fn spectrum_csv(s: &crate::spectrum::SpectrumResult) -> String {
    let mut out = String::from("omega,abs_psi22,arg_psi22,abs_psiR12,abs_psiI12\n");
    for i in 0..s.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt(s.omega_grid[i]),
            fmt(s.psi22[i].norm()),
            fmt(s.psi22[i].arg()),
            fmt(s.psi_r12[i].norm()),
            fmt(s.psi_i12[i].norm())
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateCheck {
    pub rho22: f64,
    pub final_rho22: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub report: ValidationReport,
    pub final_rho22: BTreeMap<String, f64>,
    pub max_rho22: BTreeMap<String, f64>,
    pub steady_state: Option<SteadyStateCheck>,
    pub peaks: BTreeMap<String, PeakSummary>,
    pub comparison: FrameComparison,
}

/// Pointwise `ρ₂₂` differences between frames and the spectral split of the
/// exact trajectory into slow and GHz-scale content.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FrameComparison {
    pub interaction_vs_stark: Option<f64>,
    pub rwa_vs_stark: Option<f64>,
    pub rwa_vs_interaction: Option<f64>,
    /// Dominant exact-trajectory `|ψ₂₂|` in the low band.
    pub low_frequency_peak: Option<Peak>,
    /// Dominant exact-trajectory `|ψ₂₂|` within ±1 of `ω_G/|Ω₁₂₀|`.
    pub ghz_ripple_peak: Option<Peak>,
}

fn max_abs_diff(a: &Trajectory, b: &Trajectory) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| (x.rho22 - y.rho22).abs())
        .fold(0.0, f64::max)
}

fn compare(trajs: &[Trajectory], band: [f64; 2]) -> Result<FrameComparison> {
    let find = |f: Frame| trajs.iter().find(|t| t.frame == f);
    let pair = |a: Frame, b: Frame| match (find(a), find(b)) {
        (Some(x), Some(y)) => Some(max_abs_diff(x, y)),
        _ => None,
    };
    let mut out = FrameComparison {
        interaction_vs_stark: pair(Frame::Interaction, Frame::StarkRotated),
        rwa_vs_stark: pair(Frame::Rwa, Frame::StarkRotated),
        rwa_vs_interaction: pair(Frame::Rwa, Frame::Interaction),
        ..FrameComparison::default()
    };
    let exact = find(Frame::StarkRotated).or_else(|| find(Frame::Interaction));
    if let Some(traj) = exact {
        if traj.config.rabi != 0.0 && traj.len() >= 2 {
            let s = windowed_spectrum(traj, Window::Rectangular)?;
            out.low_frequency_peak = s.dominant_peak(band[0], band[1]);
            let ripple = traj.config.omega_g() / traj.config.rabi.abs();
            out.ghz_ripple_peak =
                dominant_peak(&s.omega_grid, &s.psi22, ripple - 1.0, ripple + 1.0);
        }
    }
    Ok(out)
}

/// Runs all three frames of a scenario and compares them.
pub fn compare_frames(cfg: &ScenarioConfig, execution: Execution) -> Result<FrameComparison> {
    let r = cfg.resolve()?;
    let trajs = simulate(&r, &Frame::ALL, execution)?;
    compare(&trajs, r.spectrum.band)
}

/// Steady state of the rotating-wave Hamiltonian, when it is time independent.
pub fn rwa_steady_state(r: &ResolvedScenario) -> Option<DensityMatrix> {
    let h = hamiltonian_for_frame(&r.config, Frame::Rwa, r.rwa_form).ok()?;
    steady_state(&h, &r.rates).ok()
}

/// Runs a scenario and writes every artifact under `options.out_dir`.
pub fn run_scenario(cfg: &ScenarioConfig, options: &RunOptions) -> Result<RunManifest> {
    let start = Instant::now();
    let mut cfg = cfg.clone();
    if let Some(fixed) = options.fixed_step {
        cfg.simulation.fixed_step = fixed;
        if !fixed {
            cfg.simulation.fixed_step_ps = None;
        }
    }
    if let Some(w) = options.window {
        cfg.spectrum.window = w;
    }
    let r = cfg.resolve()?;
    let trajs = simulate(&r, &r.frames, options.execution)?;
    for t in &trajs {
        t.validate(crate::lindblad::STATE_TOLERANCE)?;
    }

    fs::create_dir_all(&options.out_dir)?;
    let mut files = Vec::new();
    let mut write = |name: String, contents: &str| -> Result<()> {
        fs::write(options.out_dir.join(&name), contents)?;
        files.push(name);
        Ok(())
    };

    let mut warnings = Vec::new();
    let mut peaks = BTreeMap::new();
    let mut integrator = BTreeMap::new();
    let mut final_rho22 = BTreeMap::new();
    let mut max_rho22 = BTreeMap::new();
    for traj in &trajs {
        let tag = traj.frame.tag();
        integrator.insert(tag.to_string(), traj.stats);
        final_rho22.insert(tag.to_string(), traj.states.last().map_or(0.0, |s| s.rho22));
        max_rho22.insert(
            tag.to_string(),
            traj.states
                .iter()
                .map(|s| s.rho22)
                .fold(f64::NEG_INFINITY, f64::max),
        );
        write(format!("trajectory_{tag}.csv"), &trajectory_csv(traj))?;
        write(
            format!("observables_{tag}.csv"),
            &observables_csv(traj, &r)?,
        )?;
        if r.spectrum.enabled {
            if traj.config.rabi == 0.0 {
                warnings.push(format!(
                    "{tag}: spectrum skipped, T = |Ω₁₂₀| t is undefined without a THz coupling"
                ));
                continue;
            }
            let s = windowed_spectrum(traj, r.spectrum.window)?;
            warnings.extend(s.warnings.iter().map(|w| format!("{tag}: {w}")));
            write(format!("spectrum_{tag}.csv"), &spectrum_csv(&s))?;
            let p = peak_summary(
                traj,
                r.spectrum.window,
                (r.spectrum.band[0], r.spectrum.band[1]),
            )?;
            write(
                format!("peaks_{tag}.json"),
                &serde_json::to_string_pretty(&p)?,
            )?;
            peaks.insert(tag.to_string(), p);
        }
    }
    for t in &trajs {
        if t.frame == Frame::Rwa {
            let h = hamiltonian_for_frame(&t.config, Frame::Rwa, r.rwa_form)?;
            warnings.extend(h.diagnostics().iter().cloned());
        }
    }

    let steady = if r.frames.contains(&Frame::Rwa) {
        rwa_steady_state(&r).and_then(|ss| {
            let last = final_rho22.get(Frame::Rwa.tag())?;
            Some(SteadyStateCheck {
                rho22: ss.rho22,
                final_rho22: *last,
                relative_deviation: if ss.rho22 != 0.0 {
                    (last - ss.rho22).abs() / ss.rho22
                } else {
                    last.abs()
                },
            })
        })
    } else {
        None
    };
    let summary = RunSummary {
        report: report(&cfg, &r),
        final_rho22,
        max_rho22,
        steady_state: steady,
        peaks,
        comparison: compare(&trajs, r.spectrum.band)?,
    };
    write(
        "summary.json".into(),
        &serde_json::to_string_pretty(&summary)?,
    )?;
    write("scenario.toml".into(), &cfg.to_toml_string())?;

    files.push("manifest.json".into());
    let manifest = RunManifest {
        scenario: r.name.clone(),
        config_hash: cfg.config_hash(),
        version: VERSION.to_string(),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        step_mode: r.options.mode,
        integrator,
        files,
        defaults: r
            .defaults
            .iter()
            .map(|(p, v, why)| DefaultEntry {
                parameter: p.clone(),
                value: v.clone(),
                reason: why.clone(),
            })
            .collect(),
        warnings,
    };
    fs::write(
        options.out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(manifest)
}

/// Runs independent scenarios, each into `out_dir/<name>`.
pub fn run_sweep(configs: &[ScenarioConfig], options: &RunOptions) -> Vec<Result<RunManifest>> {
    options.execution.map(configs, |cfg| {
        let sub = RunOptions {
            out_dir: options.out_dir.join(sanitize(&cfg.name)),
            // Frames inside each run stay sequential; the sweep is the parallel axis.
            execution: Execution::Sequential,
            ..options.clone()
        };
        run_scenario(cfg, &sub)
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn read_manifest(dir: &Path) -> Result<RunManifest> {
    let text = fs::read_to_string(dir.join("manifest.json"))?;
    Ok(serde_json::from_str(&text)?)
}
