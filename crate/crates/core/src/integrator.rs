//! Dormand–Prince 5(4) integration of the reduced master equation.
//!
//! The step is capped at `2π / (50 ω_max)`, where `ω_max` bounds the
//! frequencies present in the Hamiltonian plus the decoherence rates, so the
//! fastest oscillation is always resolved even when the error estimate would
//! allow a longer step. Output times are hit exactly rather than interpolated.

use serde::{Deserialize, Serialize};

use crate::drive_mixing::FrameHamiltonian;
use crate::error::{MixerError, Result};
use crate::lindblad::{
    from_reduced, reduced_rhs, to_reduced, DecoherenceRates, DensityMatrix, Trajectory,
    STATE_TOLERANCE,
};

/// Minimum number of steps per period of the fastest frequency.
pub const STEPS_PER_PERIOD: f64 = 50.0;

// Violations beyond this multiple of the state tolerance abort the run.
const FAILURE_FACTOR: f64 = 10.0;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights equal the last row of A (first-same-as-last).
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    Adaptive,
    /// Constant step; bit-for-bit reproducible for a given grid.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOptions {
    pub rtol: f64,
    pub atol: f64,
    pub mode: StepMode,
    /// Step for [`StepMode::Fixed`]; defaults to the resolution cap.
    pub fixed_step: Option<f64>,
    pub max_steps: u64,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-9,
            atol: 1e-12,
            mode: StepMode::Adaptive,
            fixed_step: None,
            max_steps: 50_000_000,
        }
    }
}

impl IntegrationOptions {
    pub fn fixed(step: Option<f64>) -> Self {
        Self {
            mode: StepMode::Fixed,
            fixed_step: step,
            ..Self::default()
        }
    }

    pub fn with_rtol(self, rtol: f64) -> Self {
        Self { rtol, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntegratorStats {
    pub steps: u64,
    pub rejections: u64,
    pub rhs_evaluations: u64,
}

/// Largest step allowed by the resolution requirement.
pub fn step_cap(h: &FrameHamiltonian, rates: &DecoherenceRates, t_end: f64) -> f64 {
    let omega_max = h.max_frequency() + rates.total();
    if omega_max > 0.0 {
        (2.0 * std::f64::consts::PI / (STEPS_PER_PERIOD * omega_max)).min(t_end)
    } else {
        t_end
    }
}

struct Stepper<'a> {
    h: &'a FrameHamiltonian,
    rates: &'a DecoherenceRates,
    stats: IntegratorStats,
}

impl Stepper<'_> {
    fn rhs(&mut self, t: f64, y: &[f64; 3]) -> [f64; 3] {
        self.stats.rhs_evaluations += 1;
        reduced_rhs(t, y, self.h, self.rates)
    }

    /// One Dormand–Prince step; returns the fifth-order solution and the error vector.
    fn step(&mut self, t: f64, y: &[f64; 3], dt: f64) -> ([f64; 3], [f64; 3]) {
        let mut k = [[0.0; 3]; 7];
        k[0] = self.rhs(t, y);
        for s in 1..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for d in 0..3 {
                        ys[d] += dt * a * kj[d];
                    }
                }
            }
            k[s] = self.rhs(t + C[s] * dt, &ys);
        }
        let mut y_new = *y;
        let mut err = [0.0; 3];
        for (s, ks) in k.iter().enumerate() {
            for d in 0..3 {
                y_new[d] += dt * B[s] * ks[d];
                err[d] += dt * E[s] * ks[d];
            }
        }
        (y_new, err)
    }
}

fn check_state(t: f64, y: &[f64; 3]) -> Result<DensityMatrix> {
    if y.iter().any(|v| !v.is_finite()) {
        return Err(MixerError::Integration {
            time: t,
            reason: "state became non-finite".into(),
        });
    }
    let rho = from_reduced(y);
    rho.check(FAILURE_FACTOR * STATE_TOLERANCE)
        .map_err(|e| MixerError::Integration {
            time: t,
            reason: e.to_string(),
        })?;
    Ok(rho)
}

/// Integrates from `t = 0` to `t_end`, sampling at each point of `output_grid`.
pub fn integrate(
    rho0: &DensityMatrix,
    h: &FrameHamiltonian,
    rates: &DecoherenceRates,
    t_end: f64,
    output_grid: &[f64],
    options: &IntegrationOptions,
) -> Result<Trajectory> {
    rates.validate()?;
    rho0.check(STATE_TOLERANCE)?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(MixerError::Domain(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    if output_grid.is_empty() {
        return Err(MixerError::Domain("output grid is empty".into()));
    }
    if output_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MixerError::Domain(
            "output grid must be strictly increasing".into(),
        ));
    }
    if output_grid[0] < 0.0 || *output_grid.last().unwrap() > t_end {
        return Err(MixerError::Domain(format!(
            "output grid must lie within [0, {t_end}]"
        )));
    }
    if !(options.rtol > 0.0 && options.atol > 0.0) {
        return Err(MixerError::Domain("tolerances must be positive".into()));
    }

    let cap = step_cap(h, rates, t_end);
    let mut stepper = Stepper {
        h,
        rates,
        stats: IntegratorStats::default(),
    };
    let mut states = Vec::with_capacity(output_grid.len());
    let mut y = to_reduced(rho0);
    let mut t = 0.0;

    match options.mode {
        StepMode::Fixed => {
            let step = options.fixed_step.unwrap_or(cap);
            if !(step.is_finite() && step > 0.0) {
                return Err(MixerError::Domain(format!(
                    "fixed step must be positive, got {step}"
                )));
            }
            for &target in output_grid {
                let gap = target - t;
                if gap > 0.0 {
                    let n = (gap / step - 1e-9).ceil().max(1.0) as u64;
                    let dt = gap / n as f64;
                    for i in 0..n {
                        let t_i = if i == 0 { t } else { t + i as f64 * dt };
                        let (next, _) = stepper.step(t_i, &y, dt);
                        y = next;
                        stepper.stats.steps += 1;
                        check_state(t_i + dt, &y)?;
                    }
                    t = target;
                }
                states.push(check_state(t, &y)?);
                if stepper.stats.steps > options.max_steps {
                    return Err(MixerError::Integration {
                        time: t,
                        reason: "step budget exhausted".into(),
                    });
                }
            }
        }
        StepMode::Adaptive => {
            let mut proposal = cap.min(
                0.1 * output_grid
                    .iter()
                    .find(|&&g| g > 0.0)
                    .copied()
                    .unwrap_or(t_end),
            );
            for &target in output_grid {
                while t < target {
                    let remaining = target - t;
                    let dt = proposal.min(remaining).min(cap);
                    let (next, err) = stepper.step(t, &y, dt);
                    let norm = error_norm(&y, &next, &err, options);
                    if !norm.is_finite() {
                        return Err(MixerError::Integration {
                            time: t,
                            reason: "error estimate became non-finite".into(),
                        });
                    }
                    let factor = if norm == 0.0 {
                        5.0
                    } else {
                        (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    if norm <= 1.0 {
                        t = if dt == remaining { target } else { t + dt };
                        y = next;
                        stepper.stats.steps += 1;
                        check_state(t, &y)?;
                        let grown = dt * factor;
                        proposal = if dt < proposal {
                            proposal.max(grown)
                        } else {
                            grown
                        };
                    } else {
                        stepper.stats.rejections += 1;
                        proposal = dt * factor.min(1.0);
                        if proposal < 1e-14 * t_end {
                            return Err(MixerError::Integration {
                                time: t,
                                reason: format!("step size underflow ({proposal:e} s)"),
                            });
                        }
                    }
                    if stepper.stats.steps + stepper.stats.rejections > options.max_steps {
                        return Err(MixerError::Integration {
                            time: t,
                            reason: "step budget exhausted".into(),
                        });
                    }
                }
                states.push(check_state(t, &y)?);
            }
        }
    }

    Ok(Trajectory {
        frame: h.frame(),
        times: output_grid.to_vec(),
        states,
        config: h.config().clone(),
        rates: *rates,
        stats: stepper.stats,
    })
}

fn error_norm(y: &[f64; 3], y_new: &[f64; 3], err: &[f64; 3], options: &IntegrationOptions) -> f64 {
    let sum: f64 = (0..3)
        .map(|d| {
            let scale = options.atol + options.rtol * y[d].abs().max(y_new[d].abs());
            (err[d] / scale).powi(2)
        })
        .sum();
    (sum / 3.0).sqrt()
}

/// Evenly spaced output grid `k · t_end / (samples − 1)`, endpoints included.
pub fn uniform_grid(t_end: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    let dt = t_end / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { t_end } else { k as f64 * dt })
        .collect()
}
