//! Bound states of an electron above a liquid-helium surface.
//!
//! The image potential together with the hard-wall barrier at the surface
//! gives a one-dimensional hydrogen spectrum with an effective coupling
//! `Λ = (ε − 1) / (4(ε + 1))`. All quantities are SI; wherever the hydrogenic
//! formulas contain `e²` it stands for `q² / (4πε₀)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{MixerError, Result};
use crate::quadrature;

/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Planck constant (J·s).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// One ångström in metres.
pub const ANGSTROM: f64 = 1e-10;

/// Dielectric constant of liquid helium.
pub const HELIUM_EPSILON: f64 = 1.0568;

// Integration cut-off in units of n·r_B; ψ_n² decays as exp(-2x/n), so the
// discarded tail is below exp(-80) times a polynomial.
const TRUNCATION_PER_LEVEL: f64 = 40.0;
const QUADRATURE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Elementary charge magnitude (C).
    pub electron_charge: f64,
    /// Electron mass (kg).
    pub electron_mass: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    pub dielectric_epsilon: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            electron_charge: 1.602_176_634e-19,
            electron_mass: 9.109_383_701_5e-31,
            hbar: 1.054_571_817e-34,
            dielectric_epsilon: HELIUM_EPSILON,
        }
    }
}

impl PhysicalConstants {
    pub fn with_epsilon(dielectric_epsilon: f64) -> Self {
        Self {
            dielectric_epsilon,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("electron_charge", self.electron_charge),
            ("electron_mass", self.electron_mass),
            ("hbar", self.hbar),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(MixerError::Domain(format!(
                    "{name} must be finite and positive, got {value}"
                )));
            }
        }
        if !(self.dielectric_epsilon.is_finite() && self.dielectric_epsilon > 1.0) {
            return Err(MixerError::Domain(format!(
                "dielectric_epsilon must exceed 1, got {}",
                self.dielectric_epsilon
            )));
        }
        Ok(())
    }

    /// `Λ = (ε − 1) / (4(ε + 1))`.
    pub fn lambda_param(&self) -> f64 {
        let eps = self.dielectric_epsilon;
        (eps - 1.0) / (4.0 * (eps + 1.0))
    }

    /// Squared charge in Gaussian convention, `q²/(4πε₀)` (J·m).
    pub fn gaussian_charge_squared(&self) -> f64 {
        self.electron_charge * self.electron_charge
            / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY)
    }

    /// Free-space Bohr radius `ħ²/(m e²)`.
    pub fn hydrogen_bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.electron_mass * self.gaussian_charge_squared())
    }
}

/// Energy of level `n` (J). Negative for every bound level.
pub fn energy_level(n: i64, constants: &PhysicalConstants) -> Result<f64> {
    constants.validate()?;
    energy_with_lambda(n, constants.lambda_param(), constants)
}

fn energy_with_lambda(n: i64, lambda: f64, constants: &PhysicalConstants) -> Result<f64> {
    if n < 1 {
        return Err(MixerError::Domain(format!(
            "level index must be >= 1, got {n}"
        )));
    }
    let e2 = constants.gaussian_charge_squared();
    let n = n as f64;
    Ok(-lambda * lambda * e2 * e2 * constants.electron_mass
        / (2.0 * n * n * constants.hbar * constants.hbar))
}

/// Effective Bohr radius `r_B = ħ²/(m e² Λ)` (m).
pub fn bohr_radius(constants: &PhysicalConstants) -> Result<f64> {
    constants.validate()?;
    Ok(constants.hydrogen_bohr_radius() / constants.lambda_param())
}

/// Generalized Laguerre polynomial `L_n^{(α)}(x)` by upward three-term recurrence.
pub fn laguerre(n: u32, alpha: i32, x: f64) -> f64 {
    let alpha = f64::from(alpha);
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut curr = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// `ψ_n` in units where `r_B = 1`, as a function of `x = z / r_B`.
fn reduced_wavefunction(n: u32, x: f64) -> f64 {
    let nf = f64::from(n);
    2.0 * nf.powf(-2.5) * x * (-x / nf).exp() * laguerre(n - 1, 1, 2.0 * x / nf)
}

/// Transition frequency between two levels, reported in both conventions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionFrequency {
    /// `(E_j − E_i)/ħ` in rad/s.
    pub angular: f64,
    /// `(E_j − E_i)/h` in Hz.
    pub ordinary: f64,
}

/// Spectrum, Bohr radius and dipole matrix elements of the surface-state electron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceStateModel {
    pub constants: PhysicalConstants,
    pub lambda_param: f64,
    /// Effective Bohr radius (m).
    pub bohr_radius: f64,
    /// Level energies (J), keyed by level index.
    pub energies: BTreeMap<u32, f64>,
    /// `z_ij = ⟨i|z|j⟩` (m), keyed by `(i, j)`.
    pub dipole_elements: BTreeMap<(u32, u32), f64>,
}

impl SurfaceStateModel {
    /// Two-level model derived from the constants alone.
    pub fn new(constants: PhysicalConstants) -> Result<Self> {
        constants.validate()?;
        Self::with_overrides(constants, None, None)
    }

    /// Builds the model, optionally replacing `Λ` and/or `r_B`.
    ///
    /// Overriding `Λ` also rescales `r_B` unless `r_B` is overridden as well.
    pub fn with_overrides(
        constants: PhysicalConstants,
        lambda_override: Option<f64>,
        bohr_radius_override: Option<f64>,
    ) -> Result<Self> {
        constants.validate()?;
        let lambda_param = lambda_override.unwrap_or_else(|| constants.lambda_param());
        if !(lambda_param.is_finite() && lambda_param > 0.0) {
            return Err(MixerError::Domain(format!(
                "lambda must be finite and positive, got {lambda_param}"
            )));
        }
        let bohr_radius =
            bohr_radius_override.unwrap_or(constants.hydrogen_bohr_radius() / lambda_param);
        if !(bohr_radius.is_finite() && bohr_radius > 0.0) {
            return Err(MixerError::Domain(format!(
                "Bohr radius must be finite and positive, got {bohr_radius}"
            )));
        }

        let mut model = Self {
            constants,
            lambda_param,
            bohr_radius,
            energies: BTreeMap::new(),
            dipole_elements: BTreeMap::new(),
        };
        for n in 1..=2u32 {
            let energy = energy_with_lambda(i64::from(n), lambda_param, &constants)?;
            model.energies.insert(n, energy);
        }
        for i in 1..=2u32 {
            for j in 1..=2u32 {
                let z = dipole_matrix_element(i, j, &model)?;
                model.dipole_elements.insert((i, j), z);
            }
        }
        Ok(model)
    }

    /// Stored `z_ij` for the two retained levels.
    pub fn z(&self, i: u32, j: u32) -> f64 {
        self.dipole_elements[&(i, j)]
    }

    pub fn energy(&self, n: u32) -> f64 {
        self.energies[&n]
    }

    /// Frequency of the 1 → 2 transition.
    pub fn transition_frequency(&self) -> TransitionFrequency {
        let gap = self.energy(2) - self.energy(1);
        TransitionFrequency {
            angular: gap / self.constants.hbar,
            ordinary: gap / PLANCK,
        }
    }

    /// `ω₁₂` in rad/s.
    pub fn omega12(&self) -> f64 {
        self.transition_frequency().angular
    }
}

/// `ψ_n(z)` in m^{-1/2}. The sign is fixed by a positive slope at the surface.
pub fn wavefunction(n: u32, z: f64, model: &SurfaceStateModel) -> Result<f64> {
    if n < 1 {
        return Err(MixerError::Domain("level index must be >= 1".into()));
    }
    if z < 0.0 {
        return Err(MixerError::Domain(format!(
            "the electron cannot enter the liquid: z = {z} < 0"
        )));
    }
    let rb = model.bohr_radius;
    Ok(reduced_wavefunction(n, z / rb) / rb.sqrt())
}

fn reduced_integral<F: Fn(f64) -> f64>(levels: (u32, u32), weight: F) -> Result<f64> {
    let (i, j) = levels;
    if i < 1 || j < 1 {
        return Err(MixerError::Domain(format!(
            "level indices must be >= 1, got ({i}, {j})"
        )));
    }
    let upper = TRUNCATION_PER_LEVEL * f64::from(i.max(j));
    let q = quadrature::integrate(
        |x| reduced_wavefunction(i, x) * weight(x) * reduced_wavefunction(j, x),
        0.0,
        upper,
        QUADRATURE_TOLERANCE,
    )?;
    Ok(q.value)
}

/// `⟨i|j⟩` by quadrature (dimensionless).
pub fn overlap(i: u32, j: u32) -> Result<f64> {
    reduced_integral((i, j), |_| 1.0)
}

/// `z_ij = ∫₀^∞ ψ_i z ψ_j dz` (m). Multiply by the charge for the dipole moment `u_ij`.
pub fn dipole_matrix_element(i: u32, j: u32, model: &SurfaceStateModel) -> Result<f64> {
    Ok(reduced_integral((i, j), |x| x)? * model.bohr_radius)
}
