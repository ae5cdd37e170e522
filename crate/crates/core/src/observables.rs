//! Electron height and the image charge it induces on a capacitor plate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::drive_mixing::{stark_frame_angles, Frame, MixingConfig};
use crate::error::{MixerError, Result};
use crate::lindblad::DensityMatrix;
use crate::surface_state::SurfaceStateModel;

/// Electron sheet above a parallel-plate pickup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageChargeGeometry {
    pub electron_count: f64,
    /// Metres.
    pub plate_separation: f64,
}

impl Default for ImageChargeGeometry {
    fn default() -> Self {
        Self {
            electron_count: 1e6,
            plate_separation: 2e-3,
        }
    }
}

impl ImageChargeGeometry {
    pub fn new(electron_count: f64, plate_separation: f64) -> Result<Self> {
        let g = Self {
            electron_count,
            plate_separation,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.electron_count.is_finite() && self.electron_count > 0.0) {
            return Err(MixerError::Domain(format!(
                "electron count must be positive, got {}",
                self.electron_count
            )));
        }
        if !(self.plate_separation.is_finite() && self.plate_separation > 0.0) {
            return Err(MixerError::Domain(format!(
                "plate separation must be positive, got {}",
                self.plate_separation
            )));
        }
        Ok(())
    }
}

/// Laboratory-frame `⟨z⟩` in metres from a Stark-rotated state at time `t`.
///
/// Restores the phases removed by the frame change:
/// `⟨z⟩ = ρ₁₁z₁₁ + ρ₂₂z₂₂ + 2z₂₁ Re[ρ₁₂ e^{iω₁₂t} e^{−i(θ₁₁−θ₂₂)}]`.
/// RWA states are accepted as approximations of the Stark-rotated state.
pub fn expectation_z(
    rho: &DensityMatrix,
    frame: Frame,
    t: f64,
    config: &MixingConfig,
    model: &SurfaceStateModel,
) -> Result<f64> {
    if frame == Frame::Interaction {
        return Err(MixerError::FrameMismatch {
            expected: Frame::StarkRotated.tag().into(),
            found: frame.tag().into(),
        });
    }
    let (theta11, theta22) = stark_frame_angles(t, config);
    let rotation = Complex64::cis(config.omega12 * t - (theta11 - theta22));
    let coherence = (rho.rho12 * rotation).re;
    Ok(rho.rho11 * model.z(1, 1) + rho.rho22 * model.z(2, 2) + 2.0 * model.z(2, 1) * coherence)
}

/// Image charge in coulombs, `eN(z₂₂ − z₁₁)ρ₂₂ / D`.
///
/// The coherence term and the static `z₁₁` offset are dropped.
pub fn image_charge(rho22: f64, geometry: &ImageChargeGeometry, model: &SurfaceStateModel) -> f64 {
    let q = model.constants.electron_charge * geometry.electron_count;
    q * (model.z(2, 2) - model.z(1, 1)) / geometry.plate_separation * rho22
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drive_mixing::{build_config, DriveTone};
    use crate::surface_state::{PhysicalConstants, ANGSTROM};
    use approx::assert_relative_eq;

    fn setup(xi: f64) -> (SurfaceStateModel, MixingConfig) {
        let m = SurfaceStateModel::new(PhysicalConstants::default()).unwrap();
        let c = build_config(
            &m,
            &[
                DriveTone::thz_for_rabi(&m, 1e8, 1e9, 0.0),
                DriveTone::stark_for_xi(&m, xi, 1e9, 0.0),
            ],
        )
        .unwrap();
        (m, c)
    }

    #[test]
    fn pure_states() {
        let (m, c) = setup(0.5);
        let rb = m.bohr_radius;
        let z = expectation_z(&DensityMatrix::ground(), Frame::StarkRotated, 1e-9, &c, &m).unwrap();
        assert_relative_eq!(z, 1.5 * rb, max_relative = 1e-6);
        let z = expectation_z(&DensityMatrix::excited(), Frame::Rwa, 1e-9, &c, &m).unwrap();
        assert_relative_eq!(z, 6.0 * rb, max_relative = 1e-6);
    }

    #[test]
    fn coherent_superposition_at_zero_phase() {
        let (m, c) = setup(0.0);
        let rho = DensityMatrix::new(0.5, Complex64::new(0.5, 0.0)).unwrap();
        let z = expectation_z(&rho, Frame::StarkRotated, 0.0, &c, &m).unwrap();
        let z21 = -(768.0 / 243.0) * 2f64.powf(-2.5);
        assert_relative_eq!(z / m.bohr_radius, 3.75 + z21, max_relative = 1e-6);
    }

    #[test]
    fn coherence_term_rotates_at_transition_frequency() {
        let (m, c) = setup(0.0);
        let rho = DensityMatrix::new(0.5, Complex64::new(0.5, 0.0)).unwrap();
        let t = std::f64::consts::PI / c.omega12;
        let z = expectation_z(&rho, Frame::StarkRotated, t, &c, &m).unwrap();
        assert_relative_eq!(z, 3.75 * m.bohr_radius - m.z(2, 1), max_relative = 1e-6);
    }

    #[test]
    fn interaction_frame_rejected() {
        let (m, c) = setup(0.5);
        let err = expectation_z(&DensityMatrix::ground(), Frame::Interaction, 0.0, &c, &m);
        assert!(matches!(err, Err(MixerError::FrameMismatch { .. })));
    }

    #[test]
    fn image_charge_values() {
        let (m, _) = setup(0.5);
        let g = ImageChargeGeometry::default();
        assert_eq!(image_charge(0.0, &g, &m), 0.0);
        let doubled = ImageChargeGeometry::new(2e6, 2e-3).unwrap();
        assert_relative_eq!(
            image_charge(0.3, &doubled, &m),
            2.0 * image_charge(0.3, &g, &m),
            max_relative = 1e-14
        );
        let fixed_rb = SurfaceStateModel::with_overrides(
            PhysicalConstants::default(),
            None,
            Some(76.0 * ANGSTROM),
        )
        .unwrap();
        let q = image_charge(0.5, &g, &fixed_rb);
        let expected = 1e6 * 1.602_176_634e-19 * 4.5 * 76e-10 / 2e-3 * 0.5;
        assert_relative_eq!(q, expected, max_relative = 1e-6);
        assert!((q - 1.37e-18).abs() < 0.01e-18);
    }

    #[test]
    fn image_charge_increases_with_population() {
        let (m, _) = setup(0.5);
        let g = ImageChargeGeometry::default();
        let values: Vec<f64> = (0..=10)
            .map(|k| image_charge(k as f64 / 10.0, &g, &m))
            .collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn geometry_validation() {
        assert!(ImageChargeGeometry::new(0.0, 1e-3).is_err());
        assert!(ImageChargeGeometry::new(1.0, -1e-3).is_err());
    }
}
