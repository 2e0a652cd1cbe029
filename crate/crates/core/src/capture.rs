//! The Bernstein shock-capturing procedure and the mean-value filter
//! baseline.
//!
//! In a troubled element the nodal polynomial u is replaced by the convex
//! blend alpha u + (1 - alpha) B_N[u], where B_N[u] is the (optionally
//! bound-enforcing) Bernstein reconstruction built from the polynomial's
//! values at the equispaced sample points and alpha comes from the PA
//! sensor. Elements with alpha = 1 are left bit-identical.

use nalgebra::DVector;

use crate::bernstein::{blend, reconstruct, reconstruct_bounded, BoundsSpec, Interval};
use crate::error::{Error, Result};
use crate::sensor::{element_sensor_with_neighbors, SensorConfig, SensorReading};
use crate::solver::{ElementBasis, SolutionState};

/// Which post-processing runs in troubled elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaptureMode {
    /// No stabilisation; the raw DG solution is kept.
    None,
    /// The Bernstein procedure steered by the PA sensor.
    Bernstein,
    /// Troubled elements are replaced by their cell mean.
    MeanFilter,
}

/// Whether capture runs after every SSPRK stage or once per full step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ApplyPoint {
    #[default]
    PerStage,
    PerStep,
}

/// Capture configuration: mode, sensor, optional enforced bounds and the
/// application point within a time step.
#[derive(Debug, Clone, Copy)]
pub struct CaptureConfig {
    pub mode: CaptureMode,
    pub sensor: SensorConfig,
    /// Only meaningful in Bernstein mode.
    pub bounds: Option<BoundsSpec>,
    pub apply_point: ApplyPoint,
}

impl CaptureConfig {
    pub fn none(sensor: SensorConfig) -> Self {
        CaptureConfig {
            mode: CaptureMode::None,
            sensor,
            bounds: None,
            apply_point: ApplyPoint::PerStage,
        }
    }

    pub fn bernstein(sensor: SensorConfig) -> Self {
        CaptureConfig {
            mode: CaptureMode::Bernstein,
            sensor,
            bounds: None,
            apply_point: ApplyPoint::PerStage,
        }
    }

    pub fn bernstein_bounded(sensor: SensorConfig, bounds: BoundsSpec) -> Self {
        CaptureConfig {
            bounds: Some(bounds),
            ..CaptureConfig::bernstein(sensor)
        }
    }

    pub fn mean_filter(sensor: SensorConfig) -> Self {
        CaptureConfig {
            mode: CaptureMode::MeanFilter,
            sensor,
            bounds: None,
            apply_point: ApplyPoint::PerStage,
        }
    }

    pub fn with_apply_point(mut self, apply_point: ApplyPoint) -> Self {
        self.apply_point = apply_point;
        self
    }
}

/// Evaluates the sensor on every element without touching the state,
/// observing the periodic neighbours' facing endpoint values so that
/// interface-aligned discontinuities register as well.
pub fn sense_all(
    state: &SolutionState,
    basis: &ElementBasis,
    sensor: &SensorConfig,
) -> Result<Vec<SensorReading>> {
    let ne = state.num_elements();
    let last = basis.num_nodes() - 1;
    (0..ne)
        .map(|i| {
            let values: Vec<f64> = state.values.column(i).iter().cloned().collect();
            let left = state.values[(last, (i + ne - 1) % ne)];
            let right = state.values[(0, (i + 1) % ne)];
            element_sensor_with_neighbors(&values, basis.nodes(), sensor, Some((left, right)))
        })
        .collect()
}

/// Applies the Bernstein procedure to each element, returning the sensor
/// readings. Elements with alpha = 1 are untouched; in the others the
/// interpolation polynomial is sampled at the equispaced Bernstein points,
/// reconstructed (clipping into the configured bounds if any), evaluated
/// back at the Gauss–Lobatto nodes and blended with the original values.
pub fn apply_bernstein_capture(
    state: &mut SolutionState,
    basis: &ElementBasis,
    capture: &CaptureConfig,
) -> Result<Vec<SensorReading>> {
    if capture.mode != CaptureMode::Bernstein {
        return Err(Error::invalid("capture config is not in Bernstein mode"));
    }
    let readings = sense_all(state, basis, &capture.sensor)?;
    apply_bernstein_capture_frozen(state, basis, capture.bounds, &readings)?;
    Ok(readings)
}

/// The reconstruction/blend step for externally supplied readings.
pub(crate) fn apply_bernstein_capture_frozen(
    state: &mut SolutionState,
    basis: &ElementBasis,
    bounds: Option<BoundsSpec>,
    readings: &[SensorReading],
) -> Result<()> {
    for (i, reading) in readings.iter().enumerate() {
        if reading.alpha >= 1.0 {
            continue;
        }
        let nodal: Vec<f64> = state.values.column(i).iter().cloned().collect();
        let samples = basis.lagrange_to_bernstein_samples() * DVector::from_column_slice(&nodal);
        let poly = match bounds {
            Some(b) => reconstruct_bounded(samples.as_slice(), Interval::REFERENCE, b)?,
            None => reconstruct(samples.as_slice(), Interval::REFERENCE)?,
        };
        let recon_nodal: Vec<f64> = basis
            .nodes()
            .iter()
            .map(|&x| poly.eval_unchecked(x))
            .collect();
        let blended = blend(&nodal, &recon_nodal, reading.alpha)?;
        state
            .values
            .column_mut(i)
            .iter_mut()
            .zip(&blended)
            .for_each(|(dst, &v)| *dst = v);
    }
    Ok(())
}

/// Mean-value filter baseline: every element whose sensor ratio reaches the
/// critical value 1 has all nodal values replaced by the LGL cell mean
/// (1/2) sum_k w_k u_k on the reference element.
pub fn apply_mean_filter(
    state: &mut SolutionState,
    basis: &ElementBasis,
    sensor: &SensorConfig,
) -> Result<Vec<SensorReading>> {
    let readings = sense_all(state, basis, sensor)?;
    apply_mean_filter_frozen(state, basis, &readings);
    Ok(readings)
}

pub(crate) fn apply_mean_filter_frozen(
    state: &mut SolutionState,
    basis: &ElementBasis,
    readings: &[SensorReading],
) {
    for (i, reading) in readings.iter().enumerate() {
        if reading.ratio < 1.0 {
            continue;
        }
        let mean = 0.5
            * state
                .values
                .column(i)
                .iter()
                .zip(basis.weights())
                .map(|(&u, &w)| w * u)
                .sum::<f64>();
        state.values.column_mut(i).fill(mean);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::{build_transform, BernsteinPoly, TargetBasis};
    use crate::solver::Mesh;
    use nalgebra::DMatrix;

    fn sensor() -> SensorConfig {
        SensorConfig::new(0.5).unwrap()
    }

    fn state_from_columns(columns: Vec<Vec<f64>>) -> SolutionState {
        let np = columns[0].len();
        let ne = columns.len();
        SolutionState {
            values: DMatrix::from_fn(np, ne, |k, i| columns[i][k]),
            time: 0.0,
        }
    }

    #[test]
    fn smooth_sine_passes_through_unchanged() {
        let basis = ElementBasis::new(5).unwrap();
        let mesh = Mesh::new(Interval::UNIT, 20).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        let mut state = SolutionState::sample(|x| (tau * x).sin(), &mesh, &basis);
        let before = state.clone();
        let cfg = CaptureConfig::bernstein(sensor());
        let readings = apply_bernstein_capture(&mut state, &basis, &cfg).unwrap();
        assert!(readings.iter().all(|r| r.alpha == 1.0));
        assert_eq!(state.values, before.values);
    }

    /// Step data with a Gibbs-like overshoot: triggers the sensor strictly
    /// (a pure sign step sits exactly at the critical ratio 1).
    fn gibbs_step() -> Vec<f64> {
        vec![0.0, 0.02, -0.05, 1.08, 0.97, 1.0]
    }

    #[test]
    fn step_element_is_fully_reconstructed() {
        let basis = ElementBasis::new(5).unwrap();
        let step = gibbs_step();
        let mut state = state_from_columns(vec![step.clone()]);
        let cfg = CaptureConfig::bernstein(sensor());
        let readings = apply_bernstein_capture(&mut state, &basis, &cfg).unwrap();
        assert_eq!(readings[0].alpha, 0.0);
        // the element now carries the Bernstein reconstruction, enclosed by
        // the range of its equispaced samples
        let samples = basis.lagrange_to_bernstein_samples() * DVector::from_column_slice(&step);
        let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for &v in state.values.column(0).iter() {
            assert!((lo - 1e-12..=hi + 1e-12).contains(&v), "{v} outside [{lo}, {hi}]");
        }
        // and differs from the original oscillation-prone interpolant data
        assert_ne!(state.values.column(0).clone_owned().as_slice(), step.as_slice());
    }

    #[test]
    fn bounds_are_enforced_in_troubled_elements() {
        let basis = ElementBasis::new(5).unwrap();
        // step data overshooting to 1.1 and beyond
        let data = vec![0.0, 0.02, -0.05, 1.18, 1.07, 1.1];
        let mut state = state_from_columns(vec![data]);
        let bounds = BoundsSpec::new(0.0, 1.0).unwrap();
        let cfg = CaptureConfig::bernstein_bounded(sensor(), bounds);
        let readings = apply_bernstein_capture(&mut state, &basis, &cfg).unwrap();
        assert_eq!(readings[0].alpha, 0.0);
        let max = state.values.column(0).iter().cloned().fold(f64::MIN, f64::max);
        assert!(max <= 1.0 + 1e-12, "max = {max}");
    }

    #[test]
    fn capture_fixed_points() {
        let basis = ElementBasis::new(4).unwrap();
        // alpha = 1 freezes any element; alpha = 0 fixes affine elements
        // (the Bernstein operator reproduces degree <= 1 exactly).
        let affine: Vec<f64> = basis.nodes().iter().map(|&x| 0.3 + 0.7 * x).collect();
        let wiggly: Vec<f64> = basis.nodes().iter().map(|&x| (3.0 * x).sin()).collect();
        let mut state = state_from_columns(vec![affine, wiggly]);
        let frozen = [
            SensorReading { s1: 1.0, s3: 1.0, ratio: 1.0, alpha: 0.0 },
            SensorReading { s1: 0.0, s3: 0.0, ratio: 0.0, alpha: 1.0 },
        ];
        let before = state.clone();
        apply_bernstein_capture_frozen(&mut state, &basis, None, &frozen).unwrap();
        let first = state.clone();
        // affine element reproduced to rounding, alpha = 1 element bitwise
        for (a, b) in state.values.column(0).iter().zip(before.values.column(0).iter()) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(state.values.column(1), before.values.column(1));
        apply_bernstein_capture_frozen(&mut state, &basis, None, &frozen).unwrap();
        for (a, b) in state.values.iter().zip(first.values.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn capture_never_moves_element_endpoints() {
        // With alpha = 0 and no bounds, the reconstruction preserves the
        // interpolant's endpoint values exactly, so no new interface jumps
        // appear.
        let basis = ElementBasis::new(5).unwrap();
        let data = gibbs_step();
        let mut state = state_from_columns(vec![data.clone()]);
        let cfg = CaptureConfig::bernstein(sensor());
        let readings = apply_bernstein_capture(&mut state, &basis, &cfg).unwrap();
        assert_eq!(readings[0].alpha, 0.0);
        assert_eq!(state.values[(0, 0)], data[0]);
        assert_eq!(state.values[(5, 0)], data[5]);
    }

    #[test]
    fn capture_step_reduces_total_variation() {
        // TV of the post-capture element polynomial never exceeds the
        // pre-capture one (convexity of the blend plus the TVD property of
        // the reconstruction).
        let basis = ElementBasis::new(6).unwrap();
        let to_bernstein = build_transform(6, TargetBasis::LagrangeGaussLobatto)
            .entries()
            .clone()
            .try_inverse()
            .unwrap();
        let tv = |nodal: &[f64]| -> f64 {
            let coeffs = &to_bernstein * DVector::from_column_slice(nodal);
            BernsteinPoly::new(coeffs.as_slice().to_vec(), Interval::REFERENCE)
                .unwrap()
                .total_variation()
        };
        let cases: Vec<Vec<f64>> = vec![
            basis.nodes().iter().map(|&x| if x >= 0.0 { 1.0 } else { 0.0 }).collect(),
            basis.nodes().iter().map(|&x| if x >= -0.3 { 0.2 } else { 1.4 }).collect(),
            basis.nodes().iter().map(|&x| (9.0 * x).sin() + if x > 0.5 { 2.0 } else { 0.0 }).collect(),
        ];
        for data in cases {
            let mut state = state_from_columns(vec![data.clone()]);
            let cfg = CaptureConfig::bernstein(sensor());
            let readings = apply_bernstein_capture(&mut state, &basis, &cfg).unwrap();
            let post: Vec<f64> = state.values.column(0).iter().cloned().collect();
            if readings[0].alpha < 1.0 {
                assert!(
                    tv(&post) <= tv(&data) + 1e-10,
                    "TV grew: {} -> {}",
                    tv(&data),
                    tv(&post)
                );
            }
        }
    }

    #[test]
    fn mean_filter_examples() {
        let basis = ElementBasis::new(4).unwrap();
        // constant element is never troubled
        let mut state = state_from_columns(vec![vec![1.5; 5]]);
        let readings = apply_mean_filter(&mut state, &basis, &sensor()).unwrap();
        assert_eq!(readings[0].ratio, 0.0);
        assert!(state.values.column(0).iter().all(|&v| v == 1.5));

        // troubled element with odd data averages to zero
        let odd: Vec<f64> = basis.nodes().to_vec();
        let mut state = state_from_columns(vec![odd]);
        let troubled = [SensorReading { s1: 1.0, s3: 1.0, ratio: 1.0, alpha: 0.0 }];
        apply_mean_filter_frozen(&mut state, &basis, &troubled);
        for &v in state.values.column(0).iter() {
            assert!(v.abs() < 1e-15);
        }

        // N = 2 quadrature arithmetic: values (0, 1, 2), weights (1/3, 4/3, 1/3)
        let basis2 = ElementBasis::new(2).unwrap();
        let mut state = state_from_columns(vec![vec![0.0, 1.0, 2.0]]);
        apply_mean_filter_frozen(&mut state, &basis2, &troubled);
        for &v in state.values.column(0).iter() {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn mean_filter_triggers_on_step_data() {
        let basis = ElementBasis::new(5).unwrap();
        let data: Vec<f64> = basis
            .nodes()
            .iter()
            .map(|&x| if x >= 0.0 { 1.0 } else { 0.0 })
            .collect();
        let mut state = state_from_columns(vec![data]);
        let readings = apply_mean_filter(&mut state, &basis, &sensor()).unwrap();
        assert!(readings[0].ratio >= 1.0);
        let first = state.values[(0, 0)];
        assert!(state.values.column(0).iter().all(|&v| (v - first).abs() < 1e-15));
    }
}
