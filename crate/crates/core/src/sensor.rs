//! Polynomial-annihilation jump estimation, the two-order sensor ratio, and
//! the ramp function producing the blending parameter alpha.
//!
//! The PA operator of order m, `L_m[s](x) = (1/q_m(x)) sum_j c_j(x) s(xi_j)`,
//! annihilates polynomials of degree < m and converges to the jump
//! `[s](x) = s(x+) - s(x-)` when a discontinuity lies in the cell bracketing
//! x. Comparing the operator magnitudes of orders 1 and 3 over the element's
//! node midpoints yields a smoothness ratio that steers the Bernstein
//! procedure: ratio below the ramp parameter kappa leaves the element
//! untouched (alpha = 1), ratio at or above one fully activates it
//! (alpha = 0).

use std::sync::Once;

use crate::error::{Error, Result};

/// m + 1 strictly increasing local grid points around an evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    points: Vec<f64>,
    eval_point: f64,
}

impl Stencil {
    pub fn new(points: Vec<f64>, eval_point: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("a stencil needs at least 2 points"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("stencil points must be strictly increasing"));
        }
        if points.iter().all(|&p| p < eval_point) {
            return Err(Error::invalid(
                "stencil needs at least one point >= the evaluation point",
            ));
        }
        Ok(Stencil { points, eval_point })
    }

    /// The annihilation order m (one less than the number of points).
    pub fn order(&self) -> usize {
        self.points.len() - 1
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn eval_point(&self) -> f64 {
        self.eval_point
    }

    /// Maximum gap between consecutive stencil points.
    pub fn spacing(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

/// Annihilation coefficients c_j = m! / omega_j with
/// omega_j = prod_{i != j} (xi_j - xi_i).
///
/// They satisfy sum_j c_j p(xi_j) = 0 for every polynomial p of degree < m.
pub fn annihilation_coefficients(stencil: &Stencil) -> Vec<f64> {
    let m = stencil.order();
    let m_factorial: f64 = (1..=m).map(|k| k as f64).product();
    stencil
        .points
        .iter()
        .enumerate()
        .map(|(j, &xi_j)| {
            let omega: f64 = stencil
                .points
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi_i)| xi_j - xi_i)
                .product();
            m_factorial / omega
        })
        .collect()
}

/// Normalisation factor q_m: the sum of the annihilation coefficients over
/// the points at or right of the evaluation point.
pub fn normalization_factor(stencil: &Stencil, coeffs: &[f64]) -> Result<f64> {
    let q: f64 = stencil
        .points
        .iter()
        .zip(coeffs)
        .filter(|(&xi, _)| xi >= stencil.eval_point)
        .map(|(_, &c)| c)
        .sum();
    if q.abs() < 1e-14 {
        return Err(Error::DegenerateStencil { magnitude: q.abs() });
    }
    Ok(q)
}

/// Applies the PA operator of the stencil's order to point values of the
/// sensing variable: `(1/q_m) sum_j c_j values[j]`.
pub fn pa_apply(values: &[f64], stencil: &Stencil) -> Result<f64> {
    if values.len() != stencil.points.len() {
        return Err(Error::invalid(format!(
            "stencil has {} points but {} values were given",
            stencil.points.len(),
            values.len()
        )));
    }
    let coeffs = annihilation_coefficients(stencil);
    let q = normalization_factor(stencil, &coeffs)?;
    let sum: f64 = coeffs.iter().zip(values).map(|(&c, &v)| c * v).sum();
    Ok(sum / q)
}

/// Piecewise-linear ramp turning the sensor ratio into the blending
/// parameter: 1 for S <= kappa, 0 for S >= 1, linear in between.
pub fn ramp(s: f64, kappa: f64) -> Result<f64> {
    if !(0.0 < kappa && kappa < 1.0) {
        return Err(Error::invalid(format!("ramp parameter kappa = {kappa} outside (0, 1)")));
    }
    Ok(if s <= kappa {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        (1.0 - s) / (1.0 - kappa)
    })
}

/// Sensor configuration: the PA order pair, the ramp parameter kappa and
/// the relative floor below which S1 counts as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorConfig {
    low_order: usize,
    high_order: usize,
    kappa: f64,
    s1_floor: f64,
}

impl SensorConfig {
    /// The default order pair (1, 3) with an S1 floor of 1e-12 relative to
    /// the data scale.
    pub fn new(kappa: f64) -> Result<Self> {
        SensorConfig::with_orders(1, 3, kappa, 1e-12)
    }

    pub fn with_orders(low_order: usize, high_order: usize, kappa: f64, s1_floor: f64) -> Result<Self> {
        if low_order == 0 || low_order >= high_order {
            return Err(Error::invalid(format!(
                "sensor orders must satisfy 1 <= low < high, got ({low_order}, {high_order})"
            )));
        }
        if !(0.0 < kappa && kappa < 1.0) {
            return Err(Error::invalid(format!("ramp parameter kappa = {kappa} outside (0, 1)")));
        }
        if !(s1_floor >= 0.0) {
            return Err(Error::invalid("s1_floor must be nonnegative"));
        }
        Ok(SensorConfig {
            low_order,
            high_order,
            kappa,
            s1_floor,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn low_order(&self) -> usize {
        self.low_order
    }

    pub fn high_order(&self) -> usize {
        self.high_order
    }

    pub fn s1_floor(&self) -> f64 {
        self.s1_floor
    }
}

/// Per-element sensor result: the two PA magnitudes, their ratio and the
/// blending parameter alpha = ramp(ratio, kappa).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorReading {
    pub s1: f64,
    pub s3: f64,
    pub ratio: f64,
    pub alpha: f64,
}

static LOW_DEGREE_WARNING: Once = Once::new();

/// Evaluates the PA sensor on one element's nodal data.
///
/// For each node midpoint x_{k+1/2}, the low-order operator uses the
/// bracketing node pair and the high-order operator uses the window of
/// high_order + 1 nodes around the midpoint, shifted inward near the
/// element ends so that stencils never leave the element. S_m is the
/// maximum PA magnitude over the midpoints; the ratio S_high / S_low is
/// declared zero when S_low is at the data-scale floor.
pub fn element_sensor(
    node_values: &[f64],
    nodes: &[f64],
    config: &SensorConfig,
) -> Result<SensorReading> {
    element_sensor_with_neighbors(node_values, nodes, config, None)
}

/// [`element_sensor`] that additionally observes the solution jumps at the
/// element interfaces, given the neighbouring elements' facing endpoint
/// values (left neighbour's last node, right neighbour's first node).
///
/// At an interface the two traces share the same abscissa; the PA jump
/// estimate of every order degenerates there to the jump itself, so
/// |u_inside - u_neighbour| enters both S1 and S3 directly. Without this
/// term a discontinuity aligned with an element interface is invisible to
/// the element-interior stencils: each neighbour holds smooth data and the
/// sensor would stay passive while the interface jump grows.
pub fn element_sensor_with_neighbors(
    node_values: &[f64],
    nodes: &[f64],
    config: &SensorConfig,
    neighbor_endpoints: Option<(f64, f64)>,
) -> Result<SensorReading> {
    let np = nodes.len();
    if node_values.len() != np {
        return Err(Error::invalid(format!(
            "got {} node values for {} nodes",
            node_values.len(),
            np
        )));
    }
    if np < config.high_order + 1 {
        return Err(Error::UnsupportedOrder {
            order: config.high_order,
            nodes: np,
        });
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("element nodes must be strictly increasing"));
    }
    if np == 4 && config.high_order == 3 {
        // The (1, 3) pair is known to misidentify elements at N = 3.
        LOW_DEGREE_WARNING.call_once(|| {
            log::warn!(
                "PA sensor with order pair (1, 3) is unreliable for degree N = 3; \
                 N >= 4 is recommended"
            );
        });
    }

    let mut s_low = 0.0f64;
    let mut s_high = 0.0f64;
    for k in 0..np - 1 {
        let midpoint = 0.5 * (nodes[k] + nodes[k + 1]);
        for (order, acc) in [(config.low_order, &mut s_low), (config.high_order, &mut s_high)] {
            let lo = k.saturating_sub((order - 1) / 2).min(np - 1 - order);
            let stencil = Stencil::new(nodes[lo..=lo + order].to_vec(), midpoint)?;
            let value = pa_apply(&node_values[lo..=lo + order], &stencil)?;
            *acc = acc.max(value.abs());
        }
    }
    if let Some((left, right)) = neighbor_endpoints {
        let interface_jump = (node_values[0] - left)
            .abs()
            .max((right - node_values[np - 1]).abs());
        s_low = s_low.max(interface_jump);
        s_high = s_high.max(interface_jump);
    }

    let scale = node_values.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
    let ratio = if s_low > config.s1_floor * scale {
        s_high / s_low
    } else {
        0.0
    };
    let alpha = ramp(ratio, config.kappa)?;
    Ok(SensorReading {
        s1: s_low,
        s3: s_high,
        ratio,
        alpha,
    })
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::quadrature::gauss_lobatto;
    use proptest::prelude::*;

    fn stencil_strategy(len: usize) -> impl Strategy<Value = Stencil> {
        prop::collection::vec(0.01f64..1.0, len).prop_map(|gaps| {
            let mut points = Vec::with_capacity(gaps.len() + 1);
            let mut x = -1.0;
            points.push(x);
            for g in gaps {
                x += g;
                points.push(x);
            }
            let eval = 0.5 * (points[0] + points[points.len() - 1]);
            Stencil::new(points, eval).unwrap()
        })
    }

    proptest! {
        #[test]
        fn coefficients_annihilate_lower_degrees(
            st in (2usize..=5).prop_flat_map(stencil_strategy),
            poly in prop::collection::vec(-3.0f64..3.0, 1..=5),
        ) {
            let m = st.order();
            let coeffs = annihilation_coefficients(&st);
            // restrict the monomial coefficients to degree < m
            let poly: Vec<f64> = poly.into_iter().take(m).collect();
            let eval = |x: f64| poly.iter().rev().fold(0.0, |acc, &c| acc * x + c);
            let sum: f64 = st.points().iter().zip(&coeffs).map(|(&x, &c)| c * eval(x)).sum();
            let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
            prop_assert!(sum.abs() <= 1e-11 * scale, "sum = {sum}, scale = {scale}");
        }

        #[test]
        fn jump_recovery_is_first_order(
            jump in 0.5f64..4.0,
            offset in -0.2f64..0.2,
        ) {
            // step of height `jump` at xi0 inside the bracketing cell, on a
            // smooth background; the PA error decays at first order in h.
            let smooth = |x: f64| (1.3 * x).sin();
            let xi0 = offset * 0.1;
            let mut errors = Vec::new();
            for level in 0..4 {
                let h = 0.2 / 2f64.powi(level);
                let st = Stencil::new(vec![-2.0 * h, -h, h, 2.0 * h], 0.0).unwrap();
                let values: Vec<f64> = st
                    .points()
                    .iter()
                    .map(|&x| smooth(x) + if x > xi0 * h / 0.2 { jump } else { 0.0 })
                    .collect();
                let v = pa_apply(&values, &st).unwrap();
                errors.push((v - jump).abs());
            }
            // fitted decay order over the three halvings
            let order = (errors[0] / errors[3]).log2() / 3.0;
            prop_assert!(order >= 0.9, "order = {order}, errors = {errors:?}");
        }

        #[test]
        fn quadratic_data_never_activates_the_procedure(
            c0 in -5.0f64..5.0,
            c1 in -5.0f64..5.0,
            c2 in -5.0f64..5.0,
            degree in 4usize..=8,
        ) {
            let (nodes, _) = gauss_lobatto(degree);
            let values: Vec<f64> = nodes.iter().map(|&x| c0 + c1 * x + c2 * x * x).collect();
            let cfg = SensorConfig::new(0.5).unwrap();
            let r = element_sensor(&values, &nodes, &cfg).unwrap();
            prop_assert_eq!(r.alpha, 1.0);
        }
    }
}
