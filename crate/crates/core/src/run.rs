//! The time loop: SSPRK(3,3) stepping with per-stage or per-step shock
//! capture and per-step diagnostics.

use crate::capture::{
    apply_bernstein_capture, apply_mean_filter, sense_all, ApplyPoint, CaptureConfig, CaptureMode,
};
use crate::error::Result;
use crate::problems::ProblemSpec;
use crate::sensor::SensorReading;
use crate::solver::{compute_dt, dg_rhs, ssprk33_step, ElementBasis, Mesh, RunConfig, SolutionState};

/// Per-step diagnostics record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDiagnostics {
    pub step: usize,
    /// Time after the step.
    pub t: f64,
    pub dt: f64,
    /// Discrete total variation of the nodal solution, including interface
    /// jumps and the periodic wrap.
    pub total_variation: f64,
    pub min: f64,
    pub max: f64,
    /// Elements with alpha < 1 in the last capture application of the step.
    pub troubled: usize,
    /// Total L^2 entropy sum_i (dx/2) sum_k w_k u_{ik}^2.
    pub entropy: f64,
    /// Change of the conserved total over this step (nonzero only through
    /// capture in troubled elements; the Bernstein reconstruction is not
    /// mean-preserving).
    pub conservation_defect: f64,
}

/// Diagnostics for a whole run.
#[derive(Debug, Clone, Default)]
pub struct DiagnosticsSeries {
    pub steps: Vec<StepDiagnostics>,
}

impl DiagnosticsSeries {
    pub fn max_troubled(&self) -> usize {
        self.steps.iter().map(|s| s.troubled).max().unwrap_or(0)
    }

    pub fn any_troubled(&self) -> bool {
        self.steps.iter().any(|s| s.troubled > 0)
    }
}

/// Discrete total variation of the nodal solution: node-to-node variation
/// within elements plus the interface jumps, with periodic wrap.
pub fn discrete_total_variation(state: &SolutionState) -> f64 {
    let np = state.values.nrows();
    let ne = state.values.ncols();
    let mut tv = 0.0;
    for i in 0..ne {
        let col = state.values.column(i);
        for k in 0..np - 1 {
            tv += (col[k + 1] - col[k]).abs();
        }
        let right_neighbor = state.values[(0, (i + 1) % ne)];
        tv += (right_neighbor - col[np - 1]).abs();
    }
    tv
}

/// LGL-weighted conserved total sum_i (dx/2) sum_k w_k u_{ik}, accumulated
/// in a fixed element-then-node order.
pub fn conserved_total(state: &SolutionState, basis: &ElementBasis, mesh: &Mesh) -> f64 {
    let half_dx = 0.5 * mesh.element_width();
    let mut total = 0.0;
    for i in 0..state.values.ncols() {
        let col = state.values.column(i);
        let mut cell = 0.0;
        for (k, &w) in basis.weights().iter().enumerate() {
            cell += w * col[k];
        }
        total += half_dx * cell;
    }
    total
}

fn total_entropy_l2(state: &SolutionState, basis: &ElementBasis, mesh: &Mesh) -> f64 {
    let half_dx = 0.5 * mesh.element_width();
    let mut total = 0.0;
    for i in 0..state.values.ncols() {
        let col = state.values.column(i);
        for (k, &w) in basis.weights().iter().enumerate() {
            total += half_dx * w * col[k] * col[k];
        }
    }
    total
}

/// Runs the DG solver on a problem, recording diagnostics per step.
///
/// The initial condition is sampled at the mapped Gauss–Lobatto nodes, the
/// step size follows the CFL rule (with the final step truncated to land
/// exactly on t_final) and the configured capture runs per stage or per
/// step. With `t_final = 0` the sampled initial condition is returned.
pub fn run(
    problem: &ProblemSpec,
    run_config: &RunConfig,
    capture: &CaptureConfig,
) -> Result<(SolutionState, DiagnosticsSeries)> {
    run_observed(problem, run_config, capture, |_, _, _| {})
}

/// [`run`] with a per-step observer receiving the state, diagnostics and
/// the element sensor readings of the step's last capture application.
pub fn run_observed(
    problem: &ProblemSpec,
    run_config: &RunConfig,
    capture: &CaptureConfig,
    mut observer: impl FnMut(&SolutionState, &StepDiagnostics, &[SensorReading]),
) -> Result<(SolutionState, DiagnosticsSeries)> {
    let basis = ElementBasis::new(run_config.degree)?;
    let mesh = &run_config.mesh;
    let mut state = SolutionState::sample(|x| problem.initial(x), mesh, &basis);
    let mut diagnostics = DiagnosticsSeries::default();
    if run_config.t_final == 0.0 {
        return Ok((state, diagnostics));
    }

    let dt_nominal = compute_dt(run_config, &problem.flux)?;
    let mut step = 0usize;
    let mut readings: Vec<SensorReading> = Vec::new();

    while state.time < run_config.t_final {
        let dt = dt_nominal.min(run_config.t_final - state.time);
        let mass_before = conserved_total(&state, &basis, mesh);

        let mut stage_readings: Option<Vec<SensorReading>> = None;
        let next = {
            let rhs = |s: &SolutionState| dg_rhs(s, &problem.flux, &basis, mesh);
            match (capture.mode, capture.apply_point) {
                (CaptureMode::None, _) => ssprk33_step(&state, dt, rhs, |_| Ok(()))?,
                (CaptureMode::Bernstein, ApplyPoint::PerStage) => {
                    ssprk33_step(&state, dt, rhs, |s| {
                        stage_readings = Some(apply_bernstein_capture(s, &basis, capture)?);
                        Ok(())
                    })?
                }
                (CaptureMode::Bernstein, ApplyPoint::PerStep) => {
                    let mut next = ssprk33_step(&state, dt, rhs, |_| Ok(()))?;
                    stage_readings = Some(apply_bernstein_capture(&mut next, &basis, capture)?);
                    next
                }
                (CaptureMode::MeanFilter, ApplyPoint::PerStage) => {
                    ssprk33_step(&state, dt, rhs, |s| {
                        stage_readings = Some(apply_mean_filter(s, &basis, &capture.sensor)?);
                        Ok(())
                    })?
                }
                (CaptureMode::MeanFilter, ApplyPoint::PerStep) => {
                    let mut next = ssprk33_step(&state, dt, rhs, |_| Ok(()))?;
                    stage_readings = Some(apply_mean_filter(&mut next, &basis, &capture.sensor)?);
                    next
                }
            }
        };
        state = next;
        step += 1;

        readings = match stage_readings {
            Some(r) => r,
            // no filter ran; still evaluate the sensor for diagnostics
            None => sense_all(&state, &basis, &capture.sensor)?,
        };
        let troubled = readings.iter().filter(|r| r.alpha < 1.0).count();
        let record = StepDiagnostics {
            step,
            t: state.time,
            dt,
            total_variation: discrete_total_variation(&state),
            min: state.min(),
            max: state.max(),
            troubled,
            entropy: total_entropy_l2(&state, &basis, mesh),
            conservation_defect: conserved_total(&state, &basis, mesh) - mass_before,
        };
        observer(&state, &record, &readings);
        diagnostics.steps.push(record);
    }
    let _ = readings;
    Ok((state, diagnostics))
}
