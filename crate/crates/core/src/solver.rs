//! Nodal collocation DG spatial discretisation on Gauss–Lobatto points with
//! Rusanov interface fluxes and SSPRK(3,3) time stepping.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::bernstein::Interval;
use crate::error::{Error, Result};
use crate::quadrature;

/// Gauss–Lobatto nodes and quadrature weights for polynomial degree N
/// (N + 1 points including both endpoints of [-1, 1]; weights sum to 2).
pub fn lgl_nodes_weights(degree: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(degree >= 1, "Gauss-Lobatto rule needs degree >= 1");
    quadrature::gauss_lobatto(degree)
}

/// Differentiation matrix D[i][j] = l_j'(x_i) for the Lagrange cardinal
/// functions of the given distinct nodes, via barycentric weights with the
/// negative-sum trick on the diagonal.
pub fn diff_matrix(nodes: &[f64]) -> Result<DMatrix<f64>> {
    let np = nodes.len();
    if np < 2 {
        return Err(Error::invalid("differentiation needs at least 2 nodes"));
    }
    for i in 0..np {
        for j in i + 1..np {
            if nodes[i] == nodes[j] {
                return Err(Error::invalid("differentiation nodes must be distinct"));
            }
        }
    }
    let bary = barycentric_weights(nodes);
    let mut d = DMatrix::zeros(np, np);
    for i in 0..np {
        let mut row_sum = 0.0;
        for j in 0..np {
            if i != j {
                let v = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        d[(i, i)] = -row_sum;
    }
    Ok(d)
}

pub(crate) fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let np = nodes.len();
    (0..np)
        .map(|j| {
            1.0 / (0..np)
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product::<f64>()
        })
        .collect()
}

/// Evaluates the Lagrange cardinal functions of `nodes` at `x`, returning
/// one weight per node (exact unit row when x coincides with a node).
pub(crate) fn lagrange_row(nodes: &[f64], bary: &[f64], x: f64) -> Vec<f64> {
    if let Some(j) = nodes.iter().position(|&n| n == x) {
        let mut row = vec![0.0; nodes.len()];
        row[j] = 1.0;
        return row;
    }
    let terms: Vec<f64> = nodes
        .iter()
        .zip(bary)
        .map(|(&n, &w)| w / (x - n))
        .collect();
    let denom: f64 = terms.iter().sum();
    terms.into_iter().map(|t| t / denom).collect()
}

/// Per-degree element machinery: Gauss–Lobatto nodes and weights, the
/// differentiation matrix, the equispaced Bernstein sample points
/// -1 + 2n/N and the interpolation matrix evaluating the nodal polynomial
/// at them.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementBasis {
    degree: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    diff_matrix: DMatrix<f64>,
    bernstein_sample_points: Vec<f64>,
    lagrange_to_bernstein_samples: DMatrix<f64>,
}

impl ElementBasis {
    pub fn new(degree: usize) -> Result<Self> {
        if degree < 1 {
            return Err(Error::invalid("element basis needs degree >= 1"));
        }
        let (nodes, weights) = quadrature::gauss_lobatto(degree);
        let diff = diff_matrix(&nodes)?;
        let sample_points: Vec<f64> = (0..=degree)
            .map(|n| -1.0 + 2.0 * n as f64 / degree as f64)
            .collect();
        let bary = barycentric_weights(&nodes);
        let np = degree + 1;
        let sample_matrix = DMatrix::from_fn(np, np, |m, k| {
            lagrange_row(&nodes, &bary, sample_points[m])[k]
        });
        Ok(ElementBasis {
            degree,
            nodes,
            weights,
            diff_matrix: diff,
            bernstein_sample_points: sample_points,
            lagrange_to_bernstein_samples: sample_matrix,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_nodes(&self) -> usize {
        self.degree + 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn diff_matrix(&self) -> &DMatrix<f64> {
        &self.diff_matrix
    }

    pub fn bernstein_sample_points(&self) -> &[f64] {
        &self.bernstein_sample_points
    }

    /// Matrix taking nodal values to the values of the interpolation
    /// polynomial at the equispaced Bernstein sample points.
    pub fn lagrange_to_bernstein_samples(&self) -> &DMatrix<f64> {
        &self.lagrange_to_bernstein_samples
    }
}

/// A uniform mesh of the spatial domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    domain: Interval,
    num_elements: usize,
}

impl Mesh {
    pub fn new(domain: Interval, num_elements: usize) -> Result<Self> {
        if num_elements == 0 {
            return Err(Error::invalid("mesh needs at least one element"));
        }
        Ok(Mesh {
            domain,
            num_elements,
        })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn element_width(&self) -> f64 {
        self.domain.length() / self.num_elements as f64
    }

    pub fn element_edges(&self) -> Vec<f64> {
        let w = self.element_width();
        (0..=self.num_elements)
            .map(|i| self.domain.a() + i as f64 * w)
            .collect()
    }

    /// Maps a reference coordinate xi in [-1, 1] into element `i`.
    pub fn to_physical(&self, element: usize, xi: f64) -> f64 {
        let w = self.element_width();
        self.domain.a() + w * (element as f64 + 0.5 * (xi + 1.0))
    }
}

/// Nodal DG solution: one column of node values per element.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionState {
    /// (N+1) x I matrix; column i holds element i's nodal values.
    pub values: DMatrix<f64>,
    pub time: f64,
}

impl SolutionState {
    /// Samples an initial condition at the mapped Gauss–Lobatto nodes.
    pub fn sample(u0: impl Fn(f64) -> f64, mesh: &Mesh, basis: &ElementBasis) -> Self {
        let values = DMatrix::from_fn(basis.num_nodes(), mesh.num_elements(), |k, i| {
            u0(mesh.to_physical(i, basis.nodes()[k]))
        });
        SolutionState { values, time: 0.0 }
    }

    pub fn num_elements(&self) -> usize {
        self.values.ncols()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn first_non_finite_element(&self) -> Option<usize> {
        (0..self.values.ncols()).find(|&i| self.values.column(i).iter().any(|v| !v.is_finite()))
    }
}

/// Scalar flux f(u), its derivative, and the largest wave speed over the
/// invariant range of the initial data (used for the time-step rule).
#[derive(Clone)]
pub struct FluxSpec {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    f_prime: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    global_wave_speed: f64,
}

impl FluxSpec {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        global_wave_speed: f64,
    ) -> Self {
        FluxSpec {
            f: Arc::new(f),
            f_prime: Arc::new(f_prime),
            global_wave_speed,
        }
    }

    pub fn f(&self, u: f64) -> f64 {
        (self.f)(u)
    }

    pub fn f_prime(&self, u: f64) -> f64 {
        (self.f_prime)(u)
    }

    pub fn global_wave_speed(&self) -> f64 {
        self.global_wave_speed
    }
}

impl std::fmt::Debug for FluxSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FluxSpec")
            .field("global_wave_speed", &self.global_wave_speed)
            .finish()
    }
}

/// Local Lax–Friedrichs (Rusanov) flux
/// `(f(u+) + f(u-))/2 - (lambda/2)(u+ - u-)` with lambda the maximum
/// |f'(u)| for u between the two states, located by a 33-point scan of the
/// bracket (which covers interior maxima of nonconvex fluxes).
pub fn rusanov_flux(u_minus: f64, u_plus: f64, flux: &FluxSpec) -> f64 {
    let lo = u_minus.min(u_plus);
    let hi = u_minus.max(u_plus);
    let mut lambda = 0.0f64;
    for i in 0..33 {
        let u = lo + (hi - lo) * i as f64 / 32.0;
        lambda = lambda.max(flux.f_prime(u).abs());
    }
    0.5 * (flux.f(u_plus) + flux.f(u_minus)) - 0.5 * lambda * (u_plus - u_minus)
}

/// Semidiscrete DG operator L(u) with periodic boundary conditions:
/// per element, `-(2/dx) D f(u)` plus the boundary lift
/// `(2/dx) (f(u) - f*) (-+ 1/w_end)` at the two end nodes, where f* is the
/// Rusanov flux against the periodic neighbours and the mass is
/// LGL-lumped.
pub fn dg_rhs(
    state: &SolutionState,
    flux: &FluxSpec,
    basis: &ElementBasis,
    mesh: &Mesh,
) -> DMatrix<f64> {
    let np = basis.num_nodes();
    let ne = mesh.num_elements();
    debug_assert_eq!(state.values.nrows(), np);
    debug_assert_eq!(state.values.ncols(), ne);
    let jac = 2.0 / mesh.element_width();

    let flux_vals = state.values.map(|u| flux.f(u));
    let mut rhs = basis.diff_matrix() * &flux_vals;
    rhs *= -jac;

    // interface_flux[i] is the numerical flux at the left edge of element i.
    let interface_flux: Vec<f64> = (0..ne)
        .map(|i| {
            let left = (i + ne - 1) % ne;
            rusanov_flux(state.values[(np - 1, left)], state.values[(0, i)], flux)
        })
        .collect();

    let w0 = basis.weights()[0];
    let wn = basis.weights()[np - 1];
    for i in 0..ne {
        let f_left = interface_flux[i];
        let f_right = interface_flux[(i + 1) % ne];
        rhs[(0, i)] -= jac * (flux_vals[(0, i)] - f_left) / w0;
        rhs[(np - 1, i)] += jac * (flux_vals[(np - 1, i)] - f_right) / wn;
    }
    rhs
}

/// Run parameters: CFL constant, final time, mesh and polynomial degree.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cfl_constant: f64,
    pub t_final: f64,
    pub mesh: Mesh,
    pub degree: usize,
}

impl RunConfig {
    /// Uses the default CFL constant C = 0.1.
    pub fn new(mesh: Mesh, degree: usize, t_final: f64) -> Result<Self> {
        if t_final < 0.0 {
            return Err(Error::invalid("t_final must be nonnegative"));
        }
        Ok(RunConfig {
            cfl_constant: 0.1,
            t_final,
            mesh,
            degree,
        })
    }

    pub fn with_cfl(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::invalid("CFL constant must be positive"));
        }
        self.cfl_constant = c;
        Ok(self)
    }
}

/// Time-step rule `dt = C |Omega| / (I (2N+1)^2 max|f'(u)|)`.
pub fn compute_dt(run: &RunConfig, flux: &FluxSpec) -> Result<f64> {
    let speed = flux.global_wave_speed();
    if !(speed > 0.0) {
        return Err(Error::invalid(
            "global wave speed must be positive (static problems have no time-step rule)",
        ));
    }
    let n = run.degree as f64;
    let i = run.mesh.num_elements() as f64;
    Ok(run.cfl_constant * run.mesh.domain().length() / (i * (2.0 * n + 1.0).powi(2) * speed))
}

fn check_finite(state: &SolutionState) -> Result<()> {
    if let Some(element) = state.first_non_finite_element() {
        return Err(Error::BlowUp {
            time: state.time,
            element,
        });
    }
    Ok(())
}

/// One SSPRK(3,3) step:
/// u1 = u + dt L(u); u2 = 3/4 u + 1/4 u1 + 1/4 dt L(u1);
/// u_next = 1/3 u + 2/3 u2 + 2/3 dt L(u2).
///
/// `stage_capture` runs after every stage update (pass a no-op and apply a
/// filter afterwards for per-step capture); each stage is checked for
/// non-finite values.
pub fn ssprk33_step<R, C>(
    state: &SolutionState,
    dt: f64,
    rhs: R,
    mut stage_capture: C,
) -> Result<SolutionState>
where
    R: Fn(&SolutionState) -> DMatrix<f64>,
    C: FnMut(&mut SolutionState) -> Result<()>,
{
    if !(dt > 0.0) {
        return Err(Error::invalid("time step must be positive"));
    }
    let u0 = &state.values;

    let mut s1 = SolutionState {
        values: u0 + dt * rhs(state),
        time: state.time,
    };
    stage_capture(&mut s1)?;
    check_finite(&s1)?;

    let mut s2 = SolutionState {
        values: 0.75 * u0 + 0.25 * (&s1.values + dt * rhs(&s1)),
        time: state.time,
    };
    stage_capture(&mut s2)?;
    check_finite(&s2)?;

    let mut out = SolutionState {
        values: (1.0 / 3.0) * u0 + (2.0 / 3.0) * (&s2.values + dt * rhs(&s2)),
        time: state.time + dt,
    };
    stage_capture(&mut out)?;
    check_finite(&out)?;
    Ok(out)
}
