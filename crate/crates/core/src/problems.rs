//! The four benchmark problems (linear advection, Burgers, a concave flux,
//! Buckley–Leverett) with initial conditions, flux specifications and
//! reference solutions: closed form, characteristic tracing and a monotone
//! first-order finite-volume oracle.

use std::io::Write;
use std::sync::Arc;

use crate::bernstein::Interval;
use crate::error::{Error, Result};
use crate::quadrature;
use crate::solver::{barycentric_weights, lagrange_row, ElementBasis, FluxSpec, Mesh, SolutionState};

/// The benchmark problem identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemId {
    LinearAdvection,
    Burgers,
    ConcaveFlux,
    BuckleyLeverett,
}

impl ProblemId {
    pub const ALL: [ProblemId; 4] = [
        ProblemId::LinearAdvection,
        ProblemId::Burgers,
        ProblemId::ConcaveFlux,
        ProblemId::BuckleyLeverett,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProblemId::LinearAdvection => "linear",
            ProblemId::Burgers => "burgers",
            ProblemId::ConcaveFlux => "concave",
            ProblemId::BuckleyLeverett => "buckley-leverett",
        }
    }
}

impl std::str::FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "advection" | "linear-advection" => Ok(ProblemId::LinearAdvection),
            "burgers" => Ok(ProblemId::Burgers),
            "concave" | "concave-flux" => Ok(ProblemId::ConcaveFlux),
            "buckley-leverett" | "buckley" | "bl" => Ok(ProblemId::BuckleyLeverett),
            other => Err(Error::Config(format!("unknown problem '{other}'"))),
        }
    }
}

/// Which reference solution a problem (or run) compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    ClosedForm,
    Characteristics,
    FvOracle,
}

/// A benchmark problem: flux, domain, initial condition, optional wave
/// breaking time and the preferred reference solution. Boundary conditions
/// are periodic for all four problems.
#[derive(Clone)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub flux: FluxSpec,
    pub domain: Interval,
    initial: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub break_time: Option<f64>,
    pub reference: ReferenceKind,
    /// Interior critical points of f' within the invariant range, used by
    /// the finite-volume oracle to bound wave speeds exactly.
    pub flux_critical_points: Vec<f64>,
}

impl ProblemSpec {
    pub fn initial(&self, x: f64) -> f64 {
        (self.initial)(x)
    }
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("break_time", &self.break_time)
            .field("reference", &self.reference)
            .finish()
    }
}

fn box_ic(lo: f64, hi: f64) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    move |x| if (lo..=hi).contains(&x) { 1.0 } else { 0.0 }
}

/// Largest |f'| over [lo, hi], scanned densely (the time-step rule wants
/// the maximum over all u between min and max of the initial data).
fn scan_wave_speed(f_prime: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    (0..=1000)
        .map(|i| lo + (hi - lo) * i as f64 / 1000.0)
        .map(|u| f_prime(u).abs())
        .fold(0.0, f64::max)
}

/// Builds one of the four benchmark problems.
pub fn make_problem(id: ProblemId) -> ProblemSpec {
    match id {
        ProblemId::LinearAdvection => ProblemSpec {
            id,
            flux: FluxSpec::new(|u| u, |_| 1.0, 1.0),
            domain: Interval::new(0.0, 1.0).unwrap(),
            initial: Arc::new(box_ic(0.4, 0.8)),
            break_time: None,
            reference: ReferenceKind::ClosedForm,
            flux_critical_points: vec![],
        },
        ProblemId::Burgers => {
            let tau = 2.0 * std::f64::consts::PI;
            let amplitude = 1.0 / (4.0 * std::f64::consts::PI);
            ProblemSpec {
                id,
                flux: FluxSpec::new(|u| 0.5 * u * u, |u| u, 1.0 + amplitude),
                domain: Interval::new(0.0, 1.0).unwrap(),
                initial: Arc::new(move |x| 1.0 + amplitude * (tau * x).sin()),
                // t_b = -1 / min u0' with u0' = cos(2 pi x)/2
                break_time: Some(2.0),
                reference: ReferenceKind::Characteristics,
                flux_critical_points: vec![],
            }
        }
        ProblemId::ConcaveFlux => ProblemSpec {
            id,
            flux: FluxSpec::new(
                |u| u * (1.0 - u),
                |u| 1.0 - 2.0 * u,
                scan_wave_speed(|u| 1.0 - 2.0 * u, 0.0, 1.0),
            ),
            domain: Interval::new(0.0, 2.0).unwrap(),
            initial: Arc::new(box_ic(0.5, 1.5)),
            break_time: None,
            reference: ReferenceKind::FvOracle,
            flux_critical_points: vec![],
        },
        ProblemId::BuckleyLeverett => {
            let f = |u: f64| u * u / (u * u + (1.0 - u) * (1.0 - u));
            let fp = |u: f64| {
                let g = u * u + (1.0 - u) * (1.0 - u);
                2.0 * u * (1.0 - u) / (g * g)
            };
            ProblemSpec {
                id,
                flux: FluxSpec::new(f, fp, scan_wave_speed(fp, 0.0, 1.0)),
                domain: Interval::new(0.0, 2.0).unwrap(),
                initial: Arc::new(box_ic(0.5, 1.5)),
                break_time: None,
                reference: ReferenceKind::FvOracle,
                // f' is symmetric about u = 1/2 and peaks there
                flux_critical_points: vec![0.5],
            }
        }
    }
}

/// Derivative of the Burgers initial condition, u0'(x) = cos(2 pi x) / 2,
/// needed by the characteristic (Newton) reference solver.
pub fn burgers_initial_prime() -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let tau = 2.0 * std::f64::consts::PI;
    move |x| 0.5 * (tau * x).cos()
}

/// Default ramp parameter per problem. These are implementation defaults
/// tuned for this solver (the Buckley–Leverett value on the I = 80
/// benchmark grid, where the compound wave is sensitive to over-filtering);
/// the sweep tool exists to re-tune them.
pub fn default_kappa(id: ProblemId) -> f64 {
    match id {
        ProblemId::LinearAdvection => 0.5,
        ProblemId::Burgers => 0.5,
        ProblemId::ConcaveFlux => 0.5,
        ProblemId::BuckleyLeverett => 0.7,
    }
}

/// Exact advection solution u0(x - t) with exact floor-based periodic wrap.
pub fn exact_advection(u0: &dyn Fn(f64) -> f64, x: f64, t: f64, domain: Interval) -> f64 {
    let len = domain.length();
    let y = x - t;
    let wrapped = y - len * ((y - domain.a()) / len).floor();
    u0(wrapped)
}

/// Pre-break Burgers solution by Newton iteration on the implicit equation
/// u = u0(x - t u), converged to residual 1e-13 within 50 iterations.
pub fn burgers_characteristic(
    u0: &dyn Fn(f64) -> f64,
    u0_prime: &dyn Fn(f64) -> f64,
    x: f64,
    t: f64,
) -> Result<f64> {
    let mut u = u0(x);
    for _ in 0..50 {
        let g = u - u0(x - t * u);
        if g.abs() <= 1e-13 {
            return Ok(u);
        }
        let dg = 1.0 + t * u0_prime(x - t * u);
        u -= g / dg;
    }
    let g = u - u0(x - t * u);
    if g.abs() <= 1e-13 {
        Ok(u)
    } else {
        Err(Error::OracleDiverged { x, t })
    }
}

/// Configuration of the finite-volume reference oracle.
#[derive(Debug, Clone, Copy)]
pub struct FVOracleConfig {
    /// Number of uniform cells. Should be at least 10x the number of DG
    /// degrees of freedom of the run it serves as a reference for.
    pub cells: usize,
    pub cfl: f64,
}

impl Default for FVOracleConfig {
    fn default() -> Self {
        FVOracleConfig {
            cells: 20_000,
            cfl: 0.4,
        }
    }
}

/// Piecewise-constant reference profile (cell averages on a uniform grid).
#[derive(Debug, Clone)]
pub struct FvProfile {
    domain: Interval,
    cell_averages: Vec<f64>,
}

impl FvProfile {
    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn cell_averages(&self) -> &[f64] {
        &self.cell_averages
    }

    pub fn num_cells(&self) -> usize {
        self.cell_averages.len()
    }

    pub fn cell_width(&self) -> f64 {
        self.domain.length() / self.cell_averages.len() as f64
    }

    pub fn cell_center(&self, j: usize) -> f64 {
        self.domain.a() + (j as f64 + 0.5) * self.cell_width()
    }

    /// Piecewise-constant lookup at x (clamped to the domain).
    pub fn value_at(&self, x: f64) -> f64 {
        let idx = ((x - self.domain.a()) / self.cell_width()).floor() as isize;
        let idx = idx.clamp(0, self.cell_averages.len() as isize - 1) as usize;
        self.cell_averages[idx]
    }

    /// Writes the profile as `x_center,u` CSV lines.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "x_center,u")?;
        for j in 0..self.num_cells() {
            writeln!(w, "{:.16e},{:.16e}", self.cell_center(j), self.cell_averages[j])?;
        }
        Ok(())
    }

    fn total_variation(&self) -> f64 {
        let n = self.cell_averages.len();
        (0..n)
            .map(|j| (self.cell_averages[(j + 1) % n] - self.cell_averages[j]).abs())
            .sum()
    }
}

/// Rusanov flux with the local wave speed taken as the exact maximum of
/// |f'| over the bracket: endpoints plus any interior critical points.
fn rusanov_exact_speed(problem: &ProblemSpec, um: f64, up: f64) -> f64 {
    let flux = &problem.flux;
    let lo = um.min(up);
    let hi = um.max(up);
    let mut lambda = flux.f_prime(lo).abs().max(flux.f_prime(hi).abs());
    for &c in &problem.flux_critical_points {
        if lo < c && c < hi {
            lambda = lambda.max(flux.f_prime(c).abs());
        }
    }
    0.5 * (flux.f(up) + flux.f(um)) - 0.5 * lambda * (up - um)
}

/// Entropy-solution oracle: first-order finite-volume evolution of the
/// problem with the Rusanov flux and forward Euler on a uniform periodic
/// grid. The scheme is monotone, hence convergent to the entropy solution;
/// every step is checked to be total-variation diminishing and the profile
/// to respect the initial-data bounds.
pub fn fv_reference(problem: &ProblemSpec, t: f64, config: &FVOracleConfig) -> Result<FvProfile> {
    if config.cells < 100 {
        return Err(Error::invalid("the FV oracle needs at least 100 cells"));
    }
    if t < 0.0 {
        return Err(Error::invalid("oracle time must be nonnegative"));
    }
    let n = config.cells;
    let dx = problem.domain.length() / n as f64;
    // initial cell averages by 16-point Gauss quadrature per cell
    let (gx, gw) = quadrature::gauss_legendre(16);
    let mut u: Vec<f64> = (0..n)
        .map(|j| {
            let left = problem.domain.a() + j as f64 * dx;
            let mid = left + 0.5 * dx;
            0.5 * gx
                .iter()
                .zip(&gw)
                .map(|(&xi, &w)| w * problem.initial(mid + 0.5 * dx * xi))
                .sum::<f64>()
        })
        .collect();

    let u_min = u.iter().cloned().fold(f64::INFINITY, f64::min);
    let u_max = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut profile = FvProfile {
        domain: problem.domain,
        cell_averages: u.clone(),
    };
    if t == 0.0 {
        return Ok(profile);
    }

    let speed = problem.flux.global_wave_speed().max(1e-300);
    let dt_nominal = config.cfl * dx / speed;
    let mut time = 0.0;
    let mut flux_at = vec![0.0; n];
    let mut tv_prev = profile.total_variation();
    while time < t {
        let dt = dt_nominal.min(t - time);
        for j in 0..n {
            let left = (j + n - 1) % n;
            flux_at[j] = rusanov_exact_speed(problem, u[left], u[j]);
        }
        let lambda = dt / dx;
        for j in 0..n {
            let out = flux_at[(j + 1) % n];
            u[j] -= lambda * (out - flux_at[j]);
        }
        time += dt;

        profile.cell_averages.copy_from_slice(&u);
        let tv = profile.total_variation();
        assert!(
            tv <= tv_prev + 1e-12 * tv_prev.max(1.0),
            "FV oracle violated the TVD property: {tv_prev} -> {tv}"
        );
        tv_prev = tv;
    }
    for &v in &u {
        assert!(
            (u_min - 1e-12..=u_max + 1e-12).contains(&v),
            "FV oracle left the initial-data bounds: {v} not in [{u_min}, {u_max}]"
        );
    }
    profile.cell_averages = u;
    Ok(profile)
}

/// Reference solution to compare a DG state against.
pub enum RefSolution<'a> {
    /// A pointwise map x -> u(t, x) at the fixed comparison time.
    Map(&'a dyn Fn(f64) -> f64),
    /// A finite-volume profile, interpolated piecewise-constantly.
    Profile(&'a FvProfile),
}

impl RefSolution<'_> {
    fn eval(&self, x: f64) -> f64 {
        match self {
            RefSolution::Map(f) => f(x),
            RefSolution::Profile(p) => p.value_at(x),
        }
    }
}

/// Which L^p distance [`error_norms`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    LInf,
}

/// L^p distance between the DG solution and a reference, by oversampled
/// quadrature: each element is evaluated at 4(N+1) Gauss points.
pub fn error_norms(
    state: &SolutionState,
    basis: &ElementBasis,
    mesh: &Mesh,
    reference: &RefSolution<'_>,
    norm: Norm,
) -> f64 {
    let np = basis.num_nodes();
    let (gx, gw) = quadrature::gauss_legendre(4 * np);
    let bary = barycentric_weights(basis.nodes());
    // rows: quadrature points, cols: nodes
    let eval_rows: Vec<Vec<f64>> = gx
        .iter()
        .map(|&xi| lagrange_row(basis.nodes(), &bary, xi))
        .collect();

    let half_dx = 0.5 * mesh.element_width();
    let mut acc = 0.0f64;
    let mut sup = 0.0f64;
    for i in 0..state.num_elements() {
        let col = state.values.column(i);
        for (q, row) in eval_rows.iter().enumerate() {
            let u_h: f64 = row.iter().zip(col.iter()).map(|(&l, &u)| l * u).sum();
            let x = mesh.to_physical(i, gx[q]);
            let diff = (u_h - reference.eval(x)).abs();
            match norm {
                Norm::L1 => acc += gw[q] * half_dx * diff,
                Norm::L2 => acc += gw[q] * half_dx * diff * diff,
                Norm::LInf => sup = sup.max(diff),
            }
        }
    }
    match norm {
        Norm::L1 => acc,
        Norm::L2 => acc.sqrt(),
        Norm::LInf => sup,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::Interval;

    #[test]
    fn burgers_break_time_matches_slope_criterion() {
        let p = make_problem(ProblemId::Burgers);
        assert_eq!(p.break_time, Some(2.0));
        // t_b = -1 / min u0'(x), u0' = cos(2 pi x) / 2
        let min_slope = (0..=4000)
            .map(|i| i as f64 / 4000.0)
            .map(|x| (2.0 * std::f64::consts::PI * x).cos() / 2.0)
            .fold(f64::INFINITY, f64::min);
        assert!((-1.0 / min_slope - 2.0).abs() < 1e-6);
    }

    #[test]
    fn burgers_initial_range() {
        let p = make_problem(ProblemId::Burgers);
        let amp = 1.0 / (4.0 * std::f64::consts::PI);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..=4000 {
            let v = p.initial(i as f64 / 4000.0);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!((lo - (1.0 - amp)).abs() < 1e-6);
        assert!((hi - (1.0 + amp)).abs() < 1e-6);
        assert!((p.flux.global_wave_speed() - (1.0 + amp)).abs() < 1e-6);
    }

    #[test]
    fn buckley_leverett_flux_symmetry_point() {
        let p = make_problem(ProblemId::BuckleyLeverett);
        assert!((p.flux.f(0.5) - 0.5).abs() < 1e-15);
        // wave speed peaks at the critical point u = 1/2 with f'(1/2) = 2
        assert!((p.flux.global_wave_speed() - 2.0).abs() < 1e-4);
    }

    #[test]
    fn advection_wrap() {
        let p = make_problem(ProblemId::LinearAdvection);
        let u0 = |x: f64| p.initial(x);
        let dom = p.domain;
        assert_eq!(exact_advection(&u0, 0.5, 0.0, dom), 1.0);
        assert_eq!(exact_advection(&u0, 0.5, 1.0, dom), 1.0);
        assert_eq!(exact_advection(&u0, 0.9, 0.1, dom), 1.0);
        assert_eq!(exact_advection(&u0, 0.3, 0.0, dom), 0.0);
        // large-time wrap stays exact
        assert_eq!(exact_advection(&u0, 0.5, 10.0, dom), 1.0);
    }

    #[test]
    fn characteristic_solver_certificates() {
        let p = make_problem(ProblemId::Burgers);
        let u0 = |x: f64| p.initial(x);
        let tau = 2.0 * std::f64::consts::PI;
        let u0p = move |x: f64| 0.5 * (tau * x).cos();

        // t = 0 returns the initial condition
        for x in [0.0, 0.3, 0.77] {
            assert!((burgers_characteristic(&u0, &u0p, x, 0.0).unwrap() - u0(x)).abs() < 1e-13);
        }

        // constant data is an exact solution
        let c = |_: f64| 0.75;
        let cp = |_: f64| 0.0;
        assert_eq!(burgers_characteristic(&c, &cp, 0.4, 1.3).unwrap(), 0.75);

        // the returned value satisfies the implicit equation
        let u = burgers_characteristic(&u0, &u0p, 0.25, 1.0).unwrap();
        assert!((u - u0(0.25 - u)).abs() <= 1e-13);
    }

    #[test]
    fn oracle_initial_averages_and_bounds() {
        let p = make_problem(ProblemId::LinearAdvection);
        let cfg = FVOracleConfig {
            cells: 500,
            cfl: 0.4,
        };
        let profile = fv_reference(&p, 0.0, &cfg).unwrap();
        assert_eq!(profile.num_cells(), 500);
        assert!((profile.value_at(0.6) - 1.0).abs() < 1e-12);
        assert!(profile.value_at(0.1).abs() < 1e-12);

        // short evolution respects the maximum principle (also asserted
        // internally)
        let profile = fv_reference(&p, 0.1, &cfg).unwrap();
        for &v in profile.cell_averages() {
            assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn oracle_rejects_tiny_grids() {
        let p = make_problem(ProblemId::LinearAdvection);
        let cfg = FVOracleConfig { cells: 10, cfl: 0.4 };
        assert!(fv_reference(&p, 0.1, &cfg).is_err());
    }

    #[test]
    fn concave_flux_rarefaction_structure() {
        let p = make_problem(ProblemId::ConcaveFlux);
        let coarse = fv_reference(&p, 0.5, &FVOracleConfig { cells: 2000, cfl: 0.4 }).unwrap();
        // the fan spans (1, 2) at t = 0.5: u = (1 - (x - 1.5)/t)/2
        // monotone (within noise) across the fan
        let in_fan: Vec<usize> = (0..coarse.num_cells())
            .filter(|&j| {
                let x = coarse.cell_center(j);
                (1.05..=1.95).contains(&x)
            })
            .collect();
        for w in in_fan.windows(2) {
            assert!(
                coarse.cell_averages()[w[1]] <= coarse.cell_averages()[w[0]] + 1e-10,
                "fan profile not monotone"
            );
        }
        // no entropy-violating stationary jump at x = 1.5: the profile stays
        // close to the fan value there
        let fan = |x: f64| (1.0 - (x - 1.5) / 0.5) / 2.0;
        for x in [1.3, 1.5, 1.7] {
            assert!(
                (coarse.value_at(x) - fan(x)).abs() < 0.05,
                "fan mismatch at {x}: {} vs {}",
                coarse.value_at(x),
                fan(x)
            );
        }
        // the stationary admissible shock sits at x = 0.5
        assert!(coarse.value_at(0.45) < 0.05);
        assert!(coarse.value_at(0.55) > 0.95);
    }

    fn l1_between(fine: &FvProfile, coarse: &FvProfile) -> f64 {
        // fine has exactly twice the cells of coarse
        let dxf = fine.cell_width();
        (0..fine.num_cells())
            .map(|j| (fine.cell_averages()[j] - coarse.cell_averages()[j / 2]).abs() * dxf)
            .sum()
    }

    #[test]
    fn oracle_self_consistency_under_grid_doubling() {
        for (id, t) in [(ProblemId::ConcaveFlux, 0.5), (ProblemId::BuckleyLeverett, 0.25)] {
            let p = make_problem(id);
            let coarse = fv_reference(&p, t, &FVOracleConfig { cells: 10_000, cfl: 0.4 }).unwrap();
            let fine = fv_reference(&p, t, &FVOracleConfig { cells: 20_000, cfl: 0.4 }).unwrap();
            let d = l1_between(&fine, &coarse);
            assert!(d <= 2e-3, "{id:?}: L1 grid-doubling difference {d}");
        }
    }

    #[test]
    fn error_norm_basics() {
        let basis = ElementBasis::new(4).unwrap();
        let mesh = Mesh::new(Interval::UNIT, 10).unwrap();
        let state = SolutionState::sample(|x| x, &mesh, &basis);

        let same = |x: f64| x;
        assert!(error_norms(&state, &basis, &mesh, &RefSolution::Map(&same), Norm::L1) < 1e-14);
        assert!(error_norms(&state, &basis, &mesh, &RefSolution::Map(&same), Norm::LInf) < 1e-13);

        let offset = |x: f64| x + 0.25;
        let l1 = error_norms(&state, &basis, &mesh, &RefSolution::Map(&offset), Norm::L1);
        assert!((l1 - 0.25).abs() < 1e-13);
    }

    #[test]
    fn error_norm_spectral_interpolation() {
        let basis = ElementBasis::new(6).unwrap();
        let mesh = Mesh::new(Interval::UNIT, 20).unwrap();
        let tau = 2.0 * std::f64::consts::PI;
        let state = SolutionState::sample(|x| (tau * x).sin(), &mesh, &basis);
        let exact = move |x: f64| (tau * x).sin();
        let l2 = error_norms(&state, &basis, &mesh, &RefSolution::Map(&exact), Norm::L2);
        assert!(l2 <= 1e-8, "interpolation L2 error {l2}");
    }
}
