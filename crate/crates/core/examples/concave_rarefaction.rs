//! Entropy-solution selection for a concave flux.
//!
//! u_t + (u(1-u))_x = 0 with a box initial condition develops a stationary
//! shock at x = 0.5 and a rarefaction fan on (1, 2). An unstabilised
//! high-order scheme tends to keep an unphysical expansion shock instead of
//! the fan; the Bernstein procedure captures the fan, and refining the mesh
//! drives the L1 distance to a monotone finite-volume oracle down.
//!
//! Run with: cargo run --release --example concave_rarefaction

use bernstein_dg::capture::CaptureConfig;
use bernstein_dg::problems::{
    error_norms, fv_reference, make_problem, FVOracleConfig, Norm, ProblemId, RefSolution,
};
use bernstein_dg::run::run;
use bernstein_dg::sensor::SensorConfig;
use bernstein_dg::solver::{ElementBasis, Mesh, RunConfig};

fn main() {
    let problem = make_problem(ProblemId::ConcaveFlux);
    let t = 0.5;
    let oracle = fv_reference(&problem, t, &FVOracleConfig { cells: 10_000, cfl: 0.4 }).unwrap();
    let basis = ElementBasis::new(5).unwrap();

    println!("N = 5, Bernstein capture, t = {t}:");
    println!("{:>5} {:>12} {:>22}", "I", "L1 vs oracle", "solution range");
    for elements in [20usize, 40, 80] {
        let mesh = Mesh::new(problem.domain, elements).unwrap();
        let run_config = RunConfig::new(mesh.clone(), 5, t).unwrap();
        let capture = CaptureConfig::bernstein(SensorConfig::new(0.5).unwrap());
        let (state, _) = run(&problem, &run_config, &capture).unwrap();
        let l1 = error_norms(&state, &basis, &mesh, &RefSolution::Profile(&oracle), Norm::L1);
        println!(
            "{elements:>5} {l1:>12.5} {:>22}",
            format!("[{:.4}, {:.4}]", state.min(), state.max())
        );
    }

    // the fan profile itself at I = 80
    let mesh = Mesh::new(problem.domain, 80).unwrap();
    let run_config = RunConfig::new(mesh.clone(), 5, t).unwrap();
    let capture = CaptureConfig::bernstein(SensorConfig::new(0.5).unwrap());
    let (state, _) = run(&problem, &run_config, &capture).unwrap();
    println!();
    println!("rarefaction fan around x in (1, 2) (exact u = (1 - (x - 1.5)/t)/2):");
    println!("{:>7} {:>10} {:>10} {:>10}", "x", "DG mean", "oracle", "exact fan");
    for i in 0..=10 {
        let x = 1.05 + 0.9 * i as f64 / 10.0;
        let elem = ((x / mesh.element_width()) as usize).min(79);
        let dg_mean: f64 = state
            .values
            .column(elem)
            .iter()
            .zip(basis.weights())
            .map(|(&u, &w)| 0.5 * w * u)
            .sum();
        let fan = ((1.0 - (x - 1.5) / t) / 2.0).clamp(0.0, 1.0);
        println!("{x:>7.3} {dg_mean:>10.4} {:>10.4} {fan:>10.4}", oracle.value_at(x));
    }
}
