//! Burgers' equation through wave breaking.
//!
//! The smooth initial condition u0 = 1 + sin(2 pi x)/(4 pi) steepens and
//! breaks at t_b = 2. Before breaking the sensor must stay passive (the
//! scheme keeps its spectral accuracy, checked against the characteristic
//! solution of u = u0(x - t u)); after breaking the capture holds the shock
//! without oscillations (checked against a fine finite-volume oracle).
//!
//! Run with: cargo run --release --example burgers_shock

use bernstein_dg::capture::CaptureConfig;
use bernstein_dg::problems::{
    burgers_characteristic, burgers_initial_prime, error_norms, fv_reference, make_problem,
    FVOracleConfig, Norm, ProblemId, RefSolution,
};
use bernstein_dg::run::run;
use bernstein_dg::sensor::SensorConfig;
use bernstein_dg::solver::{ElementBasis, Mesh, RunConfig};

fn main() {
    let problem = make_problem(ProblemId::Burgers);
    let basis = ElementBasis::new(4).unwrap();
    let mesh = Mesh::new(problem.domain, 40).unwrap();
    let capture = CaptureConfig::bernstein(SensorConfig::new(0.5).unwrap());

    // pre-break: characteristic reference, expect spectral accuracy
    let run_config = RunConfig::new(mesh.clone(), 4, 1.0).unwrap();
    let (state, diagnostics) = run(&problem, &run_config, &capture).unwrap();
    let u0 = |x: f64| problem.initial(x);
    let u0p = burgers_initial_prime();
    let exact = |x: f64| burgers_characteristic(&u0, &u0p, x, 1.0).unwrap();
    let l2 = error_norms(&state, &basis, &mesh, &RefSolution::Map(&exact), Norm::L2);
    println!(
        "t = 1 (smooth): L2 error vs characteristics {l2:.3e}, elements ever troubled: {}",
        diagnostics.any_troubled()
    );

    // post-break: finite-volume oracle reference
    let run_config = RunConfig::new(mesh.clone(), 4, 3.0).unwrap();
    let (state, diagnostics) = run(&problem, &run_config, &capture).unwrap();
    let oracle = fv_reference(&problem, 3.0, &FVOracleConfig { cells: 5000, cfl: 0.4 }).unwrap();
    let l1 = error_norms(&state, &basis, &mesh, &RefSolution::Profile(&oracle), Norm::L1);
    let troubled_share = diagnostics.steps.iter().filter(|s| s.troubled > 0).count() as f64
        / diagnostics.steps.len() as f64;
    println!(
        "t = 3 (shocked): L1 error vs FV oracle {l1:.3e}, range [{:.4}, {:.4}]",
        state.min(),
        state.max()
    );
    println!("                 capture active in {:.0}% of the steps", 100.0 * troubled_share);

    // a glance at the shock region
    println!();
    println!("{:>7} {:>10} {:>10}", "x", "DG", "oracle");
    for i in 0..=12 {
        let x = 0.35 + 0.3 * i as f64 / 12.0;
        let elem = ((x / mesh.element_width()) as usize).min(39);
        let xi = 2.0 * (x - mesh.to_physical(elem, -1.0)) / mesh.element_width() - 1.0;
        // nodal interpolation via the basis sample machinery is overkill
        // here; nearest node is plenty for a table
        let (node, _) = basis
            .nodes()
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - xi).abs().partial_cmp(&(b.1 - xi).abs()).unwrap())
            .unwrap();
        println!(
            "{x:>7.3} {:>10.4} {:>10.4}",
            state.values[(node, elem)],
            oracle.value_at(x)
        );
    }
}
