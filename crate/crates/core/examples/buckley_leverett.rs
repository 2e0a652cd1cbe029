//! The Buckley–Leverett compound wave.
//!
//! The nonconvex flux u^2/(u^2 + (1-u)^2) produces Riemann solutions that
//! combine a shock and a rarefaction. Without stabilisation the DG scheme
//! is polluted by heavy oscillations; the Bernstein procedure keeps the
//! solution essentially inside [0, 1] and tracks the compound structure.
//! The bound-enforcing variant pins the range exactly.
//!
//! Run with: cargo run --release --example buckley_leverett

use bernstein_dg::capture::CaptureConfig;
use bernstein_dg::problems::{
    error_norms, fv_reference, make_problem, FVOracleConfig, Norm, ProblemId, RefSolution,
};
use bernstein_dg::run::{discrete_total_variation, run};
use bernstein_dg::sensor::SensorConfig;
use bernstein_dg::solver::{ElementBasis, Mesh, RunConfig};
use bernstein_dg::{default_kappa, BoundsSpec, Error};

fn main() {
    let problem = make_problem(ProblemId::BuckleyLeverett);
    let t = 0.25;
    let kappa = default_kappa(ProblemId::BuckleyLeverett);
    let oracle = fv_reference(&problem, t, &FVOracleConfig { cells: 10_000, cfl: 0.4 }).unwrap();

    for degree in [4usize, 5] {
        let basis = ElementBasis::new(degree).unwrap();
        let mesh = Mesh::new(problem.domain, 80).unwrap();
        let sensor = SensorConfig::new(kappa).unwrap();
        let cases = [
            ("bernstein", Some(CaptureConfig::bernstein(sensor))),
            (
                "bernstein [0,1]",
                Some(CaptureConfig::bernstein_bounded(
                    sensor,
                    BoundsSpec::new(0.0, 1.0).unwrap(),
                )),
            ),
            ("mean", Some(CaptureConfig::mean_filter(sensor))),
            ("none", Some(CaptureConfig::none(sensor))),
        ];
        println!("N = {degree}, I = 80, t = {t}, kappa = {kappa}:");
        for (label, capture) in cases {
            let run_config = RunConfig::new(mesh.clone(), degree, t).unwrap();
            match run(&problem, &run_config, &capture.unwrap()) {
                Ok((state, _)) => {
                    let l1 =
                        error_norms(&state, &basis, &mesh, &RefSolution::Profile(&oracle), Norm::L1);
                    println!(
                        "  {label:<16} L1 = {l1:.4}  range [{:+.4}, {:+.4}]  TV {:.2}",
                        state.min(),
                        state.max(),
                        discrete_total_variation(&state)
                    );
                }
                Err(Error::BlowUp { time, element }) => {
                    println!("  {label:<16} blew up at t = {time:.3e} in element {element}");
                }
                Err(e) => println!("  {label:<16} failed: {e}"),
            }
        }
        println!();
    }
}
