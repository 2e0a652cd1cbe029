//! Advected box profile: Bernstein capture vs mean filter vs no filter.
//!
//! Solves u_t + u_x = 0 on [0, 1] with the discontinuous box initial
//! condition at N = 4, I = 40 up to t = 1 (one full period) and writes the
//! usual CSV outputs for each filter under out/linear_advection/. The
//! summary shows the Bernstein procedure holding the profile in [0, 1] with
//! sharp fronts while the mean filter smears them.
//!
//! Run with: cargo run --release --example linear_advection

use bernstein_dg::{run_experiment, ExperimentConfig, FilterKind, ProblemId};

fn main() {
    for filter in [FilterKind::Bernstein, FilterKind::Mean, FilterKind::None] {
        let mut cfg = ExperimentConfig::new(
            ProblemId::LinearAdvection,
            4,
            40,
            1.0,
            format!("out/linear_advection/{}", filter.name()),
        );
        cfg.filter = filter;
        match run_experiment(&cfg) {
            Ok(summary) => println!("{:<10} {}", filter.name(), summary.summary_line()),
            Err(e) => println!("{:<10} failed: {e}", filter.name()),
        }
    }
    println!();
    println!("per-node solutions and references: out/linear_advection/<filter>/solution.csv");
    println!("sensor history:                    out/linear_advection/<filter>/sensor.csv");
    println!("per-step diagnostics:              out/linear_advection/<filter>/diagnostics.csv");
}
