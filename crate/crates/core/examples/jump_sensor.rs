//! The polynomial-annihilation discontinuity sensor.
//!
//! Shows the raw PA operators converging to a jump strength, the two-order
//! element sensor distinguishing smooth from discontinuous data on
//! Gauss–Lobatto nodes, and the piecewise-linear ramp turning the sensor
//! ratio into the blend parameter alpha.
//!
//! Run with: cargo run --example jump_sensor

use bernstein_dg::{element_sensor, lgl_nodes_weights, pa_apply, ramp, SensorConfig, Stencil};

fn main() {
    // PA jump estimation: s has a unit jump at 0.03 on a smooth background
    println!("PA jump estimates for s = sin(x) + H(x - 0.03), jump strength 1:");
    for level in 0..4 {
        let h = 0.4 / 2f64.powi(level);
        let scaled_pos = 0.03 * h / 0.4;
        let st = Stencil::new(vec![-2.0 * h, -h, h, 2.0 * h], 0.0).unwrap();
        let values: Vec<f64> = st
            .points()
            .iter()
            .map(|&x| x.sin() + if x > scaled_pos { 1.0 } else { 0.0 })
            .collect();
        let estimate = pa_apply(&values, &st).unwrap();
        println!("  h = {h:<6}: L_3[s](0) = {estimate:.6} (error {:+.2e})", estimate - 1.0);
    }

    // the two-order element sensor at N = 5
    let (nodes, _) = lgl_nodes_weights(5);
    let config = SensorConfig::new(0.5).unwrap();
    type Profile = (&'static str, fn(f64) -> f64);
    let cases: [Profile; 4] = [
        ("constant", |_| 0.7),
        ("gentle cubic", |x| 0.1 * x * x * x + x),
        ("steep tanh", |x| (8.0 * x).tanh()),
        ("step", |x| if x >= 0.1 { 1.0 } else { 0.0 }),
    ];
    println!();
    println!("element sensor on N = 5 Gauss-Lobatto data (kappa = 0.5):");
    println!("{:>14} {:>10} {:>10} {:>8} {:>7}", "data", "S1", "S3", "ratio", "alpha");
    for (name, f) in &cases {
        let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        let r = element_sensor(&values, &nodes, &config).unwrap();
        println!(
            "{name:>14} {:>10.3e} {:>10.3e} {:>8.3} {:>7.3}",
            r.s1, r.s3, r.ratio, r.alpha
        );
    }

    // the ramp function
    println!();
    println!("ramp alpha(S) for kappa = 0.5:");
    for i in 0..=8 {
        let s = 1.5 * i as f64 / 8.0;
        println!("  S = {s:<6.3} -> alpha = {:.3}", ramp(s, 0.5).unwrap());
    }
}
