//! Enforcing solution bounds with the modified Bernstein operator.
//!
//! Data overshooting the physical range [0, 1] is reconstructed twice: with
//! the plain operator (which only preserves the bounds of its samples) and
//! with the bound-enforcing operator B_N^{(m,M)} whose coefficients are
//! clipped into [m, M], guaranteeing m <= B <= M everywhere. This is how
//! positivity of quantities like density or water height is enforced.
//!
//! Run with: cargo run --example bounded_reconstruction

use bernstein_dg::{reconstruct, reconstruct_bounded, BoundsSpec, Interval};

fn main() {
    let iv = Interval::UNIT;
    let degree = 8;
    // an overshooting shock profile, e.g. a Gibbs-polluted saturation field
    let samples: Vec<f64> = (0..=degree)
        .map(|n| {
            let x = n as f64 / degree as f64;
            let step = if x >= 0.45 { 1.0 } else { 0.0 };
            step + 0.18 * (std::f64::consts::PI * 9.0 * x).sin()
        })
        .collect();
    println!("samples: {samples:.3?}");

    let plain = reconstruct(&samples, iv).unwrap();
    let bounds = BoundsSpec::new(0.0, 1.0).unwrap();
    let clipped = reconstruct_bounded(&samples, iv, bounds).unwrap();
    println!("clipped coefficients: {:.3?}", clipped.coeffs());

    let grid: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    let range = |p: &bernstein_dg::BernsteinPoly| {
        grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            let v = p.eval(x).unwrap();
            (lo.min(v), hi.max(v))
        })
    };
    let (plo, phi) = range(&plain);
    let (clo, chi) = range(&clipped);
    println!("plain   B_N[u] range on a 1000-point grid: [{plo:.4}, {phi:.4}]");
    println!("bounded B_N^(0,1)[u] range:                [{clo:.4}, {chi:.4}]");
    assert!(clo >= -1e-12 && chi <= 1.0 + 1e-12);

    println!();
    println!("{:>6} {:>10} {:>10}", "x", "plain", "bounded");
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        println!(
            "{x:>6.2} {:>10.4} {:>10.4}",
            plain.eval(x).unwrap(),
            clipped.eval(x).unwrap()
        );
    }
}
