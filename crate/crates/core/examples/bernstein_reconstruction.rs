//! Bernstein reconstruction of a discontinuous profile.
//!
//! Samples sign(x) at the equispaced points of [-1, 1] for several degrees
//! and prints the reconstruction alongside the convex blends
//! u^(alpha) = alpha u + (1 - alpha) B_N[u] that the shock-capturing
//! procedure uses. The reconstruction is monotone, overshoot-free and
//! interpolates the endpoint values.
//!
//! Run with: cargo run --example bernstein_reconstruction

use bernstein_dg::{blend, reconstruct, Interval};

fn main() {
    let iv = Interval::REFERENCE;
    for degree in [1usize, 5, 9] {
        let samples: Vec<f64> = (0..=degree)
            .map(|n| {
                let x = -1.0 + 2.0 * n as f64 / degree as f64;
                if x >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        let p = reconstruct(&samples, iv).unwrap();
        println!("degree N = {degree}, B_N[sign] on a coarse grid:");
        println!("{:>8} {:>10} {:>10}", "x", "sign(x)", "B_N[sign]");
        let mut max_overshoot = 0.0f64;
        for i in 0..=16 {
            let x = -1.0 + 2.0 * i as f64 / 16.0;
            let v = p.eval(x).unwrap();
            max_overshoot = max_overshoot.max(v.abs() - 1.0);
            println!("{x:>8.3} {:>10.3} {v:>10.4}", if x >= 0.0 { 1.0 } else { -1.0 });
        }
        println!("  max |B_N| - 1 on the grid: {max_overshoot:.2e} (never above 0)");
        println!("  total variation: {:.6} (samples have TV 2)", p.total_variation());
        println!();
    }

    // the capture step on "polluted" data: sample values carrying Gibbs-like
    // wiggles, their reconstruction evaluated back at the sample points, and
    // the convex blends in between
    let degree = 5;
    let points: Vec<f64> = (0..=degree)
        .map(|n| -1.0 + 2.0 * n as f64 / degree as f64)
        .collect();
    let polluted: Vec<f64> = points
        .iter()
        .map(|&x| if x >= 0.0 { 1.0 } else { -1.0 } + 0.3 * (8.0 * x).sin())
        .collect();
    let p = reconstruct(&polluted, iv).unwrap();
    let recon: Vec<f64> = points.iter().map(|&x| p.eval(x).unwrap()).collect();
    println!("alpha blends of polluted point values with their reconstruction:");
    println!("  polluted    : {polluted:.3?}");
    for alpha in [1.0, 0.5, 0.0] {
        let blended = blend(&polluted, &recon, alpha).unwrap();
        println!("  alpha = {alpha:<4}: {blended:.3?}");
    }
}
