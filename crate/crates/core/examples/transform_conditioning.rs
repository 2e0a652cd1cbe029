//! Conditioning of the Bernstein change-of-basis transforms.
//!
//! Prints the spectral condition numbers of the transformation matrix for
//! the nodal Lagrange (Gauss–Lobatto) and modal Legendre targets over the
//! practical degree range, plus a round-trip accuracy check. The numbers
//! stay moderate for N <= 10, which is what makes the Bernstein procedure
//! cheap to bolt onto an existing nodal or modal solver.
//!
//! Run with: cargo run --example transform_conditioning

use bernstein_dg::{build_transform, reconstruct, Interval, TargetBasis};
use nalgebra::DVector;

fn main() {
    println!("{:>3} {:>14} {:>14}", "N", "Lagrange", "Legendre");
    for degree in 1..=10 {
        let lag = build_transform(degree, TargetBasis::LagrangeGaussLobatto)
            .condition_number()
            .unwrap();
        let leg = build_transform(degree, TargetBasis::Legendre)
            .condition_number()
            .unwrap();
        println!("{degree:>3} {lag:>14.4} {leg:>14.4}");
    }

    // round trip: Bernstein -> nodal -> Bernstein at N = 8
    let degree = 8;
    let samples: Vec<f64> = (0..=degree)
        .map(|n| ((n as f64 / degree as f64) * 5.0).sin())
        .collect();
    let p = reconstruct(&samples, Interval::REFERENCE).unwrap();
    let t = build_transform(degree, TargetBasis::LagrangeGaussLobatto);
    let nodal = t.to_basis_coeffs(&p).unwrap();
    let back = t
        .entries()
        .clone()
        .lu()
        .solve(&DVector::from_column_slice(&nodal))
        .unwrap();
    let err = back
        .iter()
        .zip(p.coeffs())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max)
        / p.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    println!();
    println!("round trip Bernstein -> nodal -> Bernstein at N = {degree}: max relative error {err:.2e}");
}
