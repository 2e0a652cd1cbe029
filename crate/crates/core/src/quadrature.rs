//! Gauss-type quadrature rules and Legendre polynomial evaluation on [-1, 1].

/// Evaluates the Legendre polynomial P_l (normalised so that P_l(1) = 1) by
/// the three-term recurrence.
pub(crate) fn legendre(l: usize, x: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => x,
        _ => {
            let mut p_prev = 1.0;
            let mut p = x;
            for k in 1..l {
                let kf = k as f64;
                let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
                p_prev = p;
                p = p_next;
            }
            p
        }
    }
}

/// P_l and its derivative P_l' at x.
fn legendre_with_derivative(l: usize, x: f64) -> (f64, f64) {
    if l == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..l {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // Derivative from the recurrence (1 - x^2) P_l' = l (P_{l-1} - x P_l).
    let lf = l as f64;
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        // At the endpoints P_l'(±1) = ±^{l+1} l(l+1)/2.
        let sign = if x > 0.0 { 1.0 } else { (-1.0f64).powi(l as i32 + 1) };
        sign * lf * (lf + 1.0) / 2.0
    } else {
        lf * (p_prev - x * p) / (1.0 - x * x)
    };
    (p, dp)
}

/// Gauss–Legendre nodes and weights with `n` points on [-1, 1].
///
/// Exact for polynomials of degree up to 2n - 1.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature needs at least one point");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Legendre–Gauss–Lobatto nodes (roots of (1 - x^2) P_N') and weights
/// 2 / (N (N+1) P_N(x_k)^2) with N + 1 points on [-1, 1].
pub(crate) fn gauss_lobatto(degree: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(degree >= 1, "Lobatto rule needs degree >= 1");
    let n = degree;
    let np = n + 1;
    let mut nodes = vec![0.0; np];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    // Interior nodes: Newton iteration of the lglnodes update
    // x <- x - (x P_N - P_{N-1}) / ((N+1) P_N), seeded with Chebyshev extrema.
    for (k, node) in nodes.iter_mut().enumerate().take(n).skip(1) {
        let mut x = -(std::f64::consts::PI * k as f64 / n as f64).cos();
        for _ in 0..100 {
            let pn = legendre(n, x);
            let pn1 = legendre(n - 1, x);
            let dx = (x * pn - pn1) / (np as f64 * pn);
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        *node = x;
    }
    // Enforce exact symmetry about the origin.
    for k in 0..np / 2 {
        let s = 0.5 * (nodes[np - 1 - k] - nodes[k]);
        nodes[k] = -s;
        nodes[np - 1 - k] = s;
    }
    if np % 2 == 1 {
        nodes[np / 2] = 0.0;
    }
    let nf = n as f64;
    let weights = nodes
        .iter()
        .map(|&x| {
            let pn = legendre(n, x);
            2.0 / (nf * (nf + 1.0) * pn * pn)
        })
        .collect();
    (nodes, weights)
}

/// Integrates `f` over [a, b] with an `n`-point Gauss–Legendre rule.
pub(crate) fn integrate<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, f: F) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    nodes
        .iter()
        .zip(&weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(0, 0.3), 1.0);
        assert_eq!(legendre(1, 0.3), 0.3);
        let x = 0.42;
        assert!((legendre(2, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        assert!((legendre(5, 1.0) - 1.0).abs() < 1e-15);
        assert!((legendre(5, -1.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_exactness() {
        // n points integrate x^(2n-1) and below exactly.
        for n in 1..=12 {
            for deg in 0..2 * n {
                let val = integrate(0.0, 1.0, n, |x| x.powi(deg as i32));
                let exact = 1.0 / (deg as f64 + 1.0);
                assert!(
                    (val - exact).abs() < 1e-13,
                    "n = {n}, degree {deg}: {val} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        for n in 1..=20 {
            let (_, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lobatto_small_cases() {
        let (x, w) = gauss_lobatto(1);
        assert_eq!(x, vec![-1.0, 1.0]);
        assert_eq!(w, vec![1.0, 1.0]);

        let (x, w) = gauss_lobatto(2);
        assert_eq!(x[1], 0.0);
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w[1] - 4.0 / 3.0).abs() < 1e-15);

        // Interior nodes of the N = 4 rule are ±sqrt(3/7).
        let (x, _) = gauss_lobatto(4);
        let r = (3.0f64 / 7.0).sqrt();
        assert!((x[1] + r).abs() < 1e-14);
        assert!((x[3] - r).abs() < 1e-14);
    }

    #[test]
    fn lobatto_exactness() {
        // N + 1 Lobatto points integrate degree 2N - 1 exactly.
        for n in 1..=10 {
            let (x, w) = gauss_lobatto(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..2 * n {
                let val: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&x, &w)| w * x.powi(deg as i32))
                    .sum();
                let exact = if deg % 2 == 0 {
                    2.0 / (deg as f64 + 1.0)
                } else {
                    0.0
                };
                assert!((val - exact).abs() < 1e-12, "N = {n}, degree {deg}");
            }
        }
    }
}
