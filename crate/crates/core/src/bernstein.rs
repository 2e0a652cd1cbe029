//! Bernstein basis evaluation, plain and bound-enforcing Bernstein
//! reconstruction, basis transforms, and derivative / total-variation /
//! entropy diagnostics.
//!
//! A polynomial in Bernstein form of degree N on [a, b] is
//! `B(x) = sum_n beta_n b_{n,N}(x)` with
//! `b_{n,N}(x) = binom(N,n) (x-a)^n (b-x)^{N-n} / (b-a)^N`.
//! The basis is nonnegative and forms a partition of unity, so the
//! polynomial is enclosed by the range of its coefficients. The Bernstein
//! reconstruction of a function takes its values at N + 1 equispaced points
//! as coefficients; it reduces total variation and preserves monotonicity,
//! which is what the shock-capturing procedure in [`crate::capture`] builds
//! on.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quadrature;

/// A nonempty interval [a, b] with a < b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    /// The unit interval [0, 1].
    pub const UNIT: Interval = Interval { a: 0.0, b: 1.0 };
    /// The reference element [-1, 1].
    pub const REFERENCE: Interval = Interval { a: -1.0, b: 1.0 };

    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!(
                "interval endpoints must be finite with a < b, got [{a}, {b}]"
            )));
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// binom(n, k) as f64, computed multiplicatively.
fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Evaluates the Bernstein basis polynomial b_{n,N} at x on the interval.
///
/// Note the normalisation (b - a)^N in the denominator, which makes the
/// basis a partition of unity on any interval.
pub fn basis_eval(n: usize, degree: usize, x: f64, iv: Interval) -> Result<f64> {
    if n > degree {
        return Err(Error::invalid(format!(
            "basis index {n} out of range for degree {degree}"
        )));
    }
    let len = iv.length();
    Ok(binomial(degree, n) * (x - iv.a).powi(n as i32) * (iv.b - x).powi((degree - n) as i32)
        / len.powi(degree as i32))
}

/// Lower and upper solution bounds m <= M for the bound-enforcing operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsSpec {
    lower: f64,
    upper: f64,
}

impl BoundsSpec {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::invalid(format!(
                "bounds require lower <= upper, got [{lower}, {upper}]"
            )));
        }
        Ok(BoundsSpec { lower, upper })
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn clip(&self, v: f64) -> f64 {
        v.clamp(self.lower, self.upper)
    }
}

/// A degree-N polynomial stored by its Bernstein coefficients over an
/// interval.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly {
    coeffs: Vec<f64>,
    interval: Interval,
}

impl BernsteinPoly {
    /// Builds a polynomial from its Bernstein coefficients (degree =
    /// `coeffs.len() - 1`).
    pub fn new(coeffs: Vec<f64>, interval: Interval) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a Bernstein polynomial needs at least one coefficient"));
        }
        Ok(BernsteinPoly { coeffs, interval })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// Evaluates the polynomial at x by the de Casteljau recursion.
    ///
    /// The recursion only forms convex combinations of the coefficients, so
    /// the result stays inside [min coeff, max coeff].
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.interval.contains(x) {
            return Err(Error::invalid(format!(
                "x = {x} outside the polynomial's interval [{}, {}]",
                self.interval.a, self.interval.b
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let t = (x - self.interval.a) / self.interval.length();
        de_casteljau(&self.coeffs, t)
    }

    /// Derivative as a Bernstein polynomial of degree N - 1 on the same
    /// interval, with coefficients N (beta_{n+1} - beta_n) / (b - a).
    /// The derivative of a degree-0 polynomial is the zero polynomial of
    /// degree 0.
    pub fn derivative(&self) -> BernsteinPoly {
        let n = self.degree();
        if n == 0 {
            return BernsteinPoly {
                coeffs: vec![0.0],
                interval: self.interval,
            };
        }
        let scale = n as f64 / self.interval.length();
        let coeffs = self
            .coeffs
            .windows(2)
            .map(|w| scale * (w[1] - w[0]))
            .collect();
        BernsteinPoly {
            coeffs,
            interval: self.interval,
        }
    }

    /// Total variation of the polynomial over its interval, i.e. the
    /// integral of |p'|.
    ///
    /// Sign changes of the derivative are isolated by subdividing its
    /// Bernstein coefficients (a segment whose coefficients have one sign is
    /// monotone) with bisection down to 1e-12 on the abscissae; the
    /// variation is the sum of |p(r_{i+1}) - p(r_i)| over the resulting
    /// monotone segments.
    pub fn total_variation(&self) -> f64 {
        let deriv = self.derivative();
        let mut breaks = vec![self.interval.a];
        // Stack of (t0, t1, derivative coefficients restricted to [t0, t1]).
        let mut stack = vec![(0.0_f64, 1.0_f64, deriv.coeffs.clone())];
        let len = self.interval.length();
        while let Some((t0, t1, coeffs)) = stack.pop() {
            let min = coeffs.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = coeffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if min >= 0.0 || max <= 0.0 {
                continue; // single-signed derivative, monotone segment
            }
            // Record every straddling segment's midpoint: a sign change on
            // the boundary of two single-signed halves would otherwise be
            // lost, and redundant breakpoints inside monotone stretches do
            // not change the variation sum.
            let tm = 0.5 * (t0 + t1);
            breaks.push(self.interval.a + tm * len);
            if (t1 - t0) * len <= 1e-12 {
                continue;
            }
            let (left, right) = split_half(&coeffs);
            stack.push((tm, t1, right));
            stack.push((t0, tm, left));
        }
        breaks.sort_by(|p, q| p.partial_cmp(q).unwrap());
        breaks.push(self.interval.b);
        breaks
            .windows(2)
            .map(|w| (self.eval_unchecked(w[1]) - self.eval_unchecked(w[0])).abs())
            .sum()
    }

    /// Integral of U(p(x)) over the interval, by Gauss–Legendre quadrature
    /// with 2 degree + 8 points (exact whenever U o p is a polynomial that
    /// the rule resolves, in particular for U(u) = u^2).
    pub fn total_entropy(&self, entropy: &EntropyFunctional) -> f64 {
        let points = 2 * self.degree() + 8;
        quadrature::integrate(self.interval.a, self.interval.b, points, |x| {
            entropy.evaluate(self.eval_unchecked(x))
        })
    }
}

/// One step of de Casteljau at parameter t in [0, 1].
fn de_casteljau(coeffs: &[f64], t: f64) -> f64 {
    let mut beta = coeffs.to_vec();
    let n = beta.len();
    for j in 1..n {
        for k in 0..n - j {
            beta[k] = beta[k] * (1.0 - t) + beta[k + 1] * t;
        }
    }
    beta[0]
}

/// Splits a Bernstein coefficient vector at the parameter midpoint,
/// returning the coefficients of the restriction to the left and right
/// halves.
fn split_half(coeffs: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = coeffs.len();
    let mut beta = coeffs.to_vec();
    let mut left = vec![0.0; n];
    let mut right = vec![0.0; n];
    left[0] = beta[0];
    right[n - 1] = beta[n - 1];
    for j in 1..n {
        for k in 0..n - j {
            beta[k] = 0.5 * (beta[k] + beta[k + 1]);
        }
        left[j] = beta[0];
        right[n - 1 - j] = beta[n - 1 - j];
    }
    (left, right)
}

/// Bernstein reconstruction: the samples u(a + (n/N)(b - a)), n = 0..N,
/// become the Bernstein coefficients of a degree-N polynomial.
///
/// The result interpolates the samples at both endpoints and is enclosed by
/// their range.
pub fn reconstruct(samples: &[f64], iv: Interval) -> Result<BernsteinPoly> {
    if samples.len() < 2 {
        return Err(Error::invalid(format!(
            "Bernstein reconstruction needs at least 2 samples (degree >= 1), got {}",
            samples.len()
        )));
    }
    BernsteinPoly::new(samples.to_vec(), iv)
}

/// Bound-enforcing Bernstein reconstruction: samples are clipped into
/// [m, M] before becoming coefficients, so the polynomial satisfies
/// m <= B <= M everywhere on the interval.
pub fn reconstruct_bounded(
    samples: &[f64],
    iv: Interval,
    bounds: BoundsSpec,
) -> Result<BernsteinPoly> {
    if samples.len() < 2 {
        return Err(Error::invalid(format!(
            "Bernstein reconstruction needs at least 2 samples (degree >= 1), got {}",
            samples.len()
        )));
    }
    let coeffs = samples.iter().map(|&s| bounds.clip(s)).collect();
    BernsteinPoly::new(coeffs, iv)
}

/// Componentwise convex combination alpha * original + (1 - alpha) *
/// bernstein. alpha = 1 returns the original exactly, alpha = 0 the
/// reconstruction.
pub fn blend(original: &[f64], bernstein: &[f64], alpha: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("blend parameter alpha = {alpha} outside [0, 1]")));
    }
    if original.len() != bernstein.len() {
        return Err(Error::invalid(format!(
            "blend length mismatch: {} vs {}",
            original.len(),
            bernstein.len()
        )));
    }
    Ok(original
        .iter()
        .zip(bernstein)
        .map(|(&u, &ub)| {
            if alpha == 1.0 {
                u
            } else if alpha == 0.0 {
                ub
            } else {
                alpha * u + (1.0 - alpha) * ub
            }
        })
        .collect())
}

/// Target basis of a change of basis from Bernstein coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetBasis {
    /// Nodal Lagrange basis at the Gauss–Lobatto points of [-1, 1].
    LagrangeGaussLobatto,
    /// Modal Legendre basis (P_l with P_l(1) = 1) on [-1, 1].
    Legendre,
}

/// (N+1) x (N+1) change-of-basis map from Bernstein coefficients on [-1, 1]
/// to a nodal or modal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    entries: DMatrix<f64>,
    target_basis: TargetBasis,
}

impl TransformMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn target_basis(&self) -> TargetBasis {
        self.target_basis
    }

    /// Applies the transform to the polynomial's Bernstein coefficients,
    /// returning the coefficients w.r.t. the target basis.
    pub fn to_basis_coeffs(&self, p: &BernsteinPoly) -> Result<Vec<f64>> {
        if self.size() != p.degree() + 1 {
            return Err(Error::invalid(format!(
                "transform of size {} cannot act on degree {}",
                self.size(),
                p.degree()
            )));
        }
        let b = DVector::from_column_slice(p.coeffs());
        Ok((&self.entries * b).as_slice().to_vec())
    }

    /// Spectral-norm condition number sigma_max(T) * sigma_max(T^{-1}),
    /// with the singular values obtained from the eigenvalues of T^T T.
    pub fn condition_number(&self) -> Result<f64> {
        spectral_condition(&self.entries)
    }
}

pub(crate) fn spectral_condition(m: &DMatrix<f64>) -> Result<f64> {
    let inv = m.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let sigma_max = |a: &DMatrix<f64>| -> Result<f64> {
        let gram = a.transpose() * a;
        let eigs = gram.symmetric_eigen().eigenvalues;
        let lambda_max = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !(lambda_max > 0.0) {
            return Err(Error::SingularMatrix);
        }
        Ok(lambda_max.sqrt())
    };
    Ok(sigma_max(m)? * sigma_max(&inv)?)
}

/// Builds the change-of-basis matrix from Bernstein coefficients on [-1, 1]
/// to the requested basis, for degree N >= 1.
///
/// For the Lagrange target, entry (k, n) is b_{n,N} evaluated at the k-th
/// Gauss–Lobatto node. For the Legendre target the matrix is the inverse of
/// the Legendre Vandermonde at the equispaced points -1 + 2n/N, i.e. the
/// map taking values at those points to the Legendre coefficients of the
/// polynomial through them.
pub fn build_transform(degree: usize, basis: TargetBasis) -> TransformMatrix {
    assert!(degree >= 1, "transform needs degree >= 1");
    let np = degree + 1;
    let entries = match basis {
        TargetBasis::LagrangeGaussLobatto => {
            let (nodes, _) = quadrature::gauss_lobatto(degree);
            DMatrix::from_fn(np, np, |k, n| {
                basis_eval(n, degree, nodes[k], Interval::REFERENCE).unwrap()
            })
        }
        TargetBasis::Legendre => {
            let vandermonde = DMatrix::from_fn(np, np, |m, l| {
                let x = -1.0 + 2.0 * m as f64 / degree as f64;
                quadrature::legendre(l, x)
            });
            vandermonde
                .try_inverse()
                .expect("equispaced Legendre Vandermonde is nonsingular")
        }
    };
    TransformMatrix {
        entries,
        target_basis: basis,
    }
}

/// A convex C^1 entropy function U; the default is the L^2 entropy
/// U(u) = u^2. Convexity is the caller's responsibility.
pub struct EntropyFunctional {
    evaluate: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl EntropyFunctional {
    pub fn new(evaluate: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        EntropyFunctional {
            evaluate: Box::new(evaluate),
        }
    }

    /// The L^2 entropy U(u) = u^2.
    pub fn l2() -> Self {
        EntropyFunctional::new(|u| u * u)
    }

    pub fn evaluate(&self, u: f64) -> f64 {
        (self.evaluate)(u)
    }
}

impl Default for EntropyFunctional {
    fn default() -> Self {
        EntropyFunctional::l2()
    }
}

impl std::fmt::Debug for EntropyFunctional {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("EntropyFunctional")
    }
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn interval_strategy() -> impl Strategy<Value = Interval> {
        (-10.0f64..10.0, 0.1f64..10.0).prop_map(|(a, len)| Interval::new(a, a + len).unwrap())
    }

    proptest! {
        #[test]
        fn partition_of_unity(
            degree in 1usize..=12,
            iv in interval_strategy(),
            t in 0.0f64..=1.0,
        ) {
            let x = iv.a() + t * iv.length();
            let sum: f64 = (0..=degree)
                .map(|n| basis_eval(n, degree, x, iv).unwrap())
                .sum();
            prop_assert!((sum - 1.0).abs() <= 1e-13);
        }

        #[test]
        fn range_enclosure(
            coeffs in prop::collection::vec(-100.0f64..100.0, 2..=13),
            iv in interval_strategy(),
        ) {
            let p = BernsteinPoly::new(coeffs.clone(), iv).unwrap();
            let lo = coeffs.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = coeffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            for i in 0..500 {
                let x = iv.a() + iv.length() * i as f64 / 499.0;
                let v = p.eval_unchecked(x);
                prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }

        #[test]
        fn endpoint_interpolation_is_exact(
            samples in prop::collection::vec(-100.0f64..100.0, 2..=13),
            iv in interval_strategy(),
        ) {
            let p = reconstruct(&samples, iv).unwrap();
            prop_assert_eq!(p.eval(iv.a()).unwrap(), samples[0]);
            prop_assert_eq!(p.eval(iv.b()).unwrap(), samples[samples.len() - 1]);
        }

        #[test]
        fn reconstruction_is_tvd(
            samples in prop::collection::vec(-100.0f64..100.0, 2..=13),
            iv in interval_strategy(),
        ) {
            let p = reconstruct(&samples, iv).unwrap();
            let sample_tv: f64 = samples.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
            prop_assert!(p.total_variation() <= sample_tv + 1e-10);
        }

        #[test]
        fn monotone_samples_give_monotone_reconstruction(
            mut samples in prop::collection::vec(-100.0f64..100.0, 2..=13),
            iv in interval_strategy(),
        ) {
            samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let d = reconstruct(&samples, iv).unwrap().derivative();
            prop_assert!(d.coeffs().iter().all(|&c| c >= -1e-13));
        }

        #[test]
        fn bounded_reconstruction_respects_bounds(
            samples in prop::collection::vec(-100.0f64..100.0, 2..=13),
            iv in interval_strategy(),
            lo in -5.0f64..5.0,
            width in 0.0f64..10.0,
        ) {
            let bounds = BoundsSpec::new(lo, lo + width).unwrap();
            let p = reconstruct_bounded(&samples, iv, bounds).unwrap();
            for i in 0..200 {
                let x = iv.a() + iv.length() * i as f64 / 199.0;
                let v = p.eval_unchecked(x);
                prop_assert!(v >= lo - 1e-12 && v <= lo + width + 1e-12);
            }
        }

        #[test]
        fn blend_is_componentwise_convex(
            pairs in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..=13),
            alpha in 0.0f64..=1.0,
        ) {
            let orig: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let bern: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let out = blend(&orig, &bern, alpha).unwrap();
            for ((&u, &ub), &v) in orig.iter().zip(&bern).zip(&out) {
                prop_assert!(v >= u.min(ub) - 1e-12 && v <= u.max(ub) + 1e-12);
            }
        }
    }
}
