//! Completed L-values `L*(f, s) = int_0^inf f(iy) y^{s-1} dy` of level-one
//! cusp forms, and the Petersson norm recovered from exact critical products.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::KernelPoint;
use crate::numerics::special::normalized_upper_gamma;
use crate::numerics::ComplexValue;
use crate::periods::PeriodContext;

/// Completed L-value from real coefficients `a(0..)` of a weight-`k` cusp form.
///
/// The integral is split at `y = t` and the piece over `(0, t)` is folded
/// back with `y -> 1/y`, giving
/// `sum_n a(n) [ (2 pi n)^{-s} Gamma(s, 2 pi n t) + i^k (2 pi n)^{s-k} Gamma(k-s, 2 pi n / t) ]`.
/// Every `t > 0` gives the same value; `t = 1` is the symmetric choice.
pub fn lstar_split(coeffs: &[f64], k: i64, s: Complex64, n_terms: usize, t: f64) -> Result<ComplexValue> {
    if coeffs.first().copied().unwrap_or(1.0) != 0.0 {
        return Err(Error::Domain("L*-series needs a cusp form (a(0) = 0)".into()));
    }
    if n_terms + 1 > coeffs.len() {
        return Err(Error::InsufficientPrecision {
            needed: n_terms,
            available: coeffs.len().saturating_sub(1),
            max_safe: coeffs.len().saturating_sub(1),
        });
    }
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("split point must be positive, got {t}")));
    }
    let ik = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let ks = Complex64::from(k as f64) - s;
    let term = |n: usize| {
        let x = 2.0 * PI * n as f64;
        // G(a, x) = x^{-a} Gamma(a, x); rescale to (2 pi n)^{-a} Gamma(a, 2 pi n t).
        let g1 = normalized_upper_gamma(s, x * t);
        let g2 = normalized_upper_gamma(ks, x / t);
        let f1 = Complex64::from(t).powc(s);
        let f2 = Complex64::from(1.0 / t).powc(ks);
        (g1.value * f1 + ik * g2.value * f2, g1.error * f1.norm() + g2.error * f2.norm())
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (n, &a) in coeffs.iter().enumerate().take(n_terms + 1).skip(1) {
        if a == 0.0 {
            continue;
        }
        let (v, e) = term(n);
        // Kahan summation.
        let y = a * v - comp;
        let tsum = sum + y;
        comp = (tsum - sum) - y;
        sum = tsum;
        err += a.abs() * e + f64::EPSILON * (a * v).norm();
    }
    // Tail: |a(n)| <= C n^{k/2} with C fitted on the known coefficients.
    let half = k as f64 / 2.0;
    let c = (1..coeffs.len())
        .map(|n| coeffs[n].abs() / (n as f64).powf(half))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let (sr, kr) = (Complex64::from(s.re), Complex64::from(ks.re));
    for n in n_terms + 1..n_terms + 200 {
        let x = 2.0 * PI * n as f64;
        let bound = normalized_upper_gamma(sr, x * t).value.norm() * t.powf(s.re)
            + normalized_upper_gamma(kr, x / t).value.norm() * t.powf(-ks.re);
        let tail = c * (n as f64).powf(half) * bound;
        err += tail;
        if tail < 1e-300 {
            break;
        }
    }
    let out = ComplexValue { value: sum, error: err };
    out.checked()
}

/// `L*(f, s)` with the symmetric split `t = 1`.
pub fn lstar_numeric(coeffs: &[f64], k: i64, s: Complex64, n_terms: usize) -> Result<ComplexValue> {
    lstar_split(coeffs, k, s, n_terms, 1.0)
}

/// Real `L*(f, s)` for real `s`, using every supplied coefficient.
pub fn lstar_real(coeffs: &[f64], k: i64, s: f64) -> Result<ComplexValue> {
    lstar_numeric(coeffs, k, Complex64::from(s), coeffs.len() - 1)
}

/// `<f, f>` recovered as `L*(f,s) L*(f,w) / c_f(s,w)` at several points.
#[derive(Debug, Clone, PartialEq)]
pub struct PeterssonEstimate {
    /// Value at the default point `(k-2, k-1)`.
    pub value: f64,
    /// Largest relative deviation among the alternative points.
    pub spread: f64,
    pub samples: Vec<((i64, i64), f64)>,
}

/// Petersson norm of eigenform `form` of `ctx`, embedded via the real root
/// `root_index` of its field. Coefficients are taken to `n_terms`.
pub fn petersson_norm_numeric(ctx: &PeriodContext, form: usize, root_index: usize, n_terms: usize) -> Result<PeterssonEstimate> {
    let k = ctx.weight();
    let f = ctx
        .forms()
        .get(form)
        .ok_or_else(|| Error::InvalidArgument(format!("no eigenform {form} at weight {k}")))?;
    let roots = f.field().real_embeddings();
    let root = *roots.get(root_index).ok_or_else(|| {
        Error::Domain(format!("field of eigenform {form} has no real embedding {root_index}"))
    })?;
    let coeffs = f.embedded(root);
    let n_terms = n_terms.min(coeffs.len() - 1);
    let points = [(k - 2, k - 1), (k - 4, k - 1), (k - 2, k - 3), (k - 4, k - 3)];
    let mut samples = Vec::new();
    for (s, w) in points {
        let pt = KernelPoint::new(k, s, w)?;
        let c = ctx.critical_products(&pt)?[form].embed(root);
        let ls = lstar_numeric(&coeffs, k, Complex64::from(s as f64), n_terms)?;
        let lw = lstar_numeric(&coeffs, k, Complex64::from(w as f64), n_terms)?;
        samples.push(((s, w), (ls.value * lw.value).re / c));
    }
    let value = samples[0].1;
    let spread = samples[1..].iter().map(|(_, v)| ((v - value) / value).abs()).fold(0.0, f64::max);
    Ok(PeterssonEstimate { value, spread, samples })
}

/// `|L*(f,s) - (-1)^{k/2} L*(f,k-s)| / |L*(f,s)|` with a split point away
/// from `t = 1`, so the two sides are genuinely different sums.
pub fn functional_equation_residual(coeffs: &[f64], k: i64, s: Complex64) -> Result<f64> {
    let n = coeffs.len() - 1;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let a = lstar_split(coeffs, k, s, n, 1.15)?;
    let b = lstar_split(coeffs, k, Complex64::from(k as f64) - s, n, 1.15)?;
    Ok((a.value - sign * b.value).norm() / a.value.norm())
}

/// One comparison of `L*(s) L*(w) / L*(s') L*(w')` against the exact
/// `c_f(s,w) / c_f(s',w')` under a real embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeCheck {
    pub form: usize,
    pub root: f64,
    pub point: (i64, i64),
    pub reference: (i64, i64),
    pub numeric: f64,
    pub exact: f64,
    /// Relative difference, or absolute when the exact ratio is zero.
    pub deviation: f64,
}

/// Compares every valid `(s, w)` against the reference `(k-2, k-1)` for
/// every eigenform and real embedding of `ctx`.
pub fn exact_vs_numeric(ctx: &PeriodContext, n_terms: usize) -> Result<Vec<BridgeCheck>> {
    let k = ctx.weight();
    let reference = KernelPoint::new(k, k - 2, k - 1)?;
    let points = KernelPoint::all(k)?;
    let mut exact = Vec::with_capacity(points.len());
    for pt in &points {
        exact.push(ctx.critical_products(pt)?);
    }
    let exact_ref = ctx.critical_products(&reference)?;
    let mut out = Vec::new();
    for (i, f) in ctx.forms().iter().enumerate() {
        for root in f.field().real_embeddings() {
            let coeffs = f.embedded(root);
            let n = n_terms.min(coeffs.len() - 1);
            let lvals = (1..k)
                .map(|s| lstar_numeric(&coeffs, k, Complex64::from(s as f64), n).map(|v| v.value.re))
                .collect::<Result<Vec<f64>>>()?;
            let l = |s: i64| lvals[(s - 1) as usize];
            let denom = l(k - 2) * l(k - 1);
            let c_ref = exact_ref[i].embed(root);
            for (pt, c) in points.iter().zip(&exact) {
                let numeric = l(pt.s()) * l(pt.w()) / denom;
                let exact = c[i].embed(root) / c_ref;
                let deviation = if exact == 0.0 { numeric.abs() } else { ((numeric - exact) / exact).abs() };
                out.push(BridgeCheck {
                    form: i,
                    root,
                    point: (pt.s(), pt.w()),
                    reference: (k - 2, k - 1),
                    numeric,
                    exact,
                    deviation,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::delta_qexp;
    use num_traits::ToPrimitive;

    fn delta(n: usize) -> Vec<f64> {
        delta_qexp(n).unwrap().coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
    }

    /// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
    fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
        (1..=n)
            .map(|i| {
                let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for j in 2..=n {
                        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    }

    /// `int_1^Y f(iy) (y^{s-1} + i^k y^{k-s-1}) dy` by composite Gauss-Legendre.
    fn lstar_quadrature(a: &[f64], k: i64, s: f64) -> f64 {
        let nodes = gauss_legendre(30);
        let ik = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let f = |y: f64| -> f64 {
            let fy: f64 = a.iter().enumerate().skip(1).map(|(n, &c)| c * (-2.0 * PI * n as f64 * y).exp()).sum();
            fy * (y.powf(s - 1.0) + ik * y.powf(k as f64 - s - 1.0))
        };
        let mut total = 0.0;
        let h = 0.25;
        let mut lo = 1.0;
        while lo < 12.0 {
            let (m, r) = (lo + h / 2.0, h / 2.0);
            total += nodes.iter().map(|&(x, w)| w * f(m + r * x)).sum::<f64>() * r;
            lo += h;
        }
        total
    }

    #[test]
    fn matches_quadrature() {
        let a = delta(40);
        for s in [6.0, 3.5, 9.0] {
            let series = lstar_real(&a, 12, s).unwrap();
            let quad = lstar_quadrature(&a, 12, s);
            assert!((series.value.re - quad).abs() < 1e-10 * quad.abs(), "s={s}: {} vs {quad}", series.value.re);
            assert!(series.value.im.abs() < 1e-15);
        }
    }

    #[test]
    fn split_independence() {
        let a = delta(60);
        let s = Complex64::new(3.7, 1.3);
        let base = lstar_split(&a, 12, s, 60, 1.0).unwrap();
        for t in [0.7, 1.25, 1.6] {
            let other = lstar_split(&a, 12, s, 60, t).unwrap();
            assert!((other.value - base.value).norm() < 1e-11 * base.value.norm(), "t={t}");
        }
        assert!(base.error < 1e-12 * base.value.norm());
    }

    #[test]
    fn functional_equation_delta() {
        let a = delta(60);
        for s in [Complex64::from(2.0), Complex64::new(4.5, 2.0)] {
            assert!(functional_equation_residual(&a, 12, s).unwrap() < 1e-11);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut a = delta(10);
        assert!(lstar_numeric(&a, 12, Complex64::from(6.0), 20).is_err());
        a[0] = 1.0;
        assert!(matches!(lstar_numeric(&a, 12, Complex64::from(6.0), 5), Err(Error::Domain(_))));
    }
}
