//! Lattice zeta function `zeta_Z(z, s) = sum_n (z + n)^{-s}` and truncated
//! sums of Cohen's kernel `C_k(z, s) = sum_{gamma in PSL_2(Z)} (gamma z)^{-s} j(gamma, z)^{-k}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::bernoulli;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::numerics::lfunc::{lstar_numeric, petersson_norm_numeric};
use crate::numerics::special::gamma;
use crate::numerics::ComplexValue;
use crate::periods::PeriodContext;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn require_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("zeta_Z needs Im z > 0, got z = {z}")))
    }
}

fn require_convergent(s: Complex64) -> Result<()> {
    if s.re > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("lattice sum diverges for Re s = {} <= 1", s.re)))
    }
}

/// `zeta_Z` by Lipschitz summation with `n_terms` terms:
/// `(2 pi)^s / (e^{s i pi/2} Gamma(s)) sum_{n >= 1} n^{s-1} e^{2 pi i n z}`.
/// Valid for every `s`; the error covers the geometric tail.
pub fn zeta_z_lipschitz(z: Complex64, s: Complex64, n_terms: usize) -> Result<ComplexValue> {
    require_upper(z)?;
    let q = (2.0 * PI * I * z).exp();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=n_terms {
        qn *= q;
        sum += Complex64::from(n as f64).powc(s - 1.0) * qn;
    }
    let r = q.norm();
    let sigma = s.re - 1.0;
    let n1 = (n_terms + 1) as f64;
    let first = n1.powf(sigma) * r.powf(n1);
    let ratio = ((n1 + 1.0) / n1).powf(sigma.max(0.0)) * r;
    let tail = if ratio < 1.0 { first / (1.0 - ratio) } else { f64::INFINITY };
    let pre = Complex64::from(2.0 * PI).powc(s) / ((s * I * PI / 2.0).exp() * gamma(s));
    let value = pre * sum;
    let error = pre.norm() * (tail + 4.0 * f64::EPSILON * n_terms as f64 * sum.norm().max(r));
    ComplexValue::new(value, error).checked()
}

fn pochhammer(s: Complex64, m: usize) -> Complex64 {
    (0..m).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (s + j as f64))
}

/// `zeta_Z` by the direct sum over `|n| < m` plus Euler-Maclaurin tails on
/// both sides. Needs `Re s > 1`.
pub fn zeta_z_direct(z: Complex64, s: Complex64, m: usize) -> Result<ComplexValue> {
    require_upper(z)?;
    require_convergent(s)?;
    const ORDERS: usize = 8;
    let mi = m as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1 - mi)..mi {
        sum += (z + n as f64).powc(-s);
    }
    let a = m as f64;
    let (right, left) = (z + a, z - a);
    // sum_{n >= a} g(n) = int_a^inf g + g(a)/2 - sum_j B_{2j}/(2j)! g^{(2j-1)}(a)
    let mut tail = right.powc(1.0 - s) / (s - 1.0) - left.powc(1.0 - s) / (s - 1.0);
    tail += (right.powc(-s) + left.powc(-s)) * 0.5;
    let mut fact = 1.0f64;
    let mut last = 0.0;
    for j in 1..=ORDERS + 1 {
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        let b = bernoulli(2 * j).to_f64().unwrap_or(0.0) / fact;
        let p = pochhammer(s, 2 * j - 1);
        // g^{(m)} = (-1)^m (s)_m (z+x)^{-s-m}, h^{(m)} = (s)_m (z-x)^{-s-m}, m odd.
        let dg = -p * right.powc(-s - (2 * j - 1) as f64);
        let dh = p * left.powc(-s - (2 * j - 1) as f64);
        let term = (dg + dh) * b;
        if j <= ORDERS {
            tail -= term;
        } else {
            last = term.norm();
        }
    }
    let value = sum + tail;
    let error = last + 4.0 * f64::EPSILON * (m as f64) * value.norm().max(sum.norm());
    ComplexValue::new(value, error).checked()
}

/// `zeta_Z(z, s)` choosing the faster route: Lipschitz when `Im z` is not
/// small, otherwise the direct sum (which needs `Re s > 1`).
pub fn zeta_z(z: Complex64, s: Complex64) -> Result<ComplexValue> {
    require_upper(z)?;
    // zeta_Z has period one.
    let z = Complex64::new(z.re - z.re.round(), z.im);
    if z.im >= 0.25 || s.re <= 1.0 {
        let target = 40.0 + (s.re - 1.0).max(0.0) * 5.0;
        let n = (target / (2.0 * PI * z.im)).ceil() as usize + 2;
        zeta_z_lipschitz(z, s, n.min(1_000_000))
    } else {
        zeta_z_direct(z, s, 24)
    }
}

/// Truncated Cohen series with the bookkeeping used for its error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct CohenSum {
    pub value: ComplexValue,
    /// Partial sum over shells up to `c_max / 2`.
    pub half: Complex64,
    pub c_max: usize,
    /// Number of coprime pairs summed.
    pub pairs: usize,
}

impl CohenSum {
    /// `|S(C) - S(C/2)|`, the empirical truncation estimate.
    pub fn doubling_difference(&self) -> f64 {
        (self.value.value - self.half).norm()
    }
}

/// Contribution of shell `max(|c|, |d|) = m` with `c > 0` (plus the identity
/// coset in shell one).
fn shell(k: i64, s: Complex64, z: Complex64, m: i64) -> (Complex64, f64, usize) {
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut count = 0;
    let mut add = |c: i64, d: i64| {
        let j = z * c as f64 + d as f64;
        let w = if c == 0 {
            z
        } else {
            // a d - b c = 1, so gamma z = a/c - 1/(c (c z + d)).
            let g = d.extended_gcd(&c);
            let a = g.x.rem_euclid(c);
            Complex64::from(a as f64 / c as f64) - 1.0 / (j * c as f64)
        };
        if let Ok(zeta) = zeta_z(w, s) {
            let jk = j.powi(-(k as i32));
            total += zeta.value * jk;
            err += zeta.error * jk.norm();
        } else {
            err = f64::INFINITY;
        }
        count += 1;
    };
    if m == 1 {
        add(0, 1);
    }
    for d in -m..=m {
        if d.gcd(&m) == 1 {
            add(m, d);
        }
    }
    for c in 1..m {
        if c.gcd(&m) == 1 {
            add(c, m);
            add(c, -m);
        }
    }
    (total, err, count)
}

/// `C_k(z, s)` summed over coprime `(c, d)` modulo sign with
/// `max(|c|, |d|) <= c_max`, each coset contributing `zeta_Z(gamma z, s) j(gamma, z)^{-k}`.
pub fn cohen_series_with(k: i64, s: Complex64, z: Complex64, c_max: usize, exec: Exec) -> Result<CohenSum> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight must be even and at least 4, got {k}")));
    }
    if !(s.re > 1.0 && s.re < (k - 1) as f64) {
        return Err(Error::Domain(format!("Cohen series needs 1 < Re s < {}, got {}", k - 1, s.re)));
    }
    require_upper(z)?;
    if c_max < 2 {
        return Err(Error::InvalidArgument("c_max must be at least 2".into()));
    }
    let shells = exec.map_range(1, c_max, |m| shell(k, s, z, m as i64));
    let mut total = Complex64::new(0.0, 0.0);
    let mut half = total;
    let mut err = 0.0;
    let mut pairs = 0;
    for (i, (v, e, n)) in shells.into_iter().enumerate() {
        total += v;
        err += e;
        pairs += n;
        if i + 1 == c_max / 2 {
            half = total;
        }
    }
    let value = ComplexValue::new(total, err + (total - half).norm()).checked()?;
    Ok(CohenSum { value, half, c_max, pairs })
}

/// [`cohen_series_with`] on the default schedule.
pub fn cohen_series_numeric(k: i64, s: Complex64, z: Complex64, c_max: usize) -> Result<CohenSum> {
    cohen_series_with(k, s, z, c_max, Exec::default())
}

/// The constant `2^{2-k} (-1)^{k/2} pi e^{-s i pi/2} Gamma(k-1) / (Gamma(s) Gamma(k-s))`
/// relating Cohen's kernel to the L-function kernel `D_k(z, s)`.
pub fn connect_prefactor(k: i64, s: Complex64) -> Complex64 {
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let kk = Complex64::from(k as f64);
    sign * 2f64.powi(2 - k as i32) * PI * (-s * I * PI / 2.0).exp() * gamma(kk - 1.0)
        / (gamma(s) * gamma(kk - s))
}

/// `sum_n a(n) q^n` at `q = e^{2 pi i z}`.
pub fn eval_qexp(coeffs: &[f64], z: Complex64) -> Result<ComplexValue> {
    require_upper(z)?;
    let q = (2.0 * PI * I * z).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        acc = acc * q + a;
    }
    let n = coeffs.len() as f64;
    let bound = coeffs.iter().map(|a| a.abs()).fold(0.0, f64::max) * n.powi(2);
    let tail = bound * q.norm().powf(n) / (1.0 - q.norm()).max(1e-300);
    ComplexValue::new(acc, tail + f64::EPSILON * n * acc.norm()).checked()
}

/// `D_k(z, s) = sum_f L*(f, s) <f, f>^{-1} f(z)` over every real embedding of
/// every eigenform of `ctx`, from `n_terms` coefficients.
pub fn kernel_numeric(ctx: &PeriodContext, s: Complex64, z: Complex64, n_terms: usize) -> Result<ComplexValue> {
    let k = ctx.weight();
    let mut total = ComplexValue::exact(Complex64::new(0.0, 0.0));
    for (i, f) in ctx.forms().iter().enumerate() {
        for (r, root) in f.field().real_embeddings().into_iter().enumerate() {
            let coeffs = f.embedded(root);
            let n = n_terms.min(coeffs.len() - 1);
            let norm = petersson_norm_numeric(ctx, i, r, n)?;
            let l = lstar_numeric(&coeffs, k, s, n)?;
            let fz = eval_qexp(&coeffs[..=n], z)?;
            let term = l.mul(&fz).scale(Complex64::from(1.0 / norm.value));
            total = ComplexValue::new(
                total.value + term.value,
                total.error + term.error + term.value.norm() * norm.spread,
            );
        }
    }
    Ok(total)
}
