//! Verification suites shared by the command-line front end and the
//! acceptance tests. Each suite returns a [`Check`] whose `detail` names the
//! first failing input, or summarizes what was covered.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{binomial, int, neg_one_pow, Rational, SigmaTable};
use crate::error::Result;
use crate::exec::Exec;
use crate::kernel::{kohnen_zagier_value, psi, z_polynomial, KernelPoint, PsiEngine, Symmetry};
use crate::modforms::{cusp_membership_against, delta_qexp, dim_cusp, hsw_form_with, miller_basis, pih_points, verify_pih};
use crate::numerics::{cohen_series_numeric, connect_prefactor, exact_vs_numeric, functional_equation_residual};
use crate::numerics::cohen::kernel_numeric;
use crate::periods::{manin_consistency_with, normalized_periods_with, Anchor, PeriodContext};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Individual comparisons carried out.
    pub cases: usize,
    pub detail: String,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.to_string(), passed: true, cases: 0, detail: String::new() }
    }

    fn fail(&mut self, detail: String) {
        if self.passed {
            self.detail = detail;
        }
        self.passed = false;
    }

    fn finish(mut self, summary: impl FnOnce() -> String) -> Self {
        if self.passed {
            self.detail = summary();
        }
        self
    }
}

/// `Psi(s, w; l) = 0` for every valid point at weights without cusp forms.
pub fn vanishing(ks: &[i64], lmax: usize, exec: Exec) -> Result<Check> {
    let mut check = Check::new("vanishing");
    for &k in ks {
        let points = KernelPoint::all(k)?;
        let tables = exec.map(points, |p| PsiEngine::new(p, lmax).values(lmax, Exec::Sequential).map(|v| (p, v)));
        for t in tables {
            let (p, vals) = t?;
            for (i, v) in vals.iter().enumerate() {
                check.cases += 1;
                if !v.is_zero() {
                    check.fail(format!("{p} l={}: Psi = {v}", i + 1));
                }
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}, l <= {lmax}")))
}

/// `Psi(s, w; l) / Psi(s, w; 1) = tau(l)` at weight 12, `tau` from the product for `Delta`.
pub fn tau_recovery(lmax: usize, exec: Exec) -> Result<Check> {
    let mut check = Check::new("tau recovery");
    let delta = delta_qexp(lmax)?;
    let tau = delta.coeffs();
    let points = KernelPoint::all(12)?;
    let tables = exec.map(points, |p| PsiEngine::new(p, lmax).values(lmax, Exec::Sequential).map(|v| (p, v)));
    for t in tables {
        let (p, vals) = t?;
        if vals[0].is_zero() {
            check.fail(format!("{p}: Psi(l=1) vanishes"));
            continue;
        }
        for (i, v) in vals.iter().enumerate() {
            check.cases += 1;
            let ratio = v / &vals[0];
            if ratio != tau[i + 1] {
                check.fail(format!("{p} l={}: ratio {ratio} but tau = {}", i + 1, tau[i + 1]));
            }
        }
    }
    Ok(check.finish(|| format!("all points at k=12, l <= {lmax}")))
}

/// One evaluation of a divisor-sum identity: `lhs` should equal `rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub name: &'static str,
    pub l: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Names of the identities in [`identity_rows`], in output order.
pub const IDENTITY_NAMES: [&str; 7] = ["ramanujan", "k6", "k8", "k10", "k12", "k14", "niebur"];

/// Evaluates the divisor-sum identities at weight 4 through 14 and Niebur's
/// formula for `1 <= l <= lmax`, row-major by identity then `l`.
pub fn identity_rows(lmax: usize) -> Result<Vec<IdentityRow>> {
    let s1 = SigmaTable::new(1, lmax);
    let s3 = SigmaTable::new(3, lmax);
    let delta = delta_qexp(lmax.max(1))?;
    let tau = |l: usize| delta.coeffs()[l].clone();
    // sum_{n=1}^{l-1} sigma_1(n) sigma_1(l-n) P(l, n)
    let conv = |l: usize, p: &dyn Fn(i64, i64) -> i64| -> Rational {
        let mut acc = num_bigint::BigInt::zero();
        for n in 1..l {
            acc += s1.abs_value(n) * s1.abs_value(l - n) * p(l as i64, n as i64);
        }
        Rational::from_integer(acc)
    };
    let sig1 = |l: usize| Rational::from_integer(s1.abs_value(l).clone());
    let sig3 = |l: usize| Rational::from_integer(s3.abs_value(l).clone());
    let mut rows = Vec::with_capacity(7 * lmax);
    let zero = Rational::zero;
    for name in IDENTITY_NAMES {
        for l in 1..=lmax {
            let li = l as i64;
            let (lhs, rhs) = match name {
                "ramanujan" => (int(6 * li - 1) * sig1(l) - int(5) * sig3(l) + int(12) * conv(l, &|_, _| 1), zero()),
                "k6" => (conv(l, &|l, n| l - 2 * n), zero()),
                "k8" => (
                    int((li - 1) * li * li) * sig1(l) + int(12) * conv(l, &|l, n| l * l - 5 * l * n + 5 * n * n),
                    zero(),
                ),
                "k10" => (conv(l, &|l, n| l.pow(3) - 9 * l * l * n + 21 * l * n * n - 14 * n.pow(3)), zero()),
                "k12" => (
                    Rational::new((5 - 2 * li).into(), 3.into()) * int(li.pow(4)) * sig1(l)
                        - int(20)
                            * conv(l, &|l, n| {
                                l.pow(4) - 14 * l.pow(3) * n + 56 * l * l * n * n - 84 * l * n.pow(3) + 42 * n.pow(4)
                            }),
                    tau(l),
                ),
                "k14" => (
                    conv(l, &|l, n| {
                        l.pow(5) - 20 * l.pow(4) * n + 120 * l.pow(3) * n * n - 300 * l * l * n.pow(3)
                            + 330 * l * n.pow(4)
                            - 132 * n.pow(5)
                    }),
                    zero(),
                ),
                _ => (
                    int(li.pow(4)) * sig1(l)
                        - int(24) * conv(l, &|l, n| 18 * l * l * n * n - 52 * l * n.pow(3) + 35 * n.pow(4)),
                    tau(l),
                ),
            };
            rows.push(IdentityRow { name, l, lhs, rhs });
        }
    }
    Ok(rows)
}

pub fn identities(lmax: usize) -> Result<Check> {
    let mut check = Check::new("divisor-sum identities");
    for row in identity_rows(lmax)? {
        check.cases += 1;
        if !row.holds() {
            check.fail(format!("{} at l={}: {} != {}", row.name, row.l, row.lhs, row.rhs));
        }
    }
    Ok(check.finish(|| format!("{} identities, l <= {lmax}", IDENTITY_NAMES.len())))
}

/// Kohnen-Zagier closed form against `Psi(m+1, n+1; 1)`, boundary cases included.
pub fn kohnen_zagier(ks: &[i64], exec: Exec) -> Result<Check> {
    let mut check = Check::new("Kohnen-Zagier cross-route");
    let mut points = Vec::new();
    for &k in ks {
        points.extend(KernelPoint::all(k)?);
    }
    let results = exec.map(points, |p| -> Result<(KernelPoint, Rational, Rational)> {
        Ok((p, kohnen_zagier_value(p.k(), p.s() - 1, p.w() - 1)?, psi(&p, 1)?))
    });
    for r in results {
        let (p, kz, direct) = r?;
        check.cases += 1;
        if kz != direct {
            check.fail(format!("{p}: closed form {kz} vs Psi {direct}"));
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}")))
}

/// The eight-element dihedral action on `(s, w)` applied to each component
/// `Psi_1, Psi_2, Psi_3`, which must pick up `(-1)^{k/2}` exactly when the
/// element involves an odd number of `s -> k - s` reflections.
pub fn dihedral(ks: &[i64], lmax: usize, exec: Exec) -> Result<Check> {
    let mut check = Check::new("dihedral symmetry");
    for &k in ks {
        let points = KernelPoint::all(k)?;
        let rows = exec.map(points, |p| -> Result<(KernelPoint, Vec<[Rational; 3]>)> {
            let e = PsiEngine::new(p, lmax);
            let mut v = Vec::with_capacity(lmax);
            for l in 1..=lmax as i64 {
                v.push([e.psi1(l)?, e.psi2(l)?, e.psi3(l)?]);
            }
            Ok((p, v))
        });
        let mut table = BTreeMap::new();
        for r in rows {
            let (p, v) = r?;
            table.insert((p.s(), p.w()), v);
        }
        let sign = int(neg_one_pow(k / 2));
        for (&(s, w), vals) in &table {
            let p = KernelPoint::new(k, s, w)?;
            for g in Symmetry::all() {
                let q = g.apply(&p);
                let f = if g.beta_parity() == 1 { sign.clone() } else { Rational::one() };
                let image = &table[&(q.s(), q.w())];
                for (l, (a, b)) in vals.iter().zip(image).enumerate() {
                    for i in 0..3 {
                        check.cases += 1;
                        if b[i] != &f * &a[i] {
                            check.fail(format!("{p} -> {q}, component {} at l={}", i + 1, l + 1));
                        }
                    }
                }
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}, l <= {lmax}")))
}

/// Reflection `Z_{k-s,w}(1-x) = (-1)^{k/2} Z_{s,w}(x)` and the Laurent
/// symmetry `x^{k-s-w} Z_{k-w,k-s} = Z_{s,w}` as polynomial identities.
pub fn z_symmetries(ks: &[i64]) -> Result<Check> {
    let mut check = Check::new("Z reflection and Laurent symmetry");
    let refl = crate::poly::RationalPolynomial::from_ints(&[1, -1]);
    for &k in ks {
        let sign = int(neg_one_pow(k / 2));
        for p in KernelPoint::all(k)? {
            let z = z_polynomial(&p);
            let zb = z_polynomial(&KernelPoint::new(k, k - p.s(), p.w())?);
            check.cases += 2;
            if zb.compose(&refl) != z.scale(&sign) {
                check.fail(format!("reflection fails at {p}"));
            }
            let zl = z_polynomial(&KernelPoint::new(k, k - p.w(), k - p.s())?);
            let e = k - p.s() - p.w();
            let ok = if e >= 0 { zl.shift(e as usize) == z } else { z.shift((-e) as usize) == zl };
            if !ok {
                check.fail(format!("Laurent symmetry fails at {p}"));
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}")))
}

/// `sum_{t=0}^{a} (-1)^t C(a,t) C(b+t,c) = (-1)^a C(b, c-a)` for `0 <= a,b,c <= n`.
pub fn binomial_identity(n: i64) -> Result<Check> {
    let mut check = Check::new("alternating binomial identity");
    for a in 0..=n {
        for b in 0..=n {
            for c in 0..=n {
                let mut lhs = num_bigint::BigInt::zero();
                for t in 0..=a {
                    lhs += neg_one_pow(t) * binomial(a, t)? * binomial(b + t, c)?;
                }
                let rhs = neg_one_pow(a) * binomial(b, c - a)?;
                check.cases += 1;
                if lhs != rhs {
                    check.fail(format!("a={a} b={b} c={c}: {lhs} != {rhs}"));
                }
            }
        }
    }
    Ok(check.finish(|| format!("0 <= a, b, c <= {n}")))
}

/// `H_{s,w}` rebuilt from its first `dim S_k` coefficients matches up to `q^n`.
pub fn cusp_membership(ks: &[i64], n: usize, exec: Exec) -> Result<Check> {
    let mut check = Check::new("cusp membership");
    for &k in ks {
        let basis = miller_basis(k, n)?;
        for p in KernelPoint::all(k)? {
            let h = hsw_form_with(&p, n, exec)?;
            let c = cusp_membership_against(&p, &h, &basis, n)?;
            check.cases += 1;
            if let Some((l, a, b)) = c.mismatch {
                check.fail(format!("{p}: coefficient {l} is {a}, reconstruction gives {b}"));
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}, coefficients to {n}")))
}

/// `H_{s,w}` against the Rankin-Cohen bracket of two Eisenstein series.
pub fn rankin_cohen(ks: &[i64], n: usize) -> Result<Check> {
    let mut check = Check::new("Rankin-Cohen bracket");
    for &k in ks {
        for p in pih_points(k) {
            let c = verify_pih(&p, n)?;
            check.cases += 1;
            if !c.passed() {
                let fitted = c.fitted.map(|f| f.to_string()).unwrap_or_else(|| "none".into());
                check.fail(format!("{p} (u={}, v={}): kappa {} fitted {fitted}, mismatch at {:?}", p.u(), p.v(), c.kappa, c.mismatch));
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}, coefficients to {n}")))
}

/// Normalized periods lie in fields of degree at most `max_degree` and the
/// period ratios are independent of the auxiliary argument.
pub fn manin_periods(k: i64, max_degree: usize, exec: Exec) -> Result<Check> {
    let mut check = Check::new("Manin periods");
    let ctx = PeriodContext::new(k, 2 * dim_cusp(k))?;
    let table = normalized_periods_with(&ctx, Anchor::standard(k), exec)?;
    let degree = table.max_field_degree();
    check.cases += table.even.iter().chain(&table.odd).map(Vec::len).sum::<usize>();
    if degree > max_degree {
        check.fail(format!("k={k}: periods in a field of degree {degree}"));
    }
    if max_degree == 1 && !table.all_rational() {
        check.fail(format!("k={k}: some normalized period is irrational"));
    }
    let report = manin_consistency_with(&ctx, exec)?;
    check.cases += report.comparisons();
    if let Some(v) = report.violations().first() {
        check.fail(format!("k={k}: c_f({}, w)/c_f({}, w) depends on w (form {})", v.s, v.s_prime, v.form));
    }
    let skipped = report.skipped();
    Ok(check.finish(|| format!("k={k}: degree {degree}, {} ratio comparisons, {skipped} skipped", report.comparisons())))
}

/// `x < bound`, false for NaN.
fn below(x: f64, bound: f64) -> bool {
    x < bound
}

fn delta_coeffs(n: usize) -> Result<Vec<f64>> {
    use num_traits::ToPrimitive;
    Ok(delta_qexp(n)?.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
}

/// `L*(Delta, s) = L*(Delta, 12 - s)` with relative residual below `tol`.
pub fn functional_equation(ss: &[f64], tol: f64) -> Result<Check> {
    let mut check = Check::new("functional equation");
    let a = delta_coeffs(60)?;
    let mut worst = 0.0f64;
    for &s in ss {
        let r = functional_equation_residual(&a, 12, Complex64::from(s))?;
        worst = worst.max(r);
        check.cases += 1;
        if !below(r, tol) {
            check.fail(format!("s={s}: residual {r:.3e} >= {tol:.1e}"));
        }
    }
    Ok(check.finish(|| format!("s in {ss:?}: max residual {worst:.3e}")))
}

/// Numeric critical-value ratios against embedded exact ratios.
pub fn exact_vs_numeric_bridge(ks: &[i64], tol: f64) -> Result<Check> {
    let mut check = Check::new("exact-vs-numeric bridge");
    let mut worst = 0.0f64;
    for &k in ks {
        let ctx = PeriodContext::new(k, 100)?;
        for b in exact_vs_numeric(&ctx, 100)? {
            worst = worst.max(b.deviation);
            check.cases += 1;
            if !below(b.deviation, tol) {
                check.fail(format!(
                    "k={k} (s,w)={:?}: numeric {:.12e} exact {:.12e} deviation {:.3e}",
                    b.point, b.numeric, b.exact, b.deviation
                ));
            }
        }
    }
    Ok(check.finish(|| format!("weights {ks:?}: max deviation {worst:.3e}")))
}

/// Residuals of the truncated Cohen series against the kernel `D_12(z, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CohenComparison {
    pub c_max: usize,
    pub value: Complex64,
    pub target: Complex64,
    pub relative: f64,
    pub doubling_difference: f64,
}

/// Compares `C_12(z, s)` summed to each `c_max` with the connection formula.
pub fn cohen_comparisons(s: Complex64, z: Complex64, c_maxes: &[usize]) -> Result<Vec<CohenComparison>> {
    let ctx = PeriodContext::new(12, 100)?;
    let d = kernel_numeric(&ctx, s, z, 100)?;
    let target = connect_prefactor(12, s) * d.value;
    c_maxes
        .iter()
        .map(|&c| {
            let sum = cohen_series_numeric(12, s, z, c)?;
            Ok(CohenComparison {
                c_max: c,
                value: sum.value.value,
                target,
                relative: (sum.value.value - target).norm() / target.norm(),
                doubling_difference: sum.doubling_difference(),
            })
        })
        .collect()
}

/// Cohen's series at `k = 12, s = 6, z = 2i` within `tol` at `c_max`, with
/// the discrepancy shrinking at `2 c_max`.
pub fn cohen_end_to_end(c_max: usize, tol: f64) -> Result<Check> {
    let mut check = Check::new("Cohen series end-to-end");
    let rows = cohen_comparisons(Complex64::from(6.0), Complex64::new(0.0, 2.0), &[c_max, 2 * c_max])?;
    check.cases = rows.len();
    if !below(rows[0].relative, tol) {
        check.fail(format!("C={c_max}: relative discrepancy {:.3e} >= {tol:.1e}", rows[0].relative));
    }
    if !below(rows[1].relative, rows[0].relative) {
        check.fail(format!(
            "discrepancy did not shrink: {:.3e} at C={} vs {:.3e} at C={}",
            rows[1].relative, rows[1].c_max, rows[0].relative, rows[0].c_max
        ));
    }
    Ok(check.finish(|| {
        format!(
            "relative discrepancy {:.3e} at C={}, {:.3e} at C={}",
            rows[0].relative, rows[0].c_max, rows[1].relative, rows[1].c_max
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_hand_values() {
        let rows = identity_rows(2).unwrap();
        let at = |name: &str, l: usize| rows.iter().find(|r| r.name == name && r.l == l).unwrap().clone();
        // 11 * 3 - 5 * 9 + 12 * 1 = 0
        assert!(at("ramanujan", 2).holds());
        let nb = at("niebur", 2);
        assert_eq!(nb.rhs, int(-24));
        assert!(nb.holds());
    }

    #[test]
    fn small_suites_pass() {
        assert!(vanishing(&[4, 6], 5, Exec::Sequential).unwrap().passed);
        assert!(binomial_identity(6).unwrap().passed);
        assert!(z_symmetries(&[4, 12]).unwrap().passed);
        let c = identities(30).unwrap();
        assert!(c.passed, "{}", c.detail);
    }
}
