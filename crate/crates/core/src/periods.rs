//! Critical-value products `c_f(s, w) = L*(f, s) L*(f, w) / <f, f>` for each
//! Hecke eigenform, the normalized period tables they determine, and the
//! period-ratio consistency check.
//!
//! `H_{s,w} = sum_f c_f(s, w) f` summed over all eigenforms and their
//! conjugates. Writing `h` for the first `d` coefficients of `H_{s,w}` (its
//! Miller coordinates), `M` for the matrix of `T_2`, `chi` for its
//! characteristic polynomial and `lambda` for the `T_2` eigenvalue of `f`,
//! the projector `q(M)` with `q(X) = chi(X) / (X - lambda)` kills every other
//! eigenvector, which gives `c_f = [h q(M)]_1 / chi'(lambda)` in `K_f`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::arith::{int, neg_one_pow, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::FieldScalar;
use crate::kernel::{KernelPoint, PsiEngine};
use crate::linalg::{charpoly, Matrix};
use crate::modforms::{dim_cusp, eigenforms, hecke_matrix, miller_basis, psi_normalization, EigenformData, NumberFieldElement};
use crate::poly::RationalPolynomial;

/// Per-weight data shared by every `(s, w)`.
#[derive(Debug, Clone)]
pub struct PeriodContext {
    k: i64,
    t2: Matrix<Rational>,
    forms: Vec<EigenformData>,
    /// Coefficients of `q(X) = chi(X) / (X - lambda)` per form, in `K_f`.
    projector: Vec<Vec<NumberFieldElement>>,
    /// `1 / chi'(lambda)` per form.
    scale: Vec<NumberFieldElement>,
}

impl PeriodContext {
    /// Eigenforms are computed to precision `n` (at least `2 dim S_k`).
    pub fn new(k: i64, n: usize) -> Result<Self> {
        let d = dim_cusp(k);
        let forms = eigenforms(k, n)?;
        let t2 = if d == 0 { Vec::new() } else { hecke_matrix(2, &miller_basis(k, 2 * d)?)? };
        let chi = charpoly(&t2);
        let dchi = chi.derivative();
        let mut projector = Vec::new();
        let mut scale = Vec::new();
        for f in &forms {
            let field = f.field();
            let lambda = field.generator();
            // Synthetic division of chi by (X - lambda) over K_f.
            let deg = chi.degree().unwrap();
            let mut q = vec![field.zero(); deg];
            let mut carry = field.zero();
            for i in (1..=deg).rev() {
                carry = carry.mul_ref(&lambda).add_ref(&field.from_rational(&chi.coeff(i)));
                q[i - 1] = carry.clone();
            }
            let d_at = field.element(&dchi);
            scale.push(d_at.inv_ref()?);
            projector.push(q);
        }
        Ok(PeriodContext { k, t2, forms, projector, scale })
    }

    pub fn weight(&self) -> i64 {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.t2.len()
    }

    pub fn forms(&self) -> &[EigenformData] {
        &self.forms
    }

    /// `c_f(s, w)` for every eigenform `f`, in form order.
    pub fn critical_products(&self, pt: &KernelPoint) -> Result<Vec<NumberFieldElement>> {
        if pt.k() != self.k {
            return Err(Error::InvalidArgument(format!("{pt} does not have weight {}", self.k)));
        }
        let d = self.dimension();
        if d == 0 {
            return Ok(Vec::new());
        }
        let engine = PsiEngine::new(*pt, d);
        let norm = psi_normalization(self.k);
        let h: Vec<Rational> = (1..=d as i64)
            .map(|l| Ok(engine.psi(l)? / &norm))
            .collect::<Result<_>>()?;
        // r_i = (h M^i)_1 for i < d.
        let mut row = h;
        let mut r = Vec::with_capacity(d);
        for _ in 0..d {
            r.push(row[0].clone());
            row = (0..d)
                .map(|j| (0..d).map(|t| &row[t] * &self.t2[t][j]).fold(Rational::zero(), |a, b| a + b))
                .collect();
        }
        Ok(self
            .forms
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let mut acc = f.field().zero();
                for (qi, ri) in self.projector[fi].iter().zip(&r) {
                    acc = acc.add_ref(&qi.scale_rational(ri));
                }
                acc.mul_ref(&self.scale[fi])
            })
            .collect())
    }

    /// All valid points of this weight with their products, computed in parallel.
    pub fn table(&self, exec: Exec) -> Result<CriticalProductTable> {
        let pts = KernelPoint::all(self.k)?;
        let values = exec.try_map(pts.clone(), |pt| self.critical_products(&pt))?;
        Ok(CriticalProductTable {
            k: self.k,
            forms: self.forms.len(),
            entries: pts.into_iter().map(|p| (p.s(), p.w())).zip(values).collect(),
        })
    }
}

/// `c_f(s, w)` for every eigenform and every valid point of one weight.
#[derive(Debug, Clone)]
pub struct CriticalProductTable {
    pub k: i64,
    pub forms: usize,
    pub entries: BTreeMap<(i64, i64), Vec<NumberFieldElement>>,
}

impl CriticalProductTable {
    pub fn get(&self, form: usize, s: i64, w: i64) -> Option<&NumberFieldElement> {
        self.entries.get(&(s, w)).and_then(|v| v.get(form))
    }

    /// Points where `c_f(s,w) = c_f(w,s)` or `c_f(k-s,w) = (-1)^{k/2} c_f(s,w)` fails.
    pub fn symmetry_violations(&self) -> Vec<(usize, i64, i64)> {
        let sign = int(neg_one_pow(self.k / 2));
        let mut bad = Vec::new();
        for (&(s, w), vals) in &self.entries {
            for (f, c) in vals.iter().enumerate() {
                let swapped = self.get(f, w, s);
                let reflected = self.get(f, self.k - s, w);
                if swapped != Some(c) || reflected != Some(&c.scale_rational(&sign)) {
                    bad.push((f, s, w));
                }
            }
        }
        bad
    }
}

pub fn critical_products(k: i64, s: i64, w: i64) -> Result<Vec<NumberFieldElement>> {
    let pt = KernelPoint::new(k, s, w)?;
    PeriodContext::new(k, 2 * dim_cusp(k))?.critical_products(&pt)
}

/// Even and odd anchors `(e, o)` defining `omega_- = <f,f> / L*(f, e)` and
/// `omega_+ = c_f(e, o) <f,f> / L*(f, o)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchor {
    pub even: i64,
    pub odd: i64,
}

impl Anchor {
    /// `(k-2, k-1)`, where the Euler products converge and both values are nonzero.
    pub fn standard(k: i64) -> Self {
        Anchor { even: k - 2, odd: k - 1 }
    }
}

/// `L*(f, s) / omega_+` for even `s` and `L*(f, w) / omega_-` for odd `w`.
#[derive(Debug, Clone)]
pub struct PeriodTable {
    pub k: i64,
    pub anchor: Anchor,
    /// Per form: even `s` with `L*(f,s)/omega_+`.
    pub even: Vec<Vec<(i64, NumberFieldElement)>>,
    /// Per form: odd `w` with `L*(f,w)/omega_-`.
    pub odd: Vec<Vec<(i64, NumberFieldElement)>>,
    pub forms: Vec<EigenformData>,
}

impl PeriodTable {
    /// True when every entry of every form is rational.
    pub fn all_rational(&self) -> bool {
        self.even.iter().chain(&self.odd).flatten().all(|(_, x)| x.as_rational().is_some())
    }

    /// Largest degree of a field containing the entries.
    pub fn max_field_degree(&self) -> usize {
        self.forms.iter().map(|f| f.field().degree()).max().unwrap_or(0)
    }
}

pub fn normalized_periods(k: i64) -> Result<PeriodTable> {
    if k < 12 {
        return Err(Error::InvalidArgument(format!("normalized periods need k >= 12, got {k}")));
    }
    let ctx = PeriodContext::new(k, 2 * dim_cusp(k))?;
    normalized_periods_with(&ctx, Anchor::standard(k), Exec::default())
}

pub fn normalized_periods_with(ctx: &PeriodContext, anchor: Anchor, exec: Exec) -> Result<PeriodTable> {
    let k = ctx.weight();
    let table = ctx.table(exec)?;
    let n = table.forms;
    let mut even = vec![Vec::new(); n];
    let mut odd = vec![Vec::new(); n];
    for f in 0..n {
        let missing = || Error::InvalidArgument(format!("anchor {anchor:?} is not a valid point at weight {k}"));
        let base = table.get(f, anchor.even, anchor.odd).ok_or_else(missing)?;
        if base.is_zero_elt() {
            return Err(Error::Singular(format!("anchor product c_f{anchor:?} vanishes at weight {k}")));
        }
        for w in (1..k).step_by(2) {
            odd[f].push((w, table.get(f, anchor.even, w).ok_or_else(missing)?.clone()));
        }
        for s in (2..k).step_by(2) {
            let c = table.get(f, s, anchor.odd).ok_or_else(missing)?;
            even[f].push((s, c.div_ref(base)?));
        }
    }
    Ok(PeriodTable { k, anchor, even, odd, forms: ctx.forms().to_vec() })
}

/// One `w`-independence check of `c_f(s, w) / c_f(s', w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCheck {
    pub form: usize,
    pub s: i64,
    pub s_prime: i64,
    /// Auxiliary values used, and those skipped for a zero denominator.
    pub used: Vec<i64>,
    pub skipped: Vec<i64>,
    pub ratio: Option<NumberFieldElement>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManinReport {
    pub k: i64,
    pub checks: Vec<RatioCheck>,
}

impl ManinReport {
    pub fn violations(&self) -> Vec<&RatioCheck> {
        self.checks.iter().filter(|c| !c.consistent).collect()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().map(|c| c.skipped.len()).sum()
    }

    /// Number of individual ratio comparisons carried out.
    pub fn comparisons(&self) -> usize {
        self.checks.iter().map(|c| c.used.len()).sum()
    }
}

pub fn manin_consistency(k: i64) -> Result<ManinReport> {
    let ctx = PeriodContext::new(k, 2 * dim_cusp(k))?;
    manin_consistency_with(&ctx, Exec::default())
}

pub fn manin_consistency_with(ctx: &PeriodContext, exec: Exec) -> Result<ManinReport> {
    let k = ctx.weight();
    let table = ctx.table(exec)?;
    let mut checks = Vec::new();
    for f in 0..table.forms {
        for parity in [0, 1] {
            let vals: Vec<i64> = (1..k).filter(|s| s % 2 == parity).collect();
            let aux: Vec<i64> = (1..k).filter(|s| s % 2 != parity).collect();
            for (i, &s) in vals.iter().enumerate() {
                for &sp in &vals[i + 1..] {
                    let mut check = RatioCheck {
                        form: f,
                        s,
                        s_prime: sp,
                        used: Vec::new(),
                        skipped: Vec::new(),
                        ratio: None,
                        consistent: true,
                    };
                    for &w in &aux {
                        let num = table.get(f, s, w).unwrap();
                        let den = table.get(f, sp, w).unwrap();
                        if den.is_zero_elt() {
                            check.skipped.push(w);
                            continue;
                        }
                        let r = num.div_ref(den)?;
                        match &check.ratio {
                            None => check.ratio = Some(r),
                            Some(prev) if prev != &r => check.consistent = false,
                            _ => {}
                        }
                        check.used.push(w);
                    }
                    checks.push(check);
                }
            }
        }
    }
    Ok(ManinReport { k, checks })
}

/// Exact trace identity `sum_f Tr_{K_f/Q}(lambda_f(l) c_f) = a_H(l)` for `l <= n`.
pub fn trace_identity_holds(ctx: &PeriodContext, pt: &KernelPoint, n: usize) -> Result<bool> {
    let c = ctx.critical_products(pt)?;
    let engine = PsiEngine::new(*pt, n);
    let norm = psi_normalization(ctx.weight());
    for l in 1..=n {
        let mut total = Rational::zero();
        for (f, cf) in ctx.forms().iter().zip(&c) {
            total += f.eigenvalue(l)?.mul_ref(cf).trace();
        }
        if total != engine.psi(l as i64)? / &norm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Renders a field element over its generator `a` with the minimal polynomial.
pub fn describe_field(f: &EigenformData) -> String {
    let m: &RationalPolynomial = f.field().modulus();
    format!("a with minimal polynomial {}", m.to_string_var("a"))
}
