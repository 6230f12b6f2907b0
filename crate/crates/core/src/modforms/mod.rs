//! Exact q-expansion algebra for level one: Eisenstein series, `Delta`, the
//! Miller basis, Hecke operators, Hecke eigenforms over their coefficient
//! fields, the forms `H_{s,w}` whose coefficients are the kernel inner
//! products, and the Rankin-Cohen comparison for those forms.

pub mod io;
pub mod numberfield;
pub mod qseries;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{bernoulli, divisors, factorial, int, neg_one_pow, sigma_int, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::FieldScalar;
use crate::kernel::{KernelPoint, PsiEngine};
use crate::linalg::{charpoly, nullspace, rank, Matrix};
use crate::poly::RationalPolynomial;

pub use numberfield::{NumberField, NumberFieldElement};
pub use qseries::{rankin_cohen_theta, QSeries};

fn check_weight(k: i64) -> Result<()> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("weight must be even and >= 4, got {k}")));
    }
    Ok(())
}

/// `E_k = 1 - (2k/B_k) sum_{m>=1} sigma_{k-1}(m) q^m` to precision `n`.
pub fn eisenstein_qexp(k: i64, n: usize) -> Result<QSeries> {
    check_weight(k)?;
    let c = -int(2 * k) / bernoulli(k as usize);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Rational::one());
    for m in 1..=n {
        coeffs.push(&c * int(sigma_int((k - 1) as u32, m as u64)));
    }
    QSeries::new(k, coeffs)
}

/// `Delta = q prod_{n>=1} (1 - q^n)^24` to precision `n`, expanded in integers.
pub fn delta_qexp(n: usize) -> Result<QSeries> {
    if n < 1 {
        return Err(Error::InvalidArgument("Delta needs precision >= 1".into()));
    }
    // prod (1 - q^m)^24 to q^{n-1}, one factor (1 - q^m) at a time.
    let mut p = vec![BigInt::zero(); n];
    p[0] = BigInt::one();
    for m in 1..n {
        for _ in 0..24 {
            for i in (m..n).rev() {
                let t = p[i - m].clone();
                p[i] -= t;
            }
        }
    }
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(p.into_iter().map(Rational::from_integer));
    QSeries::new(12, coeffs)
}

/// `dim M_k` for level one.
pub fn dim_modular(k: i64) -> usize {
    if k < 0 || k % 2 != 0 || k == 2 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// `dim S_k` for level one.
pub fn dim_cusp(k: i64) -> usize {
    if k < 12 {
        0
    } else {
        dim_modular(k) - 1
    }
}

fn eisenstein_monomial(a: u32, b: u32, n: usize) -> Result<QSeries> {
    let e4 = eisenstein_qexp(4, n)?;
    let e6 = eisenstein_qexp(6, n)?;
    Ok(e4.pow(a).mul(&e6.pow(b)).with_weight(4 * a as i64 + 6 * b as i64))
}

/// Rank of the span of `E_4^a E_6^b Delta^c` (`c >= 1`) inside `S_k`,
/// measured on coefficients `1..=n`.
pub fn cusp_rank_by_generators(k: i64, n: usize) -> Result<usize> {
    check_weight(k)?;
    let delta = delta_qexp(n)?;
    let mut rows: Matrix<Rational> = Vec::new();
    let mut c = 1;
    while 12 * c <= k {
        let rest = k - 12 * c;
        for b in 0..=rest / 6 {
            if (rest - 6 * b) % 4 == 0 {
                let a = (rest - 6 * b) / 4;
                let f = eisenstein_monomial(a as u32, b as u32, n)?.mul(&delta.pow(c as u32));
                rows.push(f.coeffs()[1..].to_vec());
            }
        }
        c += 1;
    }
    Ok(if rows.is_empty() { 0 } else { rank(&rows) })
}

/// Integral echelon basis `g_1..g_d` of `S_k` with `a_{g_j}(i) = delta_{ij}` for `i <= d`.
pub fn miller_basis(k: i64, n: usize) -> Result<Vec<QSeries>> {
    check_weight(k)?;
    let d = dim_cusp(k);
    if d == 0 {
        return Ok(Vec::new());
    }
    if n < d {
        return Err(Error::InsufficientPrecision { needed: d, available: n, max_safe: n });
    }
    let rank = cusp_rank_by_generators(k, n)?;
    if rank != d {
        return Err(Error::SeriesMismatch(format!(
            "dimension formula gives {d} but generators span rank {rank} at weight {k}"
        )));
    }
    let delta = delta_qexp(n)?;
    let mut basis: Vec<QSeries> = Vec::with_capacity(d);
    for j in 1..=d as i64 {
        let rest = k - 12 * j;
        let b = (0..=2).find(|b| rest - 6 * b >= 0 && (rest - 6 * b) % 4 == 0).expect("weight decomposes");
        let a = (rest - 6 * b) / 4;
        basis.push(eisenstein_monomial(a as u32, b as u32, n)?.mul(&delta.pow(j as u32)).with_weight(k));
    }
    for j in (0..d).rev() {
        for i in j + 1..d {
            let c = basis[j].coeffs()[i + 1].clone();
            if !c.is_zero() {
                let t = basis[i].scale(&c);
                basis[j] = basis[j].sub(&t)?;
            }
        }
    }
    for g in &basis {
        if let Some(bad) = g.coeffs().iter().find(|c| !c.is_integer()) {
            return Err(Error::SeriesMismatch(format!("Miller basis coefficient {bad} is not integral")));
        }
    }
    Ok(basis)
}

/// `T_l f` with `a(T_l f, n) = sum_{d | (l, n)} d^{k-1} a_f(nl/d^2)`, to precision `floor(N/l)`.
pub fn hecke<T: FieldScalar>(l: usize, f: &QSeries<T>) -> Result<QSeries<T>> {
    if l < 1 {
        return Err(Error::InvalidArgument("Hecke index must be >= 1".into()));
    }
    hecke_to(l, f, f.precision() / l)
}

/// `T_l f` to the requested output precision, or an error carrying the largest safe one.
pub fn hecke_to<T: FieldScalar>(l: usize, f: &QSeries<T>, n_out: usize) -> Result<QSeries<T>> {
    if l < 1 {
        return Err(Error::InvalidArgument("Hecke index must be >= 1".into()));
    }
    let max_safe = f.precision() / l;
    if n_out > max_safe {
        return Err(Error::InsufficientPrecision { needed: n_out * l, available: f.precision(), max_safe });
    }
    let k = f.weight();
    let like = &f.coeffs()[0];
    let coeffs = (0..=n_out)
        .map(|n| {
            if n == 0 {
                // a(0) sigma_{k-1}(l)
                return f.coeffs()[0].scale_rational(&int(sigma_int((k - 1) as u32, l as u64)));
            }
            let g = l.gcd(&n);
            let mut acc = like.zero_like();
            for d in divisors(g as u64) {
                let d = d as usize;
                let w = int(num_traits::pow(BigInt::from(d), (k - 1) as usize));
                acc = acc.add_ref(&f.coeffs()[n * l / (d * d)].scale_rational(&w));
            }
            acc
        })
        .collect();
    QSeries::new(k, coeffs)
}

/// Matrix of `T_l` on the Miller basis: `T_l g_j = sum_i M[j][i] g_i`.
pub fn hecke_matrix(l: usize, basis: &[QSeries]) -> Result<Matrix<Rational>> {
    let d = basis.len();
    basis
        .iter()
        .map(|g| {
            let t = hecke_to(l, g, d)?;
            Ok(t.coeffs()[1..=d].to_vec())
        })
        .collect()
}

/// Splits a squarefree characteristic polynomial into irreducible factors
/// over the rationals: linear factors by ascending root, then the rest.
pub fn factor_charpoly(p: &RationalPolynomial) -> Result<Vec<RationalPolynomial>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::Unsupported(format!(
            "characteristic polynomial {p} of T_2 has a repeated factor; split with T_3 instead"
        )));
    }
    let mut rest = p.monic();
    let mut out = Vec::new();
    for r in p.rational_roots() {
        let lin = RationalPolynomial::new(vec![-r, Rational::one()]);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    if rest.degree().unwrap_or(0) > 0 {
        match rest.is_irreducible() {
            Some(true) => out.push(rest),
            _ => {
                return Err(Error::Unsupported(format!(
                    "factor {rest} of the T_2 characteristic polynomial could not be proven irreducible"
                )))
            }
        }
    }
    Ok(out)
}

/// Normalized Hecke eigenform with coefficients in its field `K_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenformData {
    field: NumberField,
    coeffs: Vec<NumberFieldElement>,
    weight: i64,
}

impl EigenformData {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_f(n)`, equal to the Hecke eigenvalue `lambda_f(n)` for `n >= 1`.
    pub fn coefficient(&self, n: usize) -> Result<&NumberFieldElement> {
        self.coeffs.get(n).ok_or(Error::InsufficientPrecision {
            needed: n,
            available: self.precision(),
            max_safe: self.precision(),
        })
    }

    pub fn eigenvalue(&self, l: usize) -> Result<&NumberFieldElement> {
        self.coefficient(l)
    }

    pub fn series(&self) -> QSeries<NumberFieldElement> {
        QSeries::new(self.weight, self.coeffs.clone()).expect("nonempty")
    }

    /// Coefficients under the real embedding sending the generator to `root`.
    pub fn embedded(&self, root: f64) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.embed(root)).collect()
    }
}

/// Hecke eigenforms of weight `k` to precision `n`, one per irreducible
/// factor of the `T_2` characteristic polynomial on `S_k`.
pub fn eigenforms(k: i64, n: usize) -> Result<Vec<EigenformData>> {
    check_weight(k)?;
    let d = dim_cusp(k);
    if d == 0 {
        return Ok(Vec::new());
    }
    let n = n.max(2 * d);
    let basis = miller_basis(k, n)?;
    let m = hecke_matrix(2, &basis)?;
    let chi = charpoly(&m);
    let mut out = Vec::new();
    for factor in factor_charpoly(&chi)? {
        let field = NumberField::new(&factor)?;
        let lambda = field.generator();
        // Left eigenvector: c (M - lambda I) = 0, i.e. (M - lambda I)^T c^T = 0.
        let a: Matrix<NumberFieldElement> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let e = field.from_rational(&m[j][i]);
                        if i == j {
                            e.sub_ref(&lambda)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace(&a, &field.zero());
        if ns.len() != 1 {
            return Err(Error::Unsupported(format!(
                "T_2 eigenspace for {factor} has dimension {}",
                ns.len()
            )));
        }
        let c0 = ns[0][0].clone();
        let c: Vec<NumberFieldElement> = ns[0].iter().map(|x| x.div_ref(&c0)).collect::<Result<_>>()?;
        let coeffs = (0..=n)
            .map(|i| {
                let mut acc = field.zero();
                for (cj, g) in c.iter().zip(&basis) {
                    acc = acc.add_ref(&cj.scale_rational(&g.coeffs()[i]));
                }
                acc
            })
            .collect();
        out.push(EigenformData { field, coeffs, weight: k });
    }
    Ok(out)
}

/// `(k-2)! 2^{2-k}`, the factor relating `Psi` to the inner product.
pub fn psi_normalization(k: i64) -> Rational {
    int(factorial((k - 2) as u64)) / int(BigInt::one() << (k - 2) as usize)
}

/// `H_{s,w} = sum_l <T_l D_k(., s), D_k(., w)> q^l` with
/// `a(l) = Psi(s, w; l) 2^{k-2} / (k-2)!`. All values are rational, so the
/// complex conjugate in the general coefficient formula is dropped.
pub fn hsw_form(pt: &KernelPoint, n: usize) -> Result<QSeries> {
    hsw_form_with(pt, n, Exec::default())
}

pub fn hsw_form_with(pt: &KernelPoint, n: usize, exec: Exec) -> Result<QSeries> {
    let engine = PsiEngine::new(*pt, n);
    let norm = psi_normalization(pt.k());
    let vals = engine.values(n, exec)?;
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(vals.into_iter().map(|v| v / &norm));
    QSeries::new(pt.k(), coeffs)
}

/// Outcome of reconstructing `H_{s,w}` from its first `d` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspCheck {
    pub point: KernelPoint,
    pub dimension: usize,
    pub checked_up_to: usize,
    /// First index where the reconstruction differs: `(n, a_H(n), candidate(n))`.
    pub mismatch: Option<(usize, Rational, Rational)>,
}

impl CuspCheck {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Builds `sum_{j<=d} a_H(j) g_j` and compares it with `H_{s,w}` on `d < l <= n_test`.
pub fn cusp_membership_check(pt: &KernelPoint, n_test: usize) -> Result<CuspCheck> {
    let h = hsw_form(pt, n_test)?;
    cusp_membership_of(pt, &h, n_test)
}

/// As [`cusp_membership_check`] with a precomputed `H_{s,w}`.
pub fn cusp_membership_of(pt: &KernelPoint, h: &QSeries, n_test: usize) -> Result<CuspCheck> {
    let d = dim_cusp(pt.k());
    let mut check = CuspCheck { point: *pt, dimension: d, checked_up_to: n_test, mismatch: None };
    if d == 0 {
        check.mismatch = h.coeffs().iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone(), Rational::zero()));
        return Ok(check);
    }
    let basis = miller_basis(pt.k(), n_test)?;
    cusp_membership_against(pt, h, &basis, n_test)
}

/// As [`cusp_membership_of`] with the Miller basis of weight `pt.k()` supplied.
pub fn cusp_membership_against(pt: &KernelPoint, h: &QSeries, basis: &[QSeries], n_test: usize) -> Result<CuspCheck> {
    let d = dim_cusp(pt.k());
    if d == 0 {
        return cusp_membership_of(pt, h, n_test);
    }
    if basis.len() != d {
        return Err(Error::InvalidArgument(format!("basis has {} forms but dim S_{} = {d}", basis.len(), pt.k())));
    }
    let mut check = CuspCheck { point: *pt, dimension: d, checked_up_to: n_test, mismatch: None };
    let mut cand = QSeries::zero(pt.k(), n_test, &Rational::zero());
    for (j, g) in basis.iter().enumerate() {
        cand = cand.add(&g.scale(h.coeff(j + 1)?))?;
    }
    check.mismatch = h.first_difference(&cand, 0);
    Ok(check)
}

/// Result of comparing `H_{s,w}` with the bracket `[E_{2u}, E_{2v}]_{k-1-w}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PihCheck {
    pub point: KernelPoint,
    /// `(-1)^u 2^{k-5} (w-1)! (k-1-w)! B_{2u} B_{2v} / ((k-2)! u v)`.
    pub kappa: Rational,
    /// `a_H(l) / a_bracket(l)` at the first `l` where the bracket is nonzero.
    pub fitted: Option<Rational>,
    /// First `l` with `a_H(l) != kappa * a_bracket(l)`.
    pub mismatch: Option<usize>,
}

impl PihCheck {
    pub fn passed(&self) -> bool {
        // Without cusp forms both sides vanish and nothing is fitted.
        self.mismatch.is_none() && self.fitted.as_ref().is_none_or(|f| f == &self.kappa)
    }
}

/// Constant relating `H_{s,w}` to the theta-normalized Rankin-Cohen bracket.
///
/// The factor `(k-1-w)!` is the `n!` between the bracket normalization used
/// here and the one in the classical inner-product formula for
/// `<f, [E_{k1}, E_{k2}]_n>`; it was pinned down by matching `a(1)` and is then
/// checked on every further coefficient.
pub fn pih_kappa(pt: &KernelPoint) -> Rational {
    let (k, u, v, w) = (pt.k(), pt.u(), pt.v(), pt.w());
    let pow2 = int(BigInt::one() << (k - 5) as usize);
    int(neg_one_pow(u)) * pow2 * int(factorial((w - 1) as u64) * factorial((k - 1 - w) as u64))
        * bernoulli(2 * u as usize)
        * bernoulli(2 * v as usize)
        / (int(factorial((k - 2) as u64)) * int(u * v))
}

/// Checks `H_{s,w} = kappa [E_{2u}, E_{2v}]_{k-1-w}` coefficient-wise up to `q^n`.
pub fn verify_pih(pt: &KernelPoint, n: usize) -> Result<PihCheck> {
    let (k, u, v) = (pt.k(), pt.u(), pt.v());
    if u < 2 || v < 2 || u + v >= k / 2 {
        return Err(Error::InvalidArgument(format!(
            "bracket comparison needs u, v >= 2 and u + v < k/2, got u={u}, v={v} at {pt}"
        )));
    }
    let h = hsw_form(pt, n)?;
    let e1 = eisenstein_qexp(2 * u, n)?;
    let e2 = eisenstein_qexp(2 * v, n)?;
    let br = rankin_cohen_theta(&e1, &e2, (k - 1 - pt.w()) as u32)?;
    let kappa = pih_kappa(pt);
    let fitted = (1..=n)
        .find(|&l| !br.coeffs()[l].is_zero())
        .map(|l| &h.coeffs()[l] / &br.coeffs()[l]);
    let mismatch = (0..=n).find(|&l| h.coeffs()[l] != &kappa * &br.coeffs()[l]);
    Ok(PihCheck { point: *pt, kappa, fitted, mismatch })
}

/// All `(u, v)` with `u, v >= 2`, `u + v < k/2`, as kernel points.
pub fn pih_points(k: i64) -> Vec<KernelPoint> {
    let mut out = Vec::new();
    for u in 2..k / 2 {
        for v in 2..k / 2 {
            if u + v < k / 2 {
                let s = u - v + k / 2;
                let w = u + v + k / 2 - 1;
                if let Ok(p) = KernelPoint::new(k, s, w) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &QSeries, upto: usize) -> Vec<i64> {
        f.coeffs()[..=upto].iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(ints(&eisenstein_qexp(4, 2).unwrap(), 2), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein_qexp(6, 1).unwrap(), 1), vec![1, -504]);
        assert!(eisenstein_qexp(5, 3).is_err());
        assert!(eisenstein_qexp(2, 3).is_err());
    }

    #[test]
    fn eisenstein_products() {
        let e = |k| eisenstein_qexp(k, 30).unwrap();
        assert_eq!(e(4).mul(&e(4)), e(8));
        assert_eq!(e(4).mul(&e(6)), e(10));
        assert_eq!(e(4).mul(&e(10)), e(14));
        assert_eq!(e(6).mul(&e(8)), e(14));
        // M_20 is two-dimensional, so these differ.
        assert_ne!(e(6).mul(&e(14)), e(4).mul(&e(16)));
    }

    #[test]
    fn delta_examples_and_eisenstein_route() {
        let d = delta_qexp(40).unwrap();
        assert_eq!(ints(&d, 3), vec![0, 1, -24, 252]);
        let e4 = eisenstein_qexp(4, 40).unwrap();
        let e6 = eisenstein_qexp(6, 40).unwrap();
        let other = e4.pow(3).sub(&e6.pow(2)).unwrap().scale_rational(&Rational::new(1.into(), 1728.into()));
        assert_eq!(other.coeffs(), d.coeffs());
    }

    #[test]
    fn dimensions() {
        let expect = [(4, 0), (10, 0), (12, 1), (14, 0), (16, 1), (22, 1), (24, 2), (26, 1), (28, 2), (36, 3), (38, 2)];
        for (k, d) in expect {
            assert_eq!(dim_cusp(k), d, "k={k}");
            assert_eq!(cusp_rank_by_generators(k, 20).unwrap(), d, "k={k}");
        }
    }

    #[test]
    fn miller_examples() {
        assert!(miller_basis(10, 10).unwrap().is_empty());
        let b = miller_basis(12, 10).unwrap();
        assert_eq!(b[0], delta_qexp(10).unwrap());
        let b = miller_basis(24, 10).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].coeffs()[1], int(1));
        assert_eq!(b[0].coeffs()[2], int(0));
        assert_eq!(b[1].coeffs()[1], int(0));
        assert_eq!(b[1].coeffs()[2], int(1));
        assert!(matches!(miller_basis(24, 1), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn hecke_examples() {
        let d = delta_qexp(40).unwrap();
        assert_eq!(hecke(1, &d).unwrap(), d);
        let t2 = hecke(2, &d).unwrap();
        assert_eq!(t2.precision(), 20);
        assert_eq!(t2.coeffs()[1], int(-24));
        assert_eq!(t2, d.truncate(20).unwrap().scale_rational(&int(-24)));
        match hecke_to(3, &d, 20) {
            Err(Error::InsufficientPrecision { max_safe, .. }) => assert_eq!(max_safe, 13),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hecke_operators_commute() {
        for k in [24, 28, 36] {
            let basis = miller_basis(k, 120).unwrap();
            let f = basis.iter().enumerate().fold(QSeries::zero(k, 120, &int(0)), |acc, (j, g)| {
                acc.add(&g.scale_rational(&int(3 * j as i64 - 2))).unwrap()
            });
            let t23 = hecke(2, &hecke(3, &f).unwrap()).unwrap();
            let t32 = hecke(3, &hecke(2, &f).unwrap()).unwrap();
            let t6 = hecke(6, &f).unwrap();
            assert_eq!(t23, t32);
            assert_eq!(t23, t6);
        }
    }

    #[test]
    fn eigenform_examples() {
        assert!(eigenforms(10, 10).unwrap().is_empty());
        let e = eigenforms(12, 10).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].field().degree(), 1);
        assert_eq!(e[0].eigenvalue(2).unwrap().as_rational(), Some(int(-24)));
        let e = eigenforms(24, 10).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].field().modulus(), &RationalPolynomial::from_ints(&[-20468736, -1080, 1]));
    }

    #[test]
    fn eigenforms_are_eigen_and_multiplicative() {
        for k in [12, 16, 24, 28, 36] {
            let forms = eigenforms(k, 60).unwrap();
            let total: usize = forms.iter().map(|f| f.field().degree()).sum();
            assert_eq!(total, dim_cusp(k));
            for f in &forms {
                assert_eq!(f.coefficient(1).unwrap(), &f.field().one());
                let s = f.series();
                for l in [2usize, 3, 5] {
                    let t = hecke(l, &s).unwrap();
                    let lam = f.eigenvalue(l).unwrap();
                    assert_eq!(t, s.truncate(t.precision()).unwrap().scale(lam), "k={k} l={l}");
                }
                for (m, n) in [(2, 3), (3, 5), (4, 7), (5, 11)] {
                    let lhs = f.coefficient(m * n).unwrap();
                    assert_eq!(lhs, &f.coefficient(m).unwrap().mul_ref(f.coefficient(n).unwrap()));
                }
                assert!(f.field().is_totally_real());
            }
        }
    }

    #[test]
    fn hsw_vanishes_and_matches_tau() {
        let h = hsw_form(&KernelPoint::new(10, 3, 6).unwrap(), 20).unwrap();
        assert!(h.coeffs().iter().all(|c| c.is_zero()));
        let d = delta_qexp(30).unwrap();
        let h = hsw_form(&KernelPoint::new(12, 3, 4).unwrap(), 30).unwrap();
        let a1 = h.coeffs()[1].clone();
        assert_eq!(h.scale_rational(&a1.recip()), d);
    }

    #[test]
    fn hsw_in_dimension_one_is_eigenform_multiple() {
        for k in [16, 18] {
            let f = &eigenforms(k, 30).unwrap()[0];
            for pt in KernelPoint::all(k).unwrap() {
                let h = hsw_form(&pt, 30).unwrap();
                let a1 = h.coeffs()[1].clone();
                for l in 1..=30 {
                    let fl = f.coefficient(l).unwrap().as_rational().unwrap();
                    assert_eq!(h.coeffs()[l], &a1 * fl, "{pt} l={l}");
                }
            }
        }
    }

    #[test]
    fn cusp_membership_examples() {
        assert!(cusp_membership_check(&KernelPoint::new(12, 3, 4).unwrap(), 30).unwrap().passed());
        assert!(cusp_membership_check(&KernelPoint::new(4, 2, 3).unwrap(), 10).unwrap().passed());
        for pt in KernelPoint::all(24).unwrap().into_iter().step_by(7) {
            assert!(cusp_membership_check(&pt, 20).unwrap().passed(), "{pt}");
        }
    }

    #[test]
    fn rankin_cohen_examples() {
        let e4 = eisenstein_qexp(4, 20).unwrap();
        let e6 = eisenstein_qexp(6, 20).unwrap();
        let zero = rankin_cohen_theta(&e4, &e4, 1).unwrap();
        assert!(zero.coeffs().iter().all(|c| c.is_zero()));
        let b = rankin_cohen_theta(&e4, &e6, 1).unwrap();
        assert_eq!(b.weight(), 12);
        assert!(b.is_cusp());
        let c = b.coeffs()[1].clone();
        assert_eq!(b, delta_qexp(20).unwrap().scale_rational(&c));
    }

    #[test]
    fn pih_examples() {
        for (k, u, v) in [(12, 2, 2), (16, 2, 3), (20, 2, 2), (14, 2, 3)] {
            let pt = KernelPoint::new(k, u - v + k / 2, u + v + k / 2 - 1).unwrap();
            let r = verify_pih(&pt, 20).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_pih(&KernelPoint::new(12, 2, 3).unwrap(), 10).is_err());
        assert_eq!(pih_points(12).len(), 3);
    }
}
