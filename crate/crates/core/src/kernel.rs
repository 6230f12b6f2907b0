//! The closed formula for `Psi(s, w; l) = (k-2)! 2^{2-k} <T_l D_k(., s), D_k(., w)>`
//! and its pieces: the polynomials `Z_{s,w}`, the Eisenstein coefficients
//! `A^k_h(r)`, the three components `Psi_1`, `Psi_2`, `Psi_3`, the
//! Kohnen-Zagier `l = 1` closed form, and the dihedral symmetry action on
//! `(s, w)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, gamma_int, int, neg_one_pow, rho, sigma, Rational, SigmaTable};
use crate::error::{Error, PointViolation, Result};
use crate::exec::Exec;
use crate::poly::RationalPolynomial;

/// Validated `(k, s, w)` with `u = (s+w-k+1)/2`, `v = (w-s+1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelPoint {
    k: i64,
    s: i64,
    w: i64,
}

impl KernelPoint {
    pub fn new(k: i64, s: i64, w: i64) -> Result<Self> {
        let fail = |reason| Err(Error::InvalidPoint { k, s, w, reason });
        if k % 2 != 0 {
            return fail(PointViolation::OddWeight);
        }
        if k < 4 {
            return fail(PointViolation::WeightTooSmall);
        }
        if !(1..k).contains(&s) {
            return fail(PointViolation::SOutOfRange);
        }
        if !(1..k).contains(&w) {
            return fail(PointViolation::WOutOfRange);
        }
        if (s - w) % 2 == 0 {
            return fail(PointViolation::SameParity);
        }
        Ok(KernelPoint { k, s, w })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn u(&self) -> i64 {
        (self.s + self.w - self.k + 1) / 2
    }

    pub fn v(&self) -> i64 {
        (self.w - self.s + 1) / 2
    }

    /// Positive even `(k1, k2)` with `k1 + k2 = k`, `1 - k1/2 <= u <= k1/2`
    /// and `1 - k2/2 <= v <= k2/2`.
    pub fn admissible_splits(&self) -> Vec<(i64, i64)> {
        let (u, v) = (self.u(), self.v());
        (1..self.k / 2)
            .map(|h| (2 * h, self.k - 2 * h))
            .filter(|&(k1, k2)| 1 - k1 / 2 <= u && u <= k1 / 2 && 1 - k2 / 2 <= v && v <= k2 / 2)
            .collect()
    }

    /// Every valid point of weight `k`, ordered by `s` then `w`.
    pub fn all(k: i64) -> Result<Vec<KernelPoint>> {
        KernelPoint::new(k, 1, 2)?;
        Ok((1..k)
            .flat_map(|s| (1..k).filter_map(move |w| KernelPoint::new(k, s, w).ok()))
            .collect())
    }
}

impl std::fmt::Display for KernelPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(k={}, s={}, w={})", self.k, self.s, self.w)
    }
}

pub fn make_kernel_point(k: i64, s: i64, w: i64) -> Result<KernelPoint> {
    KernelPoint::new(k, s, w)
}

/// `A^k_h(r) = (-1)^{k/2+r} r! C(k/2-h, r) C(k/2-1+h, r)`, valid for
/// `1 - k/2 <= h <= k/2`. Vanishes for `r` beyond the support.
pub fn a_coefficient(k: i64, h: i64, r: i64) -> Result<Rational> {
    if k % 2 != 0 {
        return Err(Error::InvalidArgument(format!("A-coefficient needs even weight, got {k}")));
    }
    if k <= 0 || h < 1 - k / 2 || h > k / 2 {
        return Err(Error::InvalidArgument(format!(
            "A-coefficient closed form needs 1-k/2 <= h <= k/2, got k={k}, h={h}"
        )));
    }
    if r < 0 {
        return Ok(Rational::zero());
    }
    let c = binomial(k / 2 - h, r)? * binomial(k / 2 - 1 + h, r)? * factorial(r as u64);
    Ok(int(c * neg_one_pow(k / 2 + r)))
}

/// `Z_{s,w}(x) = (-1)^{(s+w+1)/2} C(k-2, s-1)^{-1} sum_r (-x)^r C(k-1-w, r) C(w-1+r, k-1-s)`.
pub fn z_polynomial(pt: &KernelPoint) -> RationalPolynomial {
    let (k, s, w) = (pt.k, pt.s, pt.w);
    let norm = Rational::new(BigInt::from(neg_one_pow((s + w + 1) / 2)), binomial(k - 2, s - 1).unwrap());
    let coeffs = (0..k)
        .map(|r| {
            let c = binomial(k - 1 - w, r).unwrap() * binomial(w - 1 + r, k - 1 - s).unwrap() * neg_one_pow(r);
            int(c) * &norm
        })
        .collect();
    RationalPolynomial::new(coeffs)
}

/// Second form of `Z_{s,w}` valid when `s + w < k`:
/// `(-1)^{(s+w-1)/2} x^{k-s-w} C(k-2, w-1)^{-1} sum_t (-x)^t C(s-1, t) C(k-1-s+t, w-1)`.
pub fn z_polynomial_low(pt: &KernelPoint) -> Result<RationalPolynomial> {
    let (k, s, w) = (pt.k, pt.s, pt.w);
    if s + w >= k {
        return Err(Error::InvalidArgument(format!("second Z form needs s+w<k, got {pt}")));
    }
    let norm = Rational::new(BigInt::from(neg_one_pow((s + w - 1) / 2)), binomial(k - 2, w - 1)?);
    let mut coeffs = vec![Rational::zero(); (k - s - w) as usize];
    for t in 0..s {
        let c = binomial(s - 1, t)? * binomial(k - 1 - s + t, w - 1)? * neg_one_pow(t);
        coeffs.push(int(c) * &norm);
    }
    Ok(RationalPolynomial::new(coeffs))
}

/// `Y_{s,w}(x)` built from the Eisenstein coefficients for the split `(k1, k - k1)`:
/// `(-1)^{k2/2} sum_{a,b} A^{k1}_u(a) A^{k2}_v(b) x^{k1/2-u-a} (1-x)^{k2/2-v-b} (k-2-a-b)!`.
/// For admissible splits this equals `(-1)^{k/2} (k-2)! Z_{s,w}(x)`.
pub fn y_polynomial(pt: &KernelPoint, k1: i64) -> Result<RationalPolynomial> {
    let k2 = pt.k - k1;
    if !pt.admissible_splits().contains(&(k1, k2)) {
        return Err(Error::InvalidArgument(format!("split ({k1}, {k2}) is not admissible for {pt}")));
    }
    let (u, v) = (pt.u(), pt.v());
    let one_minus_x = RationalPolynomial::from_ints(&[1, -1]);
    let mut acc = RationalPolynomial::zero();
    for a in 0..=(k1 / 2 - u) {
        let aa = a_coefficient(k1, u, a)?;
        if aa.is_zero() {
            continue;
        }
        for b in 0..=(k2 / 2 - v) {
            let ab = a_coefficient(k2, v, b)?;
            if ab.is_zero() {
                continue;
            }
            let c = &aa * &ab * int(factorial((pt.k - 2 - a - b) as u64));
            let mut term = RationalPolynomial::monomial(c, (k1 / 2 - u - a) as usize);
            for _ in 0..(k2 / 2 - v - b) {
                term = &term * &one_minus_x;
            }
            acc = &acc + &term;
        }
    }
    Ok(acc.scale(&int(neg_one_pow(k2 / 2))))
}

fn check_l(l: i64) -> Result<()> {
    if l < 1 {
        return Err(Error::InvalidArgument(format!("Hecke index l must be >= 1, got {l}")));
    }
    Ok(())
}

fn gamma(n: i64) -> Rational {
    int(gamma_int(n).expect("Gamma argument in range for a valid point"))
}

fn lpow(l: i64, e: i64) -> Rational {
    if e >= 0 {
        int(num_traits::pow(BigInt::from(l), e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(BigInt::from(l), (-e) as usize))
    }
}

/// First component `Psi_1`.
pub fn psi1(pt: &KernelPoint, l: i64) -> Result<Rational> {
    check_l(l)?;
    let (k, s, w, u, v) = (pt.k, pt.s, pt.w, pt.u(), pt.v());
    let lw = lpow(l, k - 1 - w);
    let first = rho(2 * u)? * &lw * gamma(s) * gamma(w) + rho(2 - 2 * u)? * lpow(l, s - 1) * gamma(k - s) * gamma(k - w);
    let second = rho(2 * v)? * &lw * gamma(k - s) * gamma(w) + rho(2 - 2 * v)? * lpow(l, k - 1 - s) * gamma(s) * gamma(k - w);
    Ok(sigma(2 * v - 1, l)? * first + int(neg_one_pow(k / 2)) * sigma(2 * u - 1, l)? * second)
}

/// Second component `Psi_2`, evaluating `Z_{s,w}` at the exact rationals `n/l`.
pub fn psi2_reference(pt: &KernelPoint, l: i64) -> Result<Rational> {
    check_l(l)?;
    let z = z_polynomial(pt);
    let mut sum = Rational::zero();
    for n in 1..l {
        let x = Rational::new(BigInt::from(n), BigInt::from(l));
        sum += sigma(2 * pt.u() - 1, n)? * sigma(2 * pt.v() - 1, l - n)? * z.eval(&x);
    }
    Ok(psi2_prefactor(pt) * lpow(l, pt.k - 1 - pt.w) * sum)
}

fn psi2_prefactor(pt: &KernelPoint) -> Rational {
    int(factorial((pt.k - 2) as u64) * 2 * neg_one_pow(pt.k / 2))
}

/// Third component `Psi_3`, supported on the boundary `s` or `w` in `{1, k-1}`.
pub fn psi3(pt: &KernelPoint, l: i64) -> Result<Rational> {
    check_l(l)?;
    let (k, s, w) = (pt.k, pt.s, pt.w);
    let mut bracket = Rational::zero();
    let side = |a: i64| -> Result<Rational> {
        Ok(gamma(a) * gamma(k - a) * rho(a)? * rho(k - a)?)
    };
    let ws = if w == 1 {
        neg_one_pow((k - s) / 2)
    } else if w == k - 1 {
        neg_one_pow(s / 2)
    } else {
        0
    };
    if ws != 0 {
        bracket += int(ws) * side(s)?;
    }
    let ss = if s == 1 {
        neg_one_pow((k - w) / 2)
    } else if s == k - 1 {
        neg_one_pow(w / 2)
    } else {
        0
    };
    if ss != 0 {
        bracket += int(ss) * side(w)?;
    }
    if bracket.is_zero() {
        return Ok(bracket);
    }
    let pre = -sigma(k - 1, l)? / (int(k - 1) * rho(k)?);
    Ok(pre * bracket)
}

/// Precomputed data for evaluating `Psi(s, w; l)` at one point for many `l`.
///
/// `Psi_2` runs in integers: `Z_{s,w}` is divisible by `x^a (1-x)^b` with
/// `a = max(0, 1-2u)`, `b = max(0, 1-2v)`, which cancels the denominators of
/// the negative-exponent divisor sums.
#[derive(Debug, Clone)]
pub struct PsiEngine {
    pt: KernelPoint,
    reduced: Vec<BigInt>,
    reduced_den: BigInt,
    x_pow: i64,
    y_pow: i64,
    sig_u: SigmaTable,
    sig_v: SigmaTable,
}

impl PsiEngine {
    /// Prepares evaluation for `1 <= l <= lmax`.
    pub fn new(pt: KernelPoint, lmax: usize) -> Self {
        let z = z_polynomial(&pt);
        let x_pow = (1 - 2 * pt.u()).max(0);
        let y_pow = (1 - 2 * pt.v()).max(0);
        let mut divisor = RationalPolynomial::one();
        for _ in 0..x_pow {
            divisor = &divisor * &RationalPolynomial::x();
        }
        let one_minus_x = RationalPolynomial::from_ints(&[1, -1]);
        for _ in 0..y_pow {
            divisor = &divisor * &one_minus_x;
        }
        let (q, r) = z.div_rem(&divisor);
        assert!(r.is_zero(), "Z_{{s,w}} lacks its boundary zeros at {pt}");
        let den = crate::arith::common_denominator(q.coeffs().iter());
        let reduced = q
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        PsiEngine {
            pt,
            reduced,
            reduced_den: den,
            x_pow,
            y_pow,
            sig_u: SigmaTable::new(2 * pt.u() - 1, lmax.max(1)),
            sig_v: SigmaTable::new(2 * pt.v() - 1, lmax.max(1)),
        }
    }

    pub fn point(&self) -> &KernelPoint {
        &self.pt
    }

    pub fn psi1(&self, l: i64) -> Result<Rational> {
        psi1(&self.pt, l)
    }

    pub fn psi3(&self, l: i64) -> Result<Rational> {
        psi3(&self.pt, l)
    }

    pub fn psi2(&self, l: i64) -> Result<Rational> {
        check_l(l)?;
        if l as usize > self.sig_u.max() {
            return psi2_reference(&self.pt, l);
        }
        let deg = self.reduced.len().saturating_sub(1);
        let lb = BigInt::from(l);
        // c_r = p_r l^{deg - r}, so that sum_r c_r n^r = l^deg P(n/l).
        let mut scaled = Vec::with_capacity(self.reduced.len());
        let mut lp = BigInt::one();
        for p in self.reduced.iter().rev() {
            scaled.push(p * &lp);
            lp *= &lb;
        }
        scaled.reverse();
        let mut sum = BigInt::zero();
        for n in 1..l {
            let nb = BigInt::from(n);
            let mut q = BigInt::zero();
            for c in scaled.iter().rev() {
                q = q * &nb + c;
            }
            sum += self.sig_u.abs_value(n as usize) * self.sig_v.abs_value((l - n) as usize) * q;
        }
        // l^{k-1-w} Z(n/l) sigma(n) sigma(l-n) = l^{k-1-w-deg-a-b} (...)
        let e = self.pt.k - 1 - self.pt.w - deg as i64 - self.x_pow - self.y_pow;
        Ok(psi2_prefactor(&self.pt) * lpow(l, e) * Rational::new(sum, self.reduced_den.clone()))
    }

    pub fn psi(&self, l: i64) -> Result<Rational> {
        Ok(self.psi1(l)? + self.psi2(l)? + self.psi3(l)?)
    }

    /// `Psi(s, w; l)` for `l = 1..=lmax`.
    pub fn values(&self, lmax: usize, exec: Exec) -> Result<Vec<Rational>> {
        exec.try_map((1..=lmax as i64).collect(), |l| self.psi(l))
    }
}

/// Second component `Psi_2` via the integer route of [`PsiEngine`].
pub fn psi2(pt: &KernelPoint, l: i64) -> Result<Rational> {
    check_l(l)?;
    PsiEngine::new(*pt, l as usize).psi2(l)
}

/// `Psi = Psi_1 + Psi_2 + Psi_3`.
pub fn psi(pt: &KernelPoint, l: i64) -> Result<Rational> {
    check_l(l)?;
    PsiEngine::new(*pt, l as usize).psi(l)
}

/// `Psi(s, w; l)` for every valid point of weight `k` and `1 <= l <= lmax`,
/// parallel over points.
pub fn psi_table(k: i64, lmax: usize, exec: Exec) -> Result<Vec<(KernelPoint, Vec<Rational>)>> {
    let pts = KernelPoint::all(k)?;
    exec.try_map(pts, |pt| {
        let engine = PsiEngine::new(pt, lmax);
        let vals = engine.values(lmax, Exec::Sequential)?;
        Ok((pt, vals))
    })
}

/// `2^{2-k} (k-2)! <R_m, R_n>` from the Kohnen-Zagier closed form, including
/// the boundary correction when `m` or `n` is `0` or `k-2`.
pub fn kohnen_zagier_value(k: i64, m: i64, n: i64) -> Result<Rational> {
    KernelPoint::new(k, m + 1, n + 1)?;
    let mt = k - 2 - m;
    let nt = k - 2 - n;
    let f = |x: i64| int(factorial(x as u64));
    let sk = int(neg_one_pow(k / 2));
    let mut total = rho(m - nt + 1)? * f(m) * f(n)
        + rho(-m + nt + 1)? * f(mt) * f(nt)
        + &sk * rho(m - n + 1)? * f(m) * f(nt)
        + &sk * rho(-m + n + 1)? * f(mt) * f(n);
    let denom = int(k - 1) * rho(k)?;
    let delta = |x: i64| -> Rational {
        let mut d = Rational::zero();
        if x == 0 {
            d += &sk;
        }
        if x == k - 2 {
            d += Rational::one();
        }
        d
    };
    let dn = delta(n);
    if !dn.is_zero() {
        total += int(neg_one_pow((m - 1) / 2)) * f(m) * f(mt) * rho(m + 1)? * rho(mt + 1)? / &denom * dn;
    }
    let dm = delta(m);
    if !dm.is_zero() {
        total += int(neg_one_pow((n - 1) / 2)) * f(n) * f(nt) * rho(n + 1)? * rho(nt + 1)? / &denom * dm;
    }
    Ok(total)
}

/// Element of the dihedral group of order 8 acting on `(s, w)`.
///
/// Stored as a signed permutation of the centred coordinates
/// `(s - k/2, w - k/2)`: optionally swap, then optionally negate each slot.
/// `alpha` swaps `s` and `w`, `beta` sends `s` to `k - s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    swap: bool,
    neg_s: bool,
    neg_w: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { swap: false, neg_s: false, neg_w: false };
    pub const ALPHA: Symmetry = Symmetry { swap: true, neg_s: false, neg_w: false };
    pub const BETA: Symmetry = Symmetry { swap: false, neg_s: true, neg_w: false };

    /// All eight elements.
    pub fn all() -> Vec<Symmetry> {
        let mut out = Vec::with_capacity(8);
        for swap in [false, true] {
            for neg_s in [false, true] {
                for neg_w in [false, true] {
                    out.push(Symmetry { swap, neg_s, neg_w });
                }
            }
        }
        out
    }

    fn act(&self, x: i64, y: i64) -> (i64, i64) {
        let (a, b) = if self.swap { (y, x) } else { (x, y) };
        (if self.neg_s { -a } else { a }, if self.neg_w { -b } else { b })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        // The image of (1, 2) pins down a signed permutation.
        let (x, y) = other.act(1, 2);
        let (a1, b1) = self.act(x, y);
        let swap = a1.abs() == 2;
        let neg_s = a1 < 0;
        let neg_w = b1 < 0;
        Symmetry { swap, neg_s, neg_w }
    }

    /// Number of `beta` factors in any word for this element, mod 2.
    /// `Psi_i(g pt) = ((-1)^{k/2})^{beta_parity} Psi_i(pt)`.
    pub fn beta_parity(&self) -> u8 {
        (self.neg_s as u8) ^ (self.neg_w as u8)
    }

    pub fn apply(&self, pt: &KernelPoint) -> KernelPoint {
        let h = pt.k / 2;
        let (x, y) = self.act(pt.s - h, pt.w - h);
        KernelPoint::new(pt.k, x + h, y + h).expect("dihedral action preserves validity")
    }
}

pub fn apply_symmetry(g: &Symmetry, pt: &KernelPoint) -> KernelPoint {
    g.apply(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn pt(k: i64, s: i64, w: i64) -> KernelPoint {
        KernelPoint::new(k, s, w).unwrap()
    }

    #[test]
    fn point_examples() {
        let p = pt(12, 2, 3);
        assert_eq!((p.u(), p.v()), (-3, 1));
        let p = pt(4, 2, 3);
        assert_eq!((p.u(), p.v()), (1, 1));
        assert!(p.admissible_splits().contains(&(2, 2)));
        assert_eq!(
            KernelPoint::new(12, 2, 4),
            Err(Error::InvalidPoint { k: 12, s: 2, w: 4, reason: PointViolation::SameParity })
        );
        assert!(matches!(KernelPoint::new(5, 2, 3), Err(Error::InvalidPoint { reason: PointViolation::OddWeight, .. })));
        assert!(matches!(KernelPoint::new(2, 1, 0), Err(Error::InvalidPoint { reason: PointViolation::WeightTooSmall, .. })));
        assert!(matches!(KernelPoint::new(12, 12, 3), Err(Error::InvalidPoint { reason: PointViolation::SOutOfRange, .. })));
        assert!(matches!(KernelPoint::new(12, 2, 0), Err(Error::InvalidPoint { reason: PointViolation::WOutOfRange, .. })));
    }

    #[test]
    fn uv_identities_and_splits_nonempty() {
        for k in (4..=40).step_by(2) {
            for p in KernelPoint::all(k).unwrap() {
                assert_eq!(p.u() + p.v(), p.w() - k / 2 + 1);
                assert_eq!(p.u() - p.v(), p.s() - k / 2);
                assert!(!p.admissible_splits().is_empty(), "{p}");
            }
        }
    }

    /// Rising and falling factorial definition of the Eisenstein coefficients.
    fn a_pochhammer(k: i64, h: i64, r: i64) -> Rational {
        let mut acc = int(neg_one_pow(k / 2));
        for j in 0..r {
            acc *= int(h - k / 2 + j) * int(h + k / 2 - 1 - j);
        }
        acc / int(factorial(r as u64))
    }

    #[test]
    fn a_coefficient_examples_and_pochhammer_route() {
        assert_eq!(a_coefficient(4, 1, 1).unwrap(), int(-2));
        assert_eq!(a_coefficient(4, 1, 2).unwrap(), int(0));
        for k1 in (2..=20).step_by(2) {
            for h in (1 - k1 / 2)..=(k1 / 2) {
                assert_eq!(a_coefficient(k1, h, 0).unwrap(), int(neg_one_pow(k1 / 2)));
                for r in 0..=k1 {
                    assert_eq!(a_coefficient(k1, h, r).unwrap(), a_pochhammer(k1, h, r), "k={k1} h={h} r={r}");
                }
            }
        }
        assert!(a_coefficient(3, 1, 0).is_err());
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_polynomial(&pt(4, 2, 1)), RationalPolynomial::from_ints(&[0, -1, 1]));
        assert_eq!(z_polynomial(&pt(4, 2, 3)), RationalPolynomial::from_ints(&[-1]));
        let refl = RationalPolynomial::from_ints(&[1, -1]);
        assert_eq!(z_polynomial(&pt(4, 2, 1)).compose(&refl), RationalPolynomial::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn z_second_form_agrees() {
        for k in (4..=30).step_by(2) {
            for p in KernelPoint::all(k).unwrap() {
                if p.s() + p.w() < k {
                    assert_eq!(z_polynomial_low(&p).unwrap(), z_polynomial(&p), "{p}");
                }
            }
        }
    }

    #[test]
    fn y_form_matches_z_for_every_split() {
        for k in (4..=20).step_by(2) {
            let fact = int(factorial((k - 2) as u64) * neg_one_pow(k / 2));
            for p in KernelPoint::all(k).unwrap() {
                let target = z_polynomial(&p).scale(&fact);
                for (k1, _) in p.admissible_splits() {
                    assert_eq!(y_polynomial(&p, k1).unwrap(), target, "{p} k1={k1}");
                }
            }
        }
    }

    #[test]
    fn component_examples() {
        let p = pt(4, 2, 1);
        assert_eq!(psi1(&p, 1).unwrap(), rat(-5, 3));
        assert_eq!(psi2(&p, 1).unwrap(), int(0));
        assert_eq!(psi3(&p, 1).unwrap(), rat(5, 3));
        let p = pt(4, 2, 3);
        assert_eq!(psi1(&p, 2).unwrap(), int(-11));
        assert_eq!(psi2(&p, 2).unwrap(), int(-4));
        assert_eq!(psi3(&p, 2).unwrap(), int(15));
        assert_eq!(psi(&p, 2).unwrap(), int(0));
        assert_eq!(psi3(&pt(12, 4, 7), 5).unwrap(), int(0));
        assert!(psi1(&p, 0).is_err());
        assert!(psi(&p, 0).is_err());
    }

    /// `Psi_2` from the `Y` form with every admissible split, evaluated term by term.
    fn psi2_via_y(p: &KernelPoint, l: i64) -> Rational {
        let mut vals = p.admissible_splits().into_iter().map(|(k1, _)| {
            let y = y_polynomial(p, k1).unwrap();
            let mut sum = Rational::zero();
            for n in 1..l {
                sum += sigma(2 * p.u() - 1, n).unwrap() * sigma(2 * p.v() - 1, l - n).unwrap() * y.eval(&rat(n, l));
            }
            int(2) * lpow(l, p.k() - 1 - p.w()) * sum
        });
        let first = vals.next().unwrap();
        for v in vals {
            assert_eq!(v, first);
        }
        first
    }

    #[test]
    fn psi2_routes_agree() {
        assert_eq!(psi2(&pt(6, 2, 3), 3).unwrap(), psi2_via_y(&pt(6, 2, 3), 3));
        for k in [4, 6, 12, 18] {
            for p in KernelPoint::all(k).unwrap() {
                let engine = PsiEngine::new(p, 12);
                for l in 1..=12 {
                    let fast = engine.psi2(l).unwrap();
                    assert_eq!(fast, psi2_reference(&p, l).unwrap(), "{p} l={l}");
                    if k <= 12 && l <= 6 {
                        assert_eq!(fast, psi2_via_y(&p, l), "{p} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn psi_vanishes_small_weights() {
        for k in [4, 6, 8, 10, 14] {
            for (p, vals) in psi_table(k, 12, Exec::default()).unwrap() {
                assert!(vals.iter().all(|v| v.is_zero()), "{p}");
            }
        }
        assert_eq!(psi(&pt(14, 4, 9), 7).unwrap(), int(0));
    }

    #[test]
    fn kohnen_zagier_matches_psi() {
        assert_eq!(kohnen_zagier_value(4, 1, 0).unwrap(), int(0));
        for k in (4..=24).step_by(2) {
            for p in KernelPoint::all(k).unwrap() {
                let kz = kohnen_zagier_value(k, p.s() - 1, p.w() - 1).unwrap();
                assert_eq!(kz, psi(&p, 1).unwrap(), "{p}");
            }
        }
        assert!(kohnen_zagier_value(12, 1, 3).is_err());
    }

    #[test]
    fn dihedral_group_law() {
        let id = Symmetry::IDENTITY;
        let (a, b) = (Symmetry::ALPHA, Symmetry::BETA);
        assert_eq!(a.compose(&a), id);
        assert_eq!(b.compose(&b), id);
        let ab = a.compose(&b);
        assert_ne!(ab.compose(&ab), id);
        assert_eq!(ab.compose(&ab).compose(&ab.compose(&ab)), id);
        // alpha and beta generate all eight elements.
        let mut seen = vec![id];
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for h in [a, b] {
                let gh = h.compose(&g);
                if !seen.contains(&gh) {
                    seen.push(gh);
                    frontier.push(gh);
                }
            }
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(a.apply(&pt(12, 3, 4)), pt(12, 4, 3));
        assert_eq!(b.apply(&pt(12, 3, 4)), pt(12, 9, 4));
    }

    #[test]
    fn components_transform_under_dihedral_action() {
        for k in [4, 12, 16, 22] {
            let sign = int(neg_one_pow(k / 2));
            for p in KernelPoint::all(k).unwrap() {
                for g in Symmetry::all() {
                    let q = g.apply(&p);
                    let f = if g.beta_parity() == 1 { sign.clone() } else { int(1) };
                    for l in 1..=6 {
                        assert_eq!(psi1(&q, l).unwrap(), &f * psi1(&p, l).unwrap());
                        assert_eq!(psi2_reference(&q, l).unwrap(), &f * psi2_reference(&p, l).unwrap());
                        assert_eq!(psi3(&q, l).unwrap(), &f * psi3(&p, l).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn z_reflection_and_laurent_symmetry() {
        let refl = RationalPolynomial::from_ints(&[1, -1]);
        for k in (4..=20).step_by(2) {
            let sign = int(neg_one_pow(k / 2));
            for p in KernelPoint::all(k).unwrap() {
                let z = z_polynomial(&p);
                let zb = z_polynomial(&pt(k, k - p.s(), p.w()));
                assert_eq!(zb.compose(&refl), z.scale(&sign));
                let zl = z_polynomial(&pt(k, k - p.w(), k - p.s()));
                let e = k - p.s() - p.w();
                if e >= 0 {
                    assert_eq!(zl.shift(e as usize), z);
                } else {
                    assert_eq!(z.shift((-e) as usize), zl);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn psi_sequential_equals_parallel(h in 2i64..=10, s0 in 0i64..1000, w0 in 0i64..1000) {
            let k = 2 * h;
            let s = 1 + s0 % (k - 1);
            // w runs over the k/2 values in [1, k-1] of parity opposite to s.
            let w = if s % 2 == 0 { 1 + 2 * (w0 % h) } else { 2 + 2 * (w0 % (h - 1)) };
            let engine = PsiEngine::new(pt(k, s, w), 15);
            prop_assert_eq!(engine.values(15, Exec::Sequential).unwrap(), engine.values(15, Exec::Parallel).unwrap());
        }
    }
}
