//! Dense univariate polynomials over the rationals.
//!
//! Besides ring arithmetic this carries what the number-field and
//! eigenform code needs: exact division with remainder, gcd, Sturm-sequence
//! real root isolation, rational roots, and an irreducibility test.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, divisors, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// Polynomial `sum_i c_i x^i`; trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^j`.
    pub fn shift(&self, j: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading();
        let inv = Rational::one() / lead;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer multiple with coprime integer coefficients and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = common_denominator(self.coeffs.iter());
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        for c in ints.iter_mut() {
            *c = &*c / &g * sign;
        }
        ints
    }

    fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        chain
    }

    fn sign_changes(chain: &[Self], x: &Rational) -> usize {
        let mut changes = 0;
        let mut last = 0i32;
        for p in chain {
            let v = p.eval(x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Disjoint half-open intervals `(a, b]`, each containing exactly one real
    /// root, in increasing order. Multiple roots are reported once.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.div_rem(&self.gcd(&self.derivative())).0;
        let chain = sf.sturm_chain();
        let b = sf.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            let n = Self::sign_changes(&chain, &lo) - Self::sign_changes(&chain, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / int(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Shrinks an isolating interval `(lo, hi]` of a simple root until `hi - lo <= width`.
    pub fn refine_root(&self, mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
        let sf = self.div_rem(&self.gcd(&self.derivative())).0;
        if sf.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        let hi_sign = sf.eval(&hi).is_positive();
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            let v = sf.eval(&mid);
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v.is_positive() == hi_sign {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Real roots as `f64`, ascending, each accurate to a few ulps.
    pub fn real_roots_f64(&self) -> Vec<f64> {
        self.isolate_real_roots()
            .into_iter()
            .map(|(lo, hi)| {
                let scale = lo.abs().max(hi.abs()).max(Rational::one());
                let width = scale * Rational::new(BigInt::one(), BigInt::one() << 60);
                let (a, b) = self.refine_root(lo, hi, &width);
                ((a + b) / int(2)).to_f64().unwrap_or(f64::NAN)
            })
            .collect()
    }

    /// All rational roots, ascending, each once.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let prim = self.primitive_integer();
        let lead = prim.last().unwrap().abs();
        let lead_u = lead.to_u64();
        // Distinct rationals with denominators dividing `lead` are at least 1/lead^2 apart.
        let width = Rational::new(BigInt::one(), &lead * &lead * 4);
        let qs: Vec<BigInt> = match lead_u {
            Some(l) => divisors(l).into_iter().map(BigInt::from).collect(),
            None => vec![BigInt::one(), lead.clone()],
        };
        let mut roots = Vec::new();
        for (lo, hi) in self.isolate_real_roots() {
            let (lo, hi) = self.refine_root(lo, hi, &width);
            let mid = (&lo + &hi) / int(2);
            for q in &qs {
                let p = (&mid * Rational::from_integer(q.clone())).round().to_integer();
                let cand = Rational::new(p, q.clone());
                if self.eval(&cand).is_zero() {
                    roots.push(cand);
                    break;
                }
            }
        }
        roots
    }

    /// Exact irreducibility over the rationals.
    ///
    /// Degrees 1 to 3 are settled by the rational root test. Higher degrees use
    /// distinct-degree factorization modulo several primes: the polynomial is
    /// irreducible when no proper factor degree is compatible with every prime.
    /// `None` means the test was inconclusive.
    pub fn is_irreducible(&self) -> Option<bool> {
        let n = self.degree()?;
        if n == 0 {
            return Some(false);
        }
        if n == 1 {
            return Some(true);
        }
        if !self.rational_roots().is_empty() {
            return Some(false);
        }
        if n <= 3 {
            return Some(true);
        }
        if !self.is_squarefree() {
            return Some(false);
        }
        let prim = self.primitive_integer();
        let mut allowed: Vec<bool> = vec![true; n + 1];
        let mut used = 0;
        for p in small_primes(400) {
            let Some(pattern) = fp::ddf_pattern(&prim, p) else {
                continue;
            };
            let sums = subset_sums(&pattern, n);
            for d in 1..n {
                allowed[d] &= sums[d];
            }
            used += 1;
            if (1..n).all(|d| !allowed[d]) {
                return Some(true);
            }
            if used >= 40 {
                break;
            }
        }
        None
    }

    /// Parses forms like `x^2-1080*x-20468736` or `3/2*x + 1/5`.
    pub fn parse(text: &str, var: char) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = compact.chars().collect();
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, deg) = match body.find(var) {
                None => (parse_rational(body)?, 0usize),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let c = if head.is_empty() { Rational::one() } else { parse_rational(head)? };
                    let tail = &body[pos + var.len_utf8()..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("bad exponent in {term:?}: {e}")))?
                    };
                    (c, deg)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Rational::zero());
            }
            if neg {
                coeffs[deg] -= c;
            } else {
                coeffs[deg] += c;
            }
        }
        Ok(Self::new(coeffs))
    }

    /// Renders with the given variable name, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !a.is_one() {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolynomial({self})")
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    (2..limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

/// `sums[d]` is true when some sub-multiset of `parts` adds up to `d`.
fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut sums = vec![false; n + 1];
    sums[0] = true;
    for &p in parts {
        for d in (p..=n).rev() {
            if sums[d - p] {
                sums[d] = true;
            }
        }
    }
    sums
}

/// Arithmetic in `F_p[x]` for the modular irreducibility test.
mod fp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    type Poly = Vec<u64>;

    fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b, p);
            }
            b = mulmod(b, b, p);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64, p: u64) -> u64 {
        powmod(a, p - 2, p)
    }

    fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
        let mut r = a.clone();
        let dm = m.len() - 1;
        let li = inv(*m.last().unwrap(), p);
        while r.len() > dm {
            let c = mulmod(*r.last().unwrap(), li, p);
            let shift = r.len() - 1 - dm;
            for (j, &mc) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mulmod(c, mc, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&trim(out), m, p)
    }

    fn pow_mod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut r: Poly = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn div_exact(a: &Poly, b: &Poly, p: u64) -> Poly {
        let mut r = a.clone();
        let db = b.len() - 1;
        let li = inv(*b.last().unwrap(), p);
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = mulmod(r[i + db], li, p);
            q[i] = c;
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, bc, p)) % p;
            }
        }
        trim(q)
    }

    fn derivative(a: &Poly, p: u64) -> Poly {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
    }

    /// Degrees of the irreducible factors of `f mod p`, or `None` when `p`
    /// divides the leading coefficient or `f mod p` is not squarefree.
    pub(super) fn ddf_pattern(f: &[BigInt], p: u64) -> Option<Vec<usize>> {
        let pb = BigInt::from(p);
        let mut g: Poly = trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect());
        if g.len() != f.len() {
            return None;
        }
        if gcd(&g, &derivative(&g, p), p).len() != 1 {
            return None;
        }
        let x: Poly = vec![0, 1];
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while g.len() > 2 * i {
            h = pow_mod(&h, p, &g, p);
            let d = gcd(&g, &sub(&h, &x, p), p);
            let dd = d.len() - 1;
            if dd > 0 {
                for _ in 0..dd / i {
                    out.push(i);
                }
                g = div_exact(&g, &d, p);
                h = rem(&h, &g, p);
            }
            i += 1;
        }
        if g.len() > 1 {
            out.push(g.len() - 1);
        }
        Some(out)
    }
}
