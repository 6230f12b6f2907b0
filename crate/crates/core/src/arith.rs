//! Exact integer and rational arithmetic: Bernoulli numbers, the signed
//! scaled values `rho(n)`, divisor power sums, binomials and factorials.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `(-1)^e` for any integer `e`.
#[inline]
pub fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn bernoulli_cache() -> &'static RwLock<Vec<Rational>> {
    static CACHE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

fn factorial_cache() -> &'static RwLock<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Filled from the recurrence `sum_{j=0}^{n} C(n+1, j) B_j = 0` and memoized.
pub fn bernoulli(n: usize) -> Rational {
    {
        let table = bernoulli_cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_cache().write().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len();
        if m >= 3 && m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc += b * Rational::from_integer(binomial_u(m as u64 + 1, j as u64));
        }
        table.push(-acc / int(m as i64 + 1));
    }
    table[n].clone()
}

/// `n!` as an exact integer, memoized.
pub fn factorial(n: u64) -> BigInt {
    let n = n as usize;
    {
        let table = factorial_cache().read().expect("factorial cache poisoned");
        if let Some(f) = table.get(n) {
            return f.clone();
        }
    }
    let mut table = factorial_cache().write().expect("factorial cache poisoned");
    while table.len() <= n {
        let m = table.len();
        let next = &table[m - 1] * BigInt::from(m);
        table.push(next);
    }
    table[n].clone()
}

/// `Gamma(n) = (n-1)!` for integers `n >= 1`.
pub fn gamma_int(n: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "Gamma evaluated at non-positive integer {n}"
        )));
    }
    Ok(factorial(n as u64 - 1))
}

/// `rho(n) = (-1)^{n/2+1} B_n / n!` for even `n >= 0`, and `0` for even `n < 0`.
pub fn rho(n: i64) -> Result<Rational> {
    if n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("rho is defined on even integers, got {n}")));
    }
    if n < 0 {
        return Ok(Rational::zero());
    }
    let b = bernoulli(n as usize);
    let sign = neg_one_pow(n / 2 + 1);
    Ok(b * int(sign) / Rational::from_integer(factorial(n as u64)))
}

fn binomial_u(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, r)` for `n >= 0`; zero when `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "binomial with negative upper index {n}"
        )));
    }
    if r < 0 || r > n {
        return Ok(BigInt::zero());
    }
    Ok(binomial_u(n as u64, r as u64))
}

/// Positive divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sigma_e(m) = sum_{d | m} d^e` for `e >= 0`, as an integer.
pub fn sigma_int(exponent: u32, m: u64) -> BigInt {
    divisors(m)
        .into_iter()
        .map(|d| num_traits::pow(BigInt::from(d), exponent as usize))
        .sum()
}

/// `sigma_e(m)` for any integer exponent; negative exponents give
/// `sigma_{-e}(m) / m^{-e}`.
pub fn sigma(exponent: i64, m: i64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("sigma needs m >= 1, got {m}")));
    }
    let m = m as u64;
    let abs = exponent.unsigned_abs() as u32;
    let s = Rational::from_integer(sigma_int(abs, m));
    if exponent >= 0 {
        Ok(s)
    } else {
        Ok(s / Rational::from_integer(num_traits::pow(BigInt::from(m), abs as usize)))
    }
}

/// Table of `sigma_e(n)` for `1 <= n <= max`, stored as `numerator / n^{max(0,-e)}`
/// so that hot loops can stay in integers.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    exponent: i64,
    values: Vec<BigInt>,
}

impl SigmaTable {
    pub fn new(exponent: i64, max: usize) -> Self {
        let abs = exponent.unsigned_abs() as usize;
        let mut values = vec![BigInt::zero(); max + 1];
        for d in 1..=max {
            let p = num_traits::pow(BigInt::from(d), abs);
            let mut m = d;
            while m <= max {
                values[m] += &p;
                m += d;
            }
        }
        SigmaTable { exponent, values }
    }

    /// Largest tabulated argument.
    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// `sigma_{|e|}(n)`.
    pub fn abs_value(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn value(&self, n: usize) -> Rational {
        let v = Rational::from_integer(self.values[n].clone());
        if self.exponent >= 0 {
            v
        } else {
            v / Rational::from_integer(num_traits::pow(
                BigInt::from(n),
                self.exponent.unsigned_abs() as usize,
            ))
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Formats `p/q` always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Akiyama-Tanigawa; gives B_1 = +1/2, otherwise the same numbers.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = (0..=n).map(|m| rat(1, m as i64 + 1)).collect();
        for m in 1..=n {
            for j in 0..=(n - m) {
                a[j] = int(j as i64 + 1) * (&a[j] - &a[j + 1]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(7), int(0));
    }

    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        for n in 0..=60 {
            if n == 1 {
                continue;
            }
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "n = {n}");
        }
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(0).unwrap(), int(-1));
        assert_eq!(rho(-2).unwrap(), int(0));
        assert_eq!(rho(2).unwrap(), rat(1, 12));
        assert_eq!(rho(4).unwrap(), rat(1, 720));
        assert!(rho(3).is_err());
    }

    #[test]
    fn rho_positive_on_positive_even() {
        for n in (2..=60).step_by(2) {
            assert_eq!(signum(&rho(n).unwrap()), 1, "rho({n})");
        }
    }

    #[test]
    fn rho_is_abs_bernoulli_over_factorial() {
        for n in (2..=40i64).step_by(2) {
            let r = rho(n).unwrap();
            let b = bernoulli(n as usize);
            let expect = b.abs() / Rational::from_integer(factorial(n as u64));
            assert_eq!(r, expect);
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1, 6).unwrap(), int(12));
        assert_eq!(sigma(-1, 4).unwrap(), rat(7, 4));
        assert_eq!(sigma(3, 2).unwrap(), int(9));
        assert!(sigma(1, 0).is_err());
    }

    #[test]
    fn sigma_reflection() {
        for m in 1..=500i64 {
            for s in -5..=5i64 {
                let lhs = sigma(s, m).unwrap() / int(m).pow(s as i32);
                assert_eq!(lhs, sigma(-s, m).unwrap(), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn sigma_table_agrees() {
        for e in [-11i64, -3, -1, 1, 3, 11] {
            let t = SigmaTable::new(e, 60);
            for n in 1..=60 {
                assert_eq!(t.value(n), sigma(e, n as i64).unwrap());
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(3, -1).unwrap(), BigInt::from(0));
        assert_eq!(binomial(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(binomial(3, 4).unwrap(), BigInt::from(0));
        assert!(binomial(-1, 0).is_err());
    }

    fn combin_lhs(a: i64, b: i64, c: i64) -> BigInt {
        (0..=a)
            .map(|t| {
                BigInt::from(neg_one_pow(t)) * binomial(a, t).unwrap() * binomial(b + t, c).unwrap()
            })
            .sum()
    }

    #[test]
    fn alternating_binomial_identity() {
        for a in 0..=20 {
            for b in 0..=20 {
                for c in 0..=20 {
                    let rhs = BigInt::from(neg_one_pow(a)) * binomial(b, c - a).unwrap();
                    assert_eq!(combin_lhs(a, b, c), rhs, "a={a} b={b} c={c}");
                }
            }
        }
    }

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(parse_rational("-691/2730").unwrap(), rat(-691, 2730));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&int(3)), "3/1");
    }

    proptest! {
        #[test]
        fn binomial_pascal(n in 1i64..60, r in 0i64..60) {
            let lhs = binomial(n, r).unwrap();
            let rhs = binomial(n - 1, r - 1).unwrap() + binomial(n - 1, r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_inverts_format(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            prop_assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
        }
    }
}
