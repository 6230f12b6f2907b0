//! Truncated q-expansions with a weight tag and exact coefficients.

use num_traits::Zero;

use crate::arith::{binomial, int, Rational};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::FieldScalar;

/// `sum_{n=0}^{N} a(n) q^n`, with `a(0..=N)` known exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries<T: FieldScalar = Rational> {
    weight: i64,
    coeffs: Vec<T>,
}

impl<T: FieldScalar> QSeries<T> {
    /// `coeffs[n] = a(n)`; precision is `coeffs.len() - 1`.
    pub fn new(weight: i64, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("q-series needs at least a(0)".into()));
        }
        Ok(QSeries { weight, coeffs })
    }

    pub fn zero(weight: i64, precision: usize, like: &T) -> Self {
        QSeries { weight, coeffs: vec![like.zero_like(); precision + 1] }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a(n)`, or an error past the known range.
    pub fn coeff(&self, n: usize) -> Result<&T> {
        self.coeffs.get(n).ok_or(Error::InsufficientPrecision {
            needed: n,
            available: self.precision(),
            max_safe: self.precision(),
        })
    }

    pub fn is_cusp(&self) -> bool {
        self.coeffs[0].is_zero_elt()
    }

    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision > self.precision() {
            return Err(Error::InsufficientPrecision {
                needed: precision,
                available: self.precision(),
                max_safe: self.precision(),
            });
        }
        Ok(QSeries { weight: self.weight, coeffs: self.coeffs[..=precision].to_vec() })
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    fn check_weight(&self, other: &Self, op: &str) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::SeriesMismatch(format!(
                "{op} of weights {} and {}",
                self.weight, other.weight
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_weight(other, "sum")?;
        let n = self.precision().min(other.precision());
        Ok(QSeries {
            weight: self.weight,
            coeffs: (0..=n).map(|i| self.coeffs[i].add_ref(&other.coeffs[i])).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_weight(other, "difference")?;
        let n = self.precision().min(other.precision());
        Ok(QSeries {
            weight: self.weight,
            coeffs: (0..=n).map(|i| self.coeffs[i].sub_ref(&other.coeffs[i])).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        QSeries { weight: self.weight, coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        QSeries { weight: self.weight, coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        QSeries { weight: self.weight, coeffs: self.coeffs.iter().map(|a| a.scale_rational(c)).collect() }
    }

    /// Product to the smaller of the two precisions; weights add.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Self {
        let n = self.precision().min(other.precision());
        let coeffs = exec.map_range(0, n, |m| {
            let mut acc = self.coeffs[0].zero_like();
            for i in 0..=m {
                if self.coeffs[i].is_zero_elt() || other.coeffs[m - i].is_zero_elt() {
                    continue;
                }
                acc = acc.add_ref(&self.coeffs[i].mul_ref(&other.coeffs[m - i]));
            }
            acc
        });
        QSeries { weight: self.weight + other.weight, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSeries {
            weight: 0,
            coeffs: {
                let mut c = vec![self.coeffs[0].zero_like(); self.coeffs.len()];
                c[0] = self.coeffs[0].one_like();
                c
            },
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `theta = q d/dq` applied `j` times; the weight tag grows by `2j`.
    pub fn theta(&self, j: u32) -> Self {
        QSeries {
            weight: self.weight + 2 * j as i64,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a.scale_rational(&int(num_traits::pow(num_bigint::BigInt::from(n), j as usize))))
                .collect(),
        }
    }

    /// Index and values of the first coefficient (from `start`) where the two
    /// series differ, over their common precision.
    pub fn first_difference(&self, other: &Self, start: usize) -> Option<(usize, T, T)> {
        let n = self.precision().min(other.precision());
        (start..=n)
            .find(|&i| self.coeffs[i] != other.coeffs[i])
            .map(|i| (i, self.coeffs[i].clone(), other.coeffs[i].clone()))
    }
}

/// Rankin-Cohen bracket with `theta = q d/dq` in place of `d/dz`:
/// `sum_{a+b=n} (-1)^a C(n+k1-1, b) C(n+k2-1, a) theta^a f theta^b g`.
/// For `n = 1` this is `k1 f theta(g) - k2 theta(f) g`.
/// The bracket with `d/dz` is `(2 pi i)^n` times this.
pub fn rankin_cohen_theta<T: FieldScalar>(f: &QSeries<T>, g: &QSeries<T>, n: u32) -> Result<QSeries<T>> {
    if f.precision() != g.precision() {
        return Err(Error::SeriesMismatch(format!(
            "bracket operands have precisions {} and {}",
            f.precision(),
            g.precision()
        )));
    }
    let (k1, k2) = (f.weight(), g.weight());
    let ni = n as i64;
    let mut acc = QSeries::zero(k1 + k2 + 2 * ni, f.precision(), &f.coeffs[0]);
    for a in 0..=ni {
        let b = ni - a;
        let c = binomial(ni + k1 - 1, b)? * binomial(ni + k2 - 1, a)?;
        if c.is_zero() {
            continue;
        }
        let c = if a % 2 == 0 { int(c) } else { -int(c) };
        let term = f.theta(a as u32).mul(&g.theta(b as u32)).scale_rational(&c);
        acc = acc.add(&term.with_weight(k1 + k2 + 2 * ni))?;
    }
    Ok(acc)
}
