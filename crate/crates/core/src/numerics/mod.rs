//! Double-precision oracles: completed L-values, the Petersson norm, the
//! lattice zeta function `zeta_Z` and truncated sums of Cohen's kernel.
//!
//! Every numeric result carries an absolute error estimate. Powers `z^s` use
//! the principal branch of the logarithm, so `arg z` lies in `(0, pi)` on the
//! upper half plane.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod cohen;
pub mod lfunc;
pub mod special;

pub use cohen::{cohen_series_numeric, cohen_series_with, connect_prefactor, eval_qexp, kernel_numeric, zeta_z, zeta_z_direct, zeta_z_lipschitz, CohenSum};
pub use lfunc::{exact_vs_numeric, functional_equation_residual, BridgeCheck, lstar_numeric, lstar_real, lstar_split, petersson_norm_numeric, PeterssonEstimate};
pub use special::{gamma, gamma_real, normalized_upper_gamma, upper_gamma};

/// Complex number with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub value: Complex64,
    pub error: f64,
}

impl ComplexValue {
    pub fn new(value: Complex64, error: f64) -> Self {
        ComplexValue { value, error }
    }

    pub fn exact(value: Complex64) -> Self {
        ComplexValue { value, error: 0.0 }
    }

    /// `error / |value|`, infinite for a zero value with nonzero error.
    pub fn relative_error(&self) -> f64 {
        let n = self.value.norm();
        if n == 0.0 {
            if self.error == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            self.error / n
        }
    }

    /// Fails if the value or its error is not finite.
    pub fn checked(self) -> Result<Self> {
        if self.value.re.is_finite() && self.value.im.is_finite() && self.error.is_finite() {
            Ok(self)
        } else {
            Err(Error::Accuracy(format!("non-finite numeric result {} (error {})", self.value, self.error)))
        }
    }

    pub fn mul(&self, other: &ComplexValue) -> ComplexValue {
        ComplexValue {
            value: self.value * other.value,
            error: self.error * other.value.norm() + other.error * self.value.norm() + self.error * other.error,
        }
    }

    pub fn scale(&self, c: Complex64) -> ComplexValue {
        ComplexValue { value: self.value * c, error: self.error * c.norm() }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.value.im < 0.0 { '-' } else { '+' };
        write!(f, "{:.15e} {} {:.15e}i (+/- {:.2e})", self.value.re, sign, self.value.im.abs(), self.error)
    }
}
