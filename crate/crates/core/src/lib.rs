//! Exact inner products of L-function kernels for level-one cusp forms.
//!
//! The core is [`kernel::psi`], an exact rational closed formula for
//! `(k-2)! 2^{2-k} <T_l D_k(., s), D_k(., w)>` where `D_k(., s)` is the cusp
//! form representing `f -> L*(f, s)` under the Petersson inner product.
//! Around it sit exact q-expansion algebra ([`modforms`]), critical-value
//! products and period ratios ([`periods`]), and floating-point oracles
//! ([`numerics`]) that tie the exact values back to analytic L-values.

pub mod arith;
pub mod error;
pub mod exec;
pub mod field;
pub mod kernel;
pub mod linalg;
pub mod modforms;
pub mod numerics;
pub mod periods;
pub mod poly;
pub mod suite;

pub use arith::Rational;
pub use error::{Error, PointViolation, Result};
pub use exec::Exec;
pub use kernel::KernelPoint;
pub use poly::RationalPolynomial;
