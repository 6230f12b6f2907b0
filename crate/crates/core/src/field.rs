//! Scalar abstraction shared by rational and number-field computations.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Exact field element. Constructors take `&self` so that number-field
/// elements can carry their field along.
pub trait FieldScalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elt(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv_ref(&self) -> Result<Self>;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational_like(&self, r: &Rational) -> Self;

    fn div_ref(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv_ref()?))
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        self.mul_ref(&self.from_rational_like(r))
    }
}

impl FieldScalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elt(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv_ref(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Singular("inverse of zero".into()));
        }
        Ok(self.recip())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self * r
    }
}
