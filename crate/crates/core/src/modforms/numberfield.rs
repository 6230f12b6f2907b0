//! Number fields `Q[x]/(p)` and their elements.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::field::FieldScalar;
use crate::poly::RationalPolynomial;

/// `Q[x]/(p)` for a monic irreducible `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Arc<RationalPolynomial>,
}

impl NumberField {
    /// Builds the field, normalizing `p` to be monic and proving it irreducible.
    pub fn new(p: &RationalPolynomial) -> Result<Self> {
        match p.degree() {
            None | Some(0) => return Err(Error::InvalidArgument(format!("modulus {p} has degree < 1"))),
            _ => {}
        }
        match p.is_irreducible() {
            Some(true) => Ok(NumberField { modulus: Arc::new(p.monic()) }),
            Some(false) => Err(Error::InvalidArgument(format!("modulus {p} is reducible over Q"))),
            None => Err(Error::Unsupported(format!("could not prove {p} irreducible"))),
        }
    }

    /// The rationals, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        NumberField { modulus: Arc::new(RationalPolynomial::x()) }
    }

    pub fn modulus(&self) -> &RationalPolynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn element(&self, p: &RationalPolynomial) -> NumberFieldElement {
        NumberFieldElement { field: self.clone(), value: p.rem(&self.modulus) }
    }

    pub fn from_rational(&self, r: &Rational) -> NumberFieldElement {
        NumberFieldElement { field: self.clone(), value: RationalPolynomial::constant(r.clone()) }
    }

    pub fn zero(&self) -> NumberFieldElement {
        self.from_rational(&Rational::zero())
    }

    pub fn one(&self) -> NumberFieldElement {
        self.from_rational(&Rational::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> NumberFieldElement {
        self.element(&RationalPolynomial::x())
    }

    /// Real roots of the modulus, ascending; each defines a real embedding.
    pub fn real_embeddings(&self) -> Vec<f64> {
        self.modulus.real_roots_f64()
    }

    pub fn is_totally_real(&self) -> bool {
        self.real_embeddings().len() == self.degree()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.modulus)
    }
}

/// Element of a [`NumberField`], stored as its reduced representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    field: NumberField,
    value: RationalPolynomial,
}

impl NumberFieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Representative of degree below the field degree.
    pub fn representative(&self) -> &RationalPolynomial {
        &self.value
    }

    /// Coefficients in the power basis `1, x, ..., x^{n-1}`.
    pub fn coordinates(&self) -> Vec<Rational> {
        (0..self.field.degree()).map(|i| self.value.coeff(i)).collect()
    }

    pub fn from_coordinates(field: &NumberField, coords: &[Rational]) -> Result<Self> {
        if coords.len() > field.degree() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                field.degree()
            )));
        }
        Ok(field.element(&RationalPolynomial::new(coords.to_vec())))
    }

    /// Returns the value when the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.value.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    /// Matrix of multiplication by `self` in the power basis (columns are images).
    fn mult_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let basis = RationalPolynomial::monomial(Rational::one(), j);
            let img = (&self.value * &basis).rem(&self.field.modulus);
            cols.push((0..n).map(|i| img.coeff(i)).collect::<Vec<_>>());
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace(&self) -> Rational {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    pub fn norm(&self) -> Rational {
        let poly = crate::linalg::charpoly(&self.mult_matrix());
        let n = self.field.degree();
        let c0 = poly.coeff(0);
        if n.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Image under the real embedding `x -> root`.
    pub fn embed(&self, root: f64) -> f64 {
        self.value.eval_f64(root)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Renders as a polynomial in `var`.
    pub fn to_string_var(&self, var: &str) -> String {
        self.value.to_string_var(var)
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "number-field elements from different fields");
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.value.coeff(0));
        }
        f.write_str(&self.to_string_var("a"))
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value, self.field.modulus)
    }
}

impl FieldScalar for NumberFieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_elt(&self) -> bool {
        self.value.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.check(other);
        NumberFieldElement { field: self.field.clone(), value: &self.value + &other.value }
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.check(other);
        NumberFieldElement { field: self.field.clone(), value: &self.value - &other.value }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.check(other);
        if self.field.degree() == 1 {
            return self.field.from_rational(&(self.value.coeff(0) * other.value.coeff(0)));
        }
        self.field.element(&(&self.value * &other.value))
    }
    fn neg_ref(&self) -> Self {
        NumberFieldElement { field: self.field.clone(), value: -&self.value }
    }
    fn inv_ref(&self) -> Result<Self> {
        if self.value.is_zero() {
            return Err(Error::Singular("inverse of zero in a number field".into()));
        }
        let (g, s, _) = self.value.ext_gcd(&self.field.modulus);
        if g.degree() != Some(0) {
            return Err(Error::Singular(format!("{self:?} is not invertible")));
        }
        Ok(self.field.element(&s))
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        self.field.from_rational(r)
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        NumberFieldElement { field: self.field.clone(), value: self.value.scale(r) }
    }
}

/// Real embeddings of an element as `f64`, one per real root of the modulus.
pub fn embeddings(x: &NumberFieldElement) -> Vec<f64> {
    x.field.real_embeddings().into_iter().map(|r| x.embed(r)).collect()
}

/// Rational approximation helper used when printing embeddings.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Constant helper for tests and callers that need `n` as a field element.
pub fn from_int(field: &NumberField, n: i64) -> NumberFieldElement {
    field.from_rational(&int(n))
}
