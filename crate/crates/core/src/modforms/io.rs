//! Line-oriented text format for q-expansions.
//!
//! ```text
//! weight 12 precision 3 field Q
//! 0 0/1
//! 1 1/1
//! 2 -24/1
//! 3 252/1
//! ```
//!
//! Over a number field the header names the modulus in `x` and each line
//! lists the power-basis coordinates of `a(n)`.

use crate::arith::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::modforms::numberfield::{NumberField, NumberFieldElement};
use crate::modforms::qseries::QSeries;
use crate::poly::RationalPolynomial;

/// A parsed q-expansion over either coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub enum StoredSeries {
    Rational(QSeries),
    NumberField(QSeries<NumberFieldElement>),
}

pub fn write_rational(f: &QSeries) -> String {
    let mut out = format!("weight {} precision {} field Q\n", f.weight(), f.precision());
    for (n, c) in f.coeffs().iter().enumerate() {
        out.push_str(&format!("{n} {}\n", fmt_rational(c)));
    }
    out
}

pub fn write_number_field(f: &QSeries<NumberFieldElement>) -> String {
    let field = f.coeffs()[0].field();
    let mut out = format!("weight {} precision {} field {}\n", f.weight(), f.precision(), field.modulus());
    for (n, c) in f.coeffs().iter().enumerate() {
        let coords: Vec<String> = c.coordinates().iter().map(fmt_rational).collect();
        out.push_str(&format!("{n} {}\n", coords.join(" ")));
    }
    out
}

pub fn read(text: &str) -> Result<StoredSeries> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let parts: Vec<&str> = header.splitn(6, ' ').collect();
    if parts.len() != 6 || parts[0] != "weight" || parts[2] != "precision" || parts[4] != "field" {
        return Err(Error::Parse(format!("bad header {header:?}")));
    }
    let weight: i64 = parts[1].parse().map_err(|e| Error::Parse(format!("bad weight: {e}")))?;
    let precision: usize = parts[3].parse().map_err(|e| Error::Parse(format!("bad precision: {e}")))?;
    let field = match parts[5].trim() {
        "Q" => None,
        poly => Some(NumberField::new(&RationalPolynomial::parse(poly, 'x')?)?),
    };
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(precision + 1);
    for (expected, line) in lines.enumerate() {
        let mut tokens = line.split_whitespace();
        let n: usize = tokens
            .next()
            .unwrap()
            .parse()
            .map_err(|e| Error::Parse(format!("bad index in {line:?}: {e}")))?;
        if n != expected {
            return Err(Error::Parse(format!("expected index {expected}, found {n}")));
        }
        rows.push(tokens.map(parse_rational).collect::<Result<_>>()?);
    }
    if rows.len() != precision + 1 {
        return Err(Error::Parse(format!("header promises {} coefficients, found {}", precision + 1, rows.len())));
    }
    match field {
        None => {
            let coeffs = rows
                .into_iter()
                .map(|r| match r.as_slice() {
                    [c] => Ok(c.clone()),
                    _ => Err(Error::Parse("rational series needs one value per line".into())),
                })
                .collect::<Result<_>>()?;
            Ok(StoredSeries::Rational(QSeries::new(weight, coeffs)?))
        }
        Some(k) => {
            let coeffs = rows
                .iter()
                .map(|r| NumberFieldElement::from_coordinates(&k, r))
                .collect::<Result<_>>()?;
            Ok(StoredSeries::NumberField(QSeries::new(weight, coeffs)?))
        }
    }
}
