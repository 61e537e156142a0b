//! Laurent polynomials in the Lefschetz class `L` with exact integer coefficients.
//!
//! These are the scalars of every motivic computation in this crate: stratum
//! classes are scaled by elements of `Z[L, L^-1]` and specializations evaluate
//! them at exact rational values. The representation is canonical (sorted
//! exponents, no zero coefficients), so `==` is mathematical equality and
//! `Display` output is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;

/// A Laurent polynomial `sum_e c_e * L^e` with arbitrary-precision integer
/// coefficients and integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// Exponent -> coefficient; zero coefficients are never stored.
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// A constant polynomial.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// The class `L` itself.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    /// The single power `L^e`.
    pub fn l_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    /// The monomial `c * L^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    /// Adds `c * L^e` in place, dropping the entry if it cancels.
    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff this is the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(BigInt::is_one)
    }

    /// The terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// The single term `(exponent, coefficient)` if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, c)| (e, c))
        } else {
            None
        }
    }

    /// `self^e` by repeated multiplication (exponents here are small).
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational value of `L`.
    ///
    /// Fails with [`Error::ZeroLValue`] if `x = 0` while a negative power occurs.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, Error> {
        if x.is_zero() && self.terms.keys().any(|&e| e < 0) {
            return Err(Error::ZeroLValue);
        }
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * rational_power(x, e)?;
        }
        Ok(acc)
    }

    /// Evaluation at `L = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// `x^e` for a rational base and a signed integer exponent.
fn rational_power(x: &BigRational, e: i64) -> Result<BigRational, Error> {
    let k = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Overflow("rational power"))?;
    let numer = x.numer().pow(k);
    let denom = x.denom().pow(k);
    if e >= 0 {
        Ok(BigRational::new(numer, denom))
    } else if numer.is_zero() {
        Err(Error::ZeroLValue)
    } else {
        Ok(BigRational::new(denom, numer))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering: descending exponents, explicit signs, `*` products.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let magnitude = c.abs();
            let body = match (e, magnitude.is_one()) {
                (0, _) => magnitude.to_string(),
                (1, true) => "L".to_string(),
                (1, false) => format!("{magnitude}*L"),
                (_, true) => format!("L^{e}"),
                (_, false) => format!("{magnitude}*L^{e}"),
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}
