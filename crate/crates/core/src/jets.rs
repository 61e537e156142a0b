//! Brute-force jet counting over small prime fields, and the comparison of
//! those counts against specialized series coefficients.
//!
//! A jet of order `d` in `n` variables over `F_q` is a tuple of truncated
//! polynomials in `u` of degree `<= d`. [`count_jets`] enumerates every jet
//! and counts those with `f(jet) = u^d` exactly, modulo `u^(d+1)`. The
//! enumeration is partitioned over the block of degree-0 coefficients, which
//! both bounds memory and gives the origin-supported count
//! ([`count_jets_at_origin`]) as the single zero block.

use std::collections::BTreeMap;

use num::integer::gcd;
use num::{BigInt, BigRational, Integer, ToPrimitive, Zero};

use crate::error::Error;
use crate::model::{ResolutionModel, SUPPORT_TOTAL};
use crate::series::{motivic_zeta, series_coefficient};

/// Default cap on the number of jet evaluations a single call may perform.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A multivariate polynomial with integer coefficients in sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    num_vars: usize,
    /// Exponent vector (length `num_vars`) -> nonzero coefficient.
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparsePoly {
    /// Builds a polynomial, merging duplicate monomials and dropping zeros.
    /// Every exponent vector must have length `num_vars`.
    pub fn new(
        num_vars: usize,
        monomials: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self, Error> {
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (exponents, coefficient) in monomials {
            if exponents.len() != num_vars {
                return Err(Error::ArityMismatch { expected: num_vars, got: exponents.len() });
            }
            *terms.entry(exponents).or_insert_with(BigInt::zero) += coefficient;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SparsePoly { num_vars, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// True iff the polynomial is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The monomials in canonical (exponent-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }
}

/// A truncated arc: for each variable, the coefficients of `1, u, ..., u^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetVector {
    q: u64,
    order: u64,
    coords: Vec<Vec<u64>>,
}

impl JetVector {
    /// Builds a jet over `F_q` truncated at order `d`; every coordinate must
    /// supply exactly `d + 1` coefficients, which are reduced mod `q`.
    pub fn new(q: u64, order: u64, coords: Vec<Vec<u64>>) -> Result<Self, Error> {
        check_prime(q)?;
        let length = order as usize + 1;
        for coordinate in &coords {
            if coordinate.len() != length {
                return Err(Error::ArityMismatch { expected: length, got: coordinate.len() });
            }
        }
        let coords = coords
            .into_iter()
            .map(|coordinate| coordinate.into_iter().map(|c| c % q).collect())
            .collect();
        Ok(JetVector { q, order, coords })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Vec<u64>] {
        &self.coords
    }
}

/// Trial-division primality check (field sizes here are desk-scale).
fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut p = 3u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= q) {
        if q % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

fn check_prime(q: u64) -> Result<(), Error> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NonPrimeField(q))
    }
}

/// `c mod q` mapped into `[0, q)`.
fn reduce(coefficient: &BigInt, q: u64) -> u64 {
    coefficient
        .mod_floor(&BigInt::from(q))
        .to_u64()
        .expect("a residue mod q fits in u64")
}

/// Truncated product of coefficient vectors mod q.
fn multiply_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let length = a.len();
    let mut out = vec![0u64; length];
    for i in 0..length {
        if a[i] == 0 {
            continue;
        }
        for j in 0..length - i {
            if b[j] == 0 {
                continue;
            }
            let product = (a[i] as u128 * b[j] as u128 % q as u128) as u64;
            out[i + j] = (out[i + j] + product) % q;
        }
    }
    out
}

/// Evaluates `f` on truncated coordinates, returning the coefficients of
/// `f(jet) mod u^(d+1)`.
fn evaluate(f: &SparsePoly, coords: &[Vec<u64>], length: usize, q: u64) -> Vec<u64> {
    let mut acc = vec![0u64; length];
    for (exponents, coefficient) in &f.terms {
        let mut term = vec![0u64; length];
        term[0] = reduce(coefficient, q);
        for (variable, &exponent) in exponents.iter().enumerate() {
            for _ in 0..exponent {
                term = multiply_mod(&term, &coords[variable], q);
            }
        }
        for i in 0..length {
            acc[i] = (acc[i] + term[i]) % q;
        }
    }
    acc
}

/// Evaluates `f` on a jet: the truncated coefficient vector of the image.
pub fn eval_jet(f: &SparsePoly, jet: &JetVector) -> Result<Vec<u64>, Error> {
    if f.num_vars != jet.coords.len() {
        return Err(Error::ArityMismatch { expected: f.num_vars, got: jet.coords.len() });
    }
    Ok(evaluate(f, &jet.coords, jet.order as usize + 1, jet.q))
}

/// True iff the evaluated image is exactly `u^d` mod `u^(d+1)`.
fn hits_target(image: &[u64], d: usize) -> bool {
    image[..d].iter().all(|&c| c == 0) && image[d] == 1
}

/// Counts jets with fixed degree-0 coefficients `base`, enumerating the
/// `q^(num_vars * d)` higher coefficients with an odometer.
fn count_with_base(f: &SparsePoly, d: u64, q: u64, base: &[u64]) -> u64 {
    let n = f.num_vars;
    let d_usize = d as usize;
    let length = d_usize + 1;
    let mut coords = vec![vec![0u64; length]; n];
    for (variable, &constant) in base.iter().enumerate() {
        coords[variable][0] = constant;
    }
    let digit_count = n * d_usize;
    let mut digits = vec![0u64; digit_count];
    let mut count = 0u64;
    loop {
        for variable in 0..n {
            for position in 1..length {
                coords[variable][position] = digits[variable * d_usize + position - 1];
            }
        }
        if hits_target(&evaluate(f, &coords, length, q), d_usize) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == digit_count {
                return count;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `q^digits`, saturated to mark hopeless budgets.
fn enumeration_cost(q: u64, digit_count: usize) -> u128 {
    let exponent = u32::try_from(digit_count).unwrap_or(u32::MAX);
    (q as u128).saturating_pow(exponent)
}

fn check_budget(cost: u128, budget: u64) -> Result<(), Error> {
    if cost > u128::from(budget) {
        Err(Error::BudgetExceeded { needed: cost, budget })
    } else {
        Ok(())
    }
}

fn check_poly(f: &SparsePoly) -> Result<(), Error> {
    if f.is_zero() {
        Err(Error::EmptyPolynomial)
    } else {
        Ok(())
    }
}

/// Counts order-`d` jets over `F_q` with `f(jet) = u^d` exactly mod
/// `u^(d+1)`, by full enumeration partitioned over the degree-0 block.
pub fn count_jets(f: &SparsePoly, d: u64, q: u64, budget: u64) -> Result<u64, Error> {
    check_prime(q)?;
    check_poly(f)?;
    let n = f.num_vars;
    check_budget(enumeration_cost(q, n * (d as usize + 1)), budget)?;
    let mut base = vec![0u64; n];
    let mut total = 0u64;
    loop {
        total += count_with_base(f, d, q, &base);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(total);
            }
            base[i] += 1;
            if base[i] < q {
                break;
            }
            base[i] = 0;
            i += 1;
        }
    }
}

/// Counts only jets whose coordinates vanish at `u = 0` (the block over the
/// origin): the single zero block of the partition.
pub fn count_jets_at_origin(f: &SparsePoly, d: u64, q: u64, budget: u64) -> Result<u64, Error> {
    check_prime(q)?;
    check_poly(f)?;
    let n = f.num_vars;
    check_budget(enumeration_cost(q, n * d as usize), budget)?;
    Ok(count_with_base(f, d, q, &vec![0u64; n]))
}

/// Outcome of a point-count comparison: the specialized series coefficient
/// against the brute-force count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCountReport {
    pub d: u64,
    pub q: u64,
    pub support: String,
    /// `q^(ambient_dim * d)` times the specialized zeta coefficient.
    pub predicted: BigInt,
    /// The brute-force enumeration result.
    pub counted: u64,
}

impl PointCountReport {
    pub fn matches(&self) -> bool {
        self.predicted == BigInt::from(self.counted)
    }
}

/// Specializes the degree-`d` zeta coefficient of `model` at `L = q` over the
/// given support and compares it against brute-force jet counting for `f`.
///
/// The `total` support substitutes each stratum's recorded `class_L` and
/// compares against all jets; any other tag substitutes the cover Euler
/// characteristic over that tag (exact when the restricted covers are finite
/// split point sets, as in the shipped point-count fixtures) and compares
/// against jets over the origin. Requires `ambient_dim` and `q` coprime to
/// every multiplicity.
pub fn verify_point_count(
    model: &ResolutionModel,
    f: &SparsePoly,
    d: u64,
    q: u64,
    support: &str,
    budget: u64,
) -> Result<PointCountReport, Error> {
    let ambient_dim = model.ambient_dim.ok_or(Error::MissingAmbientDim)?;
    check_prime(q)?;
    for comp in &model.components {
        if gcd(q, comp.multiplicity) != 1 {
            return Err(Error::NonCoprimeMultiplicity {
                q,
                n: comp.multiplicity,
                id: comp.id.clone(),
            });
        }
    }
    let zeta = motivic_zeta(model)?;
    let coefficient = series_coefficient(&zeta, d);
    let q_value = BigRational::from_integer(BigInt::from(q));
    let mut specialized = BigRational::zero();
    for (symbol, poly) in coefficient.terms() {
        let stratum = model
            .strata
            .iter()
            .find(|s| &s.symbol_id() == symbol)
            .expect("zeta coefficients only involve the model's strata");
        let symbol_value = if support == SUPPORT_TOTAL {
            stratum
                .class_l
                .as_ref()
                .ok_or_else(|| Error::MissingClassL(symbol.to_string()))?
                .eval(&q_value)?
        } else {
            BigRational::from_integer(BigInt::from(model.chi_cover_value(stratum, support)?))
        };
        specialized += poly.eval(&q_value)? * symbol_value;
    }
    let exponent = u32::try_from(u64::from(ambient_dim) * d)
        .map_err(|_| Error::Overflow("normalization exponent"))?;
    let predicted_rational = specialized * BigRational::from_integer(BigInt::from(q).pow(exponent));
    if !predicted_rational.is_integer() {
        return Err(Error::InexactPointCount(predicted_rational.to_string()));
    }
    let predicted = predicted_rational.to_integer();
    let counted = if support == SUPPORT_TOTAL {
        count_jets(f, d, q, budget)?
    } else {
        count_jets_at_origin(f, d, q, budget)?
    };
    Ok(PointCountReport { d, q, support: support.to_string(), predicted, counted })
}
