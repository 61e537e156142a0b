//! Lefschetz numbers, the monodromy zeta function, and the trace identity.
//!
//! All of these read only the singleton strata of a model: component `E_i`
//! contributes its multiplicity `N_i` and the Euler characteristic `chi_i` of
//! its open stratum over the chosen support tag. Components with no listed
//! singleton stratum contribute zero. Two independent routes to the Lefschetz
//! numbers are provided: the divisor-supported sum [`lefschetz_series`] and
//! the logarithmic derivative of the expanded zeta function
//! ([`log_derivative_coefficients`]); their agreement is a standing check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::Error;
use crate::model::{ComponentId, ResolutionModel, Stratum};

/// A rational function `prod_N (T^N - 1)^(e_N)` in factored form:
/// distinct `N` in increasing order, all exponents nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredRational {
    pub factors: Vec<(u64, i64)>,
}

impl FactoredRational {
    /// Builds the canonical form from an exponent map, dropping zeros.
    pub fn from_exponents(exponents: BTreeMap<u64, i64>) -> Self {
        let factors = exponents.into_iter().filter(|&(_, e)| e != 0).collect();
        FactoredRational { factors }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(n, e)| {
                let base = if n == 1 {
                    "(T - 1)".to_string()
                } else {
                    format!("(T^{n} - 1)")
                };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// `(N_i, chi_i)` for every component with a listed singleton stratum
/// carrying the tag. Fails loudly if a listed singleton lacks the tag.
fn singleton_euler(model: &ResolutionModel, tag: &str) -> Result<Vec<(u64, i64)>, Error> {
    let mut out = Vec::new();
    for comp in &model.components {
        let single: BTreeSet<ComponentId> = [comp.id.clone()].into_iter().collect();
        if let Some(stratum) = model.stratum(&single) {
            let chi = stratum.chi.get(tag).copied().ok_or_else(|| Error::MissingChi {
                stratum: stratum.symbol_id().to_string(),
                tag: tag.to_string(),
            })?;
            out.push((comp.multiplicity, chi));
        }
    }
    Ok(out)
}

fn checked_acc(acc: i64, n: u64, chi: i64) -> Result<i64, Error> {
    let n = i64::try_from(n).map_err(|_| Error::Overflow("multiplicity"))?;
    n.checked_mul(chi)
        .and_then(|term| acc.checked_add(term))
        .ok_or(Error::Overflow("Lefschetz number"))
}

/// The Lefschetz number of the `d`-th monodromy iterate:
/// `sum over N_i | d` of `N_i * chi_i`.
pub fn lefschetz_number(model: &ResolutionModel, tag: &str, d: u64) -> Result<i64, Error> {
    let mut acc = 0i64;
    for (n, chi) in singleton_euler(model, tag)? {
        if n != 0 && d % n == 0 {
            acc = checked_acc(acc, n, chi)?;
        }
    }
    Ok(acc)
}

/// The Euler characteristic of the generic (Milnor) fiber over the support:
/// `sum_i N_i * chi_i`.
pub fn euler_milnor(model: &ResolutionModel, tag: &str) -> Result<i64, Error> {
    let mut acc = 0i64;
    for (n, chi) in singleton_euler(model, tag)? {
        acc = checked_acc(acc, n, chi)?;
    }
    Ok(acc)
}

/// The monodromy zeta function `prod_i (T^(N_i) - 1)^(-chi_i)` in factored
/// form, exponents merged over equal multiplicities.
pub fn monodromy_zeta(model: &ResolutionModel, tag: &str) -> Result<FactoredRational, Error> {
    let mut exponents: BTreeMap<u64, i64> = BTreeMap::new();
    for (n, chi) in singleton_euler(model, tag)? {
        let e = exponents.entry(n).or_insert(0);
        *e = e.checked_sub(chi).ok_or(Error::Overflow("zeta exponent"))?;
    }
    Ok(FactoredRational::from_exponents(exponents))
}

/// The Lefschetz generating series `sum_N c_N T^N / (1 - T^N)` with
/// `c_N = sum over N_i = N` of `N_i * chi_i`; its `T^d` coefficient is the
/// Lefschetz number of the `d`-th iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzSeries {
    /// `(N, c_N)` with distinct increasing `N` and nonzero `c_N`.
    pub terms: Vec<(u64, i64)>,
}

impl LefschetzSeries {
    /// The coefficient of `T^d`: the sum of `c_N` over `N | d`.
    pub fn coefficient(&self, d: u64) -> Result<i64, Error> {
        let mut acc = 0i64;
        for &(n, c) in &self.terms {
            if n != 0 && d % n == 0 {
                acc = acc.checked_add(c).ok_or(Error::Overflow("Lefschetz number"))?;
            }
        }
        Ok(acc)
    }

    /// Coefficients of `T^1 .. T^d_max` in order.
    pub fn coefficients_up_to(&self, d_max: u64) -> Result<Vec<i64>, Error> {
        (1..=d_max).map(|d| self.coefficient(d)).collect()
    }
}

impl fmt::Display for LefschetzSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(n, c)) in self.terms.iter().enumerate() {
            let negative = c < 0;
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let t = if n == 1 { "T".to_string() } else { format!("T^{n}") };
            let magnitude = c.unsigned_abs();
            if magnitude == 1 {
                write!(f, "{t}/(1 - {t})")?;
            } else {
                write!(f, "{magnitude}*{t}/(1 - {t})")?;
            }
        }
        Ok(())
    }
}

/// Builds the Lefschetz series of a model over a support tag.
pub fn lefschetz_series(model: &ResolutionModel, tag: &str) -> Result<LefschetzSeries, Error> {
    let mut merged: BTreeMap<u64, i64> = BTreeMap::new();
    for (n, chi) in singleton_euler(model, tag)? {
        let entry = merged.entry(n).or_insert(0);
        *entry = checked_acc(*entry, n, chi)?;
    }
    let terms = merged.into_iter().filter(|&(_, c)| c != 0).collect();
    Ok(LefschetzSeries { terms })
}

/// Truncated product of two integer power series.
fn truncated_mul(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(d - i) {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Truncated quotient `a / b` of integer power series; requires `b[0] = 1`,
/// which makes the quotient integral.
fn truncated_div(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    assert!(b[0].is_one(), "series division requires unit constant term");
    let mut out = vec![BigInt::zero(); d + 1];
    for i in 0..=d {
        let mut acc = a[i].clone();
        for j in 1..=i {
            acc -= &b[j] * &out[i - j];
        }
        out[i] = acc;
    }
    out
}

/// Coefficients of `T^1 .. T^d_max` of `T * (d/dT) log zhat`, where
/// `zhat = prod_N (1 - T^N)^(e_N)` uses the exponents of the factored zeta.
///
/// This expands `zhat` as an exact integer power series and divides, giving a
/// route to the Lefschetz numbers independent of the divisor-supported sums.
pub fn log_derivative_coefficients(factored: &FactoredRational, d_max: u64) -> Vec<BigInt> {
    let d = d_max as usize;
    let mut numerator = vec![BigInt::zero(); d + 1];
    numerator[0] = BigInt::one();
    let mut denominator = numerator.clone();
    for &(n, e) in &factored.factors {
        let n = n as usize;
        let mut base = vec![BigInt::zero(); d + 1];
        base[0] = BigInt::one();
        if n <= d {
            base[n] = BigInt::from(-1);
        }
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                numerator = truncated_mul(&numerator, &base, d);
            } else {
                denominator = truncated_mul(&denominator, &base, d);
            }
        }
    }
    // zhat as a power series, then T * zhat' / zhat.
    let zhat = truncated_div(&numerator, &denominator, d);
    let mut derivative = vec![BigInt::zero(); d + 1];
    for (i, value) in zhat.iter().enumerate().skip(1) {
        derivative[i] = value * BigInt::from(i as u64);
    }
    let ratio = truncated_div(&derivative, &zhat, d);
    ratio[1..].to_vec()
}

/// Both sides of the trace identity at iterate `d`: the cover Euler sum
/// (left) against the multiplicity-weighted Euler sum (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    pub d: u64,
    pub support: String,
    /// `sum over N_i | d` of the cover Euler characteristic of `E_i`.
    pub lhs: i64,
    /// `sum over N_i | d` of `N_i * chi_i`.
    pub rhs: i64,
}

impl LefschetzReport {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates the trace identity at iterate `d`: the recorded (or derived)
/// cover Euler characteristics of the divisor-supported components must sum
/// to the Lefschetz number.
pub fn verify_trace(model: &ResolutionModel, tag: &str, d: u64) -> Result<LefschetzReport, Error> {
    let mut lhs = 0i64;
    let mut rhs = 0i64;
    for comp in &model.components {
        if comp.multiplicity == 0 || d % comp.multiplicity != 0 {
            continue;
        }
        let single: BTreeSet<ComponentId> = [comp.id.clone()].into_iter().collect();
        let stratum: Option<&Stratum> = model.stratum(&single);
        if let Some(stratum) = stratum {
            let cover = model.chi_cover_value(stratum, tag)?;
            lhs = lhs.checked_add(cover).ok_or(Error::Overflow("trace sum"))?;
            let chi = stratum.chi.get(tag).copied().ok_or_else(|| Error::MissingChi {
                stratum: stratum.symbol_id().to_string(),
                tag: tag.to_string(),
            })?;
            rhs = checked_acc(rhs, comp.multiplicity, chi)?;
        }
    }
    Ok(LefschetzReport { d, support: tag.to_string(), lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cusp, node, smooth};

    /// Independent eigenvalue oracle for the cusp: the interesting monodromy
    /// eigenvalues are the primitive sixth roots of unity, whose power sums
    /// `x_d = z^d + conj(z)^d` obey the integer recurrence
    /// `x_(d+1) = x_d - x_(d-1)` with `x_0 = 2`, `x_1 = 1`; the Lefschetz
    /// number of the d-th iterate is `1 - x_d`.
    fn cusp_lefschetz_oracle(d: u64) -> i64 {
        let (mut prev, mut current) = (2i64, 1i64);
        if d == 0 {
            return 1 - prev;
        }
        for _ in 1..d {
            let next = current - prev;
            prev = current;
            current = next;
        }
        1 - current
    }

    #[test]
    fn cusp_lefschetz_numbers_match_the_eigenvalue_oracle() {
        let model = cusp();
        let frozen = [0, 2, 3, 2, 0, -1];
        for d in 1..=24u64 {
            let value = lefschetz_number(&model, "origin", d).unwrap();
            assert_eq!(value, cusp_lefschetz_oracle(d), "iterate {d}");
            if d <= 6 {
                assert_eq!(value, frozen[(d - 1) as usize], "frozen value at {d}");
            }
        }
    }

    #[test]
    fn node_and_smooth_lefschetz_numbers_are_constant() {
        for d in 1..=12u64 {
            assert_eq!(lefschetz_number(&node(), "origin", d).unwrap(), 0);
            assert_eq!(lefschetz_number(&node(), "total", d).unwrap(), 0);
            assert_eq!(lefschetz_number(&smooth(), "origin", d).unwrap(), 1);
        }
    }

    #[test]
    fn monodromy_zeta_matches_frozen_forms() {
        let zeta = monodromy_zeta(&cusp(), "origin").unwrap();
        assert_eq!(zeta.factors, vec![(2, -1), (3, -1), (6, 1)]);
        assert_eq!(zeta.to_string(), "(T^2 - 1)^-1 * (T^3 - 1)^-1 * (T^6 - 1)");

        let trivial = monodromy_zeta(&node(), "origin").unwrap();
        assert_eq!(trivial.factors, Vec::new());
        assert_eq!(trivial.to_string(), "1");

        let smooth_zeta = monodromy_zeta(&smooth(), "origin").unwrap();
        assert_eq!(smooth_zeta.factors, vec![(1, -1)]);
        assert_eq!(smooth_zeta.to_string(), "(T - 1)^-1");
    }

    #[test]
    fn euler_milnor_matches_the_zeta_degree() {
        for (model, expected) in [(node(), 0), (cusp(), -1), (smooth(), 1)] {
            let euler = euler_milnor(&model, "origin").unwrap();
            assert_eq!(euler, expected, "{:?}", model.name);
            // Degree relation: chi = -sum e_N * N over the factored zeta.
            let zeta = monodromy_zeta(&model, "origin").unwrap();
            let degree: i64 = zeta.factors.iter().map(|&(n, e)| e * n as i64).sum();
            assert_eq!(euler, -degree, "{:?}", model.name);
        }
    }

    #[test]
    fn lefschetz_series_agrees_with_pointwise_numbers() {
        for model in [node(), cusp(), smooth()] {
            let series = lefschetz_series(&model, "origin").unwrap();
            for d in 1..=24 {
                assert_eq!(
                    series.coefficient(d).unwrap(),
                    lefschetz_number(&model, "origin", d).unwrap(),
                    "{:?} at {d}",
                    model.name
                );
            }
        }
    }

    #[test]
    fn lefschetz_series_display_is_canonical() {
        let series = lefschetz_series(&cusp(), "origin").unwrap();
        assert_eq!(
            series.to_string(),
            "2*T^2/(1 - T^2) + 3*T^3/(1 - T^3) - 6*T^6/(1 - T^6)"
        );
        assert_eq!(lefschetz_series(&node(), "origin").unwrap().to_string(), "0");
    }

    #[test]
    fn log_derivative_route_reproduces_the_series() {
        for model in [node(), cusp(), smooth()] {
            let zeta = monodromy_zeta(&model, "origin").unwrap();
            let series = lefschetz_series(&model, "origin").unwrap();
            let expanded = log_derivative_coefficients(&zeta, 24);
            let direct = series.coefficients_up_to(24).unwrap();
            for (d, (a, b)) in expanded.iter().zip(&direct).enumerate() {
                assert_eq!(a, &BigInt::from(*b), "{:?} at degree {}", model.name, d + 1);
            }
        }
    }

    #[test]
    fn lefschetz_numbers_depend_only_on_the_divisor_set() {
        // {i : N_i | d} = {i : N_i | gcd(d, lcm of all N_i)}, so reducing d
        // modulo that lcm structure cannot change the number.
        for model in [node(), cusp(), smooth()] {
            let lcm = model
                .components
                .iter()
                .fold(1u64, |acc, c| num::integer::lcm(acc, c.multiplicity));
            for d in 1u64..=40 {
                let reduced = num::integer::gcd(d, lcm);
                assert_eq!(
                    lefschetz_number(&model, "origin", d).unwrap(),
                    lefschetz_number(&model, "origin", reduced).unwrap(),
                    "{:?}: degree {d} vs {reduced}",
                    model.name
                );
            }
        }
    }

    #[test]
    fn trace_identity_holds_on_recorded_cover_data() {
        let model = cusp();
        let report = verify_trace(&model, "origin", 6).unwrap();
        assert_eq!((report.lhs, report.rhs), (-1, -1));
        assert!(report.matches());
        let report = verify_trace(&model, "origin", 4).unwrap();
        assert_eq!((report.lhs, report.rhs), (2, 2));
        for d in 1..=12 {
            assert!(verify_trace(&model, "origin", d).unwrap().matches());
            assert!(verify_trace(&node(), "total", d).unwrap().matches());
        }
    }

    #[test]
    fn trace_identity_detects_corrupted_cover_data() {
        let mut model = cusp();
        if let Some(cover) = &mut model.strata[3].chi_cover {
            cover.insert("origin".to_string(), -5);
        }
        let report = verify_trace(&model, "origin", 6).unwrap();
        assert_eq!((report.lhs, report.rhs), (0, -1));
        assert!(!report.matches());
    }

    #[test]
    fn missing_tags_fail_loudly() {
        assert_eq!(
            lefschetz_number(&cusp(), "nowhere", 1),
            Err(Error::MissingChi { stratum: "{E0}".to_string(), tag: "nowhere".to_string() })
        );
    }
}
