//! Generating series attached to a model and their exact operations.
//!
//! Every series here is a finite sum of closed-form terms
//! `coefficient * prod_f (L^a T^b) / (1 - L^a T^b)`, so coefficients of any
//! `T^d` can be extracted exactly by enumeration, and the `T -> infinity`
//! limit is a finite signed sum. Two independent coefficient routes are
//! provided: [`series_coefficient`] enumerates exponent assignments on the
//! factored form, while [`direct_coefficient`] multiplies truncated geometric
//! blocks; their agreement is a standing cross-check.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::model::{ComponentId, ResolutionModel};
use crate::motivic::{MotivicClass, SymbolId};

/// One closed-form summand `coefficient * prod (L^a T^b) / (1 - L^a T^b)`,
/// the factors stored as a sorted multiset of `(a, b)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTerm {
    pub coefficient: MotivicClass,
    pub factors: Vec<(i64, u64)>,
}

/// A finite sum of closed-form terms, one per contributing stratum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotivicSeries {
    pub terms: Vec<SeriesTerm>,
}

/// `(L - 1)^(len - 1)`, the inclusion-exclusion prefactor of a stratum.
fn stratum_prefactor(len: usize) -> LaurentPoly {
    let l_minus_1 = &LaurentPoly::lefschetz() - &LaurentPoly::one();
    l_minus_1.pow((len.saturating_sub(1)) as u32)
}

/// Builds one series term per stratum, with the factor exponent of component
/// `i` given by `order(component_i)` and an overall scalar `scale` on the
/// coefficient.
fn stratum_series(
    model: &ResolutionModel,
    scale: &LaurentPoly,
    order: impl Fn(&crate::model::Component) -> Result<i64, Error>,
) -> Result<MotivicSeries, Error> {
    let mut terms = Vec::with_capacity(model.strata.len());
    for s in &model.strata {
        let mut factors = Vec::with_capacity(s.subset.len());
        for id in &s.subset {
            let comp = model
                .component(id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            factors.push((order(comp)?, comp.multiplicity));
        }
        factors.sort();
        let coefficient_poly = &stratum_prefactor(s.subset.len()) * scale;
        terms.push(SeriesTerm {
            coefficient: MotivicClass::from_term(s.symbol_id(), coefficient_poly),
            factors,
        });
    }
    Ok(MotivicSeries { terms })
}

/// The volume series `L^-rel_dim * sum_J (L-1)^(|J|-1) [E~_J] *
/// prod_i (L^-mu_i T^N_i) / (1 - L^-mu_i T^N_i)`. Needs `mu` everywhere.
pub fn volume_series(model: &ResolutionModel) -> Result<MotivicSeries, Error> {
    let scale = LaurentPoly::l_pow(-i64::from(model.rel_dim));
    stratum_series(model, &scale, |comp| {
        let mu = comp
            .gauge_order
            .ok_or_else(|| Error::MissingGaugeOrder(comp.id.clone()))?;
        Ok(-mu)
    })
}

/// The zeta series `sum_J (L-1)^(|J|-1) [E~_J] *
/// prod_i (L^-nu_i T^N_i) / (1 - L^-nu_i T^N_i)`. Needs `nu` everywhere.
pub fn motivic_zeta(model: &ResolutionModel) -> Result<MotivicSeries, Error> {
    stratum_series(model, &LaurentPoly::one(), |comp| {
        let nu = comp
            .discrepancy
            .ok_or_else(|| Error::MissingDiscrepancy(comp.id.clone()))?;
        Ok(-nu)
    })
}

/// The reduced series `sum_i [E~_i] T^(N_i) / (1 - T^(N_i))` over the listed
/// singleton strata; its `T^d` coefficient is `sum over N_i | d` of `[E~_i]`.
pub fn serre_series(model: &ResolutionModel) -> MotivicSeries {
    let terms = model
        .strata
        .iter()
        .filter(|s| s.subset.len() == 1)
        .map(|s| {
            let id = s.subset.iter().next().expect("singleton");
            let n = model
                .component(id)
                .map(|c| c.multiplicity)
                // Unknown ids yield an inert factor; validation reports them.
                .unwrap_or(1);
            SeriesTerm {
                coefficient: MotivicClass::symbol(s.symbol_id()),
                factors: vec![(0, n)],
            }
        })
        .collect();
    MotivicSeries { terms }
}

/// Sum of `L^(sum k_f a_f)` over assignments `k_f >= 1` with
/// `sum k_f b_f = d`, by direct recursive enumeration.
fn exponent_sum(factors: &[(i64, u64)], d: u64) -> LaurentPoly {
    match factors.split_first() {
        None => {
            if d == 0 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            }
        }
        Some((&(a, b), rest)) => {
            let rest_minimum: u64 = rest.iter().map(|factor| factor.1).sum();
            let mut acc = LaurentPoly::zero();
            let mut k = 1u64;
            while let Some(kb) = k.checked_mul(b) {
                if kb + rest_minimum > d {
                    break;
                }
                let tail = exponent_sum(rest, d - kb);
                if !tail.is_zero() {
                    acc = &acc + &(&LaurentPoly::l_pow(a * k as i64) * &tail);
                }
                k += 1;
            }
            acc
        }
    }
}

/// The exact coefficient of `T^d` of a factored series.
pub fn series_coefficient(series: &MotivicSeries, d: u64) -> MotivicClass {
    let mut acc = MotivicClass::zero();
    for term in &series.terms {
        let weight = exponent_sum(&term.factors, d);
        if !weight.is_zero() {
            acc = acc.add(&term.coefficient.scale(&weight));
        }
    }
    acc
}

/// Truncated product of polynomials in `T` with `LaurentPoly` coefficients.
fn truncated_mul(a: &[LaurentPoly], b: &[LaurentPoly], d: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); d + 1];
    for i in 0..=d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(d - i) {
            if b[j].is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

/// The coefficient of `T^d` of the volume series, computed independently of
/// the factored form: per stratum, the degree-`d` coefficient of the product
/// of truncated geometric blocks `sum_(k >= 1) L^(-k mu_i) T^(k N_i)`.
pub fn direct_coefficient(model: &ResolutionModel, d: u64) -> Result<MotivicClass, Error> {
    let degree = usize::try_from(d).map_err(|_| Error::Overflow("coefficient degree"))?;
    let rel_scale = LaurentPoly::l_pow(-i64::from(model.rel_dim));
    let mut total = MotivicClass::zero();
    for s in &model.strata {
        let mut product = vec![LaurentPoly::zero(); degree + 1];
        product[0] = LaurentPoly::one();
        for id in &s.subset {
            let comp = model
                .component(id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            let mu = comp
                .gauge_order
                .ok_or_else(|| Error::MissingGaugeOrder(comp.id.clone()))?;
            let n = usize::try_from(comp.multiplicity).map_err(|_| Error::Overflow("multiplicity"))?;
            let mut block = vec![LaurentPoly::zero(); degree + 1];
            if n >= 1 {
                let mut k = 1usize;
                while k * n <= degree {
                    block[k * n] = LaurentPoly::l_pow(-(mu * k as i64));
                    k += 1;
                }
            }
            product = truncated_mul(&product, &block, degree);
        }
        let inner = product[degree].clone();
        if inner.is_zero() {
            continue;
        }
        let coefficient = &(&stratum_prefactor(s.subset.len()) * &rel_scale) * &inner;
        total = total.add(&MotivicClass::from_term(s.symbol_id(), coefficient));
    }
    Ok(total)
}

/// The `T -> infinity` limit: each factor `(L^a T^b) / (1 - L^a T^b)` tends
/// to `-1`, so a term contributes its coefficient times `(-1)^#factors`.
pub fn limit_t_infinity(series: &MotivicSeries) -> MotivicClass {
    let mut acc = MotivicClass::zero();
    for term in &series.terms {
        if term.factors.len() % 2 == 0 {
            acc = acc.add(&term.coefficient);
        } else {
            acc = acc.sub(&term.coefficient);
        }
    }
    acc
}

/// The closed-form volume `L^-rel_dim * sum_J (1-L)^(|J|-1) [E~_J]`,
/// which equals minus the `T -> infinity` limit of the volume series and is
/// independent of the chosen `mu`.
pub fn motivic_volume(model: &ResolutionModel) -> MotivicClass {
    nearby_cycles(model).scale(&LaurentPoly::l_pow(-i64::from(model.rel_dim)))
}

/// The nearby-cycles class `sum_J (1-L)^(|J|-1) [E~_J]`.
pub fn nearby_cycles(model: &ResolutionModel) -> MotivicClass {
    let one_minus_l = &LaurentPoly::one() - &LaurentPoly::lefschetz();
    let mut acc = MotivicClass::zero();
    for s in &model.strata {
        let coefficient = one_minus_l.pow((s.subset.len().saturating_sub(1)) as u32);
        acc = acc.add(&MotivicClass::from_term(s.symbol_id(), coefficient));
    }
    acc
}

/// One stratum whose volume term disagrees with the rescaled zeta term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilMismatch {
    pub stratum: SymbolId,
    pub volume_term: SeriesTerm,
    pub transformed_zeta_term: SeriesTerm,
}

/// Outcome of the substitution identity `volume(T) = L^-rel_dim * zeta(L T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilReport {
    pub strata_checked: usize,
    pub mismatches: Vec<WeilMismatch>,
}

impl WeilReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks, stratum by stratum, that substituting `T -> L T` into the zeta
/// series and scaling by `L^-rel_dim` reproduces the volume series.
pub fn weil_identity_check(model: &ResolutionModel) -> Result<WeilReport, Error> {
    let volume = volume_series(model)?;
    let zeta = motivic_zeta(model)?;
    let rel_scale = LaurentPoly::l_pow(-i64::from(model.rel_dim));
    let mut mismatches = Vec::new();
    for ((s, volume_term), zeta_term) in model.strata.iter().zip(&volume.terms).zip(&zeta.terms) {
        let mut factors: Vec<(i64, u64)> = zeta_term
            .factors
            .iter()
            .map(|&(a, b)| (a + b as i64, b))
            .collect();
        factors.sort();
        let transformed = SeriesTerm {
            coefficient: zeta_term.coefficient.scale(&rel_scale),
            factors,
        };
        if transformed != *volume_term {
            mismatches.push(WeilMismatch {
                stratum: s.symbol_id(),
                volume_term: volume_term.clone(),
                transformed_zeta_term: transformed,
            });
        }
    }
    Ok(WeilReport { strata_checked: model.strata.len(), mismatches })
}

/// Outcome of the blow-up invariance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupReport {
    pub center: BTreeSet<ComponentId>,
    pub new_component: ComponentId,
    /// Whether the closed-form volumes agree after substitution.
    pub volume_match: bool,
    pub d_max: u64,
    /// Degrees `1..=d_max` whose coefficients disagree after substitution.
    pub mismatched_degrees: Vec<u64>,
}

impl BlowupReport {
    pub fn matches(&self) -> bool {
        self.volume_match && self.mismatched_degrees.is_empty()
    }
}

/// Blows up `center`, rewrites the blown-up model's volume data back through
/// the substitution dictionary, and compares: the motivic volume and every
/// coefficient of `T^d` for `d <= d_max` must be unchanged.
pub fn blowup_invariance_check(
    model: &ResolutionModel,
    center: &BTreeSet<ComponentId>,
    d_max: u64,
) -> Result<BlowupReport, Error> {
    let blow_up = model.blow_up_stratum(center)?;
    let volume_match = motivic_volume(&blow_up.model).substitute(&blow_up.substitution)
        == motivic_volume(model);
    let mut mismatched_degrees = Vec::new();
    for d in 1..=d_max {
        let original = direct_coefficient(model, d)?;
        let rewritten = direct_coefficient(&blow_up.model, d)?.substitute(&blow_up.substitution);
        if original != rewritten {
            mismatched_degrees.push(d);
        }
    }
    Ok(BlowupReport {
        center: blow_up.center,
        new_component: blow_up.new_component,
        volume_match,
        d_max,
        mismatched_degrees,
    })
}

/// Renders `L^a T^b` with the usual abbreviations.
fn factor_numerator(a: i64, b: u64) -> String {
    let t = if b == 1 { "T".to_string() } else { format!("T^{b}") };
    match a {
        0 => t,
        1 => format!("L*{t}"),
        _ => format!("L^{a}*{t}"),
    }
}

impl fmt::Display for SeriesTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coefficient = if self.coefficient.terms().count() == 1 {
            self.coefficient.to_string()
        } else {
            format!("({})", self.coefficient)
        };
        if self.factors.is_empty() {
            return f.write_str(&coefficient);
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let (a, b) = self.factors[i];
            let mut count = 1;
            while i + count < self.factors.len() && self.factors[i + count] == (a, b) {
                count += 1;
            }
            let numerator = factor_numerator(a, b);
            let base = format!("{numerator}/(1 - {numerator})");
            if count == 1 {
                parts.push(base);
            } else {
                parts.push(format!("({base})^{count}"));
            }
            i += count;
        }
        write!(f, "{coefficient} * {}", parts.join(" * "))
    }
}

impl fmt::Display for MotivicSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self.terms.iter().map(SeriesTerm::to_string).collect();
        f.write_str(&rendered.join(" + "))
    }
}
