//! Formal classes in the localized Grothendieck module over a model's strata.
//!
//! A [`MotivicClass`] is a finite `Z[L, L^-1]`-linear combination of opaque
//! stratum-cover symbols. The module deliberately exposes no product of two
//! classes: everything downstream only ever scales classes by Laurent
//! polynomials and adds them, which keeps the computation inside the module
//! structure where it is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigRational, Signed, Zero};

use crate::error::Error;
use crate::laurent::LaurentPoly;

/// Opaque identifier of a stratum-cover symbol, canonical per component subset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(String);

impl SymbolId {
    /// Canonical symbol for a set of component ids: sorted, deduplicated,
    /// rendered as `{a,b,c}`.
    pub fn from_parts<I, S>(parts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let sorted: BTreeSet<String> = parts.into_iter().map(|s| s.as_ref().to_string()).collect();
        let joined: Vec<&str> = sorted.iter().map(String::as_str).collect();
        SymbolId(format!("{{{}}}", joined.join(",")))
    }

    /// The canonical text of the symbol.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A stratum symbol together with the data that identifies it in a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumSymbol {
    /// Canonical identifier, unique within a model.
    pub id: SymbolId,
    /// The component subset the stratum lies on.
    pub subset: BTreeSet<String>,
    /// Degree of the stratum's cyclic cover (the gcd of the multiplicities).
    pub cover_degree: u64,
}

/// A finite `Z[L, L^-1]`-linear combination of stratum symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotivicClass {
    /// Symbol -> coefficient; zero coefficients are never stored.
    terms: BTreeMap<SymbolId, LaurentPoly>,
}

impl MotivicClass {
    /// The zero class.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a single symbol with coefficient 1.
    pub fn symbol(id: SymbolId) -> Self {
        Self::from_term(id, LaurentPoly::one())
    }

    /// The class `coefficient * [id]`.
    pub fn from_term(id: SymbolId, coefficient: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(id, coefficient);
        out
    }

    fn add_term(&mut self, id: SymbolId, coefficient: LaurentPoly) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(id.clone()).or_default();
        *entry = &*entry + &coefficient;
        if entry.is_zero() {
            self.terms.remove(&id);
        }
    }

    /// True iff the class is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The terms in canonical (symbol) order.
    pub fn terms(&self) -> impl Iterator<Item = (&SymbolId, &LaurentPoly)> {
        self.terms.iter()
    }

    /// The coefficient of a symbol (zero if absent).
    pub fn coefficient(&self, id: &SymbolId) -> LaurentPoly {
        self.terms.get(id).cloned().unwrap_or_default()
    }

    /// Sum of two classes.
    pub fn add(&self, rhs: &MotivicClass) -> MotivicClass {
        let mut out = self.clone();
        for (id, c) in &rhs.terms {
            out.add_term(id.clone(), c.clone());
        }
        out
    }

    /// Difference of two classes.
    pub fn sub(&self, rhs: &MotivicClass) -> MotivicClass {
        self.add(&rhs.neg())
    }

    /// Negation.
    pub fn neg(&self) -> MotivicClass {
        let terms = self.terms.iter().map(|(id, c)| (id.clone(), -c)).collect();
        MotivicClass { terms }
    }

    /// Scalar multiplication by a Laurent polynomial.
    pub fn scale(&self, scalar: &LaurentPoly) -> MotivicClass {
        let mut out = Self::zero();
        for (id, c) in &self.terms {
            out.add_term(id.clone(), c * scalar);
        }
        out
    }

    /// Replaces each symbol by a class, extending `Z[L, L^-1]`-linearly.
    ///
    /// Symbols absent from the map are kept as themselves.
    pub fn substitute(&self, map: &BTreeMap<SymbolId, MotivicClass>) -> MotivicClass {
        let mut out = Self::zero();
        for (id, c) in &self.terms {
            match map.get(id) {
                Some(replacement) => out = out.add(&replacement.scale(c)),
                None => out.add_term(id.clone(), c.clone()),
            }
        }
        out
    }

    /// Exact numeric specialization of every symbol and of `L`.
    pub fn specialize(&self, spec: &Specialization) -> Result<BigRational, Error> {
        let mut acc = BigRational::zero();
        for (id, c) in &self.terms {
            let value = spec
                .symbol_values
                .get(id)
                .ok_or_else(|| Error::MissingSymbolValue(id.clone()))?;
            acc += c.eval(&spec.l_value)? * value;
        }
        Ok(acc)
    }

    /// Sets `L = 1` in every coefficient, i.e. the reduction that kills the
    /// ideal generated by `L - 1`.
    pub fn serre_reduce(&self) -> MotivicClass {
        let mut out = Self::zero();
        for (id, c) in &self.terms {
            out.add_term(id.clone(), LaurentPoly::constant(c.eval_at_one()));
        }
        out
    }
}

impl fmt::Display for MotivicClass {
    /// Canonical rendering: symbols in canonical order, explicit signs,
    /// coefficient polynomials parenthesized when they have several terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (id, c)) in self.terms.iter().enumerate() {
            let (negative, body) = match c.as_monomial() {
                Some((_, coeff)) => {
                    let negative = coeff.is_negative();
                    let magnitude = if negative { -c } else { c.clone() };
                    if magnitude.is_one() {
                        (negative, format!("[{id}]"))
                    } else {
                        (negative, format!("{magnitude}*[{id}]"))
                    }
                }
                None => (false, format!("({c})*[{id}]")),
            };
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// An assignment of exact rational values to stratum symbols and to `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    symbol_values: BTreeMap<SymbolId, BigRational>,
    l_value: BigRational,
}

impl Specialization {
    /// Builds a specialization; the value of `L` must be nonzero because
    /// classes may carry negative powers of `L`.
    pub fn new(
        symbol_values: BTreeMap<SymbolId, BigRational>,
        l_value: BigRational,
    ) -> Result<Self, Error> {
        if l_value.is_zero() {
            return Err(Error::ZeroLValue);
        }
        Ok(Self { symbol_values, l_value })
    }

    /// The assigned symbol values.
    pub fn symbol_values(&self) -> &BTreeMap<SymbolId, BigRational> {
        &self.symbol_values
    }

    /// The value assigned to `L`.
    pub fn l_value(&self) -> &BigRational {
        &self.l_value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn sym(name: &str) -> SymbolId {
        SymbolId::from_parts([name])
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn symbol_ids_are_canonical() {
        let a = SymbolId::from_parts(["E2", "E1"]);
        let b = SymbolId::from_parts(["E1", "E2", "E1"]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{E1,E2}");
    }

    #[test]
    fn display_is_canonical() {
        let l = LaurentPoly::lefschetz();
        let one = LaurentPoly::one();
        let class = MotivicClass::from_term(sym("a"), &one - &l)
            .add(&MotivicClass::symbol(sym("b")))
            .add(&MotivicClass::from_term(sym("c"), LaurentPoly::monomial(-1, -1)));
        assert_eq!(class.to_string(), "(-L + 1)*[{a}] + [{b}] - L^-1*[{c}]");
        assert_eq!(MotivicClass::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_symbols() {
        let a = MotivicClass::symbol(sym("a"));
        assert!(a.sub(&a).is_zero());
        let scaled = a.scale(&LaurentPoly::zero());
        assert!(scaled.is_zero());
    }

    #[test]
    fn substitution_is_linear() {
        // a -> (L-1) b, leave c alone.
        let l_minus_1 = &LaurentPoly::lefschetz() - &LaurentPoly::one();
        let mut map = BTreeMap::new();
        map.insert(sym("a"), MotivicClass::from_term(sym("b"), l_minus_1.clone()));
        let class = MotivicClass::from_term(sym("a"), LaurentPoly::constant(2))
            .add(&MotivicClass::symbol(sym("c")));
        let substituted = class.substitute(&map);
        let expected = MotivicClass::from_term(sym("b"), &LaurentPoly::constant(2) * &l_minus_1)
            .add(&MotivicClass::symbol(sym("c")));
        assert_eq!(substituted, expected);
    }

    #[test]
    fn specialization_matches_hand_computation() {
        // L^-1 (L - 1) [pt] at L = 3, [pt] = 1 gives 2/3.
        let coeff = &(&LaurentPoly::lefschetz() - &LaurentPoly::one()) * &LaurentPoly::l_pow(-1);
        let class = MotivicClass::from_term(sym("pt"), coeff);
        let mut values = BTreeMap::new();
        values.insert(sym("pt"), rat(1));
        let spec = Specialization::new(values, rat(3)).unwrap();
        assert_eq!(class.specialize(&spec).unwrap(), BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn missing_symbol_value_is_loud() {
        let class = MotivicClass::symbol(sym("a"));
        let spec = Specialization::new(BTreeMap::new(), rat(2)).unwrap();
        assert_eq!(class.specialize(&spec), Err(Error::MissingSymbolValue(sym("a"))));
    }

    #[test]
    fn zero_l_specialization_is_rejected() {
        assert_eq!(
            Specialization::new(BTreeMap::new(), BigRational::zero()),
            Err(Error::ZeroLValue)
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-4i64..=4, -6i64..=6), 0..4)
            .prop_map(|pairs| LaurentPoly::from_pairs(pairs.into_iter().map(|(e, c)| (e, c.into()))))
    }

    fn arb_class() -> impl Strategy<Value = MotivicClass> {
        proptest::collection::vec((0usize..3, arb_poly()), 0..4).prop_map(|terms| {
            let names = ["a", "b", "c"];
            let mut out = MotivicClass::zero();
            for (i, c) in terms {
                out = out.add(&MotivicClass::from_term(sym(names[i]), c));
            }
            out
        })
    }

    fn full_spec(l: i64) -> Specialization {
        let mut values = BTreeMap::new();
        for name in ["a", "b", "c"] {
            values.insert(sym(name), rat(name.len() as i64 + 2));
        }
        Specialization::new(values, rat(l)).unwrap()
    }

    proptest! {
        #[test]
        fn specialize_is_additive(a in arb_class(), b in arb_class(), l in 1i64..9) {
            let spec = full_spec(l);
            prop_assert_eq!(
                a.add(&b).specialize(&spec).unwrap(),
                a.specialize(&spec).unwrap() + b.specialize(&spec).unwrap()
            );
        }

        #[test]
        fn specialize_commutes_with_scaling(a in arb_class(), s in arb_poly(), l in 1i64..9) {
            let spec = full_spec(l);
            prop_assert_eq!(
                a.scale(&s).specialize(&spec).unwrap(),
                a.specialize(&spec).unwrap() * s.eval(spec.l_value()).unwrap()
            );
        }

        #[test]
        fn serre_reduce_kills_l_minus_one_multiples(a in arb_class()) {
            let l_minus_1 = &LaurentPoly::lefschetz() - &LaurentPoly::one();
            prop_assert!(a.scale(&l_minus_1).serre_reduce().is_zero());
        }
    }
}
