//! Resolution combinatorics: components with multiplicities, strata with
//! Euler data, and the structural operations on them.
//!
//! A [`ResolutionModel`] records the combinatorial shadow of a normal
//! crossings special fiber: components `E_i` carrying a multiplicity `N_i`,
//! an optional discrepancy `nu_i`, and an optional form order `mu_i`; and the
//! nonempty intersection strata `E_J` carrying Euler characteristics per
//! support tag, optional cover Euler characteristics, and an optional explicit
//! class in `Z[L, L^-1]`. Strata absent from the list are treated as empty by
//! every consumer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::integer::gcd;
use num::{BigInt, BigRational};

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::motivic::{MotivicClass, Specialization, StratumSymbol, SymbolId};

/// Support tag under which a stratum's unrestricted data is recorded.
pub const SUPPORT_TOTAL: &str = "total";

/// Identifier of an irreducible component of the special fiber.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(String);

impl ComponentId {
    /// Wraps a raw id string.
    pub fn new(id: impl Into<String>) -> Self {
        ComponentId(id.into())
    }

    /// The raw id text.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for ComponentId {
    fn from(s: &str) -> Self {
        ComponentId::new(s)
    }
}

impl From<String> for ComponentId {
    fn from(s: String) -> Self {
        ComponentId::new(s)
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One irreducible component of the special fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: ComponentId,
    /// Multiplicity `N` of the component in the special fiber.
    pub multiplicity: u64,
    /// Discrepancy `nu` (relative canonical divisor coefficient plus one).
    pub discrepancy: Option<i64>,
    /// Order `mu` of the chosen gauge form along the component.
    pub gauge_order: Option<i64>,
}

/// One nonempty intersection stratum `E_J` (points lying on exactly the
/// components in `J`), together with its Euler data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    /// The component subset `J`.
    pub subset: BTreeSet<ComponentId>,
    /// Euler characteristic of the stratum restricted to each support tag.
    pub chi: BTreeMap<String, i64>,
    /// Euler characteristic of the degree-`m` cover, per support tag.
    /// Derivable as `m * chi` and validated against that product when present.
    pub chi_cover: Option<BTreeMap<String, i64>>,
    /// Explicit class of the cover in `Z[L, L^-1]`, when the model knows it.
    pub class_l: Option<LaurentPoly>,
}

impl Stratum {
    /// The canonical symbol this stratum's cover contributes to classes.
    pub fn symbol_id(&self) -> SymbolId {
        SymbolId::from_parts(self.subset.iter().map(ComponentId::as_str))
    }
}

/// A single validation failure, naming the offending location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Result of blowing up a stratum: the rewritten model plus the dictionary
/// expressing every new-model stratum symbol as a class over the old symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub model: ResolutionModel,
    /// The center that was blown up.
    pub center: BTreeSet<ComponentId>,
    /// Id of the exceptional component added by the blow-up.
    pub new_component: ComponentId,
    /// New-model symbols written as classes over the old model's symbols.
    /// Surviving strata map to themselves.
    pub substitution: BTreeMap<SymbolId, MotivicClass>,
}

/// The combinatorial model of a resolution's special fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionModel {
    /// Optional document metadata.
    pub name: Option<String>,
    pub notes: Option<String>,
    /// Dimension of the generic fiber (one less than the ambient dimension
    /// when the model comes from a hypersurface).
    pub rel_dim: u32,
    /// Dimension of the ambient smooth space, used for jet-count bookkeeping.
    pub ambient_dim: Option<u32>,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    /// The support tags under which Euler data may be recorded.
    pub support_tags: Vec<String>,
    /// Set when `mu` was produced by [`ResolutionModel::derive_mu`]; validation
    /// then enforces `mu = nu - N` on every component carrying both.
    pub gelfand_leray: bool,
}

impl ResolutionModel {
    /// Looks up a component by id.
    pub fn component(&self, id: &ComponentId) -> Option<&Component> {
        self.components.iter().find(|c| &c.id == id)
    }

    /// Looks up a stratum by its exact component subset.
    pub fn stratum(&self, subset: &BTreeSet<ComponentId>) -> Option<&Stratum> {
        self.strata.iter().find(|s| &s.subset == subset)
    }

    /// Checks every structural invariant, returning one violation per failure.
    /// The model is well formed iff the list is empty.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |location: String, message: String| {
            out.push(Violation { location, message });
        };

        let mut seen_ids = BTreeSet::new();
        for (i, comp) in self.components.iter().enumerate() {
            let loc = format!("components[{i}] (id `{}`)", comp.id);
            if comp.id.as_str().is_empty() {
                push(loc.clone(), "component id must be nonempty".to_string());
            }
            if !seen_ids.insert(comp.id.clone()) {
                push(loc.clone(), "duplicate component id".to_string());
            }
            if comp.multiplicity == 0 {
                push(loc.clone(), "multiplicity N must be >= 1".to_string());
            }
            if let Some(nu) = comp.discrepancy {
                if nu < 1 {
                    push(loc.clone(), format!("discrepancy nu = {nu} must be >= 1"));
                }
            }
            if self.gelfand_leray {
                if let (Some(nu), Some(mu)) = (comp.discrepancy, comp.gauge_order) {
                    let expected = nu - comp.multiplicity as i64;
                    if mu != expected {
                        push(loc, format!("mu = {mu} violates mu = nu - N = {expected}"));
                    }
                }
            }
        }

        let mut seen_subsets = BTreeSet::new();
        for (i, s) in self.strata.iter().enumerate() {
            let loc = format!("strata[{i}] (J = {})", s.symbol_id());
            if s.subset.is_empty() {
                push(loc, "stratum subset J must be nonempty".to_string());
                continue;
            }
            let mut ids_known = true;
            for id in &s.subset {
                if self.component(id).is_none() {
                    push(loc.clone(), format!("unknown component id `{id}`"));
                    ids_known = false;
                }
            }
            if !seen_subsets.insert(s.subset.clone()) {
                push(loc.clone(), "duplicate stratum subset".to_string());
            }
            if !ids_known {
                continue;
            }
            if let Some(cover) = &s.chi_cover {
                let m = self
                    .gcd_multiplicity(&s.subset)
                    .expect("subset ids were just checked");
                for (tag, &cover_chi) in cover {
                    let base = s.chi.get(tag).copied().unwrap_or(0);
                    if i128::from(cover_chi) != i128::from(m) * i128::from(base) {
                        push(
                            loc.clone(),
                            format!(
                                "chi_cover[{tag}] = {cover_chi}, but cover degree {m} times chi[{tag}] = {}",
                                i128::from(m) * i128::from(base)
                            ),
                        );
                    }
                }
            }
        }
        out
    }

    /// The cover degree of a subset: the gcd of its multiplicities.
    pub fn gcd_multiplicity(&self, subset: &BTreeSet<ComponentId>) -> Result<u64, Error> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut acc = 0u64;
        for id in subset {
            let comp = self
                .component(id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            acc = gcd(acc, comp.multiplicity);
        }
        Ok(acc)
    }

    /// The symbol of a subset together with its cover degree.
    pub fn stratum_symbol(&self, subset: &BTreeSet<ComponentId>) -> Result<StratumSymbol, Error> {
        let cover_degree = self.gcd_multiplicity(subset)?;
        Ok(StratumSymbol {
            id: SymbolId::from_parts(subset.iter().map(ComponentId::as_str)),
            subset: subset.iter().map(|c| c.as_str().to_string()).collect(),
            cover_degree,
        })
    }

    /// True iff `d` is a sum `sum_j alpha_j N_j` with every `alpha_j >= 1`,
    /// over the components of `subset`. Bounded coin-problem dynamic program.
    pub fn is_j_linear(&self, subset: &BTreeSet<ComponentId>, d: u64) -> Result<bool, Error> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut coins = Vec::with_capacity(subset.len());
        let mut minimum = 0u64;
        for id in subset {
            let comp = self
                .component(id)
                .ok_or_else(|| Error::UnknownComponent(id.clone()))?;
            coins.push(comp.multiplicity);
            minimum = minimum
                .checked_add(comp.multiplicity)
                .ok_or(Error::Overflow("multiplicity sum"))?;
        }
        if minimum > d {
            return Ok(false);
        }
        // Force one copy of each coin, then fill the remainder greedily.
        let remainder = (d - minimum) as usize;
        let mut reachable = vec![false; remainder + 1];
        reachable[0] = true;
        for &coin in &coins {
            let coin = coin as usize;
            for target in coin..=remainder {
                if reachable[target - coin] {
                    reachable[target] = true;
                }
            }
        }
        Ok(reachable[remainder])
    }

    /// True iff some listed stratum with at least two components is J-linear
    /// for `d`.
    pub fn is_xs_linear(&self, d: u64) -> Result<bool, Error> {
        for s in &self.strata {
            if s.subset.len() >= 2 && self.is_j_linear(&s.subset, d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Returns a copy with `mu := nu - N` on every component, which is the
    /// form order of the Gelfand-Leray residue form. Fails if any component
    /// lacks `nu`.
    pub fn derive_mu(&self) -> Result<ResolutionModel, Error> {
        let mut out = self.clone();
        for comp in &mut out.components {
            let nu = comp
                .discrepancy
                .ok_or_else(|| Error::MissingDiscrepancy(comp.id.clone()))?;
            let n = i64::try_from(comp.multiplicity).map_err(|_| Error::Overflow("multiplicity"))?;
            comp.gauge_order = Some(nu - n);
        }
        out.gelfand_leray = true;
        Ok(out)
    }

    /// The Euler characteristic of a stratum's cover over a support tag:
    /// the recorded `chi_cover` value if present, otherwise `m * chi`.
    pub fn chi_cover_value(&self, stratum: &Stratum, tag: &str) -> Result<i64, Error> {
        let missing = || Error::MissingChi {
            stratum: stratum.symbol_id().to_string(),
            tag: tag.to_string(),
        };
        if let Some(cover) = &stratum.chi_cover {
            return cover.get(tag).copied().ok_or_else(missing);
        }
        let chi = stratum.chi.get(tag).copied().ok_or_else(missing)?;
        let m = self.gcd_multiplicity(&stratum.subset)?;
        let m = i64::try_from(m).map_err(|_| Error::Overflow("cover degree"))?;
        m.checked_mul(chi).ok_or(Error::Overflow("cover Euler characteristic"))
    }

    /// The specialization sending each listed stratum symbol to its cover
    /// Euler characteristic over `tag`, with `L` sent to `l_value`.
    pub fn chi_specialization(
        &self,
        tag: &str,
        l_value: BigRational,
    ) -> Result<Specialization, Error> {
        let mut values = BTreeMap::new();
        for s in &self.strata {
            let chi = self.chi_cover_value(s, tag)?;
            values.insert(s.symbol_id(), BigRational::from_integer(BigInt::from(chi)));
        }
        Specialization::new(values, l_value)
    }

    /// Blows up a listed stratum of at least two components.
    ///
    /// The new exceptional component gets `N_0 = sum N_j`, `nu_0 = sum nu_j`,
    /// `mu_0 = sum mu_j` (the latter two only when every summand is present).
    /// Old strata containing the center disappear; each of them, for every
    /// proper subset `P` of the center, spawns a new stratum on
    /// `(J_old \ center) ∪ P ∪ {E_0}` whose cover class equals
    /// `(L-1)^(|center \ P| - 1)` times the old stratum's class. That
    /// dictionary is returned as the substitution map.
    pub fn blow_up_stratum(&self, center: &BTreeSet<ComponentId>) -> Result<BlowUp, Error> {
        if center.is_empty() {
            return Err(Error::EmptySubset);
        }
        for id in center {
            if self.component(id).is_none() {
                return Err(Error::UnknownComponent(id.clone()));
            }
        }
        let center_name = SymbolId::from_parts(center.iter().map(ComponentId::as_str));
        if self.stratum(center).is_none() {
            return Err(Error::NotAStratum(center_name.to_string()));
        }
        if center.len() < 2 {
            return Err(Error::SingletonCenter(center_name.to_string()));
        }

        let mut n0 = 0u64;
        let mut nu0 = Some(0i64);
        let mut mu0 = Some(0i64);
        for id in center {
            let comp = self.component(id).expect("center ids were just checked");
            n0 = n0
                .checked_add(comp.multiplicity)
                .ok_or(Error::Overflow("multiplicity sum"))?;
            nu0 = match (nu0, comp.discrepancy) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            mu0 = match (mu0, comp.gauge_order) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
        let new_id = self.fresh_component_id(center);

        let mut model = self.clone();
        model.name = None;
        model.notes = None;
        model.components.push(Component {
            id: new_id.clone(),
            multiplicity: n0,
            discrepancy: nu0,
            gauge_order: mu0,
        });

        let l_minus_1 = &LaurentPoly::lefschetz() - &LaurentPoly::one();
        let mut strata = Vec::new();
        let mut substitution = BTreeMap::new();

        // Strata not containing the whole center survive untouched.
        for s in &self.strata {
            if center.is_subset(&s.subset) {
                continue;
            }
            substitution.insert(s.symbol_id(), MotivicClass::symbol(s.symbol_id()));
            strata.push(s.clone());
        }

        // Every old stratum containing the center is replaced by the strata
        // meeting the exceptional component.
        let center_vec: Vec<&ComponentId> = center.iter().collect();
        let full_mask = (1usize << center_vec.len()) - 1;
        for s in &self.strata {
            if !center.is_subset(&s.subset) {
                continue;
            }
            let outside: BTreeSet<ComponentId> = s.subset.difference(center).cloned().collect();
            for mask in 0..full_mask {
                let mut new_subset = outside.clone();
                let mut kept = 0usize;
                for (bit, id) in center_vec.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        new_subset.insert((*id).clone());
                        kept += 1;
                    }
                }
                new_subset.insert(new_id.clone());
                let dropped = center_vec.len() - kept;
                let factor = l_minus_1.pow((dropped - 1) as u32);
                // A one-dimensional contraction preserves the stratum's Euler
                // data and cover degree; higher-dimensional torus fibers have
                // Euler characteristic zero over every support.
                let (chi, chi_cover) = if dropped == 1 {
                    (s.chi.clone(), s.chi_cover.clone())
                } else {
                    let zeroed =
                        |m: &BTreeMap<String, i64>| m.keys().map(|k| (k.clone(), 0)).collect();
                    (zeroed(&s.chi), s.chi_cover.as_ref().map(zeroed))
                };
                let class_l = s.class_l.as_ref().map(|cl| cl * &factor);
                let new_stratum = Stratum { subset: new_subset, chi, chi_cover, class_l };
                substitution.insert(
                    new_stratum.symbol_id(),
                    MotivicClass::from_term(s.symbol_id(), factor),
                );
                strata.push(new_stratum);
            }
        }
        model.strata = strata;
        Ok(BlowUp { model, center: center.clone(), new_component: new_id, substitution })
    }

    /// A component id not yet used by the model, derived from the center.
    fn fresh_component_id(&self, center: &BTreeSet<ComponentId>) -> ComponentId {
        let joined: Vec<&str> = center.iter().map(ComponentId::as_str).collect();
        let mut candidate = format!("E({})", joined.join("+"));
        while self.components.iter().any(|c| c.id.as_str() == candidate) {
            candidate.push('\'');
        }
        ComponentId::new(candidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cusp, node, smooth, subset, sym};

    #[test]
    fn fixtures_validate_cleanly() {
        for model in [node(), cusp(), smooth()] {
            assert_eq!(model.validate(), Vec::new());
        }
    }

    #[test]
    fn validation_names_offending_fields() {
        let mut model = node();
        model.components[0].multiplicity = 0;
        model.components.push(model.components[1].clone());
        model.strata[0].subset = subset(&["E9"]);
        model.strata.push(model.strata[1].clone());
        let violations = model.validate();
        let text: Vec<String> = violations.iter().map(Violation::to_string).collect();
        assert!(text.iter().any(|v| v.contains("components[0]") && v.contains("N must be >= 1")));
        assert!(text.iter().any(|v| v.contains("duplicate component id")));
        assert!(text.iter().any(|v| v.contains("unknown component id `E9`")));
        assert!(text.iter().any(|v| v.contains("duplicate stratum subset")));
    }

    #[test]
    fn validation_checks_discrepancy_range_and_cover_rule() {
        let mut model = cusp();
        model.components[0].discrepancy = Some(0);
        let violations = model.validate();
        assert!(violations.iter().any(|v| v.message.contains("nu = 0 must be >= 1")));

        let mut model = cusp();
        // Break chi_cover on the E3 singleton: cover degree 6 times chi -6 is -6.
        if let Some(cover) = &mut model.strata[3].chi_cover {
            cover.insert("origin".to_string(), 5);
        }
        let violations = model.validate();
        assert!(violations.iter().any(|v| v.message.contains("chi_cover[origin] = 5")));
    }

    #[test]
    fn gelfand_leray_flag_enforces_mu_rule() {
        let mut model = cusp().derive_mu().unwrap();
        model.components[3].gauge_order = Some(3);
        let violations = model.validate();
        assert!(violations.iter().any(|v| v.message.contains("mu = 3 violates mu = nu - N = -1")));
        // Without the flag the same data is merely unusual, not invalid.
        model.gelfand_leray = false;
        assert_eq!(model.validate(), Vec::new());
    }

    #[test]
    fn gcd_multiplicity_matches_hand_values() {
        let model = cusp();
        assert_eq!(model.gcd_multiplicity(&subset(&["E1"])).unwrap(), 2);
        assert_eq!(model.gcd_multiplicity(&subset(&["E3"])).unwrap(), 6);
        assert_eq!(model.gcd_multiplicity(&subset(&["E1", "E3"])).unwrap(), 2);
        assert_eq!(model.gcd_multiplicity(&subset(&["E2", "E3"])).unwrap(), 3);
        assert_eq!(model.gcd_multiplicity(&subset(&["E0", "E3"])).unwrap(), 1);
        assert_eq!(
            model.gcd_multiplicity(&subset(&["E7"])),
            Err(Error::UnknownComponent("E7".into()))
        );
        assert_eq!(model.gcd_multiplicity(&BTreeSet::new()), Err(Error::EmptySubset));
    }

    #[test]
    fn j_linearity_matches_hand_values() {
        let model = cusp();
        // 2a + 6b = 7 has no solution; 1a + 6b = 7 has (a, b) = (1, 1).
        assert!(!model.is_j_linear(&subset(&["E1", "E3"]), 7).unwrap());
        assert!(model.is_j_linear(&subset(&["E0", "E3"]), 7).unwrap());
        assert!(model.is_xs_linear(7).unwrap());
        assert!(!model.is_xs_linear(2).unwrap());

        let model = node();
        assert!(!model.is_j_linear(&subset(&["E1", "E2"]), 1).unwrap());
        assert!(model.is_j_linear(&subset(&["E1", "E2"]), 2).unwrap());
    }

    #[test]
    fn j_linearity_needs_the_full_forced_minimum() {
        let model = cusp();
        let pair = subset(&["E2", "E3"]);
        // Minimum is 3 + 6 = 9, so everything below is out.
        for d in 0..9 {
            assert!(!model.is_j_linear(&pair, d).unwrap());
        }
        assert!(model.is_j_linear(&pair, 9).unwrap());
        // 3a + 6b only reaches multiples of 3.
        assert!(!model.is_j_linear(&pair, 10).unwrap());
        assert!(model.is_j_linear(&pair, 12).unwrap());
    }

    #[test]
    fn derive_mu_is_the_residue_rule() {
        let model = cusp().derive_mu().unwrap();
        let mus: Vec<i64> = model.components.iter().map(|c| c.gauge_order.unwrap()).collect();
        assert_eq!(mus, vec![0, 0, 0, -1]);
        assert!(model.gelfand_leray);
        assert_eq!(model.validate(), Vec::new());
        for comp in &model.components {
            assert_eq!(
                comp.gauge_order.unwrap() + comp.multiplicity as i64,
                comp.discrepancy.unwrap()
            );
        }

        let mut stripped = cusp();
        stripped.components[2].discrepancy = None;
        assert_eq!(stripped.derive_mu(), Err(Error::MissingDiscrepancy("E2".into())));
    }

    #[test]
    fn chi_cover_value_prefers_recorded_data() {
        let model = cusp();
        let e3 = model.stratum(&subset(&["E3"])).unwrap();
        assert_eq!(model.chi_cover_value(e3, "origin").unwrap(), -6);
        let model = node();
        let e1 = model.stratum(&subset(&["E1"])).unwrap();
        assert_eq!(model.chi_cover_value(e1, "origin").unwrap(), 0);
        assert_eq!(
            model.chi_cover_value(e1, "nowhere"),
            Err(Error::MissingChi { stratum: "{E1}".to_string(), tag: "nowhere".to_string() })
        );
    }

    #[test]
    fn blow_up_of_the_node_matches_hand_computation() {
        let model = node().derive_mu().unwrap();
        let blow_up = model.blow_up_stratum(&subset(&["E1", "E2"])).unwrap();
        let new = &blow_up.model;
        assert_eq!(blow_up.new_component, ComponentId::new("E(E1+E2)"));
        let e0 = new.component(&blow_up.new_component).unwrap();
        assert_eq!(e0.multiplicity, 2);
        assert_eq!(e0.discrepancy, Some(2));
        assert_eq!(e0.gauge_order, Some(0));
        assert_eq!(new.validate(), Vec::new());

        let subsets: Vec<SymbolId> = new.strata.iter().map(Stratum::symbol_id).collect();
        assert_eq!(
            subsets,
            vec![
                sym(&["E1"]),
                sym(&["E2"]),
                sym(&["E(E1+E2)"]),
                sym(&["E1", "E(E1+E2)"]),
                sym(&["E2", "E(E1+E2)"]),
            ]
        );

        let l_minus_1 = &LaurentPoly::lefschetz() - &LaurentPoly::one();
        let pair = sym(&["E1", "E2"]);
        assert_eq!(
            blow_up.substitution[&sym(&["E(E1+E2)"])],
            MotivicClass::from_term(pair.clone(), l_minus_1)
        );
        assert_eq!(
            blow_up.substitution[&sym(&["E1", "E(E1+E2)"])],
            MotivicClass::symbol(pair.clone())
        );
        assert_eq!(
            blow_up.substitution[&sym(&["E1"])],
            MotivicClass::symbol(sym(&["E1"]))
        );

        // The exceptional chart is a torus over the old point: chi 0, class L - 1.
        let exceptional = new.stratum(&subset(&["E(E1+E2)"])).unwrap();
        assert_eq!(exceptional.chi["total"], 0);
        assert_eq!(exceptional.chi["origin"], 0);
        assert_eq!(
            exceptional.class_l,
            Some(&LaurentPoly::lefschetz() - &LaurentPoly::one())
        );
        // One-dimensional contractions copy the base point data.
        let mixed = new.stratum(&subset(&["E1", "E(E1+E2)"])).unwrap();
        assert_eq!(mixed.chi["origin"], 1);
        assert_eq!(mixed.class_l, Some(LaurentPoly::one()));
    }

    #[test]
    fn blow_up_of_the_cusp_sums_orders() {
        let model = cusp().derive_mu().unwrap();
        let blow_up = model.blow_up_stratum(&subset(&["E1", "E3"])).unwrap();
        let e0 = blow_up.model.component(&blow_up.new_component).unwrap();
        assert_eq!(e0.multiplicity, 8);
        assert_eq!(e0.discrepancy, Some(7));
        assert_eq!(e0.gauge_order, Some(-1));
        assert_eq!(blow_up.model.validate(), Vec::new());
        // Strata not containing the center survive: 4 singletons - 1 deleted,
        // 3 pairs - 1 deleted, plus 3 new strata.
        assert_eq!(blow_up.model.strata.len(), 9);
    }

    #[test]
    fn blow_up_rejects_bad_centers() {
        let model = node();
        assert_eq!(
            model.blow_up_stratum(&subset(&["E1"])),
            Err(Error::SingletonCenter("{E1}".to_string()))
        );
        assert_eq!(
            model.blow_up_stratum(&BTreeSet::new()),
            Err(Error::EmptySubset)
        );
        let cusp_model = cusp();
        assert_eq!(
            cusp_model.blow_up_stratum(&subset(&["E0", "E1"])),
            Err(Error::NotAStratum("{E0,E1}".to_string()))
        );
        assert_eq!(
            cusp_model.blow_up_stratum(&subset(&["E0", "E9"])),
            Err(Error::UnknownComponent("E9".into()))
        );
    }

    #[test]
    fn repeated_blow_ups_get_fresh_ids() {
        let model = node();
        let once = model.blow_up_stratum(&subset(&["E1", "E2"])).unwrap();
        let again = once
            .model
            .blow_up_stratum(&subset(&["E1", "E(E1+E2)"]))
            .unwrap();
        assert_eq!(again.new_component, ComponentId::new("E(E(E1+E2)+E1)"));
        assert_eq!(again.model.validate(), Vec::new());
    }
}
