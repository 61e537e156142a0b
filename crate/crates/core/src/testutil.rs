//! In-code copies of the shipped example models, for unit tests.
//!
//! The document tests assert that these builders agree with the JSON files in
//! `fixtures/`, so every other test can use them without touching the disk.

use std::collections::{BTreeMap, BTreeSet};

use crate::laurent::LaurentPoly;
use crate::model::{Component, ComponentId, ResolutionModel, Stratum};
use crate::motivic::SymbolId;

pub(crate) fn subset(ids: &[&str]) -> BTreeSet<ComponentId> {
    ids.iter().map(|id| ComponentId::new(*id)).collect()
}

pub(crate) fn sym(ids: &[&str]) -> SymbolId {
    SymbolId::from_parts(ids)
}

fn chi_map(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(tag, value)| (tag.to_string(), *value)).collect()
}

fn component(id: &str, multiplicity: u64, discrepancy: i64) -> Component {
    Component {
        id: ComponentId::new(id),
        multiplicity,
        discrepancy: Some(discrepancy),
        gauge_order: None,
    }
}

fn l_minus_1() -> LaurentPoly {
    &LaurentPoly::lefschetz() - &LaurentPoly::one()
}

/// Two transverse smooth branches: `x1 * x2 = 0` in the plane.
pub(crate) fn node() -> ResolutionModel {
    ResolutionModel {
        name: Some("node".to_string()),
        notes: None,
        rel_dim: 1,
        ambient_dim: Some(2),
        components: vec![component("E1", 1, 1), component("E2", 1, 1)],
        strata: vec![
            Stratum {
                subset: subset(&["E1"]),
                chi: chi_map(&[("total", 0), ("origin", 0)]),
                chi_cover: None,
                class_l: Some(l_minus_1()),
            },
            Stratum {
                subset: subset(&["E2"]),
                chi: chi_map(&[("total", 0), ("origin", 0)]),
                chi_cover: None,
                class_l: Some(l_minus_1()),
            },
            Stratum {
                subset: subset(&["E1", "E2"]),
                chi: chi_map(&[("total", 1), ("origin", 1)]),
                chi_cover: None,
                class_l: Some(LaurentPoly::one()),
            },
        ],
        support_tags: vec!["total".to_string(), "origin".to_string()],
        gelfand_leray: false,
    }
}

/// The resolved cuspidal plane curve: strict transform `E0` and exceptional
/// chain `E1, E2, E3` with multiplicities 1, 2, 3, 6 all meeting `E3`.
pub(crate) fn cusp() -> ResolutionModel {
    let singleton = |id: &str, m: i64, chi: i64| Stratum {
        subset: subset(&[id]),
        chi: chi_map(&[("total", chi), ("origin", chi)]),
        chi_cover: Some(chi_map(&[("total", m * chi), ("origin", m * chi)])),
        class_l: None,
    };
    let pair = |a: &str, b: &str, m: i64| Stratum {
        subset: subset(&[a, b]),
        chi: chi_map(&[("total", 1), ("origin", 1)]),
        chi_cover: Some(chi_map(&[("total", m), ("origin", m)])),
        class_l: None,
    };
    ResolutionModel {
        name: Some("cusp".to_string()),
        notes: None,
        rel_dim: 1,
        ambient_dim: Some(2),
        components: vec![
            component("E0", 1, 1),
            component("E1", 2, 2),
            component("E2", 3, 3),
            component("E3", 6, 5),
        ],
        strata: vec![
            singleton("E0", 1, 0),
            singleton("E1", 2, 1),
            singleton("E2", 3, 1),
            singleton("E3", 6, -1),
            pair("E0", "E3", 1),
            pair("E1", "E3", 2),
            pair("E2", "E3", 3),
        ],
        support_tags: vec!["total".to_string(), "origin".to_string()],
        gelfand_leray: false,
    }
}

/// A smooth point of the fiber: one reduced component.
pub(crate) fn smooth() -> ResolutionModel {
    ResolutionModel {
        name: Some("smooth".to_string()),
        notes: None,
        rel_dim: 0,
        ambient_dim: Some(1),
        components: vec![component("E", 1, 1)],
        strata: vec![Stratum {
            subset: subset(&["E"]),
            chi: chi_map(&[("total", 1), ("origin", 1)]),
            chi_cover: None,
            class_l: Some(LaurentPoly::one()),
        }],
        support_tags: vec!["total".to_string(), "origin".to_string()],
        gelfand_leray: false,
    }
}
