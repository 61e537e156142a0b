//! Reading and writing the on-disk model document format.
//!
//! A document is a JSON object mirroring [`ResolutionModel`] one-to-one:
//!
//! ```json
//! {
//!   "name": "node",
//!   "rel_dim": 1,
//!   "ambient_dim": 2,
//!   "components": [{"id": "E1", "N": 1, "nu": 1}],
//!   "strata": [{"J": ["E1"], "chi": {"total": 0}, "class_L": [[1, 1], [0, -1]]}],
//!   "supports": ["total", "origin"]
//! }
//! ```
//!
//! Unknown fields are rejected so typos fail loudly. A stratum may record its
//! cover degree `m` redundantly; parsing checks it against the gcd of the
//! member multiplicities and reports a violation on mismatch.

use std::fmt;

use num::{BigInt, ToPrimitive};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::model::{Component, ComponentId, ResolutionModel, Stratum, Violation};

/// A structural error in a document, naming the location that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub context: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.context, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Failure of [`parse_model`]: a malformed document or a well-formed one
/// whose model violates a structural invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentError {
    Parse(ParseError),
    Invalid(Vec<Violation>),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Parse(error) => error.fmt(f),
            DocumentError::Invalid(violations) => {
                let rendered: Vec<String> = violations.iter().map(Violation::to_string).collect();
                f.write_str(&rendered.join("; "))
            }
        }
    }
}

impl std::error::Error for DocumentError {}

impl From<ParseError> for DocumentError {
    fn from(error: ParseError) -> Self {
        DocumentError::Parse(error)
    }
}

fn err<T>(context: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { context: context.to_string(), message: message.into() })
}

fn as_object<'a>(value: &'a Value, context: &str) -> Result<&'a Map<String, Value>, ParseError> {
    value.as_object().map_or_else(|| err(context, "expected an object"), Ok)
}

fn check_fields(
    map: &Map<String, Value>,
    allowed: &[&str],
    context: &str,
) -> Result<(), ParseError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return err(context, format!("unknown field `{key}`"));
        }
    }
    Ok(())
}

fn required<'a>(
    map: &'a Map<String, Value>,
    field: &str,
    context: &str,
) -> Result<&'a Value, ParseError> {
    map.get(field)
        .map_or_else(|| err(context, format!("missing field `{field}`")), Ok)
}

fn as_string(value: &Value, field: &str, context: &str) -> Result<String, ParseError> {
    value
        .as_str()
        .map(str::to_string)
        .map_or_else(|| err(context, format!("field `{field}` must be a string")), Ok)
}

fn as_u64(value: &Value, field: &str, context: &str) -> Result<u64, ParseError> {
    value.as_u64().map_or_else(
        || err(context, format!("field `{field}` must be a nonnegative integer")),
        Ok,
    )
}

fn as_u32(value: &Value, field: &str, context: &str) -> Result<u32, ParseError> {
    let wide = as_u64(value, field, context)?;
    u32::try_from(wide)
        .map_or_else(|_| err(context, format!("field `{field}` is out of range")), Ok)
}

fn as_i64(value: &Value, field: &str, context: &str) -> Result<i64, ParseError> {
    value
        .as_i64()
        .map_or_else(|| err(context, format!("field `{field}` must be an integer")), Ok)
}

fn as_bool(value: &Value, field: &str, context: &str) -> Result<bool, ParseError> {
    value
        .as_bool()
        .map_or_else(|| err(context, format!("field `{field}` must be a boolean")), Ok)
}

/// Parses `{tag: int}` Euler-characteristic maps.
fn chi_map(
    value: &Value,
    field: &str,
    context: &str,
) -> Result<std::collections::BTreeMap<String, i64>, ParseError> {
    let map = value.as_object().map_or_else(
        || err(context, format!("field `{field}` must be an object of integers")),
        Ok,
    )?;
    let mut out = std::collections::BTreeMap::new();
    for (tag, entry) in map {
        let chi = entry.as_i64().map_or_else(
            || err(context, format!("field `{field}.{tag}` must be an integer")),
            Ok,
        )?;
        out.insert(tag.clone(), chi);
    }
    Ok(out)
}

/// Parses `[[exponent, coefficient], ...]` Laurent polynomial data.
fn laurent(value: &Value, field: &str, context: &str) -> Result<LaurentPoly, ParseError> {
    let entries = value.as_array().map_or_else(
        || err(context, format!("field `{field}` must be an array of [exp, coeff] pairs")),
        Ok,
    )?;
    let mut pairs = Vec::with_capacity(entries.len());
    for entry in entries {
        let pair = entry.as_array().filter(|p| p.len() == 2).map_or_else(
            || err(context, format!("field `{field}` entries must be [exp, coeff] pairs")),
            Ok,
        )?;
        let exponent = as_i64(&pair[0], field, context)?;
        let coefficient = as_i64(&pair[1], field, context)?;
        pairs.push((exponent, BigInt::from(coefficient)));
    }
    Ok(LaurentPoly::from_pairs(pairs))
}

fn parse_component(value: &Value, index: usize) -> Result<Component, ParseError> {
    let bare_context = format!("components[{index}]");
    let map = as_object(value, &bare_context)?;
    let context = match map.get("id").and_then(Value::as_str) {
        Some(id) => format!("components[{index}] (id `{id}`)"),
        None => bare_context,
    };
    check_fields(map, &["id", "N", "nu", "mu"], &context)?;
    let id = as_string(required(map, "id", &context)?, "id", &context)?;
    let multiplicity = as_u64(required(map, "N", &context)?, "N", &context)?;
    let discrepancy = match map.get("nu") {
        Some(value) => Some(as_i64(value, "nu", &context)?),
        None => None,
    };
    let gauge_order = match map.get("mu") {
        Some(value) => Some(as_i64(value, "mu", &context)?),
        None => None,
    };
    Ok(Component { id: ComponentId::new(id), multiplicity, discrepancy, gauge_order })
}

/// A stratum plus the document's redundant cover degree, if recorded.
struct ParsedStratum {
    stratum: Stratum,
    recorded_m: Option<u64>,
    context: String,
}

fn parse_stratum(value: &Value, index: usize) -> Result<ParsedStratum, ParseError> {
    let bare_context = format!("strata[{index}]");
    let map = as_object(value, &bare_context)?;
    let context = match map.get("J").and_then(Value::as_array) {
        Some(ids) if ids.iter().all(Value::is_string) => {
            let mut names: Vec<&str> = ids.iter().filter_map(Value::as_str).collect();
            names.sort_unstable();
            format!("strata[{index}] (J = {{{}}})", names.join(","))
        }
        _ => bare_context.clone(),
    };
    check_fields(map, &["J", "chi", "chi_cover", "class_L", "m"], &context)?;
    let ids = required(map, "J", &context)?.as_array().map_or_else(
        || err(&context, "field `J` must be an array of component ids"),
        Ok,
    )?;
    let mut subset = std::collections::BTreeSet::new();
    for id in ids {
        subset.insert(ComponentId::new(as_string(id, "J", &context)?));
    }
    let chi = chi_map(required(map, "chi", &context)?, "chi", &context)?;
    let chi_cover = match map.get("chi_cover") {
        Some(value) => Some(chi_map(value, "chi_cover", &context)?),
        None => None,
    };
    let class_l = match map.get("class_L") {
        Some(value) => Some(laurent(value, "class_L", &context)?),
        None => None,
    };
    let recorded_m = match map.get("m") {
        Some(value) => Some(as_u64(value, "m", &context)?),
        None => None,
    };
    Ok(ParsedStratum { stratum: Stratum { subset, chi, chi_cover, class_l }, recorded_m, context })
}

/// Parses a document into a model plus its violation list (which is empty
/// exactly when the model is well formed). Structural failures — malformed
/// JSON, missing or unknown fields, wrong types — are [`ParseError`]s;
/// semantic failures are returned as violations for the caller to report.
pub fn parse_document(text: &str) -> Result<(ResolutionModel, Vec<Violation>), ParseError> {
    let root: Value = serde_json::from_str(text)
        .map_err(|error| ParseError { context: "document".to_string(), message: error.to_string() })?;
    let map = as_object(&root, "document")?;
    check_fields(
        map,
        &["name", "notes", "rel_dim", "ambient_dim", "gelfand_leray", "components", "strata", "supports"],
        "document",
    )?;

    let name = match map.get("name") {
        Some(value) => Some(as_string(value, "name", "document")?),
        None => None,
    };
    let notes = match map.get("notes") {
        Some(value) => Some(as_string(value, "notes", "document")?),
        None => None,
    };
    let rel_dim = as_u32(required(map, "rel_dim", "document")?, "rel_dim", "document")?;
    let ambient_dim = match map.get("ambient_dim") {
        Some(value) => Some(as_u32(value, "ambient_dim", "document")?),
        None => None,
    };
    let gelfand_leray = match map.get("gelfand_leray") {
        Some(value) => as_bool(value, "gelfand_leray", "document")?,
        None => false,
    };

    let component_values = required(map, "components", "document")?
        .as_array()
        .map_or_else(|| err("document", "field `components` must be an array"), Ok)?;
    let mut components = Vec::with_capacity(component_values.len());
    for (index, value) in component_values.iter().enumerate() {
        components.push(parse_component(value, index)?);
    }

    let stratum_values = required(map, "strata", "document")?
        .as_array()
        .map_or_else(|| err("document", "field `strata` must be an array"), Ok)?;
    let mut strata = Vec::with_capacity(stratum_values.len());
    let mut recorded_degrees = Vec::new();
    for (index, value) in stratum_values.iter().enumerate() {
        let parsed = parse_stratum(value, index)?;
        if let Some(m) = parsed.recorded_m {
            recorded_degrees.push((index, m, parsed.context));
        }
        strata.push(parsed.stratum);
    }

    let support_values = required(map, "supports", "document")?
        .as_array()
        .map_or_else(|| err("document", "field `supports` must be an array"), Ok)?;
    let mut support_tags = Vec::with_capacity(support_values.len());
    for value in support_values {
        support_tags.push(as_string(value, "supports", "document")?);
    }

    let model = ResolutionModel {
        name,
        notes,
        rel_dim,
        ambient_dim,
        components,
        strata,
        support_tags,
        gelfand_leray,
    };
    let mut violations = model.validate();
    for (index, recorded, context) in recorded_degrees {
        // An unknown component id already produced a violation above.
        if let Ok(derived) = model.gcd_multiplicity(&model.strata[index].subset) {
            if recorded != derived {
                violations.push(Violation {
                    location: context,
                    message: format!(
                        "m = {recorded} disagrees with the gcd of multiplicities = {derived}"
                    ),
                });
            }
        }
    }
    Ok((model, violations))
}

/// Parses a document and requires the model to be well formed.
pub fn parse_model(text: &str) -> Result<ResolutionModel, DocumentError> {
    let (model, violations) = parse_document(text)?;
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(DocumentError::Invalid(violations))
    }
}

fn laurent_value(poly: &LaurentPoly, what: &'static str) -> Result<Value, Error> {
    let mut pairs = Vec::new();
    for (exponent, coefficient) in poly.terms() {
        let coefficient = coefficient.to_i64().ok_or(Error::Overflow(what))?;
        pairs.push(Value::from(vec![Value::from(exponent), Value::from(coefficient)]));
    }
    pairs.reverse(); // canonical rendering puts exponents in descending order
    Ok(Value::from(pairs))
}

fn chi_value(map: &std::collections::BTreeMap<String, i64>) -> Value {
    let mut out = Map::new();
    for (tag, &chi) in map {
        out.insert(tag.clone(), Value::from(chi));
    }
    Value::Object(out)
}

/// Renders a model as a document string. The inverse of [`parse_model`] up to
/// formatting; the redundant per-stratum cover degree `m` is always emitted.
pub fn render_model(model: &ResolutionModel) -> Result<String, Error> {
    let mut root = Map::new();
    if let Some(name) = &model.name {
        root.insert("name".to_string(), Value::from(name.clone()));
    }
    if let Some(notes) = &model.notes {
        root.insert("notes".to_string(), Value::from(notes.clone()));
    }
    root.insert("rel_dim".to_string(), Value::from(model.rel_dim));
    if let Some(ambient_dim) = model.ambient_dim {
        root.insert("ambient_dim".to_string(), Value::from(ambient_dim));
    }
    if model.gelfand_leray {
        root.insert("gelfand_leray".to_string(), Value::from(true));
    }

    let mut components = Vec::with_capacity(model.components.len());
    for comp in &model.components {
        let mut out = Map::new();
        out.insert("id".to_string(), Value::from(comp.id.as_str()));
        out.insert("N".to_string(), Value::from(comp.multiplicity));
        if let Some(nu) = comp.discrepancy {
            out.insert("nu".to_string(), Value::from(nu));
        }
        if let Some(mu) = comp.gauge_order {
            out.insert("mu".to_string(), Value::from(mu));
        }
        components.push(Value::Object(out));
    }
    root.insert("components".to_string(), Value::from(components));

    let mut strata = Vec::with_capacity(model.strata.len());
    for stratum in &model.strata {
        let mut out = Map::new();
        let ids: Vec<Value> =
            stratum.subset.iter().map(|id| Value::from(id.as_str())).collect();
        out.insert("J".to_string(), Value::from(ids));
        out.insert("chi".to_string(), chi_value(&stratum.chi));
        if let Some(cover) = &stratum.chi_cover {
            out.insert("chi_cover".to_string(), chi_value(cover));
        }
        if let Some(class_l) = &stratum.class_l {
            out.insert(
                "class_L".to_string(),
                laurent_value(class_l, "class_L coefficient exceeds the document range")?,
            );
        }
        out.insert("m".to_string(), Value::from(model.gcd_multiplicity(&stratum.subset)?));
        strata.push(Value::Object(out));
    }
    root.insert("strata".to_string(), Value::from(strata));

    let supports: Vec<Value> =
        model.support_tags.iter().map(|tag| Value::from(tag.clone())).collect();
    root.insert("supports".to_string(), Value::from(supports));

    let mut text = serde_json::to_string_pretty(&Value::Object(root))
        .expect("a value built from strings and integers serializes");
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cusp, node, smooth};

    fn fixture(name: &str) -> String {
        let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"))
    }

    #[test]
    fn shipped_fixtures_match_the_in_code_builders() {
        assert_eq!(parse_model(&fixture("node")).unwrap(), node());
        assert_eq!(parse_model(&fixture("cusp")).unwrap(), cusp());
        assert_eq!(parse_model(&fixture("smooth")).unwrap(), smooth());
    }

    #[test]
    fn rendering_then_parsing_is_the_identity() {
        for model in [node(), cusp(), smooth()] {
            let text = render_model(&model).unwrap();
            let (reparsed, violations) = parse_document(&text).unwrap();
            assert_eq!(violations, vec![]);
            assert_eq!(reparsed, model);
        }
    }

    #[test]
    fn derived_gauge_orders_round_trip() {
        let model = cusp().derive_mu().unwrap();
        assert!(model.gelfand_leray);
        let reparsed = parse_model(&render_model(&model).unwrap()).unwrap();
        assert_eq!(reparsed, model);
    }

    #[test]
    fn metadata_round_trips() {
        let mut model = smooth();
        model.notes = Some("hand-built example".to_string());
        let reparsed = parse_model(&render_model(&model).unwrap()).unwrap();
        assert_eq!(reparsed.notes.as_deref(), Some("hand-built example"));
        assert_eq!(reparsed, model);
    }

    #[test]
    fn missing_multiplicity_names_the_component() {
        let text = r#"{"rel_dim": 1, "components": [{"id": "E1", "N": 1}, {"id": "E2"}],
                       "strata": [], "supports": []}"#;
        let error = parse_document(text).unwrap_err();
        assert_eq!(error.context, "components[1] (id `E2`)");
        assert_eq!(error.message, "missing field `N`");
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let error = parse_document(r#"{"rel_dim": 1, "frobnicate": true}"#).unwrap_err();
        assert_eq!(error.context, "document");
        assert_eq!(error.message, "unknown field `frobnicate`");
        let text = r#"{"rel_dim": 1, "components": [{"id": "E1", "N": 1, "weight": 2}],
                       "strata": [], "supports": []}"#;
        let error = parse_document(text).unwrap_err();
        assert_eq!(error.message, "unknown field `weight`");
    }

    #[test]
    fn malformed_json_reports_the_position() {
        let error = parse_document("{").unwrap_err();
        assert_eq!(error.context, "document");
        assert!(error.message.contains("line"), "{}", error.message);
    }

    #[test]
    fn recorded_cover_degree_is_checked_against_the_gcd() {
        let text = r#"{
            "rel_dim": 1,
            "components": [{"id": "E1", "N": 2}, {"id": "E2", "N": 4}],
            "strata": [{"J": ["E1", "E2"], "chi": {"total": 1}, "m": 4}],
            "supports": ["total"]
        }"#;
        let (_, violations) = parse_document(text).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].location, "strata[0] (J = {E1,E2})");
        assert_eq!(
            violations[0].message,
            "m = 4 disagrees with the gcd of multiplicities = 2"
        );
        let correct = text.replace("\"m\": 4", "\"m\": 2");
        let (_, violations) = parse_document(&correct).unwrap();
        assert_eq!(violations, vec![]);
    }

    #[test]
    fn semantic_violations_surface_through_parse_model() {
        let text = r#"{
            "rel_dim": 1,
            "components": [{"id": "E1", "N": 0}],
            "strata": [],
            "supports": []
        }"#;
        match parse_model(text).unwrap_err() {
            DocumentError::Invalid(violations) => {
                assert_eq!(violations.len(), 1);
                assert!(violations[0].message.contains("N must be >= 1"));
            }
            other => panic!("expected a validation failure, got {other:?}"),
        }
    }

    #[test]
    fn class_l_entries_must_be_pairs() {
        let text = r#"{
            "rel_dim": 1,
            "components": [{"id": "E1", "N": 1}],
            "strata": [{"J": ["E1"], "chi": {}, "class_L": [[1, 2, 3]]}],
            "supports": []
        }"#;
        let error = parse_document(text).unwrap_err();
        assert_eq!(error.context, "strata[0] (J = {E1})");
        assert!(error.message.contains("[exp, coeff]"));
    }
}
