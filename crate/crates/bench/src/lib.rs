//! Shared helpers for the benchmark harness.

use snczeta_core::document::parse_model;
use snczeta_core::ResolutionModel;

/// Loads a shipped fixture model by name (`node`, `cusp`, `smooth`).
pub fn fixture(name: &str) -> ResolutionModel {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"));
    parse_model(&text).unwrap_or_else(|e| panic!("parse {path}: {e}"))
}
