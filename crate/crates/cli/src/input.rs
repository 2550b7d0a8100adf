use std::path::Path;

use monogen_core::algebra::{AlgebraJson, OrderPresentationJson};
use monogen_core::{Error, OrderPresentation, Result, StructureAlgebra};
use serde_json::Value;

/// Reads an algebra from a JSON file in either the structure-constant schema
/// (`constants`, `identity`) or the order-presentation schema (`minpoly`,
/// `basis`), and validates it.
pub fn parse_input(path: &Path) -> Result<StructureAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<StructureAlgebra> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: "$".into(),
        message: e.to_string(),
    })?;
    parse_value(&value)
}

pub fn parse_value(value: &Value) -> Result<StructureAlgebra> {
    let obj = value.as_object().ok_or_else(|| Error::Parse {
        path: "$".into(),
        message: "expected a JSON object".into(),
    })?;
    let schema_err = |e: serde_json::Error| Error::Parse { path: "$".into(), message: e.to_string() };
    let alg = if obj.contains_key("minpoly") {
        let j: OrderPresentationJson = serde_json::from_value(value.clone()).map_err(schema_err)?;
        OrderPresentation::from_json(&j)?.to_algebra()?
    } else if obj.contains_key("constants") {
        check_nesting(&obj["constants"], "constants", 3)?;
        let j: AlgebraJson = serde_json::from_value(value.clone()).map_err(schema_err)?;
        StructureAlgebra::from_json(&j)?
    } else {
        return Err(Error::Parse {
            path: "$".into(),
            message: "expected either `constants` (structure constants) or `minpoly` (order presentation)".into(),
        });
    };
    alg.ensure_valid()?;
    Ok(alg)
}

/// Reports the first entry of a nested array that is not itself an array,
/// with its index path.
fn check_nesting(v: &Value, path: &str, depth: usize) -> Result<()> {
    if depth == 0 {
        return Ok(());
    }
    let items = v.as_array().ok_or_else(|| Error::Parse {
        path: path.to_string(),
        message: "expected an array".into(),
    })?;
    for (i, x) in items.iter().enumerate() {
        check_nesting(x, &format!("{path}[{i}]"), depth - 1)?;
    }
    Ok(())
}
