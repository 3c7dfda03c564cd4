//! Browser bindings: each export takes a family description and returns a
//! JSON document as a string.

use serde_json::{json, Value};
use supertab::analysis::{census_json, partition_json, table_json, unitary_json};
use supertab::{build_family, Analysis, ConstancyOptions, FamilyName, FamilySpec, DEFAULT_TOL};
use wasm_bindgen::prelude::*;

/// Largest `n^d` for which the orbit grid is returned.
const GRID_LIMIT: usize = 4096;

fn analyse(family: &str, param: u32, d: Option<u32>) -> Result<Analysis, String> {
    let name: FamilyName = family.parse().map_err(|e: supertab::Error| e.to_string())?;
    let spec = FamilySpec::new(name, param.into(), d.map(|d| d as usize)).map_err(|e| e.to_string())?;
    if spec.modulus().get().checked_pow(spec.dim as u32).is_none_or(|c| c > 1 << 16) {
        return Err(format!("{} is too large for the browser demo", spec.label()));
    }
    let group = build_family(&spec).map_err(|e| e.to_string())?;
    Analysis::new(group, None).map_err(|e| e.to_string())
}

pub fn families_value() -> Value {
    let list: Vec<Value> = FamilyName::ALL
        .iter()
        .map(|f| {
            json!({
                "name": f.as_str(),
                "parameter": if f.takes_prime() { "p" } else { "n" },
                "fixed_d": f.fixed_dim(),
                "default_d": f.default_dim(),
                "description": f.description(),
            })
        })
        .collect();
    json!(list)
}

pub fn table_value(family: &str, param: u32, d: Option<u32>) -> Result<Value, String> {
    let a = analyse(family, param, d)?;
    let text: Vec<Vec<String>> = a.table.entries().iter().map(|r| r.iter().map(|e| e.to_text()).collect()).collect();
    Ok(json!({
        "meta": a.meta_json(),
        "superclasses": partition_json(a.superclasses(), false),
        "supercharacters": partition_json(a.supercharacters(), false),
        "table": table_json(&a.table),
        "text": text,
    }))
}

pub fn orbits_value(family: &str, param: u32, d: Option<u32>) -> Result<Value, String> {
    let a = analyse(family, param, d)?;
    let y = a.superclasses();
    let grid = (y.dim() <= 2 && y.point_count() <= GRID_LIMIT).then(|| y.assignment().to_vec());
    Ok(json!({
        "meta": a.meta_json(),
        "superclasses": partition_json(y, false),
        "supercharacters": partition_json(a.supercharacters(), false),
        "census": census_json(y),
        "grid": grid,
    }))
}

pub fn unitary_value(family: &str, param: u32, d: Option<u32>) -> Result<Value, String> {
    let a = analyse(family, param, d)?;
    let u = a.unitary().map_err(|e| e.to_string())?;
    let v = a.verify(&ConstancyOptions::default(), DEFAULT_TOL);
    Ok(json!({
        "meta": a.meta_json(),
        "unitary": unitary_json(&u),
        "checks": {
            "theory": v.theory,
            "entry_bound": v.entry_bound,
            "unitary": v.unitary,
            "passed": v.passed(),
        },
    }))
}

fn finish(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn families() -> String {
    families_value().to_string()
}

#[wasm_bindgen]
pub fn family_table(family: &str, param: u32, d: Option<u32>) -> Result<String, JsError> {
    finish(table_value(family, param, d))
}

#[wasm_bindgen]
pub fn family_orbits(family: &str, param: u32, d: Option<u32>) -> Result<String, JsError> {
    finish(orbits_value(family, param, d))
}

#[wasm_bindgen]
pub fn family_unitary(family: &str, param: u32, d: Option<u32>) -> Result<String, JsError> {
    finish(unitary_value(family, param, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_table() {
        let v = table_value("diagonal", 3, Some(2)).unwrap();
        assert_eq!(v["meta"]["group_order"], 4);
        assert_eq!(v["text"][3][3], "1");
        assert_eq!(v["table"][1][1]["re"], -1.0);
    }

    #[test]
    fn orbit_grid() {
        let v = orbits_value("diagonal", 5, Some(2)).unwrap();
        let grid = v["grid"].as_array().unwrap();
        assert_eq!(grid.len(), 25);
        assert_eq!(grid[0], 0);
        assert!(orbits_value("toeplitz", 3, Some(3)).unwrap()["grid"].is_null());
    }

    #[test]
    fn unitary_checks() {
        let v = unitary_value("kloosterman", 5, None).unwrap();
        assert_eq!(v["checks"]["passed"], true);
        assert_eq!(v["unitary"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn errors_are_messages() {
        assert!(table_value("nope", 3, None).is_err());
        assert!(table_value("kloosterman", 4, None).is_err());
        assert!(table_value("diagonal", 97, Some(4)).unwrap_err().contains("too large"));
        assert_eq!(families_value().as_array().unwrap().len(), FamilyName::ALL.len());
    }
}
