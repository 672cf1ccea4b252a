//! Golden coefficient tables: Lescop coefficients (exact and mod 5/7)
//! and the Lefschetz component dimensions through genus 6.

use serde_json::{json, Map, Value};

use crate::lefschetz::component_dimension;
use crate::lescop::lescop_coefficient;
use crate::modular::lescop_table_mod;
use crate::rings::rational_to_string;

/// All tables as a single deterministic JSON value.
pub fn emit_tables() -> Value {
    let lescop: Map<String, Value> = (1..=12u64)
        .map(|j| (format!("{j:02}"), json!(rational_to_string(&lescop_coefficient(j)))))
        .collect();
    let dims: Map<String, Value> = (1..=6usize)
        .map(|g| {
            let per_j: Map<String, Value> = (1..=g + 1)
                .map(|j| (j.to_string(), json!(component_dimension(g, j))))
                .collect();
            (g.to_string(), Value::Object(per_j))
        })
        .collect();
    json!({
        "lescop_coefficients": lescop,
        "lescop_mod_5": lescop_table_mod(5),
        "lescop_mod_7": lescop_table_mod(7),
        "component_dimensions": dims,
    })
}

/// The same tables flattened to `table,key,value` CSV lines.
pub fn emit_tables_csv() -> String {
    let mut out = String::from("table,key,value\n");
    for j in 1..=12u64 {
        out.push_str(&format!(
            "lescop_coefficients,{j},{}\n",
            rational_to_string(&lescop_coefficient(j))
        ));
    }
    for (p, table) in [(5u64, lescop_table_mod(5)), (7, lescop_table_mod(7))] {
        for (i, v) in table.iter().enumerate() {
            out.push_str(&format!("lescop_mod_{p},{},{v}\n", i + 1));
        }
    }
    for g in 1..=6usize {
        for j in 1..=g + 1 {
            out.push_str(&format!("component_dimensions,{g}:{j},{}\n", component_dimension(g, j)));
        }
    }
    out
}
