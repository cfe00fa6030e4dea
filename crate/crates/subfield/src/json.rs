//! JSON and CSV encodings.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};
use subfield_core::census::ConvergenceRow;
use subfield_core::monoid::Component;
use subfield_core::{CensusReport, FieldCtx, MonoidElem, MonoidShape, OrbitTable};

use crate::format::{format_element, format_prime_poly};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("expected {0}")]
    Shape(&'static str),
    #[error("monoid element does not match the field: {0}")]
    Component(#[from] subfield_core::Error),
}

pub fn field_json(spec: &str, ctx: &FieldCtx) -> Value {
    json!({
        "spec": spec,
        "p": ctx.characteristic(),
        "e": ctx.e(),
        "q": ctx.q(),
        "m": ctx.m(),
        "degree": ctx.degree(),
        "modulus": format_prime_poly(ctx.modulus()),
        "order": ctx.order(),
    })
}

/// `{"k": [{"rep": "...", "elements": [...]}]}`, orbit order as in the table.
pub fn orbit_table_json(ctx: &FieldCtx, table: &OrbitTable) -> Value {
    let mut out = Map::new();
    for stratum in table.strata() {
        let orbits: Vec<Value> = stratum
            .orbits()
            .map(|orbit| {
                json!({
                    "rep": format_element(ctx, orbit[0]),
                    "elements": orbit.iter().map(|&a| format_element(ctx, a)).collect::<Vec<_>>(),
                })
            })
            .collect();
        out.insert(stratum.k().to_string(), Value::Array(orbits));
    }
    Value::Object(out)
}

/// `{"k": {"sigma": [1-based], "shifts": [...]}}`.
pub fn monoid_elem_json(a: &MonoidElem) -> Value {
    let mut out = Map::new();
    for c in a.components() {
        out.insert(c.k().to_string(), json!({ "sigma": c.sigma().to_one_based(), "shifts": c.shifts().values() }));
    }
    Value::Object(out)
}

pub fn monoid_elem_from_json(v: &Value, shape: &MonoidShape) -> Result<MonoidElem, JsonError> {
    let obj = v.as_object().ok_or(JsonError::Shape("an object keyed by k"))?;
    if obj.len() != shape.parts().len() {
        return Err(JsonError::Shape("one entry per divisor k"));
    }
    let mut components = Vec::new();
    for part in shape.parts() {
        let entry = obj.get(&part.k.to_string()).ok_or(JsonError::Shape("an entry for every divisor k"))?;
        let ints = |key: &str| -> Result<Vec<u32>, JsonError> {
            entry
                .get(key)
                .and_then(Value::as_array)
                .ok_or(JsonError::Shape("sigma and shifts arrays"))?
                .iter()
                .map(|x| x.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or(JsonError::Shape("small integers")))
                .collect()
        };
        let sigma = ints("sigma")?;
        if sigma.len() != part.n || sigma.contains(&0) {
            return Err(JsonError::Shape("sigma as 1-based indices of the right length"));
        }
        let zero_based = sigma.iter().map(|s| s - 1).collect();
        components.push(Component::new(part.k, zero_based, ints("shifts")?)?);
    }
    Ok(MonoidElem::new(components))
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn density(exact: Option<String>, float: f64) -> Value {
    json!({ "exact": exact, "float": float })
}

pub fn census_json(r: &CensusReport) -> Value {
    let pi: Map<String, Value> = r.divisors.iter().map(|d| (d.k.to_string(), big(&d.pi))).collect();
    json!({
        "q": r.q,
        "m": r.m,
        "pi": pi,
        "count_t": big(&r.count_t),
        "count_units": big(&r.count_units),
        "count_l": big(&r.count_l),
        "density_t": density(r.density_t.as_ref().map(|x| x.to_string()), r.density_t_float),
        "density_units": density(r.density_units.as_ref().map(|x| x.to_string()), r.density_units_float),
        "log_density_t": r.log_density_t,
    })
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("q,p,log_density\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.12}\n", r.q, r.p, r.log_density));
    }
    out
}

pub fn convergence_json(rows: &[ConvergenceRow]) -> Value {
    rows.iter().map(|r| json!({ "q": r.q, "p": r.p, "log_density": r.log_density })).collect()
}
