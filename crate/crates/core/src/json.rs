//! JSON wire formats for every interface type, with schema errors
//! reported as JSON-pointer paths.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::casson::BoundingCurveSpec;
use crate::cut::{CutInput, CutReport};
use crate::exterior::{HomologyClass, Mask, MultiVector, SymplecticMatrix};
use crate::johnson_morita::{ElementBlocks, SolvableSample};
use crate::lescop::LescopValue;
use crate::linalg::IntMat;
use crate::modular::{FibonacciReport, PModAlexander, ResolutionReport, SpechtReport};
use crate::rings::{rational_to_string, LaurentPolynomial, TruncatedPoly};
use crate::tqft::{CobordismWord, Generator, WeightVector};
use crate::{Error, Result};

fn err(pointer: &str, message: impl Into<String>) -> Error {
    Error::Json { pointer: pointer.to_string(), message: message.into() }
}

pub fn get<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(&format!("{ptr}/{key}"), "missing field"))
}

pub fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(ptr, "expected an object"))
}

pub fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(ptr, "expected an array"))
}

pub fn as_u64(v: &Value, ptr: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(ptr, "expected a non-negative integer"))
}

pub fn as_usize(v: &Value, ptr: &str) -> Result<usize> {
    Ok(as_u64(v, ptr)? as usize)
}

pub fn as_i64(v: &Value, ptr: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(ptr, "expected an integer"))
}

pub fn as_bigint(v: &Value, ptr: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| err(ptr, "expected an integer, got a non-integral number")),
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| err(ptr, "expected an integer string"))
        }
        _ => Err(err(ptr, "expected an integer")),
    }
}

pub fn bigint_to_value(b: &BigInt) -> Value {
    if let Ok(small) = i64::try_from(b.clone()) {
        return json!(small);
    }
    match serde_json::Number::from_str(&b.to_string()) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(b.to_string()),
    }
}

pub fn laurent_to_value(p: &LaurentPolynomial) -> Value {
    let coeffs: Map<String, Value> =
        p.terms().map(|(e, c)| (e.to_string(), bigint_to_value(c))).collect();
    json!({ "coeffs": coeffs })
}

pub fn laurent_from_value(v: &Value, ptr: &str) -> Result<LaurentPolynomial> {
    let coeffs = as_object(get(v, ptr, "coeffs")?, &format!("{ptr}/coeffs"))?;
    let mut p = LaurentPolynomial::zero();
    for (key, cv) in coeffs {
        let e: i64 = key
            .parse()
            .map_err(|_| err(&format!("{ptr}/coeffs/{key}"), "exponent key must be an integer"))?;
        p.add_term(e, as_bigint(cv, &format!("{ptr}/coeffs/{key}"))?);
    }
    Ok(p)
}

pub fn truncated_to_value(t: &TruncatedPoly) -> Value {
    json!({
        "p": t.modulus(),
        "m": t.truncation(),
        "coeffs": t.coeffs().to_vec(),
    })
}

pub fn lescop_to_value(v: &LescopValue) -> Value {
    json!({ "value": rational_to_string(&v.value), "sign_certain": v.sign_certain })
}

pub fn multivector_to_value(x: &MultiVector) -> Value {
    let terms: Map<String, Value> =
        x.terms().map(|(m, c)| (m.to_string(), bigint_to_value(c))).collect();
    json!({ "g": x.genus(), "terms": terms })
}

pub fn multivector_from_value(v: &Value, ptr: &str) -> Result<MultiVector> {
    let g = as_usize(get(v, ptr, "g")?, &format!("{ptr}/g"))?;
    if 2 * g > 24 {
        return Err(err(&format!("{ptr}/g"), "genus too large (max 12)"));
    }
    let terms = as_object(get(v, ptr, "terms")?, &format!("{ptr}/terms"))?;
    let mut x = MultiVector::zero(g);
    for (key, cv) in terms {
        let mask: Mask = key
            .parse()
            .map_err(|_| err(&format!("{ptr}/terms/{key}"), "mask key must be an integer"))?;
        if u64::from(mask) >= 1u64 << (2 * g) {
            return Err(err(&format!("{ptr}/terms/{key}"), "mask out of range for the genus"));
        }
        x.add_term(mask, as_bigint(cv, &format!("{ptr}/terms/{key}"))?);
    }
    Ok(x)
}

pub fn int_rows_from_value(v: &Value, ptr: &str) -> Result<Vec<Vec<i64>>> {
    let rows = as_array(v, ptr)?;
    rows.iter()
        .enumerate()
        .map(|(i, rv)| {
            let row = as_array(rv, &format!("{ptr}/{i}"))?;
            row.iter()
                .enumerate()
                .map(|(j, e)| as_i64(e, &format!("{ptr}/{i}/{j}")))
                .collect()
        })
        .collect()
}

pub fn symplectic_from_rows(rows: &[Vec<i64>], ptr: &str) -> Result<SymplecticMatrix> {
    if rows.is_empty() || !rows.len().is_multiple_of(2) {
        return Err(err(ptr, "matrix must be 2g x 2g"));
    }
    let g = rows.len() / 2;
    SymplecticMatrix::from_rows(g, rows).map_err(|e| err(ptr, e.to_string()))
}

pub fn symplectic_to_value(m: &SymplecticMatrix) -> Value {
    json!({ "g": m.genus(), "rows": m.rows() })
}

pub fn word_from_value(v: &Value, ptr: &str) -> Result<CobordismWord> {
    let start = as_usize(get(v, ptr, "start_g")?, &format!("{ptr}/start_g"))?;
    let ops_val = as_array(get(v, ptr, "ops")?, &format!("{ptr}/ops"))?;
    let mut ops = Vec::new();
    for (i, op) in ops_val.iter().enumerate() {
        let op_ptr = format!("{ptr}/ops/{i}");
        let generator = match op {
            Value::String(s) if s == "add_handle" => Generator::AddHandle,
            Value::String(s) if s == "remove_handle" => Generator::RemoveHandle,
            Value::Object(map) if map.contains_key("mcg") => {
                let rows = int_rows_from_value(&map["mcg"], &format!("{op_ptr}/mcg"))?;
                Generator::Mcg(symplectic_from_rows(&rows, &format!("{op_ptr}/mcg"))?)
            }
            _ => {
                return Err(err(
                    &op_ptr,
                    "expected \"add_handle\", \"remove_handle\" or {\"mcg\": [[..]]}",
                ))
            }
        };
        ops.push(generator);
    }
    CobordismWord::new(start, ops).map_err(|e| err(ptr, e.to_string()))
}

pub fn word_to_value(w: &CobordismWord) -> Value {
    let ops: Vec<Value> = w
        .ops()
        .iter()
        .map(|op| match op {
            Generator::Mcg(m) => json!({ "mcg": m.rows() }),
            Generator::AddHandle => json!("add_handle"),
            Generator::RemoveHandle => json!("remove_handle"),
        })
        .collect();
    json!({ "start_g": w.start_genus(), "ops": ops })
}

pub fn weights_to_value(w: &WeightVector) -> Value {
    let weights: Map<String, Value> =
        w.weights.iter().map(|(j, v)| (j.to_string(), bigint_to_value(v))).collect();
    let mut out = Map::new();
    out.insert("weights".into(), Value::Object(weights));
    if w.sign_ambiguous {
        out.insert("sign_ambiguous".into(), json!(true));
    }
    Value::Object(out)
}

pub fn weights_from_value(v: &Value, ptr: &str) -> Result<WeightVector> {
    let weights = as_object(get(v, ptr, "weights")?, &format!("{ptr}/weights"))?;
    let mut map = BTreeMap::new();
    let mut top = 0usize;
    for (key, wv) in weights {
        let j: usize = key
            .parse()
            .map_err(|_| err(&format!("{ptr}/weights/{key}"), "index key must be an integer"))?;
        if j == 0 {
            return Err(err(&format!("{ptr}/weights/{key}"), "indices start at 1"));
        }
        let val = as_bigint(wv, &format!("{ptr}/weights/{key}"))?;
        if !num_traits::Zero::is_zero(&val) {
            map.insert(j, val);
        }
        top = top.max(j);
    }
    Ok(WeightVector { genus: top.saturating_sub(1), weights: map, sign_ambiguous: false })
}

pub fn curve_from_value(v: &Value, ptr: &str) -> Result<BoundingCurveSpec> {
    let g = as_usize(get(v, ptr, "g")?, &format!("{ptr}/g"))?;
    let h = as_usize(get(v, ptr, "h")?, &format!("{ptr}/h"))?;
    let classes = |key: &str| -> Result<Vec<HomologyClass>> {
        let rows = int_rows_from_value(get(v, ptr, key)?, &format!("{ptr}/{key}"))?;
        rows.into_iter()
            .enumerate()
            .map(|(i, coords)| {
                HomologyClass::new(g, coords)
                    .map_err(|e| err(&format!("{ptr}/{key}/{i}"), e.to_string()))
            })
            .collect()
    };
    BoundingCurveSpec::new(g, h, classes("u")?, classes("v")?)
        .map_err(|e| err(ptr, e.to_string()))
}

fn intmat_from_value(v: &Value, ptr: &str) -> Result<IntMat> {
    let rows = as_array(v, ptr)?;
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    let mut width = None;
    for (i, rv) in rows.iter().enumerate() {
        let row = as_array(rv, &format!("{ptr}/{i}"))?;
        if let Some(w) = width {
            if row.len() != w {
                return Err(err(&format!("{ptr}/{i}"), "ragged matrix rows"));
            }
        } else {
            width = Some(row.len());
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, e)| as_bigint(e, &format!("{ptr}/{i}/{j}")))
                .collect::<Result<_>>()?,
        );
    }
    Ok(IntMat::from_rows(out))
}

pub fn solvable_sample_from_value(v: &Value, ptr: &str) -> Result<SolvableSample> {
    let modulus = match get(v, ptr, "ring")? {
        Value::String(s) if s == "Z" => None,
        other => {
            let p = as_u64(get(other, &format!("{ptr}/ring"), "p")?, &format!("{ptr}/ring/p"))?;
            if p < 3 {
                return Err(err(&format!("{ptr}/ring/p"), "modulus must be at least 3"));
            }
            Some(p)
        }
    };
    let w1_dim = as_usize(get(v, ptr, "w1")?, &format!("{ptr}/w1"))?;
    let w0_dim = as_usize(get(v, ptr, "w0")?, &format!("{ptr}/w0"))?;
    let omega = as_array(get(v, ptr, "omega")?, &format!("{ptr}/omega"))?
        .iter()
        .enumerate()
        .map(|(i, e)| as_bigint(e, &format!("{ptr}/omega/{i}")))
        .collect::<Result<Vec<_>>>()?;
    let mut elements = BTreeMap::new();
    for (name, ev) in as_object(get(v, ptr, "elements")?, &format!("{ptr}/elements"))? {
        let eptr = format!("{ptr}/elements/{name}");
        let block = |key: &str| intmat_from_value(get(ev, &eptr, key)?, &format!("{eptr}/{key}"));
        elements.insert(
            name.clone(),
            ElementBlocks {
                rho1: block("rho1")?,
                rho0: block("rho0")?,
                mu: block("mu")?,
                lam1: block("lam1")?,
                lam0: block("lam0")?,
                nu: block("nu")?,
                kap: block("kap")?,
            },
        );
    }
    let pairs = as_array(get(v, ptr, "pairs")?, &format!("{ptr}/pairs"))?
        .iter()
        .enumerate()
        .map(|(i, pv)| {
            let pptr = format!("{ptr}/pairs/{i}");
            let triple = as_array(pv, &pptr)?;
            if triple.len() != 3 {
                return Err(err(&pptr, "expected [left, right, product]"));
            }
            let name = |k: usize| -> Result<String> {
                triple[k]
                    .as_str()
                    .map(str::to_string)
                    .ok_or_else(|| err(&format!("{pptr}/{k}"), "expected an element name"))
            };
            Ok((name(0)?, name(1)?, name(2)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SolvableSample { modulus, w1_dim, w0_dim, omega, elements, pairs })
}

pub fn cut_input_from_value(v: &Value, ptr: &str) -> Result<CutInput> {
    if let Some(m) = v.get("monodromy") {
        let rows = int_rows_from_value(m, &format!("{ptr}/monodromy"))?;
        return Ok(CutInput::Monodromy(symplectic_from_rows(&rows, &format!("{ptr}/monodromy"))?));
    }
    if v.get("poly").is_some() {
        let poly = laurent_from_value(v, ptr)
            .or_else(|_| laurent_from_value(get(v, ptr, "poly")?, &format!("{ptr}/poly")))?;
        let b1 = as_u64(get(v, ptr, "b1")?, &format!("{ptr}/b1"))?;
        return Ok(CutInput::Alexander { poly, b1 });
    }
    Err(err(ptr, "expected {\"monodromy\": [[..]]} or {\"poly\": {..}, \"b1\": n}"))
}

pub fn cut_report_to_value(r: &CutReport) -> Value {
    let mut out = Map::new();
    out.insert("b1".into(), json!(r.b1));
    out.insert(
        "lescop".into(),
        r.lescop.as_ref().map_or(Value::Null, lescop_to_value),
    );
    out.insert("delta5_literal".into(), json!(r.delta5_literal));
    out.insert("delta5_trace".into(), json!(r.delta5_trace));
    out.insert("lower".into(), json!(r.lower));
    out.insert("upper".into(), r.upper.map_or(Value::Null, |u| json!(u)));
    out.insert("provenance".into(), json!(r.provenance));
    if let Some(s) = r.genus2_shortcut {
        out.insert("genus2_shortcut".into(), json!(s));
    }
    Value::Object(out)
}

pub fn resolution_report_to_value(r: &ResolutionReport) -> Value {
    json!({
        "k": r.k,
        "p": r.p,
        "g": r.genus,
        "indices": r.indices,
        "quotient_dim": r.quotient_dim,
        "radical_dim": r.radical_dim,
        "nodes": r.nodes.iter().map(|n| json!({
            "index": n.index,
            "dimension": n.dimension,
            "incoming_rank": n.incoming_rank,
            "outgoing_nullity": n.outgoing_nullity,
            "exact": n.exact,
        })).collect::<Vec<_>>(),
        "pass": r.pass,
    })
}

pub fn specht_report_to_value(r: &SpechtReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "p": r.p,
        "indices": r.indices,
        "specht_dims": r.specht_dims.iter().map(|d| *d as u64).collect::<Vec<_>>(),
        "irreducible_dim": r.irreducible_dim,
        "alternating_dim": r.alternating_dim as i64,
        "dim_identity": r.dim_identity,
        "trace_checks": r.trace_checks.iter().map(|(q, f, ok)| json!({
            "quotient_trace": q, "folded_character": f, "pass": ok,
        })).collect::<Vec<_>>(),
        "pass": r.pass,
    })
}

pub fn fibonacci_report_to_value(r: &FibonacciReport) -> Value {
    json!({
        "g": r.genus,
        "dim_k1": r.dim_k1,
        "dim_k4": r.dim_k4,
        "expected": r.expected as u64,
        "pass": r.pass,
    })
}

pub fn pmod_alexander_to_value(r: &PModAlexander) -> Value {
    json!({
        "from_weights": truncated_to_value(&r.from_weights),
        "direct": truncated_to_value(&r.direct),
        "match": r.from_weights == r.direct,
    })
}

pub fn solvable_report_to_value(r: &crate::johnson_morita::SolvableReport) -> Value {
    json!({
        "relations": r.relations.iter().map(|c| json!({
            "pair": [c.pair.0, c.pair.1],
            "relation": c.relation,
            "pass": c.pass,
            "witness": c.witness.map(|(i, j)| json!([i, j])),
        })).collect::<Vec<_>>(),
        "invariants": r.invariants.iter().map(|i| json!({
            "name": i.name,
            "tau": bigint_to_value(&i.tau),
            "lambda": bigint_to_value(&i.lambda),
            "delta": bigint_to_value(&i.delta),
            "xi": bigint_to_value(&i.xi),
        })).collect::<Vec<_>>(),
        "pass": r.pass,
    })
}
