//! JSON encodings. Every top-level document carries `"v": 1`.

use serde_json::{json, Map, Value};

use crate::error::{KronError, Result};
use crate::exactlin::{FieldSpec, Matrix, Scalar};
use crate::heart::HeartObject;
use crate::kronrep::{IndecompDescriptor, KronModule, ModuleMap};
use crate::pencil::Decomposition;
use crate::spectrum::{GabrielReport, MonoformVerdict, SpectrumReport, SymbolicObject};
use crate::tfat::{UniquenessReport, Verdict, Witness};
use crate::torsion::{Radical, ShadowReport, TorsionPairSpec};

pub const SCHEMA_VERSION: u64 = 1;

fn bad(msg: impl Into<String>) -> KronError {
    KronError::Parse(msg.into())
}

/// Adds the schema version to an object.
pub fn versioned(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("v".into(), json!(SCHEMA_VERSION));
    }
    v
}

/// Checks the schema version of a document.
pub fn check_version(v: &Value) -> Result<()> {
    match v.get("v").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(bad(format!("unsupported schema version {other}"))),
        None => Err(bad("missing schema version")),
    }
}

pub fn field_to_json(f: FieldSpec) -> Value {
    match f {
        FieldSpec::Rationals => json!({"kind": "Q"}),
        FieldSpec::PrimeField(p) => json!({"kind": "Fp", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v.get("kind").and_then(Value::as_str) {
        Some("Q") => Ok(FieldSpec::Rationals),
        Some("Fp") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("field Fp needs an integer p"))?;
            FieldSpec::prime(p)
        }
        _ => Err(bad("field kind must be \"Q\" or \"Fp\"")),
    }
}

/// Parses `Q`, `F5`, `Fp5` or a bare prime.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = s.strip_prefix("Fp").or_else(|| s.strip_prefix('F')).unwrap_or(s);
    let p: u64 = digits.parse().map_err(|_| bad(format!("unknown field '{s}'")))?;
    FieldSpec::prime(p)
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Rational(r) => json!(format!("{}/{}", r.numer(), r.denom())),
        Scalar::Mod(v) => json!(v),
    }
}

pub fn scalar_from_json(f: FieldSpec, v: &Value) -> Result<Scalar> {
    match (f, v) {
        (FieldSpec::Rationals, Value::String(s)) => f.parse_scalar(s),
        (FieldSpec::Rationals, Value::Number(n)) if n.is_i64() => Ok(f.from_i64(n.as_i64().unwrap())),
        (FieldSpec::PrimeField(p), Value::Number(n)) => match n.as_u64() {
            Some(x) if x < p as u64 => Ok(Scalar::Mod(x as u32)),
            _ => Err(bad(format!("F{p} element must be an integer in [0,{p})"))),
        },
        _ => Err(bad(format!("invalid scalar {v} for field {f}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| scalar_to_json(&m[(r, c)])).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(f: FieldSpec, rows: usize, cols: usize, v: &Value) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(bad(format!("matrix has {} rows, expected {rows}", arr.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("matrix row has {} entries, expected {cols}", row.len())));
        }
        for x in row {
            entries.push(scalar_from_json(f, x)?);
        }
    }
    Ok(Matrix::from_vector(f, rows, cols, &entries))
}

fn module_body(m: &KronModule) -> Value {
    json!({
        "field": field_to_json(m.field()),
        "d1": m.dim().d1,
        "d2": m.dim().d2,
        "a": matrix_to_json(m.a()),
        "b": matrix_to_json(m.b()),
    })
}

pub fn module_to_json(m: &KronModule) -> Value {
    versioned(module_body(m))
}

/// Reads a module; the version field is optional on input.
pub fn module_from_json(v: &Value) -> Result<KronModule> {
    if v.get("v").is_some() {
        check_version(v)?;
    }
    let field = field_from_json(v.get("field").ok_or_else(|| bad("module needs a field"))?)?;
    let dim = |k: &str| {
        v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(format!("module needs integer {k}")))
    };
    let (d1, d2) = (dim("d1")?, dim("d2")?);
    let a = matrix_from_json(field, d2, d1, v.get("a").ok_or_else(|| bad("module needs a"))?)?;
    let b = matrix_from_json(field, d2, d1, v.get("b").ok_or_else(|| bad("module needs b"))?)?;
    KronModule::new(field, a, b)
}

pub fn parse_module(text: &str) -> Result<KronModule> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    module_from_json(&v)
}

pub fn map_to_json(f: &ModuleMap) -> Value {
    json!({"f1": matrix_to_json(&f.f1), "f2": matrix_to_json(&f.f2)})
}

fn descriptors(ds: &[IndecompDescriptor]) -> Value {
    Value::Array(ds.iter().map(|d| json!(d.to_string())).collect())
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    versioned(json!({
        "summands": descriptors(&d.summands),
        "s1": matrix_to_json(&d.s1),
        "s2": matrix_to_json(&d.s2),
    }))
}

pub fn radical_to_json(m: &KronModule, p: &TorsionPairSpec, r: &Radical) -> Result<Value> {
    let sub = crate::pencil::decompose(&r.sub_module)?.summands;
    let quot = crate::pencil::decompose(&r.quotient)?.summands;
    Ok(versioned(json!({
        "pair": p.to_string(),
        "module": module_body(m),
        "sub": {"summands": descriptors(&sub), "basis1": matrix_to_json(&r.sub.0), "basis2": matrix_to_json(&r.sub.1)},
        "quotient": {"summands": descriptors(&quot), "module": module_body(&r.quotient)},
        "inclusion": map_to_json(&r.inclusion()),
        "projection": map_to_json(&r.projection),
    })))
}

fn summands_of(m: &KronModule) -> Value {
    match crate::pencil::decompose(m) {
        Ok(d) => descriptors(&d.summands),
        Err(e) => json!(format!("<{e}>")),
    }
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::ZeroModule => json!({"kind": "zero"}),
        Witness::WrongClass { expected } => json!({"kind": "class", "expected": expected.to_string()}),
        Witness::Quotient { sub, quotient } => {
            json!({"kind": "quotient", "sub": summands_of(sub), "quotient": summands_of(quotient)})
        }
        Witness::Submodule { sub } => json!({"kind": "submodule", "sub": summands_of(sub)}),
        Witness::Extension { sub, middle, quot, .. } => json!({
            "kind": "extension",
            "sub": summands_of(sub),
            "middle": summands_of(middle),
            "quotient": summands_of(quot),
            "middle_module": module_body(middle),
        }),
    }
}

pub fn verdict_to_json(m: &KronModule, p: &TorsionPairSpec, bound: usize, v: &Verdict) -> Value {
    versioned(json!({
        "module": module_body(m),
        "pair": p.to_string(),
        "verdict": v.label(),
        "witness": v.witness().map_or(Value::Null, witness_to_json),
        "bound": bound,
    }))
}

fn tokens(v: &[SymbolicObject]) -> Value {
    Value::Array(v.iter().map(|s| json!(s.to_string())).collect())
}

pub fn spectrum_to_json(r: &SpectrumReport) -> Value {
    versioned(json!({
        "pair": r.pair.to_string(),
        "simples": tokens(&r.simples),
        "coresolutions": r.coresolutions.iter().map(|c| json!({
            "simple": c.simple.to_string(),
            "envelope": c.envelope.to_string(),
            "cosyzygy": c.cosyzygy.to_string(),
        })).collect::<Vec<_>>(),
        "atoms": tokens(&r.atoms),
        "order": r.order.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
        "open_singletons": tokens(&r.open_singletons),
        "gdim": r.gdim,
        "notes": r.notes,
    }))
}

pub fn shadow_to_json(r: &ShadowReport) -> Value {
    json!({
        "pair": r.pair.to_string(),
        "field": field_to_json(r.field),
        "bound": r.bound,
        "corpus": r.corpus,
        "hom_pairs": r.hom_pairs,
        "quotients": r.quotients,
        "submodules": r.submodules,
        "passed": r.passed(),
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |c| json!(c.to_string())),
    })
}

pub fn uniqueness_to_json(r: &UniquenessReport) -> Value {
    json!({
        "pair": r.pair.to_string(),
        "bound": r.bound,
        "tf_almost_torsion": descriptors(&r.passing.tf_almost_torsion),
        "t_almost_torsionfree": descriptors(&r.passing.t_almost_torsionfree),
        "inconclusive": descriptors(&r.passing.inconclusive),
        "violations": r.violations.iter().map(|v| json!({
            "left": v.left.to_string(), "right": v.right.to_string(), "hom_dim": v.hom_dim,
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

pub fn monoform_to_json(m: &KronModule, bound: usize, v: &MonoformVerdict) -> Value {
    let (label, witness) = match v {
        MonoformVerdict::True => ("true", Value::Null),
        MonoformVerdict::False { sub, common, .. } => {
            ("false", json!({"sub": summands_of(sub), "common": common.to_string()}))
        }
        MonoformVerdict::Inconclusive => ("inconclusive", Value::Null),
        MonoformVerdict::Zero => ("false", json!({"kind": "zero"})),
    };
    versioned(json!({"module": module_body(m), "bound": bound, "verdict": label, "witness": witness}))
}

pub fn gabriel_to_json(r: &GabrielReport) -> Value {
    versioned(json!({
        "field": field_to_json(r.field),
        "cover": {
            "relations": descriptors(&r.cover.relations),
            "generators": descriptors(&r.cover.generators),
            "exact": r.cover.exact,
        },
        "regular_module_reached": r.regular_module_reached,
        "trace": r.trace.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "control_reaches_p1": r.control_reaches_p1,
        "control_exhaustive": r.control_exhaustive,
        "max_dim": r.max_dim,
        "passed": r.passed(),
    }))
}

pub fn heart_object_to_json(x: &HeartObject) -> Result<Value> {
    let c = x.complex();
    let terms: Map<String, Value> = (-2..=0).map(|n| (n.to_string(), module_body(&c.term(n)))).collect();
    let diffs: Map<String, Value> = (-2..0).map(|n| (n.to_string(), map_to_json(&c.diff(n)))).collect();
    let h = x.cohomology()?;
    Ok(json!({
        "pair": x.pair().to_string(),
        "terms": terms,
        "differentials": diffs,
        "hminus": summands_of(&h.hminus.module),
        "hzero": summands_of(&h.hzero.module),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronrep::module_from_descriptors;
    use crate::pencil::descriptors_from_strs;

    #[test]
    fn module_round_trip() {
        for f in [FieldSpec::Rationals, FieldSpec::PrimeField(5)] {
            let m = module_from_descriptors(f, &descriptors_from_strs(f, &["P2", "R[t-1,2]", "Q1"]).unwrap()).unwrap();
            let v = module_to_json(&m);
            check_version(&v).unwrap();
            let text = serde_json::to_string(&v).unwrap();
            assert_eq!(parse_module(&text).unwrap(), m);
        }
    }

    #[test]
    fn rationals_are_fraction_strings() {
        let q = FieldSpec::Rationals;
        assert_eq!(scalar_to_json(&q.parse_scalar("-3/6").unwrap()), json!("-1/2"));
        assert_eq!(scalar_to_json(&q.from_i64(4)), json!("4/1"));
        assert_eq!(scalar_from_json(q, &json!("4")).unwrap(), q.from_i64(4));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_module("{not json").is_err());
        assert!(parse_module(r#"{"field":{"kind":"Fp","p":4},"d1":0,"d2":0,"a":[],"b":[]}"#).is_err());
        assert!(parse_module(r#"{"field":{"kind":"Fp","p":5},"d1":1,"d2":1,"a":[[7]],"b":[[1]]}"#).is_err());
        assert!(parse_module(r#"{"v":2,"field":{"kind":"Q"},"d1":0,"d2":0,"a":[],"b":[]}"#).is_err());
        let z = parse_module(r#"{"field":{"kind":"Q"},"d1":0,"d2":0,"a":[],"b":[]}"#).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn field_names() {
        assert_eq!(parse_field("F2").unwrap(), FieldSpec::PrimeField(2));
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
        assert!(parse_field("F6").is_err());
    }
}
